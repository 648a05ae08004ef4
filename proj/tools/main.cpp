// blockcorr command-line tool. All engine work goes through the public C
// API in blockcorr.h; this file only parses arguments, wires files together
// and prints reports.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "blockcorr.h"

using json = nlohmann::ordered_json;

namespace {

// CLI exit codes: 0 ok, 1 usage, 2 data, 3 undefined criterion,
// 4 search limit, 5 replication failure
int exit_code(bc_status status) {
    switch (status) {
        case BC_OK: return 0;
        case BC_ERR_USAGE: return 1;
        case BC_ERR_DATA: return 2;
        case BC_ERR_UNDEFINED: return 3;
        case BC_ERR_LIMIT: return 4;
        default: return 2;
    }
}

[[noreturn]] void die(bc_status status) {
    std::cerr << "error: " << bc_last_error() << "\n";
    std::exit(exit_code(status));
}

void check(bc_status status) {
    if (status != BC_OK) die(status);
}

std::string take_string(char* s) {
    std::string out = s ? s : "";
    bc_string_free(s);
    return out;
}

struct NetworkArgs {
    std::string network;
    std::string fixtures_dir;
    bool directed = false;
    bool self_ties = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--network", network,
                        "network file, or a fixture name (befig1, transatlantic, kansas, "
                        "hlebec, primates, eies_t1, eies_t2)")
            ->required();
        cmd->add_option("--fixtures-dir", fixtures_dir, "fixture directory override");
        cmd->add_flag("--directed", directed, "treat a network file as directed");
        cmd->add_flag("--self-ties", self_ties, "diagonal values are real self-ties");
    }

    bc_network* load() const {
        bc_network* net = nullptr;
        if (std::filesystem::exists(network)) {
            check(bc_network_parse_file(network.c_str(), directed ? 1 : 0,
                                        self_ties ? 1 : 0, &net));
        } else {
            check(bc_network_fixture(network.c_str(),
                                     fixtures_dir.empty() ? nullptr : fixtures_dir.c_str(),
                                     &net));
        }
        return net;
    }
};

// blockimage argument: inline spec (contains a type code) or a file path
bc_blockimage* load_blockimage(const std::string& arg) {
    bc_blockimage* image = nullptr;
    if (std::filesystem::exists(arg)) {
        check(bc_blockimage_parse_file(arg.c_str(), &image));
    } else {
        check(bc_blockimage_parse(arg.c_str(), &image));
    }
    return image;
}

bc_partition* load_partition(bc_network* net, const std::string& arg) {
    bc_partition* part = nullptr;
    if (std::filesystem::exists(arg)) {
        check(bc_partition_parse_file(net, arg.c_str(), &part));
    } else {
        check(bc_partition_parse(net, arg.c_str(), &part));
    }
    return part;
}

void emit_document(const json& doc, const std::string& json_path) {
    if (json_path.empty()) return;
    std::string text = doc.dump(2) + "\n";
    if (json_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(json_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << json_path << "\n";
        std::exit(2);
    }
    out << text;
}

json document_header(const std::string& command, bc_network* net, const json& params) {
    char* digest = nullptr;
    check(bc_network_digest(net, &digest));
    json doc;
    doc["command"] = command;
    doc["params"] = params;
    doc["network_digest"] = take_string(digest);
    return doc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"correlation-based direct blockmodeling of binary and valued networks"};
    app.require_subcommand(1);

    // ---- evaluate ----
    auto* cmd_eval = app.add_subcommand("evaluate", "score a fixed arrangement");
    NetworkArgs eval_net;
    eval_net.attach(cmd_eval);
    std::string eval_partition, eval_image, eval_json;
    bool eval_render = false;
    cmd_eval->add_option("--partition", eval_partition, "partition file or inline spec")
        ->required();
    cmd_eval->add_option("--blockimage", eval_image, "blockimage file or inline spec")
        ->required();
    cmd_eval->add_option("--json", eval_json, "write the result document here ('-' stdout)");
    cmd_eval->add_flag("--render", eval_render, "print the blocked matrix");

    // ---- fit ----
    auto* cmd_fit = app.add_subcommand("fit", "search for optimal arrangements");
    NetworkArgs fit_net;
    fit_net.attach(cmd_fit);
    int fit_k = 2;
    std::string fit_blocks = "com,nul", fit_criterion = "corr";
    std::string fit_image, fit_partition, fit_json;
    int fit_restarts = 50, fit_threads = 1, fit_pool = 100;
    uint64_t fit_seed = 1;
    double fit_epsilon = 0.01, fit_limit = 5e6;
    bool fit_exhaustive = false;
    int fit_top = 5;
    cmd_fit->add_option("--k", fit_k, "number of positions");
    cmd_fit->add_option("--blocks", fit_blocks, "allowed ideal blocks, priority order");
    cmd_fit->add_option("--blockimage", fit_image, "fixed blockimage or ensemble spec/file");
    cmd_fit->add_option("--partition", fit_partition, "fixed partition file or spec");
    cmd_fit->add_option("--criterion", fit_criterion, "corr or penalty");
    cmd_fit->add_option("--restarts", fit_restarts, "local search restarts");
    cmd_fit->add_option("--seed", fit_seed, "search seed");
    cmd_fit->add_option("--epsilon", fit_epsilon, "near-optimal pool slack");
    cmd_fit->add_option("--pool-cap", fit_pool, "solution pool size cap");
    cmd_fit->add_option("--limit", fit_limit, "exhaustive enumeration limit");
    cmd_fit->add_option("--threads", fit_threads, "worker threads for restarts");
    cmd_fit->add_option("--top", fit_top, "solutions to print");
    cmd_fit->add_flag("--exhaustive", fit_exhaustive, "prove the optimum by enumeration");
    cmd_fit->add_option("--json", fit_json, "write the result document here ('-' stdout)");

    // ---- blockimages ----
    auto* cmd_images = app.add_subcommand("blockimages", "enumerate blockimage space");
    int img_k = 2;
    std::string img_blocks = "com,nul";
    bool img_dedupe = false, img_trivial = false, img_degenerate = false, img_list = false;
    cmd_images->add_option("--k", img_k, "number of positions");
    cmd_images->add_option("--blocks", img_blocks, "allowed ideal blocks");
    cmd_images->add_flag("--dedupe", img_dedupe, "one representative per relabeling orbit");
    cmd_images->add_flag("--drop-trivial", img_trivial, "drop constant-ideal blockimages");
    cmd_images->add_flag("--drop-degenerate", img_degenerate,
                         "drop blockimages with duplicate positions");
    cmd_images->add_flag("--list", img_list, "print every blockimage");

    // ---- qap ----
    auto* cmd_qap = app.add_subcommand("qap", "permutation test for a fixed arrangement");
    NetworkArgs qap_net;
    qap_net.attach(cmd_qap);
    std::string qap_partition, qap_image, qap_json;
    long qap_iterations = 9999;
    uint64_t qap_seed = 1;
    cmd_qap->add_option("--partition", qap_partition)->required();
    cmd_qap->add_option("--blockimage", qap_image)->required();
    cmd_qap->add_option("--iterations", qap_iterations, "Monte-Carlo draws");
    cmd_qap->add_option("--seed", qap_seed);
    cmd_qap->add_option("--json", qap_json, "write the result document here ('-' stdout)");

    // ---- render ----
    auto* cmd_render = app.add_subcommand("render", "print a blocked matrix");
    NetworkArgs render_net;
    render_net.attach(cmd_render);
    std::string render_partition, render_image;
    cmd_render->add_option("--partition", render_partition)->required();
    cmd_render->add_option("--blockimage", render_image)->required();

    // ---- replicate ----
    auto* cmd_rep = app.add_subcommand("replicate", "re-compute published values");
    std::string rep_fixture = "all", rep_dir, rep_json;
    bool rep_expensive = false;
    cmd_rep->add_option("--fixture", rep_fixture,
                        "footnote14, befig1, transatlantic, kansas, hlebec, primates, "
                        "eies, or all");
    cmd_rep->add_option("--fixtures-dir", rep_dir, "fixture directory override");
    cmd_rep->add_flag("--expensive", rep_expensive, "include long exhaustive counts");
    cmd_rep->add_option("--json", rep_json, "write the report here ('-' stdout)");

    // ---- write-fixtures ----
    auto* cmd_wf = app.add_subcommand("write-fixtures", "write bundled fixture files");
    std::string wf_dir = "fixtures";
    cmd_wf->add_option("--dir", wf_dir, "target directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    if (cmd_eval->parsed()) {
        bc_network* net = eval_net.load();
        bc_partition* part = load_partition(net, eval_partition);
        bc_blockimage* image = load_blockimage(eval_image);
        bc_evaluation* ev = nullptr;
        check(bc_evaluate(net, part, image, &ev));
        double corr = bc_evaluation_correlation(ev);
        long pen = bc_evaluation_penalty(ev);
        std::printf("correlation: %.4f\n", corr);
        if (pen >= 0) std::printf("penalty: %ld\n", pen);
        if (eval_render) {
            char* text = nullptr;
            check(bc_render(net, part, image, &text));
            std::printf("\n%s", take_string(text).c_str());
        }
        if (!eval_json.empty()) {
            char* ev_json = nullptr;
            check(bc_evaluation_json(ev, &ev_json));
            json doc = document_header("evaluate", net,
                                       json{{"partition", eval_partition},
                                            {"blockimage", eval_image}});
            doc["evaluation"] = json::parse(take_string(ev_json));
            emit_document(doc, eval_json);
        }
        bc_evaluation_free(ev);
        bc_blockimage_free(image);
        bc_partition_free(part);
        bc_network_free(net);
        return 0;
    }

    if (cmd_fit->parsed()) {
        bc_network* net = fit_net.load();
        bc_search_params params;
        bc_search_params_init(&params);
        params.k = fit_k;
        params.allowed_codes = fit_blocks.c_str();
        std::string criterion = fit_criterion == "penalty" ? "penalty" : "correlation";
        if (fit_criterion != "corr" && fit_criterion != "correlation" &&
            fit_criterion != "penalty") {
            std::cerr << "error: --criterion must be corr or penalty\n";
            return 1;
        }
        params.criterion = criterion.c_str();
        params.restarts = fit_restarts;
        params.seed = fit_seed;
        params.epsilon_near = fit_epsilon;
        params.pool_cap = fit_pool;
        params.exhaustive_limit = fit_limit;
        params.threads = fit_threads;

        bc_blockimage* image = fit_image.empty() ? nullptr : load_blockimage(fit_image);
        bc_partition* part = fit_partition.empty() ? nullptr
                                                   : load_partition(net, fit_partition);
        bc_pool* pool = nullptr;
        if (fit_exhaustive) {
            if (part) {
                std::cerr << "error: --exhaustive searches partitions; drop --partition\n";
                return 1;
            }
            check(bc_exhaustive_search(net, &params, image, &pool));
        } else {
            check(bc_local_search(net, &params, part, image, &pool));
        }
        int shown = std::min(fit_top, bc_pool_size(pool));
        std::printf("%d solution(s) in pool, optimum %s\n", bc_pool_size(pool),
                    bc_pool_optimum_is_proven(pool) ? "proven" : "heuristic");
        for (int i = 0; i < shown; ++i) {
            bc_partition* sp = nullptr;
            bc_blockimage* si = nullptr;
            check(bc_pool_solution(pool, i, &sp, &si));
            char* ptext = nullptr;
            char* itext = nullptr;
            check(bc_partition_format(sp, net, &ptext));
            check(bc_blockimage_format(si, &itext));
            double corr = bc_pool_correlation(pool, i);
            long pen = bc_pool_penalty(pool, i);
            std::printf("#%d", i + 1);
            if (corr > -2.0) std::printf("  corr %.4f", corr);
            if (pen >= 0) std::printf("  penalty %ld", pen);
            std::string itext_s = take_string(itext);
            for (auto& c : itext_s)
                if (c == '\n') c = ';';
            std::printf("\n    %s    [%s]\n", take_string(ptext).c_str(), itext_s.c_str());
            bc_partition_free(sp);
            bc_blockimage_free(si);
        }
        if (!fit_json.empty()) {
            char* pool_json = nullptr;
            check(bc_pool_json(pool, net, &pool_json));
            json doc = document_header(
                "fit", net,
                json{{"k", fit_k},
                     {"blocks", fit_blocks},
                     {"criterion", criterion},
                     {"blockimage", fit_image},
                     {"partition", fit_partition},
                     {"restarts", fit_restarts},
                     {"epsilon", fit_epsilon},
                     {"exhaustive", fit_exhaustive}});
            doc["seed"] = fit_seed;
            doc["result"] = json::parse(take_string(pool_json));
            emit_document(doc, fit_json);
        }
        bc_pool_free(pool);
        if (image) bc_blockimage_free(image);
        if (part) bc_partition_free(part);
        bc_network_free(net);
        return 0;
    }

    if (cmd_images->parsed()) {
        long long count = 0;
        check(bc_blockimage_enumerate_count(img_k, img_blocks.c_str(), img_dedupe ? 1 : 0,
                                            img_trivial ? 1 : 0, img_degenerate ? 1 : 0,
                                            &count));
        std::printf("%lld blockimage(s)\n", count);
        if (img_list) {
            char* listing = nullptr;
            check(bc_blockimage_enumerate(img_k, img_blocks.c_str(), img_dedupe ? 1 : 0,
                                          img_trivial ? 1 : 0, img_degenerate ? 1 : 0,
                                          &listing));
            std::printf("%s", take_string(listing).c_str());
        }
        return 0;
    }

    if (cmd_qap->parsed()) {
        bc_network* net = qap_net.load();
        bc_partition* part = load_partition(net, qap_partition);
        bc_blockimage* image = load_blockimage(qap_image);
        bc_qap* result = nullptr;
        check(bc_qap_test(net, part, image, qap_iterations, qap_seed, &result));
        std::printf("observed correlation: %.4f\n", bc_qap_observed(result));
        std::printf("p-value: %.6g (%s, %ld permutations)\n", bc_qap_p_value(result),
                    bc_qap_exact(result) ? "exact" : "Monte-Carlo",
                    bc_qap_iterations(result));
        if (!qap_json.empty()) {
            char* qjson = nullptr;
            check(bc_qap_json(result, &qjson));
            json doc = document_header("qap", net,
                                       json{{"partition", qap_partition},
                                            {"blockimage", qap_image},
                                            {"iterations", qap_iterations}});
            doc["seed"] = qap_seed;
            doc["qap"] = json::parse(take_string(qjson));
            emit_document(doc, qap_json);
        }
        bc_qap_free(result);
        bc_blockimage_free(image);
        bc_partition_free(part);
        bc_network_free(net);
        return 0;
    }

    if (cmd_render->parsed()) {
        bc_network* net = render_net.load();
        bc_partition* part = load_partition(net, render_partition);
        bc_blockimage* image = load_blockimage(render_image);
        char* text = nullptr;
        check(bc_render(net, part, image, &text));
        std::printf("%s", take_string(text).c_str());
        bc_blockimage_free(image);
        bc_partition_free(part);
        bc_network_free(net);
        return 0;
    }

    if (cmd_rep->parsed()) {
        char* text = nullptr;
        char* report_json = nullptr;
        int failures = 0;
        check(bc_replicate(rep_fixture.c_str(), rep_dir.empty() ? nullptr : rep_dir.c_str(),
                           rep_expensive ? 1 : 0, &text, &report_json, &failures));
        std::printf("%s", take_string(text).c_str());
        if (!rep_json.empty()) emit_document(json::parse(take_string(report_json)), rep_json);
        else bc_string_free(report_json);
        return failures > 0 ? 5 : 0;
    }

    if (cmd_wf->parsed()) {
        check(bc_write_fixtures(wf_dir.c_str()));
        std::printf("fixture files written to %s\n", wf_dir.c_str());
        return 0;
    }

    return 1;
}
