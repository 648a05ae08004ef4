#include "report.hpp"

#include <cmath>

#include "io.hpp"

namespace blockcorr {

double round4(double v) { return std::round(v * 10000.0) / 10000.0; }

json partition_to_json(const Partition& part, const Network& net) {
    json groups = json::array();
    for (int g = 0; g < part.k(); ++g) {
        json members = json::array();
        for (int a : part.members(g)) members.push_back(net.label(a));
        groups.push_back(members);
    }
    return groups;
}

json blockimage_to_json(const BlockImage& image) {
    json rows = json::array();
    for (int i = 0; i < image.k(); ++i) {
        json row = json::array();
        for (int j = 0; j < image.k(); ++j) {
            const auto& alts = image.alternatives(i, j);
            if (alts.size() == 1) {
                row.push_back(block_type_code(alts[0]));
            } else {
                std::string joined;
                for (size_t a = 0; a < alts.size(); ++a) {
                    if (a) joined += '|';
                    joined += block_type_code(alts[a]);
                }
                row.push_back(joined);
            }
        }
        rows.push_back(row);
    }
    return rows;
}

json evaluation_to_json(const Evaluation& ev) {
    json doc;
    doc["correlation_4dp"] = round4(ev.correlation);
    doc["correlation"] = ev.correlation;
    if (ev.penalty) {
        doc["penalty"] = *ev.penalty;
        if (ev.penalty_excludes_dnc) doc["penalty_excludes_dnc"] = true;
    }
    json blocks = json::array();
    for (const auto& d : ev.per_block) {
        json b;
        b["i"] = d.i;
        b["j"] = d.j;
        b["type"] = block_type_code(d.type);
        b["cells"] = d.checkable_cells;
        b["triplets"] = d.triplet_count;
        b["weight"] = d.weight_sum;
        b["density"] = d.density;
        if (d.penalty) b["penalty"] = *d.penalty;
        blocks.push_back(b);
    }
    doc["per_block"] = blocks;
    return doc;
}

json solution_to_json(const Solution& sol, const Network& net) {
    json doc;
    if (sol.correlation) {
        doc["correlation_4dp"] = round4(*sol.correlation);
        doc["correlation"] = *sol.correlation;
    }
    if (sol.penalty) doc["penalty"] = *sol.penalty;
    doc["partition"] = partition_to_json(sol.partition, net);
    doc["blockimage"] = blockimage_to_json(sol.image);
    doc["provenance"] = sol.provenance;
    return doc;
}

json pool_to_json(const SolutionPool& pool, const Network& net) {
    json doc;
    doc["criterion"] = pool.criterion() == Criterion::Correlation ? "correlation" : "penalty";
    doc["optimum_is_proven"] = pool.optimum_is_proven;
    json sols = json::array();
    for (const auto& s : pool.solutions()) sols.push_back(solution_to_json(s, net));
    doc["solutions"] = sols;
    return doc;
}

json qap_to_json(const QapResult& r) {
    json doc;
    doc["observed_4dp"] = round4(r.observed);
    doc["observed"] = r.observed;
    doc["iterations"] = r.iterations;
    doc["count_ge"] = r.count_ge;
    doc["undefined"] = r.undefined;
    doc["p_value"] = r.p_value;
    doc["exact"] = r.exact;
    doc["null"] = {{"mean", r.null_mean},
                   {"sd", r.null_sd},
                   {"min", r.null_min},
                   {"max", r.null_max}};
    if (!r.exact) doc["seed"] = r.seed;
    return doc;
}

json result_document(const std::string& command, json params, const Network& net) {
    json doc;
    doc["command"] = command;
    doc["params"] = std::move(params);
    doc["network_digest"] = network_digest(net);
    return doc;
}

std::string dump_document(const json& doc) { return doc.dump(2) + "\n"; }

} // namespace blockcorr
