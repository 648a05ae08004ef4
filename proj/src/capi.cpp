#include "blockcorr.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "criteria.hpp"
#include "errors.hpp"
#include "fixtures.hpp"
#include "io.hpp"
#include "model.hpp"
#include "qap.hpp"
#include "replicate.hpp"
#include "report.hpp"
#include "search.hpp"

using namespace blockcorr;

struct bc_network {
    Network net;
};
struct bc_partition {
    Partition part;
};
struct bc_blockimage {
    BlockImage image;
};
struct bc_evaluation {
    Evaluation ev;
    bool binary;
};
struct bc_pool {
    SolutionPool pool;
};
struct bc_qap {
    QapResult result;
};

namespace {

thread_local std::string g_last_error;

bc_status fail(bc_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

template <typename Fn>
bc_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const UsageError& e) {
        return fail(BC_ERR_USAGE, e.what());
    } catch (const UndefinedCriterion& e) {
        return fail(BC_ERR_UNDEFINED, e.what());
    } catch (const LimitExceeded& e) {
        return fail(BC_ERR_LIMIT, e.what());
    } catch (const DataError& e) {
        return fail(BC_ERR_DATA, e.what());
    } catch (const std::exception& e) {
        return fail(BC_ERR_INTERNAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::vector<BlockType> parse_codes(const char* csv) {
    std::vector<BlockType> out;
    if (!csv) return {BlockType::Com, BlockType::Nul};
    std::string s(csv);
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        std::string code = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (!code.empty()) {
            BlockType t;
            if (!parse_block_type(code, &t)) throw UsageError("unknown block type '" + code + "'");
            out.push_back(t);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw UsageError("empty block type list");
    return out;
}

SearchParams convert_params(const bc_search_params* p) {
    SearchParams out;
    if (!p) return out;
    out.k = p->k;
    out.allowed_types = parse_codes(p->allowed_codes);
    if (p->criterion && std::string(p->criterion) == "penalty")
        out.criterion = Criterion::Penalty;
    else if (p->criterion && std::string(p->criterion) != "correlation" &&
             std::string(p->criterion) != "corr")
        throw UsageError("criterion must be 'correlation' or 'penalty'");
    out.restarts = p->restarts > 0 ? p->restarts : 50;
    out.max_no_improve = p->max_no_improve;
    out.seed = p->seed;
    out.epsilon_near = p->epsilon_near >= 0 ? p->epsilon_near : 0.01;
    out.pool_cap = p->pool_cap > 0 ? p->pool_cap : 100;
    out.exhaustive_limit = p->exhaustive_limit > 0 ? p->exhaustive_limit : 5e6;
    out.threads = p->threads > 0 ? p->threads : 1;
    return out;
}

} // namespace

extern "C" {

const char* bc_last_error(void) { return g_last_error.c_str(); }

void bc_string_free(char* s) { std::free(s); }

/* ---- networks ---------------------------------------------------------- */

bc_status bc_network_create(const char* const* labels, const double* values, int n,
                            int directed, int self_ties_defined, bc_network** out) {
    return guarded([&] {
        if (n <= 0 || !values || !out) throw UsageError("bc_network_create: bad arguments");
        std::vector<std::string> ls;
        for (int i = 0; i < n; ++i)
            ls.push_back(labels && labels[i] ? labels[i] : std::to_string(i + 1));
        std::vector<double> vs(values, values + static_cast<size_t>(n) * n);
        *out = new bc_network{build_network(std::move(ls), std::move(vs), directed != 0,
                                            self_ties_defined != 0)};
        return BC_OK;
    });
}

bc_status bc_network_parse(const char* text, int directed, int self_ties_defined,
                           bc_network** out) {
    return guarded([&] {
        if (!text || !out) throw UsageError("bc_network_parse: bad arguments");
        *out = new bc_network{parse_network(text, directed != 0, self_ties_defined != 0)};
        return BC_OK;
    });
}

bc_status bc_network_parse_file(const char* path, int directed, int self_ties_defined,
                                bc_network** out) {
    return guarded([&] {
        if (!path || !out) throw UsageError("bc_network_parse_file: bad arguments");
        *out = new bc_network{parse_network_file(path, directed != 0, self_ties_defined != 0)};
        return BC_OK;
    });
}

bc_status bc_network_fixture(const char* name, const char* fixture_dir, bc_network** out) {
    return guarded([&] {
        if (!name || !out) throw UsageError("bc_network_fixture: bad arguments");
        ExternalFixture fx = load_fixture(name, fixture_dir ? fixture_dir : "");
        if (!fx.digest_ok) throw DataError(fx.note);
        if (!fx.present) throw DataError("fixture '" + std::string(name) + "' unavailable: " +
                                         fx.note);
        *out = new bc_network{*fx.network};
        return BC_OK;
    });
}

void bc_network_free(bc_network* net) { delete net; }

int bc_network_size(const bc_network* net) { return net->net.size(); }
int bc_network_directed(const bc_network* net) { return net->net.directed() ? 1 : 0; }
int bc_network_is_binary(const bc_network* net) { return net->net.is_binary() ? 1 : 0; }
const char* bc_network_label(const bc_network* net, int actor) {
    return net->net.label(actor).c_str();
}
double bc_network_value(const bc_network* net, int row, int col) {
    return net->net.at(row, col);
}

bc_status bc_network_digest(const bc_network* net, char** hex_out) {
    return guarded([&] {
        *hex_out = dup_string(network_digest(net->net));
        return BC_OK;
    });
}

bc_status bc_network_format(const bc_network* net, char** text_out) {
    return guarded([&] {
        *text_out = dup_string(format_network(net->net));
        return BC_OK;
    });
}

/* ---- partitions --------------------------------------------------------- */

bc_status bc_partition_create(const bc_network* net, const int* assignment, int k,
                              bc_partition** out) {
    return guarded([&] {
        if (!net || !assignment || !out) throw UsageError("bc_partition_create: bad arguments");
        std::vector<int> a(assignment, assignment + net->net.size());
        *out = new bc_partition{Partition(std::move(a), k)};
        return BC_OK;
    });
}

bc_status bc_partition_parse(const bc_network* net, const char* text, bc_partition** out) {
    return guarded([&] {
        if (!net || !text || !out) throw UsageError("bc_partition_parse: bad arguments");
        *out = new bc_partition{parse_partition(text, net->net)};
        return BC_OK;
    });
}

bc_status bc_partition_parse_file(const bc_network* net, const char* path,
                                  bc_partition** out) {
    return guarded([&] {
        if (!net || !path || !out) throw UsageError("bc_partition_parse_file: bad arguments");
        *out = new bc_partition{parse_partition_file(path, net->net)};
        return BC_OK;
    });
}

void bc_partition_free(bc_partition* part) { delete part; }
int bc_partition_k(const bc_partition* part) { return part->part.k(); }
int bc_partition_position(const bc_partition* part, int actor) {
    return part->part.position_of(actor);
}

bc_status bc_partition_format(const bc_partition* part, const bc_network* net,
                              char** text_out) {
    return guarded([&] {
        *text_out = dup_string(format_partition(part->part, net->net));
        return BC_OK;
    });
}

/* ---- blockimages -------------------------------------------------------- */

bc_status bc_blockimage_parse(const char* text, bc_blockimage** out) {
    return guarded([&] {
        if (!text || !out) throw UsageError("bc_blockimage_parse: bad arguments");
        *out = new bc_blockimage{parse_blockimage(text)};
        return BC_OK;
    });
}

bc_status bc_blockimage_parse_file(const char* path, bc_blockimage** out) {
    return guarded([&] {
        if (!path || !out) throw UsageError("bc_blockimage_parse_file: bad arguments");
        *out = new bc_blockimage{parse_blockimage_file(path)};
        return BC_OK;
    });
}

void bc_blockimage_free(bc_blockimage* image) { delete image; }
int bc_blockimage_k(const bc_blockimage* image) { return image->image.k(); }
int bc_blockimage_is_fixed(const bc_blockimage* image) {
    return image->image.is_fixed() ? 1 : 0;
}
long long bc_blockimage_ensemble_size(const bc_blockimage* image) {
    return image->image.ensemble_size();
}

bc_status bc_blockimage_format(const bc_blockimage* image, char** text_out) {
    return guarded([&] {
        *text_out = dup_string(format_blockimage(image->image));
        return BC_OK;
    });
}

bc_status bc_blockimage_enumerate_count(int k, const char* allowed_codes,
                                        int dedupe_relabeling, int drop_trivial,
                                        int drop_degenerate, long long* count_out) {
    return guarded([&] {
        if (!count_out) throw UsageError("bc_blockimage_enumerate_count: bad arguments");
        auto images = enumerate_blockimages(k, parse_codes(allowed_codes),
                                            dedupe_relabeling != 0, drop_trivial != 0,
                                            drop_degenerate != 0);
        *count_out = static_cast<long long>(images.size());
        return BC_OK;
    });
}

bc_status bc_blockimage_enumerate(int k, const char* allowed_codes, int dedupe_relabeling,
                                  int drop_trivial, int drop_degenerate, char** list_out) {
    return guarded([&] {
        if (!list_out) throw UsageError("bc_blockimage_enumerate: bad arguments");
        auto images = enumerate_blockimages(k, parse_codes(allowed_codes),
                                            dedupe_relabeling != 0, drop_trivial != 0,
                                            drop_degenerate != 0);
        std::string joined;
        for (const auto& img : images) {
            std::string formatted = format_blockimage(img);
            std::string line;
            for (char c : formatted) {
                if (c == '\n') {
                    line += "; ";
                } else {
                    line += c;
                }
            }
            while (line.size() >= 2 && line.compare(line.size() - 2, 2, "; ") == 0)
                line.erase(line.size() - 2);
            joined += line;
            joined += '\n';
        }
        *list_out = dup_string(joined);
        return BC_OK;
    });
}

/* ---- evaluation --------------------------------------------------------- */

bc_status bc_evaluate(const bc_network* net, const bc_partition* part,
                      const bc_blockimage* image, bc_evaluation** out) {
    return guarded([&] {
        if (!net || !part || !image || !out) throw UsageError("bc_evaluate: bad arguments");
        *out = new bc_evaluation{evaluate(net->net, part->part, image->image),
                                 net->net.is_binary()};
        return BC_OK;
    });
}

void bc_evaluation_free(bc_evaluation* ev) { delete ev; }
double bc_evaluation_correlation(const bc_evaluation* ev) { return ev->ev.correlation; }
long bc_evaluation_penalty(const bc_evaluation* ev) {
    return ev->ev.penalty ? *ev->ev.penalty : -1;
}

bc_status bc_evaluation_json(const bc_evaluation* ev, char** json_out) {
    return guarded([&] {
        *json_out = dup_string(dump_document(evaluation_to_json(ev->ev)));
        return BC_OK;
    });
}

bc_status bc_block_penalty(const bc_network* net, const bc_partition* part, int i, int j,
                           const char* type_code, long* out) {
    return guarded([&] {
        BlockType t;
        if (!type_code || !parse_block_type(type_code, &t))
            throw UsageError("unknown block type code");
        *out = block_penalty(net->net, part->part, i, j, t);
        return BC_OK;
    });
}

bc_status bc_render(const bc_network* net, const bc_partition* part,
                    const bc_blockimage* image, char** text_out) {
    return guarded([&] {
        *text_out = dup_string(render_blockmodel(net->net, part->part, image->image));
        return BC_OK;
    });
}

/* ---- search ------------------------------------------------------------- */

void bc_search_params_init(bc_search_params* params) {
    if (!params) return;
    params->k = 2;
    params->allowed_codes = nullptr;
    params->criterion = nullptr;
    params->restarts = 50;
    params->max_no_improve = 0;
    params->seed = 1;
    params->epsilon_near = 0.01;
    params->pool_cap = 100;
    params->exhaustive_limit = 5e6;
    params->threads = 1;
}

bc_status bc_exhaustive_search(const bc_network* net, const bc_search_params* params,
                               const bc_blockimage* fixed_image, bc_pool** out) {
    return guarded([&] {
        if (!net || !out) throw UsageError("bc_exhaustive_search: bad arguments");
        std::optional<BlockImage> image;
        if (fixed_image) image = fixed_image->image;
        *out = new bc_pool{exhaustive_search(net->net, convert_params(params), image)};
        return BC_OK;
    });
}

bc_status bc_local_search(const bc_network* net, const bc_search_params* params,
                          const bc_partition* fixed_partition, const bc_blockimage* image,
                          bc_pool** out) {
    return guarded([&] {
        if (!net || !out) throw UsageError("bc_local_search: bad arguments");
        std::optional<Partition> part;
        if (fixed_partition) part = fixed_partition->part;
        std::optional<BlockImage> img;
        if (image) img = image->image;
        *out = new bc_pool{local_search(net->net, convert_params(params), part, img)};
        return BC_OK;
    });
}

bc_status bc_count_optima(const bc_network* net, const bc_search_params* params,
                          const bc_blockimage* fixed_image, int drop_degenerate,
                          long* count_out, bc_pool** pool_out) {
    return guarded([&] {
        if (!net || !count_out) throw UsageError("bc_count_optima: bad arguments");
        std::optional<BlockImage> image;
        if (fixed_image) image = fixed_image->image;
        OptimaCount oc =
            count_optima(net->net, convert_params(params), image, drop_degenerate != 0);
        *count_out = oc.count;
        if (pool_out) *pool_out = new bc_pool{std::move(oc.pool)};
        return BC_OK;
    });
}

void bc_pool_free(bc_pool* pool) { delete pool; }
int bc_pool_size(const bc_pool* pool) {
    return static_cast<int>(pool->pool.solutions().size());
}
int bc_pool_optimum_is_proven(const bc_pool* pool) {
    return pool->pool.optimum_is_proven ? 1 : 0;
}
double bc_pool_best_score(const bc_pool* pool) { return pool->pool.best_score(); }

bc_status bc_pool_solution(const bc_pool* pool, int index, bc_partition** part_out,
                           bc_blockimage** image_out) {
    return guarded([&] {
        const auto& sols = pool->pool.solutions();
        if (index < 0 || index >= static_cast<int>(sols.size()))
            throw UsageError("pool index out of range");
        if (part_out) *part_out = new bc_partition{sols[index].partition};
        if (image_out) *image_out = new bc_blockimage{sols[index].image};
        return BC_OK;
    });
}

double bc_pool_correlation(const bc_pool* pool, int index) {
    const auto& sols = pool->pool.solutions();
    if (index < 0 || index >= static_cast<int>(sols.size()) || !sols[index].correlation)
        return -2.0;
    return *sols[index].correlation;
}

long bc_pool_penalty(const bc_pool* pool, int index) {
    const auto& sols = pool->pool.solutions();
    if (index < 0 || index >= static_cast<int>(sols.size()) || !sols[index].penalty)
        return -1;
    return *sols[index].penalty;
}

bc_status bc_pool_json(const bc_pool* pool, const bc_network* net, char** json_out) {
    return guarded([&] {
        *json_out = dup_string(dump_document(pool_to_json(pool->pool, net->net)));
        return BC_OK;
    });
}

/* ---- QAP ----------------------------------------------------------------- */

bc_status bc_qap_test(const bc_network* net, const bc_partition* part,
                      const bc_blockimage* image, long iterations, uint64_t seed,
                      bc_qap** out) {
    return guarded([&] {
        if (!net || !part || !image || !out) throw UsageError("bc_qap_test: bad arguments");
        *out = new bc_qap{qap_test(net->net, part->part, image->image, iterations, seed)};
        return BC_OK;
    });
}

void bc_qap_free(bc_qap* qap) { delete qap; }
double bc_qap_observed(const bc_qap* qap) { return qap->result.observed; }
double bc_qap_p_value(const bc_qap* qap) { return qap->result.p_value; }
long bc_qap_iterations(const bc_qap* qap) { return qap->result.iterations; }
int bc_qap_exact(const bc_qap* qap) { return qap->result.exact ? 1 : 0; }

bc_status bc_qap_json(const bc_qap* qap, char** json_out) {
    return guarded([&] {
        *json_out = dup_string(dump_document(qap_to_json(qap->result)));
        return BC_OK;
    });
}

/* ---- replication --------------------------------------------------------- */

bc_status bc_replicate(const char* fixture, const char* fixture_dir, int expensive,
                       char** text_out, char** json_out, int* failures_out) {
    return guarded([&] {
        if (!fixture) throw UsageError("bc_replicate: fixture name required");
        ReplicateReport report =
            replicate(fixture, fixture_dir ? fixture_dir : "", expensive != 0);
        if (text_out) *text_out = dup_string(report.render());
        if (json_out) *json_out = dup_string(dump_document(report.to_json()));
        if (failures_out) *failures_out = report.failures();
        return BC_OK;
    });
}

bc_status bc_write_fixtures(const char* dir) {
    return guarded([&] {
        if (!dir) throw UsageError("bc_write_fixtures: dir required");
        write_fixture_files(dir);
        return BC_OK;
    });
}

} // extern "C"
