#include "search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "moments.hpp"
#include "rng.hpp"

namespace blockcorr {

namespace {

constexpr double kCorrTieTol = 1e-9;

int type_class(BlockType t) {
    // Ideal-vector class a cell contributes: 1, 0, both (-1), or nothing (-2).
    switch (t) {
        case BlockType::Com:
        case BlockType::Reg:
        case BlockType::Rre:
        case BlockType::Cre: return 1;
        case BlockType::Nul: return 0;
        case BlockType::Rfn:
        case BlockType::Cfn: return -1;
        case BlockType::Dnc: return -2;
    }
    return -2;
}

std::string partition_key(const Partition& p) {
    std::string key(p.assignment().size(), '\0');
    for (size_t i = 0; i < key.size(); ++i)
        key[i] = static_cast<char>(p.assignment()[i]);
    return key;
}

} // namespace

bool blockimage_is_trivial(const BlockImage& image) {
    bool any = false, has_one = false, has_zero = false, has_mixed = false;
    for (int i = 0; i < image.k(); ++i)
        for (int j = 0; j < image.k(); ++j)
            for (BlockType t : image.alternatives(i, j)) {
                int cls = type_class(t);
                if (cls == -2) continue;
                any = true;
                if (cls == 1) has_one = true;
                else if (cls == 0) has_zero = true;
                else has_mixed = true;
            }
    if (!any) return true;
    if (has_mixed) return false;
    return !(has_one && has_zero);
}

bool blockimage_is_degenerate(const BlockImage& image) {
    int k = image.k();
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            bool same = true;
            for (int c = 0; c < k && same; ++c) {
                if (image.alternatives(i, c) != image.alternatives(j, c)) same = false;
                if (same && image.alternatives(c, i) != image.alternatives(c, j)) same = false;
            }
            if (same) return true;
        }
    return false;
}

// ---------------------------------------------------------------------------
// SolutionPool

SolutionPool::SolutionPool(Criterion criterion, double epsilon_near, int cap,
                           const std::vector<BlockType>& priority)
    : criterion_(criterion), epsilon_(epsilon_near), cap_(cap) {
    type_rank_.assign(kBlockTypeCount, kBlockTypeCount);
    for (size_t r = 0; r < priority.size(); ++r)
        type_rank_[static_cast<int>(priority[r])] = static_cast<int>(r);
}

bool SolutionPool::better(double a, double b) const {
    return criterion_ == Criterion::Correlation ? a > b : a < b;
}

bool SolutionPool::within_epsilon(double score, double best) const {
    if (criterion_ == Criterion::Correlation)
        return score >= best - epsilon_ * std::abs(best) - kCorrTieTol;
    return score <= best * (1.0 + epsilon_) + 1e-12;
}

double SolutionPool::best_score() const {
    double best = 0;
    bool have = false;
    for (const auto& s : entries_) {
        double v = s.score(criterion_);
        if (!have || better(v, best)) {
            best = v;
            have = true;
        }
    }
    if (!have) throw DataError("empty solution pool");
    return best;
}

void SolutionPool::insert(Solution sol) {
    std::vector<int> map;
    Partition canon = sol.partition.canonical(&map);
    sol.image = sol.image.permuted(map);
    sol.partition = std::move(canon);
    double score = sol.score(criterion_);

    double tie_tol = criterion_ == Criterion::Correlation ? kCorrTieTol : 0.0;
    std::string key = partition_key(sol.partition);
    for (auto& e : entries_) {
        if (std::abs(e.score(criterion_) - score) > tie_tol) continue;
        if (partition_key(e.partition) != key) continue;
        // Same partition at the same score: keep the priority-ranked image.
        auto rank_seq = [&](const BlockImage& img) {
            std::vector<int> seq;
            for (int i = 0; i < img.k(); ++i)
                for (int j = 0; j < img.k(); ++j)
                    seq.push_back(type_rank_[static_cast<int>(img.cell(i, j))]);
            return seq;
        };
        if (rank_seq(sol.image) < rank_seq(e.image)) e = std::move(sol);
        return;
    }
    entries_.push_back(std::move(sol));
    if (entries_.size() > static_cast<size_t>(cap_) * 8) finalize();
}

void SolutionPool::merge(const SolutionPool& other) {
    for (const auto& s : other.solutions()) insert(s);
}

void SolutionPool::finalize() {
    if (entries_.empty()) return;
    double best = best_score();
    std::vector<Solution> kept;
    for (auto& s : entries_)
        if (within_epsilon(s.score(criterion_), best)) kept.push_back(std::move(s));
    auto order = [&](const Solution& a, const Solution& b) {
        double sa = a.score(criterion_), sb = b.score(criterion_);
        if (sa != sb) return better(sa, sb);
        if (a.partition.assignment() != b.partition.assignment())
            return a.partition.assignment() < b.partition.assignment();
        return a.image.fixed_cells() < b.image.fixed_cells();
    };
    std::sort(kept.begin(), kept.end(), order);
    if (kept.size() > static_cast<size_t>(cap_))
        kept.erase(kept.begin() + cap_, kept.end());
    entries_ = std::move(kept);
}

// ---------------------------------------------------------------------------
// Enumeration

double stirling2(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (n == 0) return k == 0 ? 1 : 0;
    std::vector<double> row(k + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = std::min(i, k); j >= 1; --j)
            row[j] = j * row[j] + row[j - 1];
    return row[k];
}

PartitionEnumerator::PartitionEnumerator(int n, int k) : n_(n), k_(k), first_(true) {
    if (k < 2) throw DataError("partition enumeration needs k >= 2");
    if (k > n) throw DataError("cannot split " + std::to_string(n) + " actors into " +
                               std::to_string(k) + " non-empty positions");
    a_.assign(n, 0);
    for (int i = 0; i < n; ++i) a_[i] = std::max(0, k - (n - i));
    prefix_max_.assign(n + 1, -1);
    for (int i = 0; i < n; ++i) prefix_max_[i + 1] = std::max(prefix_max_[i], a_[i]);
}

void PartitionEnumerator::fill_min_tail(int from) {
    // Smallest suffix that still reaches exactly k classes: zeros, then the
    // missing classes introduced one by one at the very end.
    int used = prefix_max_[from + 1] + 1;
    int need = k_ - used;
    for (int j = from + 1; j < n_; ++j) {
        int remaining = n_ - j;
        if (remaining <= need) {
            a_[j] = prefix_max_[j] + 1;
            need--;
        } else {
            a_[j] = 0;
        }
        prefix_max_[j + 1] = std::max(prefix_max_[j], a_[j]);
    }
}

bool PartitionEnumerator::next(std::vector<int>& assignment) {
    if (first_) {
        first_ = false;
        assignment = a_;
        return true;
    }
    for (int i = n_ - 1; i >= 1; --i) {
        int vmax = std::min(prefix_max_[i] + 1, k_ - 1);
        for (int v = a_[i] + 1; v <= vmax; ++v) {
            int used = std::max(prefix_max_[i], v) + 1;
            if (used + (n_ - i - 1) < k_) continue;
            a_[i] = v;
            prefix_max_[i + 1] = std::max(prefix_max_[i], v);
            fill_min_tail(i);
            assignment = a_;
            return true;
        }
    }
    return false;
}

std::vector<BlockImage> enumerate_blockimages(int k, const std::vector<BlockType>& allowed,
                                              bool dedupe_relabeling, bool drop_trivial,
                                              bool drop_degenerate, double limit) {
    if (allowed.empty()) throw DataError("no allowed block types");
    int cells = k * k;
    double total = std::pow(static_cast<double>(allowed.size()), cells);
    if (total > limit)
        throw LimitExceeded("blockimage space has " + std::to_string(total) +
                            " members, over the limit of " + std::to_string(limit));
    std::vector<BlockImage> out;
    std::vector<int> odo(cells, 0);
    std::vector<int> perm_base(k);
    for (int i = 0; i < k; ++i) perm_base[i] = i;
    for (;;) {
        std::vector<BlockType> fixed(cells);
        for (int c = 0; c < cells; ++c) fixed[c] = allowed[odo[c]];
        BlockImage img = BlockImage::fixed(k, fixed);
        bool keep = true;
        if (drop_trivial && blockimage_is_trivial(img)) keep = false;
        if (keep && drop_degenerate && blockimage_is_degenerate(img)) keep = false;
        if (keep && dedupe_relabeling) {
            std::vector<int> perm = perm_base;
            while (std::next_permutation(perm.begin(), perm.end())) {
                std::vector<BlockType> relabeled(cells);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j)
                        relabeled[perm[i] * k + perm[j]] = fixed[i * k + j];
                if (relabeled < fixed) {
                    keep = false;
                    break;
                }
            }
        }
        if (keep) out.push_back(std::move(img));
        int c = cells - 1;
        while (c >= 0 && odo[c] == static_cast<int>(allowed.size()) - 1) odo[c--] = 0;
        if (c < 0) break;
        odo[c]++;
    }
    return out;
}

std::vector<BlockImage> expand_ensemble(const BlockImage& image) {
    int k = image.k();
    int cells = k * k;
    std::vector<BlockImage> out;
    std::vector<int> odo(cells, 0);
    for (;;) {
        std::vector<BlockType> fixed(cells);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                fixed[i * k + j] = image.alternatives(i, j)[odo[i * k + j]];
        out.push_back(BlockImage::fixed(k, fixed));
        int c = cells - 1;
        while (c >= 0 &&
               odo[c] == static_cast<int>(image.alternatives(c / k, c % k).size()) - 1)
            odo[c--] = 0;
        if (c < 0) break;
        odo[c]++;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Shared evaluation helpers

namespace {

struct TypeRanker {
    std::vector<int> rank;
    explicit TypeRanker(const std::vector<BlockType>& priority) {
        rank.assign(kBlockTypeCount, kBlockTypeCount);
        for (size_t r = 0; r < priority.size(); ++r)
            rank[static_cast<int>(priority[r])] = static_cast<int>(r);
    }
    bool lex_less(const std::vector<BlockType>& a, const std::vector<BlockType>& b) const {
        for (size_t i = 0; i < a.size(); ++i) {
            int ra = rank[static_cast<int>(a[i])], rb = rank[static_cast<int>(b[i])];
            if (ra != rb) return ra < rb;
        }
        return false;
    }
};

// Best fixed blockimage for one partition under the correlation criterion:
// maximal correlation, ties resolved toward the priority order.
struct PartitionBest {
    bool defined = false;
    double score = 0;
    size_t image_index = 0;
};

PartitionBest best_image_correlation(const BlockMomentTable& table,
                                     const std::vector<std::vector<BlockType>>& images,
                                     const TypeRanker& ranker) {
    PartitionBest best;
    for (size_t m = 0; m < images.size(); ++m) {
        auto corr = table.correlation(images[m]);
        if (!corr) continue;
        if (!best.defined || *corr > best.score + kCorrTieTol) {
            best = {true, *corr, m};
        } else if (*corr > best.score - kCorrTieTol &&
                   ranker.lex_less(images[m], images[best.image_index])) {
            best.image_index = m;
            best.score = std::max(best.score, *corr);
        }
    }
    return best;
}

// Separable per-block optimum under the penalty criterion, repaired to a
// non-trivial image when necessary.
std::pair<std::vector<BlockType>, long> best_image_penalty(
    const BlockMomentTable& table, const std::vector<BlockType>& allowed, int k) {
    std::vector<BlockType> cells(static_cast<size_t>(k) * k, allowed[0]);
    long total = 0;
    for (int b = 0; b < k * k; ++b) {
        long best = -1;
        for (BlockType t : allowed) {
            long p = table.penalty(b / k, b % k, t);
            if (best < 0 || p < best) {
                best = p;
                cells[b] = t;
            }
        }
        total += best;
    }
    BlockImage img = BlockImage::fixed(k, cells);
    if (!blockimage_is_trivial(img)) return {cells, total};
    // Cheapest single-cell change that makes the image informative.
    long best_delta = -1;
    int best_cell = -1;
    BlockType best_type = allowed[0];
    for (int b = 0; b < k * k; ++b)
        for (BlockType t : allowed) {
            if (t == cells[b]) continue;
            std::vector<BlockType> trial = cells;
            trial[b] = t;
            if (blockimage_is_trivial(BlockImage::fixed(k, trial))) continue;
            long delta = table.penalty(b / k, b % k, t) - table.penalty(b / k, b % k, cells[b]);
            if (best_delta < 0 || delta < best_delta) {
                best_delta = delta;
                best_cell = b;
                best_type = t;
            }
        }
    if (best_cell < 0)
        throw UndefinedCriterion(UndefinedCriterion::Vector::Ideal,
                                 "no non-trivial blockimage exists over the allowed types");
    cells[best_cell] = best_type;
    return {cells, total + best_delta};
}

Solution make_solution(const Network& net, Partition part, BlockImage image,
                       const BlockMomentTable& table, std::string provenance) {
    Solution s{std::move(part), std::move(image), std::nullopt, std::nullopt,
               std::move(provenance)};
    auto corr = table.correlation(s.image);
    if (corr) s.correlation = *corr;
    if (net.is_binary()) s.penalty = table.total_penalty(s.image.fixed_cells());
    return s;
}

} // namespace

// ---------------------------------------------------------------------------
// Exhaustive search

namespace {

struct ExhaustiveRun {
    SolutionPool pool;
    long optima_count = 0;
    long optima_nondegenerate = 0;
    double best = 0;
    bool have_best = false;
};

ExhaustiveRun exhaustive_run(const Network& net, const SearchParams& params,
                             const std::optional<BlockImage>& fixed_image) {
    if (params.k < 2) throw DataError("search needs k >= 2");
    double n_parts = stirling2(net.size(), params.k);
    if (n_parts > params.exhaustive_limit)
        throw LimitExceeded("exhaustive enumeration needs " + std::to_string(n_parts) +
                            " partitions, over the limit of " +
                            std::to_string(params.exhaustive_limit) +
                            "; use local search");
    if (params.criterion == Criterion::Penalty && !net.is_binary())
        throw DataError("penalty criterion is defined for binary networks only");

    // The enumeration below walks canonical (restricted-growth) partitions,
    // i.e. partitions with unlabeled positions. A supplied blockimage refers
    // to concrete position indices, so it must be tried in every distinct
    // relabeling for the pair (partition, image) space to be covered.
    auto with_relabelings = [&](const std::vector<BlockImage>& base) {
        std::vector<BlockImage> out;
        std::vector<int> perm(params.k);
        for (auto& img : base) {
            for (int i = 0; i < params.k; ++i) perm[i] = i;
            do {
                BlockImage candidate = img.permuted(perm);
                if (std::find(out.begin(), out.end(), candidate) == out.end())
                    out.push_back(std::move(candidate));
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        return out;
    };

    bool ensemble_mode = false;
    std::vector<BlockImage> images;
    if (fixed_image) {
        if (fixed_image->k() != params.k)
            throw DataError("blockimage dimension does not match k");
        if (fixed_image->is_fixed()) {
            images = with_relabelings({*fixed_image});
        } else {
            ensemble_mode = true;
            if (fixed_image->ensemble_size() > params.exhaustive_limit)
                throw LimitExceeded("ensemble too large");
            images = with_relabelings(expand_ensemble(*fixed_image));
        }
    } else if (params.criterion == Criterion::Correlation) {
        images = enumerate_blockimages(params.k, params.allowed_types, false, true, false,
                                       params.exhaustive_limit);
    }

    std::vector<std::vector<BlockType>> image_cells;
    image_cells.reserve(images.size());
    for (const auto& img : images) image_cells.push_back(img.fixed_cells());

    TypeRanker ranker(params.allowed_types);
    ExhaustiveRun run{SolutionPool(params.criterion, params.epsilon_near, params.pool_cap,
                                   params.allowed_types)};
    double tie_tol = params.criterion == Criterion::Correlation ? kCorrTieTol : 0.0;
    auto better = [&](double a, double b) {
        return params.criterion == Criterion::Correlation ? a > b + tie_tol : a < b;
    };
    auto tied = [&](double a, double b) { return std::abs(a - b) <= tie_tol; };

    // entry gate mirroring the pool's near-optimal window, so that clearly
    // uninteresting arrangements never pay for Partition construction
    auto might_enter = [&](double score) {
        if (!run.have_best) return true;
        if (params.criterion == Criterion::Correlation)
            return score >= run.best - params.epsilon_near * std::abs(run.best) - kCorrTieTol;
        return score <= run.best * (1.0 + params.epsilon_near) + 1e-12;
    };

    PartitionEnumerator parts(net.size(), params.k);
    std::vector<int> assignment;
    BlockMomentTable table(net, params.k);
    while (parts.next(assignment)) {
        table.rebuild(assignment);
        auto record = [&](BlockImage img, double score) {
            bool enters = might_enter(score);
            if (!run.have_best || better(score, run.best)) {
                run.best = score;
                run.have_best = true;
                run.optima_count = 1;
                run.optima_nondegenerate = blockimage_is_degenerate(img) ? 0 : 1;
            } else if (tied(score, run.best)) {
                run.optima_count++;
                if (!blockimage_is_degenerate(img)) run.optima_nondegenerate++;
            }
            if (!enters) return;
            Partition part(assignment, params.k);
            run.pool.insert(make_solution(net, part, std::move(img), table, "exhaustive"));
        };

        if (params.criterion == Criterion::Correlation) {
            if (ensemble_mode) {
                // every member is its own arrangement
                for (size_t m = 0; m < image_cells.size(); ++m) {
                    auto corr = table.correlation(image_cells[m]);
                    if (corr) record(images[m], *corr);
                }
            } else {
                PartitionBest best = best_image_correlation(table, image_cells, ranker);
                if (best.defined) record(images[best.image_index], best.score);
            }
        } else {
            if (!images.empty()) {
                // fixed image(s): evaluate each directly
                long best_pen = 0;
                size_t best_m = 0;
                bool have = false;
                for (size_t m = 0; m < image_cells.size(); ++m) {
                    long p = table.total_penalty(image_cells[m]);
                    if (!have || p < best_pen ||
                        (p == best_pen && ranker.lex_less(image_cells[m], image_cells[best_m]))) {
                        best_pen = p;
                        best_m = m;
                        have = true;
                    }
                    if (ensemble_mode) record(images[m], static_cast<double>(p));
                }
                if (!ensemble_mode)
                    record(images[best_m], static_cast<double>(best_pen));
            } else {
                auto [cells, pen] = best_image_penalty(table, params.allowed_types, params.k);
                record(BlockImage::fixed(params.k, cells), static_cast<double>(pen));
            }
        }
    }
    if (run.pool.empty())
        throw UndefinedCriterion(UndefinedCriterion::Vector::Ideal,
                                 "criterion undefined for every enumerated arrangement");
    run.pool.optimum_is_proven = true;
    run.pool.finalize();
    return run;
}

} // namespace

SolutionPool exhaustive_search(const Network& net, const SearchParams& params,
                               const std::optional<BlockImage>& fixed_image) {
    return exhaustive_run(net, params, fixed_image).pool;
}

OptimaCount count_optima(const Network& net, const SearchParams& params,
                         const std::optional<BlockImage>& fixed_image,
                         bool apply_degenerate_filter) {
    ExhaustiveRun run = exhaustive_run(net, params, fixed_image);
    OptimaCount out{run.optima_count, run.optima_nondegenerate, std::move(run.pool)};
    if (apply_degenerate_filter) out.count = out.count_degenerate_filtered;
    return out;
}

// ---------------------------------------------------------------------------
// Local search

namespace {

struct ClimbState {
    std::vector<int> assignment;
    std::vector<BlockType> cells;
    double score = 0;
    bool defined = false;
};

struct Evaluator {
    const Network& net;
    const SearchParams& params;
    bool image_free;

    std::optional<double> score_of(const BlockMomentTable& table,
                                   const std::vector<BlockType>& cells) const {
        if (params.criterion == Criterion::Correlation) {
            return table.correlation(cells);
        }
        return static_cast<double>(table.total_penalty(cells));
    }

    bool better(double a, double b) const {
        return params.criterion == Criterion::Correlation ? a > b + 1e-12 : a < b;
    }
};

// One steepest-ascent climb from the given state. The neighborhood is the
// union of single-actor relocations, pairwise swaps across positions and
// (with a free blockimage under the correlation criterion) single-cell type
// flips. Under the penalty criterion the blockimage is recomputed per-block
// optimally instead of searched, since that criterion is separable.
void climb(const Network& net, const SearchParams& params, const Evaluator& ev,
           ClimbState& state) {
    int n = net.size(), k = params.k;
    BlockMomentTable table(net, k);
    auto eval_assignment = [&](const std::vector<int>& assign,
                               std::vector<BlockType>& cells_out) -> std::optional<double> {
        table.rebuild(assign);
        if (params.criterion == Criterion::Penalty && ev.image_free) {
            auto [cells, pen] = best_image_penalty(table, params.allowed_types, k);
            cells_out = cells;
            return static_cast<double>(pen);
        }
        return ev.score_of(table, cells_out);
    };

    std::vector<BlockType> scratch = state.cells;
    {
        auto s = eval_assignment(state.assignment, scratch);
        state.defined = s.has_value();
        if (s) {
            state.score = *s;
            state.cells = scratch;
        }
    }

    int max_iters = std::max(1000, n * n);
    for (int iter = 0; iter < max_iters; ++iter) {
        bool improved = false;
        ClimbState best = state;

        std::vector<int> counts(k, 0);
        for (int a : state.assignment) counts[a]++;

        auto consider = [&](const std::vector<int>& assign, const std::vector<BlockType>& cells,
                            double score, bool defined) {
            if (!defined) return;
            if (improved) {
                if (!ev.better(score, best.score)) return;
            } else if (state.defined && !ev.better(score, state.score)) {
                return;
            }
            best.assignment = assign;
            best.cells = cells;
            best.score = score;
            best.defined = true;
            improved = true;
        };

        // relocations
        std::vector<int> trial = state.assignment;
        for (int a = 0; a < n; ++a) {
            if (counts[state.assignment[a]] == 1) continue;
            for (int g = 0; g < k; ++g) {
                if (g == state.assignment[a]) continue;
                trial[a] = g;
                scratch = state.cells;
                auto s = eval_assignment(trial, scratch);
                consider(trial, scratch, s.value_or(0), s.has_value());
            }
            trial[a] = state.assignment[a];
        }
        // pairwise swaps
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                if (state.assignment[a] == state.assignment[b]) continue;
                std::swap(trial[a], trial[b]);
                scratch = state.cells;
                auto s = eval_assignment(trial, scratch);
                consider(trial, scratch, s.value_or(0), s.has_value());
                std::swap(trial[a], trial[b]);
            }
        // blockimage cell flips (correlation criterion with a free image)
        if (ev.image_free && params.criterion == Criterion::Correlation && state.defined) {
            table.rebuild(state.assignment);
            std::vector<BlockType> cells = state.cells;
            for (int c = 0; c < k * k; ++c) {
                BlockType keep = cells[c];
                for (BlockType t : params.allowed_types) {
                    if (t == keep) continue;
                    cells[c] = t;
                    auto s = table.correlation(cells);
                    consider(state.assignment, cells, s.value_or(0), s.has_value());
                }
                cells[c] = keep;
            }
        }

        if (!improved) break;
        state = best;
    }
}

} // namespace

SolutionPool local_search(const Network& net, const SearchParams& params,
                          const std::optional<Partition>& fixed_partition,
                          const std::optional<BlockImage>& image) {
    if (!fixed_partition && (params.k < 2 || params.k > net.size()))
        throw DataError("search needs 2 <= k <= n");
    int k = fixed_partition ? fixed_partition->k() : params.k;
    if (params.criterion == Criterion::Penalty && !net.is_binary())
        throw DataError("penalty criterion is defined for binary networks only");
    if (fixed_partition && image && image->is_fixed() && image->k() != fixed_partition->k())
        throw DataError("blockimage dimension does not match the fixed partition");

    SolutionPool pool(params.criterion, params.epsilon_near, params.pool_cap,
                      params.allowed_types);

    // fixed partition: the blockimage side is fully enumerable
    if (fixed_partition) {
        Partition part = *fixed_partition;
        BlockMomentTable table(net, part);
        std::vector<BlockImage> members;
        if (image) {
            members = image->is_fixed() ? std::vector<BlockImage>{*image}
                                        : expand_ensemble(*image);
        } else if (params.criterion == Criterion::Penalty) {
            auto [cells, pen] = best_image_penalty(table, params.allowed_types, k);
            members.push_back(BlockImage::fixed(k, cells));
        } else {
            members = enumerate_blockimages(k, params.allowed_types, false, true, false,
                                            params.exhaustive_limit);
        }
        bool any = false;
        for (auto& m : members) {
            Solution s = make_solution(net, part, m, table, "exhaustive");
            if (params.criterion == Criterion::Correlation && !s.correlation) continue;
            pool.insert(std::move(s));
            any = true;
        }
        if (!any)
            throw UndefinedCriterion(UndefinedCriterion::Vector::Ideal,
                                     "criterion undefined for the fixed arrangement");
        pool.optimum_is_proven = true; // the blockimage side was exhausted
        pool.finalize();
        return pool;
    }

    // free partition: multi-restart climbs, optionally once per ensemble member
    std::vector<BlockImage> members;
    bool image_free = false;
    if (image) {
        members = image->is_fixed() ? std::vector<BlockImage>{*image} : expand_ensemble(*image);
    } else {
        image_free = true;
    }

    Evaluator ev{net, params, image_free};
    int member_count = image_free ? 1 : static_cast<int>(members.size());

    struct RestartResult {
        bool ok = false;
        std::vector<int> assignment;
        std::vector<BlockType> cells;
        double score = 0;
    };

    auto run_restart = [&](int member, uint64_t restart_index) -> RestartResult {
        Rng rng = Rng::stream(params.seed, restart_index * member_count + member);
        RestartResult out;
        // uniform surjective start (rejection; bijection shortcut when k == n)
        std::vector<int> assign(net.size());
        if (k == net.size()) {
            for (int i = 0; i < net.size(); ++i) assign[i] = i;
            rng.shuffle(assign);
        } else {
            for (;;) {
                std::vector<int> counts(k, 0);
                for (auto& a : assign) {
                    a = static_cast<int>(rng.below(k));
                    counts[a]++;
                }
                if (*std::min_element(counts.begin(), counts.end()) > 0) break;
            }
        }
        ClimbState state;
        state.assignment = assign;
        if (image_free) {
            if (params.criterion == Criterion::Correlation) {
                state.cells.assign(static_cast<size_t>(k) * k, params.allowed_types[0]);
                for (int tries = 0; tries < 1000; ++tries) {
                    for (auto& c : state.cells)
                        c = params.allowed_types[rng.below(params.allowed_types.size())];
                    if (!blockimage_is_trivial(BlockImage::fixed(k, state.cells))) break;
                }
            }
        } else {
            state.cells = members[member].fixed_cells();
        }
        climb(net, params, ev, state);
        if (!state.defined) return out;
        out.ok = true;
        out.assignment = std::move(state.assignment);
        out.cells = std::move(state.cells);
        out.score = state.score;
        return out;
    };

    long total_runs = static_cast<long>(params.restarts) * member_count;
    std::vector<RestartResult> results(total_runs);
    int threads = std::max(1, params.threads);
    if (threads == 1) {
        for (long r = 0; r < total_runs; ++r)
            results[r] = run_restart(static_cast<int>(r % member_count),
                                     static_cast<uint64_t>(r / member_count));
    } else {
        std::atomic<long> cursor{0};
        std::vector<std::thread> workers;
        for (int t = 0; t < threads; ++t)
            workers.emplace_back([&] {
                for (;;) {
                    long r = cursor.fetch_add(1);
                    if (r >= total_runs) return;
                    results[r] = run_restart(static_cast<int>(r % member_count),
                                             static_cast<uint64_t>(r / member_count));
                }
            });
        for (auto& w : workers) w.join();
    }

    // merge in restart order so the pool is identical for any worker count
    bool any = false;
    double best = 0;
    int since_improve = 0;
    auto better = [&](double a, double b) {
        return params.criterion == Criterion::Correlation ? a > b + 1e-12 : a < b;
    };
    for (long r = 0; r < total_runs; ++r) {
        const auto& res = results[r];
        if (params.max_no_improve > 0 && since_improve >= params.max_no_improve) break;
        since_improve++;
        if (!res.ok) continue;
        Partition part(res.assignment, k);
        BlockMomentTable table(net, part);
        Solution sol = make_solution(net, part, BlockImage::fixed(k, res.cells), table,
                                     "local-search");
        if (params.criterion == Criterion::Correlation && !sol.correlation) continue;
        if (!any || better(sol.score(params.criterion), best)) {
            best = sol.score(params.criterion);
            any = true;
            since_improve = 0;
        }
        pool.insert(std::move(sol));
    }
    if (!any)
        throw UndefinedCriterion(UndefinedCriterion::Vector::Ideal,
                                 "criterion undefined for every arrangement tried");
    pool.finalize();
    return pool;
}

} // namespace blockcorr
