#ifndef BLOCKCORR_SEARCH_HPP
#define BLOCKCORR_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "criteria.hpp"
#include "model.hpp"

namespace blockcorr {

enum class Criterion { Correlation, Penalty };

struct SearchParams {
    int k = 2;
    /// Allowed ideal block types in priority order (ties go to the earlier
    /// entry). Ignored when a fixed blockimage or ensemble is supplied.
    std::vector<BlockType> allowed_types = {BlockType::Com, BlockType::Nul};
    Criterion criterion = Criterion::Correlation;
    int restarts = 50;
    /// Stop after this many consecutive restarts without improving the best
    /// score; 0 disables early stopping.
    int max_no_improve = 0;
    uint64_t seed = 1;
    /// Relative slack for the near-optimal pool.
    double epsilon_near = 0.01;
    int pool_cap = 100;
    /// Largest partition (and blockimage) count exhaustive enumeration will
    /// accept before instructing the caller to fall back to local search.
    double exhaustive_limit = 5e6;
    int threads = 1;
};

struct Solution {
    Partition partition;
    BlockImage image;
    std::optional<double> correlation;
    std::optional<long> penalty;
    std::string provenance; // "exhaustive" | "local-search"

    double score(Criterion c) const {
        return c == Criterion::Correlation ? correlation.value()
                                           : static_cast<double>(penalty.value());
    }
};

/// Near-optimal solutions ordered best-first. Entries are canonical under
/// position relabeling; equally scoring blockimages for the same partition
/// are collapsed to the one ranking highest in type priority.
class SolutionPool {
public:
    SolutionPool(Criterion criterion, double epsilon_near, int cap,
                 const std::vector<BlockType>& priority);

    void insert(Solution sol);
    void merge(const SolutionPool& other);
    void finalize(); // prune to epsilon/cap and sort

    bool empty() const { return entries_.empty(); }
    double best_score() const;
    const std::vector<Solution>& solutions() const { return entries_; }
    Criterion criterion() const { return criterion_; }

    bool optimum_is_proven = false;

private:
    bool better(double a, double b) const;
    bool within_epsilon(double score, double best) const;

    Criterion criterion_;
    double epsilon_;
    int cap_;
    std::vector<int> type_rank_; // BlockType -> priority rank
    std::vector<Solution> entries_;
};

/// Number of partitions of n labeled actors into k unlabeled non-empty
/// positions (Stirling number of the second kind, as a double).
double stirling2(int n, int k);

/// Streams restricted-growth strings with exactly k classes in lexicographic
/// order; each canonical string is one partition of n actors.
class PartitionEnumerator {
public:
    PartitionEnumerator(int n, int k);
    /// Writes the next assignment; false when exhausted.
    bool next(std::vector<int>& assignment);

private:
    int n_, k_;
    bool first_;
    std::vector<int> a_;
    std::vector<int> prefix_max_; // prefix_max_[i] = max(a_[0..i-1]), -1 at 0
    void fill_min_tail(int from);
};

/// All k x k fixed blockimages over the allowed types.
/// drop_trivial removes images whose pooled ideal vector is constant by
/// construction; dedupe_relabeling keeps one representative per orbit under
/// simultaneous row/column permutation; drop_degenerate removes images
/// containing two positions with identical row and column type vectors.
std::vector<BlockImage> enumerate_blockimages(int k, const std::vector<BlockType>& allowed,
                                              bool dedupe_relabeling, bool drop_trivial,
                                              bool drop_degenerate,
                                              double limit = 5e6);

/// Cartesian product over cell alternative lists, cell-major order.
std::vector<BlockImage> expand_ensemble(const BlockImage& image);

bool blockimage_is_trivial(const BlockImage& image);
bool blockimage_is_degenerate(const BlockImage& image);

/// Evaluate every (partition, blockimage) pair. The pool's optimum is proven.
SolutionPool exhaustive_search(const Network& net, const SearchParams& params,
                               const std::optional<BlockImage>& fixed_image = std::nullopt);

/// Multi-restart steepest-ascent over single-actor relocations, pairwise
/// swaps and (with a free blockimage) single-cell type flips.
SolutionPool local_search(const Network& net, const SearchParams& params,
                          const std::optional<Partition>& fixed_partition = std::nullopt,
                          const std::optional<BlockImage>& image = std::nullopt);

/// Exact count of optimum-attaining arrangements (exhaustive only).
struct OptimaCount {
    long count = 0;
    long count_degenerate_filtered = 0;
    SolutionPool pool;
};
OptimaCount count_optima(const Network& net, const SearchParams& params,
                         const std::optional<BlockImage>& fixed_image = std::nullopt,
                         bool apply_degenerate_filter = false);

} // namespace blockcorr

#endif
