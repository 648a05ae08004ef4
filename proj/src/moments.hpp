#ifndef BLOCKCORR_MOMENTS_HPP
#define BLOCKCORR_MOMENTS_HPP

#include <optional>
#include <vector>

#include "model.hpp"

namespace blockcorr {

/// Weighted first and second moments of one block's value-triplets, plus
/// exact ranges for degeneracy detection. Pooling blocks and applying the
/// correlation formula to the pooled sums is algebraically identical to
/// generating the triplets and correlating them directly; search uses this
/// path because it avoids materialising triplet lists per candidate.
struct TripletMoments {
    double w = 0, wx = 0, wxx = 0;
    double wy = 0, wyy = 0, wxy = 0;
    double xmin = 0, xmax = 0;
    int ymin = 1, ymax = 0; // inverted when empty
    long count = 0;

    void add(const TripletMoments& o);
};

/// Per-(block, type) moment and penalty tables for one (network, partition)
/// pair. Building the table costs one pass over the matrix; evaluating a
/// blockimage afterwards costs O(k^2). The object doubles as a reusable
/// workspace: rebuild() recomputes it for another assignment without
/// reallocating, which keeps exhaustive enumeration allocation-free.
class BlockMomentTable {
public:
    BlockMomentTable(const Network& net, int k);
    BlockMomentTable(const Network& net, const Partition& part);

    void rebuild(const std::vector<int>& assignment);

    int k() const { return k_; }

    const TripletMoments& moments(int i, int j, BlockType type) const;
    /// Inconsistency count; only valid on binary networks.
    long penalty(int i, int j, BlockType type) const;
    long checkable_cells(int i, int j) const { return cells_[idx(i, j)]; }

    /// Weighted correlation of a fixed blockimage; nullopt when degenerate.
    std::optional<double> correlation(const BlockImage& image) const;
    std::optional<double> correlation(const std::vector<BlockType>& cells) const;

    /// Total inconsistencies of a fixed blockimage (binary networks).
    long total_penalty(const std::vector<BlockType>& cells) const;

    bool binary() const { return binary_; }

private:
    struct LineStats {
        double max, min, sum, sumsq;
        long ties, len;
    };

    int idx(int i, int j) const { return i * k_ + j; }

    const Network* net_;
    int k_;
    bool binary_;
    std::vector<long> cells_;
    std::vector<TripletMoments> moments_;  // [block][type]
    std::vector<long> penalties_;          // [block][type]
    // workspace
    std::vector<std::vector<int>> members_;
    std::vector<LineStats> row_stats_, col_stats_;
    std::vector<double> cell_sum_, cell_sumsq_, cell_min_, cell_max_;
    std::vector<long> cell_ones_;
    std::vector<char> cell_seen_;
    std::vector<double> rmax_, cmax_;
};

/// Correlation from pooled moments; nullopt when either vector is constant.
std::optional<double> correlation_from_moments(const TripletMoments& total);

} // namespace blockcorr

#endif
