#ifndef BLOCKCORR_CRITERIA_HPP
#define BLOCKCORR_CRITERIA_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blockfit.hpp"
#include "model.hpp"

namespace blockcorr {

/// Decomposition of the point-biserial correlation: a separation factor
/// (difference of subgroup means over the population sd) times a balance
/// factor that peaks at 0.5 when the two ideal classes are equally large.
struct PointBiserialParts {
    double m1 = 0;       // mean of x where y == 1
    double m0 = 0;       // mean of x where y == 0
    double s_n = 0;      // population standard deviation of x
    long n1 = 0;
    long n0 = 0;
    long n = 0;

    double separation_factor() const { return (m1 - m0) / s_n; }
    double balance_factor() const;
    double correlation() const { return separation_factor() * balance_factor(); }
};

/// Weighted Pearson correlation over pooled value-triplets. Throws
/// UndefinedCriterion when either pooled vector is constant.
double weighted_correlation(std::span<const ValueTriplet> triplets);

/// Point-biserial correlation of a real vector against a binary one,
/// together with its parts. Equals weighted_correlation with unit weights.
std::pair<double, PointBiserialParts> point_biserial(std::span<const double> x,
                                                     std::span<const int> y);

struct PerBlockDiagnostics {
    int i = 0;
    int j = 0;
    BlockType type = BlockType::Dnc;
    long triplet_count = 0;
    double weight_sum = 0;
    long checkable_cells = 0;
    double density = 0; // share of checkable cells with a nonzero tie
    std::optional<long> penalty;
};

struct Evaluation {
    double correlation = 0;
    std::optional<long> penalty;  // binary networks only, dnc blocks excluded
    bool penalty_excludes_dnc = false;
    std::vector<PerBlockDiagnostics> per_block;
};

/// Concatenate triplets over all k^2 blocks (row-major), compute the
/// weighted correlation, and, for binary networks, the inconsistency count.
Evaluation evaluate(const Network& net, const Partition& part, const BlockImage& image);

/// Conventional inconsistency count of a fixed arrangement on a binary
/// network. dnc cells contribute nothing.
long penalty(const Network& net, const Partition& part, const BlockImage& image);

/// Inconsistencies of a single block under one ideal type.
long block_penalty(const Network& net, const Partition& part, int i, int j, BlockType type);

/// Per-block independent minimisation of the inconsistency count, ties
/// broken by the order of `allowed` (first wins).
struct BestPenaltyResult {
    BlockImage image;
    long penalty;
};
BestPenaltyResult per_block_best_penalty(const Network& net, const Partition& part,
                                         const std::vector<BlockType>& allowed);

} // namespace blockcorr

#endif
