#ifndef BLOCKCORR_QAP_HPP
#define BLOCKCORR_QAP_HPP

#include <cstdint>

#include "criteria.hpp"
#include "model.hpp"

namespace blockcorr {

struct QapResult {
    double observed = 0;
    long iterations = 0;   // permutations scored (n! in exact mode)
    long count_ge = 0;     // permuted scores >= observed - 1e-12
    long undefined = 0;    // permutations with an undefined correlation
    double p_value = 1;
    bool exact = false;
    double null_mean = 0;
    double null_sd = 0;
    double null_min = 0;
    double null_max = 0;
    uint64_t seed = 0;
};

/// One-sided upper-tail permutation test: the network's rows and columns are
/// permuted simultaneously while partition and blockimage stay fixed, and the
/// correlation is recomputed per draw. Monte-Carlo p-values carry the +1
/// correction; exact mode scores all n! permutations (identity included) and
/// reports the raw proportion. Undefined permuted correlations count as not
/// exceeding the observed score.
QapResult qap_test(const Network& net, const Partition& part, const BlockImage& image,
                   long iterations, uint64_t seed);

/// Force exact enumeration (n <= 10 guard) or Monte-Carlo regardless of size.
QapResult qap_test_exact(const Network& net, const Partition& part, const BlockImage& image);
QapResult qap_test_monte_carlo(const Network& net, const Partition& part,
                               const BlockImage& image, long iterations, uint64_t seed);

/// Threshold below which qap_test switches to exact enumeration.
inline constexpr int kQapExactMaxActors = 8;

} // namespace blockcorr

#endif
