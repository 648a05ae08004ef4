#include "qap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "moments.hpp"
#include "rng.hpp"

namespace blockcorr {

namespace {

constexpr double kGeTol = 1e-12;

struct NullAccumulator {
    long count_ge = 0;
    long undefined = 0;
    long defined = 0;
    double sum = 0, sumsq = 0;
    double mn = 0, mx = 0;

    void add(double observed, std::optional<double> permuted) {
        if (!permuted) {
            undefined++;
            return;
        }
        double v = *permuted;
        if (defined == 0) {
            mn = mx = v;
        } else {
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        defined++;
        sum += v;
        sumsq += v * v;
        if (v >= observed - kGeTol) count_ge++;
    }

    void fill(QapResult& r) const {
        r.count_ge = count_ge;
        r.undefined = undefined;
        if (defined > 0) {
            r.null_mean = sum / defined;
            double var = sumsq / defined - r.null_mean * r.null_mean;
            r.null_sd = var > 0 ? std::sqrt(var) : 0;
            r.null_min = mn;
            r.null_max = mx;
        }
    }
};

std::optional<double> permuted_correlation(const Network& net, const Partition& part,
                                           const std::vector<BlockType>& cells,
                                           const std::vector<int>& perm) {
    Network permuted = net.permuted(perm);
    BlockMomentTable table(permuted, part);
    return table.correlation(cells);
}

} // namespace

QapResult qap_test_exact(const Network& net, const Partition& part, const BlockImage& image) {
    if (net.size() > 10)
        throw LimitExceeded("exact QAP over " + std::to_string(net.size()) +
                            "! permutations is not tractable");
    QapResult result;
    result.exact = true;
    result.observed = evaluate(net, part, image).correlation;
    std::vector<BlockType> cells = image.fixed_cells();

    std::vector<int> perm(net.size());
    std::iota(perm.begin(), perm.end(), 0);
    NullAccumulator acc;
    long total = 0;
    do {
        acc.add(result.observed, permuted_correlation(net, part, cells, perm));
        total++;
    } while (std::next_permutation(perm.begin(), perm.end()));
    result.iterations = total;
    acc.fill(result);
    // identity is part of the reference set, so the proportion is never zero
    result.p_value = static_cast<double>(result.count_ge) / result.iterations;
    return result;
}

QapResult qap_test_monte_carlo(const Network& net, const Partition& part,
                               const BlockImage& image, long iterations, uint64_t seed) {
    if (iterations < 1) throw DataError("QAP needs at least one iteration");
    QapResult result;
    result.observed = evaluate(net, part, image).correlation;
    result.seed = seed;
    std::vector<BlockType> cells = image.fixed_cells();

    NullAccumulator acc;
    std::vector<int> perm(net.size());
    for (long it = 0; it < iterations; ++it) {
        Rng rng = Rng::stream(seed, static_cast<uint64_t>(it));
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        acc.add(result.observed, permuted_correlation(net, part, cells, perm));
    }
    result.iterations = iterations;
    acc.fill(result);
    result.p_value = static_cast<double>(result.count_ge + 1) / (iterations + 1);
    return result;
}

QapResult qap_test(const Network& net, const Partition& part, const BlockImage& image,
                   long iterations, uint64_t seed) {
    if (net.size() <= kQapExactMaxActors) return qap_test_exact(net, part, image);
    return qap_test_monte_carlo(net, part, image, iterations, seed);
}

} // namespace blockcorr
