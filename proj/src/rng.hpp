#ifndef BLOCKCORR_RNG_HPP
#define BLOCKCORR_RNG_HPP

#include <cstdint>
#include <vector>

namespace blockcorr {

/// Counter-based splitmix64 stream. Streams derived from (seed, index) are
/// independent and platform-stable, so parallel and serial runs of search
/// restarts or QAP iterations produce identical results.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    static Rng stream(uint64_t seed, uint64_t index) {
        Rng r(mix(seed ^ mix(index + 0x9e3779b97f4a7c15ULL)));
        return r;
    }

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform integer in [0, bound) via rejection sampling (no platform-
    /// dependent distribution code).
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t state_;
};

} // namespace blockcorr

#endif
