#pragma once

#include <cmath>
#include <cstdint>

namespace declab {

/// splitmix64 finalizer; the bit mixer behind RandomStream and the
/// counter-based keystreams.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}

/// Deterministic random stream. Every stochastic component takes one of
/// these explicitly so a whole experiment is a pure function of the master
/// seed. Substreams are derived by counter mixing, which keeps trials
/// independent of scheduling and worker count.
///
/// The generator is splitmix64; Gaussian draws use the polar method so the
/// sequence does not depend on the standard library implementation.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed) {
        // burn one output so seed 0 does not start on the fixed point
        next_u64();
    }

    /// Substream for (master_seed, stream_id, trial_index). Equal triples
    /// give identical streams, distinct triples give decorrelated ones.
    static RandomStream for_trial(std::uint64_t master_seed, std::uint64_t stream_id,
                                  std::uint64_t trial_index) {
        std::uint64_t s = mix64(master_seed ^ mix64(stream_id + 0x9e3779b97f4a7c15ull));
        s = mix64(s ^ mix64(trial_index + 0xbf58476d1ce4e5b9ull));
        return RandomStream(s);
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix64(state_);
    }

    /// One fair bit.
    int bit() { return static_cast<int>(next_u64() >> 63); }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Uniform integer in [0, bound), bound > 0. Rejection sampled, unbiased.
    std::uint64_t uniform_below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Standard normal via Marsaglia polar method.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace declab
