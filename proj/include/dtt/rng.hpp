#pragma once

#include <cmath>
#include <cstdint>

namespace dtt {

/// Counter-based deterministic generator: a splitmix64 stream keyed by
/// (seed, substream). Substreams are statistically independent, which makes
/// per-sample draws order-independent across workers.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t substream = 0)
        : state_(mix(mix(seed + 0x9e3779b97f4a7c15ULL) ^
                     mix(substream + 0xbf58476d1ce4e5b9ULL))) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        return mix(z);
    }

    /// Uniform double in [0,1).
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0,1): never exactly zero (safe for logs and inverse CDFs).
    double uniform_open() {
        double u = uniform();
        return u > 0.0 ? u : 0x1.0p-53;
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform_open(), u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double th = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(th);
        has_spare_ = true;
        return r * std::cos(th);
    }

    /// Integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace dtt
