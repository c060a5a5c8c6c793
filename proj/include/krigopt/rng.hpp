#pragma once

#include <cstdint>
#include <cmath>
#include <initializer_list>

namespace krigopt {

// SplitMix64 stream. Substreams are derived by hashing a label sequence
// (e.g. master seed, macroreplication id, point index, replication index)
// into a fresh state, so every draw is reproducible from one master seed
// and distinct label sequences never share a stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Hash-combine a label sequence into a substream seed.
    static std::uint64_t derive(std::initializer_list<std::uint64_t> labels) {
        std::uint64_t h = 0x8f2d3a6b1c9e4f57ULL;
        for (std::uint64_t v : labels) h = mix(h ^ v);
        return h;
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // Integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    double exponential(double mean) {
        return -mean * std::log1p(-uniform());
    }

    // Inverse-CDF draw from a small discrete distribution given its CDF.
    // cdf must be nondecreasing with last entry 1.
    int discrete_cdf(const double* cdf, int n) {
        const double u = uniform();
        for (int i = 0; i < n - 1; ++i)
            if (u < cdf[i]) return i;
        return n - 1;
    }

    double normal() {
        // Box-Muller, one value per call (the sibling is discarded so the
        // draw count stays label-predictable).
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

private:
    std::uint64_t state_;
};

}  // namespace krigopt
