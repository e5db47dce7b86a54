#pragma once
#include <cstdint>
#include <cmath>

namespace shadowlab {

// SplitMix64 mixing function (Steele, Lea, Flood / Vigna).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives an independent stream seed from a master seed, a stream kind and an
// index. Used so every ensemble member / substream is reproducible from one
// master seed regardless of evaluation order.
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t kind, std::uint64_t index) {
    std::uint64_t s = mix64(master ^ 0x6a09e667f3bcc909ULL);
    s = mix64(s ^ (kind * 0xbb67ae8584caa73bULL));
    s = mix64(s ^ (index * 0x3c6ef372fe94f82bULL));
    return s;
}

// Small counter-style generator: SplitMix64 sequence with a Box-Muller
// Gaussian layer. Byte-for-byte reproducible on every platform, unlike the
// std::*_distribution wrappers.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return mix64(state_ += 0x9e3779b97f4a7c15ULL); }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Standard normal via polar Box-Muller; second value cached.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_double() - 1.0;
            v = 2.0 * next_double() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

  private:
    std::uint64_t state_;
    double spare_{0.0};
    bool have_spare_{false};
};

} // namespace shadowlab
