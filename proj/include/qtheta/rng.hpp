#pragma once

#include <gmpxx.h>

#include <cstdint>

namespace qtheta {

// splitmix64: small, seedable, reproducible across platforms. Used for the
// deterministic sample points of the verification suites.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Exact rational in [0,1) with 48-bit resolution.
    mpq_class unit() {
        unsigned long hi = static_cast<unsigned long>(next() >> 16);
        mpq_class r(hi, 1);
        r /= mpq_class(1ul << 24) * mpq_class(1ul << 24);
        return r;
    }

    // Exact rational in [lo, hi).
    mpq_class uniform(const mpq_class& lo, const mpq_class& hi) {
        return lo + unit() * (hi - lo);
    }

    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::uint64_t state_;
};

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

}  // namespace qtheta
