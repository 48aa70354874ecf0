#pragma once

#include <cmath>
#include <mpfr.h>

#include "qtheta/errors.hpp"

namespace qtheta {

// Working precision in decimal digits. Centers are computed with a 64-bit
// guard margin on top of the requested digits; error radii are tracked
// separately at a fixed small precision with directed rounding.
struct Precision {
    int digits = 50;

    Precision() = default;
    explicit Precision(int d) : digits(d) {
        if (d < 15) throw domain_error("Precision: need at least 15 digits");
    }

    // Mantissa bits for center arithmetic.
    mpfr_prec_t bits() const {
        return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873626)) + 64;
    }
};

// Radii only need a sound order of magnitude, not many digits.
inline constexpr mpfr_prec_t kRadiusBits = 96;

}  // namespace qtheta
