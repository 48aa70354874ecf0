#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include "qtheta/errvalue.hpp"

namespace qtheta::testing {

inline double re_d(const ErrValue& v) { return v.re.to_double(); }
inline double im_d(const ErrValue& v) { return v.im.to_double(); }
inline double rad_d(const ErrValue& v) { return v.rad.to_double(); }

// |center - (x+iy)| <= tol and the radius itself is below tol.
inline bool near(const ErrValue& v, double x, double y, double tol) {
    return std::hypot(re_d(v) - x, im_d(v) - y) <= tol && rad_d(v) <= tol;
}
inline bool near_real(const ErrValue& v, double x, double tol) {
    return near(v, x, 0.0, tol);
}

// Residual ball encloses zero.
inline bool holds(const ErrValue& residual) { return within(residual, residual.rad); }

// Two balls agree within their combined radii.
inline bool agree(const ErrValue& a, const ErrValue& b) { return holds(a - b); }

inline mpq_class dec(const std::string& s) {  // exact decimal literal
    std::string t = s;
    auto dot = t.find('.');
    long frac = 0;
    if (dot != std::string::npos) {
        frac = static_cast<long>(t.size() - dot - 1);
        t.erase(dot, 1);
    }
    mpq_class num(t, 10);
    mpq_class den(1);
    for (long i = 0; i < frac; ++i) den *= 10;
    num /= den;
    num.canonicalize();
    return num;
}

}  // namespace qtheta::testing
