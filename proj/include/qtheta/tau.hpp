#pragma once

#include <gmpxx.h>

#include "qtheta/errvalue.hpp"
#include "qtheta/precision.hpp"

namespace qtheta {

// A point tau in the upper half plane together with q = e^{2*pi*i*tau}.
// Fixing tau once fixes the branch of every q^alpha used downstream; no
// operation takes a per-call branch choice.
struct TauPoint {
    ErrValue tau;    // Im(tau) > 0
    ErrValue q;      // cached, consistent with tau within radii
    Precision prec;

    // General constructor from exact rational tau = u + i v, v > 0.
    static TauPoint from_tau(const mpq_class& u, const mpq_class& v, Precision prec);

    // Real negative q on the branch tau = 1/2 + i t, so q = e^{pi i - 2 pi t}
    // and q^{1/2} = i sqrt(|q|).
    static TauPoint from_negative_real(const mpq_class& q_neg, Precision prec);

    // Same branch, parameterized by exact t > 0 (q = -e^{-2 pi t}).
    static TauPoint from_t(const mpq_class& t, Precision prec);
};

TauPoint tau_from_negative_real(const mpq_class& q_neg, Precision prec);

// e^{2 pi i alpha tau} for rational alpha = num/den. Integer alpha agrees
// with the plain power of q.
ErrValue qpow(const TauPoint& tp, long num, long den = 1);
ErrValue qpow(const TauPoint& tp, const mpq_class& alpha);

}  // namespace qtheta
