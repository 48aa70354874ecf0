#pragma once

#include <vector>

#include "qtheta/errvalue.hpp"
#include "qtheta/tau.hpp"

namespace qtheta {

// Bilateral series sum_{m in Z} q^{m(m-1)/2} x^m, summed symmetrically around
// the dominant term with a geometric tail bound folded into the radius.
// Requires |q| < 1 certified; x must be certified nonzero.
ErrValue theta_eval(const ErrValue& q, const ErrValue& x, Precision prec);

// sum_{n in Z} q^{mult*n^2/2} x^n on tp's fixed branch of q^{1/2} (mult >= 1
// rebases the nome to q^mult). vartheta(x) = theta_q(q^{1/2} x).
ErrValue vartheta_eval(const TauPoint& tp, long nome_mult, const ErrValue& x,
                       Precision prec);
inline ErrValue vartheta_eval(const TauPoint& tp, const ErrValue& x, Precision prec) {
    return vartheta_eval(tp, 1, x, prec);
}

// (a;q)_infty = prod_{n>=0} (1 - a q^n), |q| < 1.
ErrValue pochhammer_eval(const ErrValue& a, const ErrValue& q, Precision prec);
// (a_1,...,a_m;q)_infty, the product of the single-argument symbols.
ErrValue pochhammer_eval(const std::vector<ErrValue>& as, const ErrValue& q,
                         Precision prec);

// Classical one-variable symbols, thin wrappers over theta with a rebased
// nome so each has a single home:
ErrValue theta_phi(const ErrValue& q, Precision prec);     // theta_{q^2}(q)  = sum q^{k^2}
ErrValue theta_psi(const ErrValue& q, Precision prec);     // theta_{q^4}(q)  = sum_{k>=0} q^{k(k+1)/2}
ErrValue theta_fminus(const ErrValue& q, Precision prec);  // theta_{q^3}(-q) = (q;q)_infty
ErrValue theta_chi(const ErrValue& q, Precision prec);     // (-q;q^2)_infty

// e^{2 pi i j / k} as a ball.
ErrValue unit_root(long j, long k, mpfr_prec_t bits);

}  // namespace qtheta
