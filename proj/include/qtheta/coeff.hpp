#pragma once

#include <optional>

#include "qtheta/cache.hpp"
#include "qtheta/series.hpp"
#include "qtheta/theta.hpp"

namespace qtheta {

struct EvalOptions {
    std::optional<long> order;           // series truncation override
    long order_cap = 24000;              // budget for the auto order
    std::optional<Real> tail_target;     // absolute tail goal; default 10^-(digits-10)
    const SeriesCache* disk = nullptr;   // optional persistent series cache
};

// Process-wide memoized series access (monotone in N), optionally backed by
// the on-disk cache. Returns the series of the *reduced* class (k, i).
const IntSeries& gamma_series_memo(long k, long i, long N, const SeriesCache* disk = nullptr);

// Evaluate gamma_{k,n}(q) from the exact series with a rigorous coefficient-
// majorant tail bound folded into the radius. Requires |q| < 1 certified.
ErrValue gamma_eval(const CoeffKey& key, const ErrValue& q, Precision prec,
                    const EvalOptions& opts = {});

// c_{k,n} = q^{n/2} gamma_{k,n} on tp's branch.
ErrValue c_eval(const CoeffKey& key, const TauPoint& tp, Precision prec,
                const EvalOptions& opts = {});

// Bottom-up recurrence route: c_{k+1,n} = sum_{n'} c_{k,n'} q^{(n-n')^2/2}
// vartheta_{q^{k^2+k}}(q^{-kn+(k+1)n'}), started from c_{1,0} = 1. Uses the
// symmetry-reduced form of the last step when n = 0.
ErrValue c_recurrence_eval(long k_target, long n, const TauPoint& tp, Precision prec);

// Closed-form route, k in {2,3,4}.
ErrValue c_closed_eval(const CoeffKey& key, const TauPoint& tp, Precision prec);

// Theta-product coefficients of the fourth power (a_{4,i} = gamma_{4,i}).
ErrValue a4_closed_eval(long i, const TauPoint& tp, Precision prec);

// Root-of-unity average route:
// c_{k,n} = q^{n^2/k} / (k vartheta_{q^k}(1)) sum_j e^{2 pi i n j / k}
//           vartheta^k(q^{n/k} e^{2 pi i j / k}).
ErrValue c_rootsum_eval(const CoeffKey& key, const TauPoint& tp, Precision prec);

// Upper bound on sum_{m > N} gamma_{k,n}[m] |q|^m given |q| <= x_ub < 1.
Real series_tail_bound(long k, long N, const Real& x_ub);

// Auto order choice: smallest N (capped) whose tail bound meets target.
long choose_order(long k, const Real& x_ub, const Real& target, long cap);

}  // namespace qtheta
