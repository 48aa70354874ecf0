#include "qtheta/coeff.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace qtheta {

namespace {

ErrValue of_mpz_ball(const mpz_class& z, mpfr_prec_t bits) {
    Real c(bits);
    int t = mpfr_set_z(c.raw(), z.get_mpz_t(), MPFR_RNDN);
    Real rad(kRadiusBits);
    if (t != 0) rad = mul_2si(abs(c), 1 - static_cast<long>(bits), MPFR_RNDU);
    return ErrValue::of_real(c, rad);
}

// Upper bound of sum_j x^{j(j-1)/2} = 2 (1 + x + x^3 + x^6 + ...), 0 < x < 1.
Real theta_hat_ub(const Real& x) {
    Real one = Real::of_long(1, kRadiusBits);
    if (!(x < one)) throw divergence_error("theta_hat_ub: x >= 1");
    Real sum = one;          // m = 1 term (T = 0)
    Real p = one;            // x^{T(m)}
    Real xp = x;             // x^{m-1} after update
    long J = 2;
    for (;; ++J) {
        p = mul(p, xp, MPFR_RNDU);  // T(J) = T(J-1) + (J-1)
        xp = mul(xp, x, MPFR_RNDU);
        sum = add(sum, p, MPFR_RNDU);
        if (mul_2si(sum, -80, MPFR_RNDU) > p && J > 4) break;
        if (J > 4000000) throw nonconvergence_error("theta_hat_ub: no contraction");
    }
    // tail: next term p * x^J with ratio <= x^J
    Real ratio = pow_si(x, J, MPFR_RNDU);
    sum = add(sum, geometric_tail_bound(ratio, mul(p, ratio, MPFR_RNDU)), MPFR_RNDU);
    return mul_2si(sum, 1, MPFR_RNDU);
}

const MajorantSeries& majorant_memo(long k, long N) {
    static std::map<long, MajorantSeries> memo;
    auto& slot = memo[k];
    if (static_cast<long>(slot.a.size()) >= N + 1) return slot;
    slot = coeff_majorant(k, N);
    return slot;
}

}  // namespace

Real series_tail_bound(long k, long N, const Real& x_ub) {
    const MajorantSeries& maj = majorant_memo(k, N);
    Real total = pow_si(theta_hat_ub(x_ub), k, MPFR_RNDU);
    // lower bound of the captured mass
    Real partial(kRadiusBits);
    Real xp = Real::of_long(1, kRadiusBits);
    for (long m = 0; m <= N; ++m) {
        partial = add(partial, mul(Real::of_mpz(maj.a[static_cast<size_t>(m)], kRadiusBits, MPFR_RNDD), xp, MPFR_RNDD),
                      MPFR_RNDD);
        xp = mul(xp, x_ub, MPFR_RNDD);
    }
    Real tail = sub(total, partial, MPFR_RNDU);
    return tail.is_neg() ? Real(kRadiusBits) : tail;
}

long choose_order(long k, const Real& x_ub, const Real& target, long cap) {
    double lx = std::log(std::min(0.999999, std::max(1e-300, x_ub.to_double())));
    double lt = std::log(std::max(1e-300, target.to_double()));
    if (target.to_double() == 0.0) lt = -700;
    // crude start: tail ~ x^{N/2} scale (majorant grows polynomially)
    long N = static_cast<long>(std::ceil(2.2 * lt / lx)) + 32;
    N = std::max<long>(32, std::min(N, cap));
    for (;;) {
        if (!(series_tail_bound(k, N, x_ub) > target)) return N;
        if (N >= cap) return cap;
        N = std::min(cap, N + N / 3 + 32);
    }
}

const IntSeries& gamma_series_memo(long k, long i, long N, const SeriesCache* disk) {
    static std::map<std::pair<long, long>, IntSeries> memo;
    auto& slot = memo[{k, i}];
    if (slot.order() >= N) return slot;
    if (disk) {
        if (auto s = disk->load(k, i, N)) {
            slot = std::move(*s);
            return slot;
        }
    }
    slot = gamma_series_dp(k, i, N);
    if (disk) disk->store(k, i, slot);
    return slot;
}

ErrValue gamma_eval(const CoeffKey& key, const ErrValue& q, Precision prec,
                    const EvalOptions& opts) {
    ReducedKey rk = reduce(key);
    Real x_ub = abs_ub(q);
    if (!(x_ub < Real::of_long(1, kRadiusBits)))
        throw divergence_error("gamma_eval: |q| not certified < 1");

    Real target = opts.tail_target ? *opts.tail_target
                                   : pow_si(Real::of_long(10, kRadiusBits), -(prec.digits - 10), MPFR_RNDU);
    long N = opts.order ? std::max<long>(0, *opts.order)
                        : choose_order(rk.k, x_ub, target, opts.order_cap);

    const IntSeries& s = gamma_series_memo(rk.k, rk.i, N, opts.disk);
    ErrValue acc = ErrValue::zero(prec.bits());
    for (long m = N; m >= 0; --m)
        acc = acc * q + of_mpz_ball(s.coeffs[static_cast<size_t>(m)], prec.bits());
    acc = inflate(acc, series_tail_bound(rk.k, N, x_ub));
    if (rk.shift > 0) acc = pow_int(q, static_cast<long>(rk.shift)) * acc;
    return acc;
}

ErrValue c_eval(const CoeffKey& key, const TauPoint& tp, Precision prec,
                const EvalOptions& opts) {
    ErrValue g = gamma_eval(key, tp.q, prec, opts);
    if (key.n == 0) return g;
    return qpow(tp, key.n, 2) * g;
}

namespace {

// vartheta_{q^{k^2+k}}(q^j)
ErrValue vth_arg(const TauPoint& tp, long k, long j, Precision prec) {
    return vartheta_eval(tp, k * k + k, qpow(tp, j), prec);
}

std::vector<ErrValue> next_row(const std::vector<ErrValue>& row, long k,
                               const TauPoint& tp, Precision prec) {
    std::vector<ErrValue> next(static_cast<size_t>(k + 1));
    for (long n2 = 0; n2 <= k; ++n2) {
        ErrValue acc = ErrValue::zero(prec.bits());
        for (long np = 0; np < k; ++np) {
            ErrValue term = row[static_cast<size_t>(np)] *
                            qpow(tp, (n2 - np) * (n2 - np), 2) *
                            vth_arg(tp, k, -k * n2 + (k + 1) * np, prec);
            acc = acc + term;
        }
        next[static_cast<size_t>(n2)] = acc;
    }
    return next;
}

// Symmetry-reduced c_{k+1,0} (distinct odd/even shapes).
ErrValue reduced_c0(const std::vector<ErrValue>& row, long k, const TauPoint& tp,
                    Precision prec) {
    ErrValue acc = row[0] * vth_arg(tp, k, 0, prec);
    if (k % 2 == 1) {
        long kp = (k - 1) / 2;
        for (long n = 1; n <= kp; ++n) {
            ErrValue t = row[static_cast<size_t>(n)] * qpow(tp, n * n, 2) *
                         vth_arg(tp, k, (k + 1) * n, prec);
            acc = acc + mul_long(t, 2);
        }
    } else {
        long kp = k / 2;
        acc = acc + row[static_cast<size_t>(kp)] * qpow(tp, k * k, 8) *
                        vth_arg(tp, k, (k + 1) * k / 2, prec);
        for (long n = 1; n <= kp - 1; ++n) {
            ErrValue t = row[static_cast<size_t>(n)] * qpow(tp, n * n, 2) *
                         vth_arg(tp, k, (k + 1) * n, prec);
            acc = acc + mul_long(t, 2);
        }
    }
    return acc;
}

}  // namespace

ErrValue c_recurrence_eval(long k_target, long n, const TauPoint& tp, Precision prec) {
    if (k_target < 2 || k_target > 12)
        throw domain_error("c_recurrence_eval: k_target must lie in [2,12]");
    if (n < 0 || n >= k_target) throw domain_error("c_recurrence_eval: need 0 <= n < k");
    std::vector<ErrValue> row{ErrValue::of_long(1, prec.bits())};
    for (long k = 1; k + 1 < k_target; ++k) row = next_row(row, k, tp, prec);
    long k = k_target - 1;
    if (n == 0) return reduced_c0(row, k, tp, prec);
    ErrValue acc = ErrValue::zero(prec.bits());
    for (long np = 0; np < k; ++np) {
        acc = acc + row[static_cast<size_t>(np)] * qpow(tp, (n - np) * (n - np), 2) *
                        vth_arg(tp, k, -k * n + (k + 1) * np, prec);
    }
    return acc;
}

namespace {

ErrValue c3_closed(long n, const TauPoint& tp, Precision prec) {
    ErrValue t1 = qpow(tp, n * n, 2) * vartheta_eval(tp, 2, ErrValue::of_long(1, prec.bits()), prec) *
                  vartheta_eval(tp, 6, qpow(tp, 2 * n), prec);
    ErrValue t2 = qpow(tp, 1 + (n - 1) * (n - 1), 2) * vartheta_eval(tp, 2, qpow(tp, 1), prec) *
                  vartheta_eval(tp, 6, qpow(tp, 2 * n - 3), prec);
    return t1 + t2;
}

}  // namespace

ErrValue c_closed_eval(const CoeffKey& key, const TauPoint& tp, Precision prec) {
    long k = key.k, n = key.n;
    if (n < 0 || n >= k) throw domain_error("c_closed_eval: need 0 <= n < k");
    mpfr_prec_t bits = prec.bits();
    ErrValue one = ErrValue::of_long(1, bits);
    switch (k) {
        case 2:
            return qpow(tp, n * n, 2) * vartheta_eval(tp, 2, qpow(tp, n), prec);
        case 3:
            return c3_closed(n, tp, prec);
        case 4: {
            if (n == 0) {
                ErrValue f2 = vartheta_eval(tp, 2, one, prec);
                ErrValue g2 = vartheta_eval(tp, 2, qpow(tp, 1), prec);
                ErrValue v6_1 = vartheta_eval(tp, 6, one, prec);
                ErrValue v6_q3 = vartheta_eval(tp, 6, qpow(tp, 3), prec);
                ErrValue v6_q2 = vartheta_eval(tp, 6, qpow(tp, 2), prec);
                ErrValue v6_q = vartheta_eval(tp, 6, qpow(tp, 1), prec);
                ErrValue v12_1 = vartheta_eval(tp, 12, one, prec);
                ErrValue v12_q4 = vartheta_eval(tp, 12, qpow(tp, 4), prec);
                ErrValue inner = g2 * v6_q3 * v12_1 +
                                 mul_long((f2 * v6_q2 + g2 * v6_q) * v12_q4, 2);
                return f2 * v6_1 * v12_1 + qpow(tp, 1) * inner;
            }
            ErrValue c30 = c3_closed(0, tp, prec), c31 = c3_closed(1, tp, prec);
            ErrValue t0 = c30 * qpow(tp, n * n, 2) * vartheta_eval(tp, 12, qpow(tp, 3 * n), prec);
            ErrValue t1 = qpow(tp, (n - 1) * (n - 1), 2) * vartheta_eval(tp, 12, qpow(tp, 4 - 3 * n), prec);
            ErrValue t2 = qpow(tp, (n + 1) * (n + 1), 2) * vartheta_eval(tp, 12, qpow(tp, 3 * n + 4), prec);
            return t0 + c31 * (t1 + t2);
        }
        default:
            throw domain_error("c_closed_eval: closed forms exist for k in {2,3,4}");
    }
}

ErrValue a4_closed_eval(long i, const TauPoint& tp, Precision prec) {
    if (i < 0 || i > 3) throw domain_error("a4_closed_eval: index in [0,3]");
    const ErrValue& q = tp.q;
    ErrValue q2 = q * q, q4 = pow_int(q, 4);
    ErrValue one = ErrValue::of_long(1, prec.bits());
    ErrValue th2_1 = theta_eval(q2, one, prec);
    ErrValue th2_q = theta_eval(q2, q, prec);
    switch (i) {
        case 0:
            return th2_q * th2_q * theta_eval(q4, q2, prec) + q * th2_1 * th2_1 * theta_eval(q4, one, prec);
        case 1:
            return mul_long(th2_1 * th2_q * theta_eval(q4, pow_int(q, 3), prec), 2);
        case 2:
            return th2_q * th2_q * theta_eval(q4, one, prec) + th2_1 * th2_1 * theta_eval(q4, q2, prec);
        default:
            return mul_long(th2_1 * th2_q * theta_eval(q4, q, prec), 2);
    }
}

ErrValue c_rootsum_eval(const CoeffKey& key, const TauPoint& tp, Precision prec) {
    long k = key.k, n = key.n;
    if (k < 2) throw domain_error("c_rootsum_eval: k must be >= 2");
    if (n < 0 || n >= k) throw domain_error("c_rootsum_eval: need 0 <= n < k");
    ErrValue denom = vartheta_eval(tp, k, ErrValue::of_long(1, prec.bits()), prec);
    if (!certified_nonzero(denom))
        throw precision_error("c_rootsum_eval: vartheta_{q^k}(1) not certified nonzero");
    ErrValue qnk = qpow(tp, n, k);  // q^{n/k}
    ErrValue acc = ErrValue::zero(prec.bits());
    for (long j = 0; j < k; ++j) {
        ErrValue x = qnk * unit_root(j, k, prec.bits());
        ErrValue term = unit_root(n * j, k, prec.bits()) *
                        pow_int(vartheta_eval(tp, 1, x, prec), k);
        acc = acc + term;
    }
    ErrValue lead = qpow(tp, n * n, k) / mul_long(denom, k);
    return lead * acc;
}

}  // namespace qtheta
