#include "qtheta/theta.hpp"

#include <cmath>

namespace qtheta {

namespace {

// Log-magnitude of the center, clamped away from -inf for window sizing.
double log_mag(const ErrValue& z) {
    double m = abs_ub(z).to_double();
    return m > 0 ? std::log(m) : -1e9;
}

struct Window {
    long lo, hi;
};

// Terms of the bilateral sums have log-magnitude c2*m^2 + c1*m + c0; pick a
// window covering everything within `decades` decimal digits of the peak.
Window quad_window(double c2, double c1, double decades) {
    double peak = -c1 / (2 * c2);  // c2 < 0
    double drop = decades * 2.302585092994046;
    double half = std::sqrt(drop / (-c2)) + 2.0;
    return {static_cast<long>(std::floor(peak - half)),
            static_cast<long>(std::ceil(peak + half))};
}

}  // namespace

ErrValue unit_root(long j, long k, mpfr_prec_t bits) {
    ErrValue ang = mul_mpq(mul_long(pi_ball(bits), 2), mpq_class(j, k));
    return exp_ev(mul_i(ang));
}

ErrValue theta_eval(const ErrValue& q, const ErrValue& x, Precision prec) {
    Real qa = abs_ub(q);
    if (!(qa < Real::of_long(1, kRadiusBits)))
        throw divergence_error("theta_eval: |q| >= 1");
    if (!(abs_lb(x) > 0)) throw domain_error("theta_eval: x is not certified nonzero");

    const double Lq = log_mag(q);
    const double Lx = log_mag(x);
    const double decades = prec.digits + 10;

    Real xa_ub = abs_ub(x), xa_lb = abs_lb(x);
    for (int attempt = 0; attempt < 8; ++attempt) {
        // log|term(m)| ~ (Lq/2) m^2 + (Lx - Lq/2) m
        Window w = quad_window(Lq / 2, Lx - Lq / 2, decades * (1 << attempt));
        long m_lo = w.lo, m_hi = w.hi;
        // Edge contraction ratios must be < 1 before the window is usable.
        Real r_right = ub::mul(pow_si(qa, m_hi, MPFR_RNDU), xa_ub);
        Real r_left = ub::div(pow_si(qa, 1 - m_lo, MPFR_RNDU), xa_lb);
        Real one = Real::of_long(1, kRadiusBits);
        if (!(r_right < one) || !(r_left < one)) continue;

        ErrValue qp = pow_int(q, m_lo);                          // q^m
        ErrValue t = pow_int(q, (m_lo * (m_lo - 1)) / 2);        // q^{T(m)}
        ErrValue xp = pow_int(x, m_lo);                          // x^m
        ErrValue sum = ErrValue::zero(prec.bits());
        ErrValue last;
        for (long m = m_lo; m <= m_hi; ++m) {
            last = t * xp;
            sum = sum + last;
            if (m < m_hi) {
                t = t * qp;  // T(m+1) = T(m) + m
                qp = qp * q;
                xp = xp * x;
            }
        }
        // First omitted terms, bounded from the last included ones.
        ErrValue first_t = pow_int(q, m_lo * (m_lo - 1) / 2 - (m_lo - 1)) * pow_int(x, m_lo - 1);
        Real tail_r = geometric_tail_bound(r_right, ub::mul(abs_ub(last), r_right));
        Real tail_l = geometric_tail_bound(r_left, abs_ub(first_t));
        return inflate(sum, ub::add(tail_r, tail_l));
    }
    throw nonconvergence_error("theta_eval: window did not contract");
}

ErrValue vartheta_eval(const TauPoint& tp, long nome_mult, const ErrValue& x,
                       Precision prec) {
    if (nome_mult < 1) throw domain_error("vartheta_eval: nome multiplier must be >= 1");
    if (!(abs_lb(x) > 0)) throw domain_error("vartheta_eval: x is not certified nonzero");
    ErrValue u = qpow(tp, nome_mult, 2);  // q^{mult/2}; terms are u^{n^2} x^n
    Real ua = abs_ub(u);
    if (!(ua < Real::of_long(1, kRadiusBits)))
        throw divergence_error("vartheta_eval: |q| >= 1");

    const double Lu = log_mag(u);
    const double Lx = log_mag(x);
    const double decades = prec.digits + 10;

    Real xa_ub = abs_ub(x), xa_lb = abs_lb(x);
    for (int attempt = 0; attempt < 8; ++attempt) {
        Window w = quad_window(Lu, Lx, decades * (1 << attempt));
        long n_lo = w.lo, n_hi = w.hi;
        Real r_right = ub::mul(pow_si(ua, 2 * n_hi + 1, MPFR_RNDU), xa_ub);
        Real r_left = ub::div(pow_si(ua, 1 - 2 * n_lo, MPFR_RNDU), xa_lb);
        Real one = Real::of_long(1, kRadiusBits);
        if (!(r_right < one) || !(r_left < one)) continue;

        ErrValue u2 = u * u;
        ErrValue p = pow_int(u, n_lo * n_lo);      // u^{n^2}
        ErrValue wstep = pow_int(u, 2 * n_lo + 1); // u^{2n+1}
        ErrValue xp = pow_int(x, n_lo);
        ErrValue sum = ErrValue::zero(prec.bits());
        ErrValue last;
        for (long n = n_lo; n <= n_hi; ++n) {
            last = p * xp;
            sum = sum + last;
            if (n < n_hi) {
                p = p * wstep;
                wstep = wstep * u2;
                xp = xp * x;
            }
        }
        ErrValue first_l = pow_int(u, (n_lo - 1) * (n_lo - 1)) * pow_int(x, n_lo - 1);
        Real tail_r = geometric_tail_bound(r_right, ub::mul(abs_ub(last), r_right));
        Real tail_l = geometric_tail_bound(r_left, abs_ub(first_l));
        return inflate(sum, ub::add(tail_r, tail_l));
    }
    throw nonconvergence_error("vartheta_eval: window did not contract");
}

ErrValue pochhammer_eval(const ErrValue& a, const ErrValue& q, Precision prec) {
    Real qa = abs_ub(q);
    Real one = Real::of_long(1, kRadiusBits);
    if (!(qa < one)) throw divergence_error("pochhammer_eval: |q| >= 1");
    ErrValue res = ErrValue::of_long(1, prec.bits());
    Real aa = abs_ub(a);
    if (aa.is_zero()) return res;

    // Stop once |a q^n| is below both 1/2 and the precision target.
    double la = std::log(rmax(aa, Real::pow2(-60)).to_double());
    double lq = std::log(qa.to_double());
    double target = -(prec.digits + 10) * 2.302585092994046;
    long n0 = std::max<long>(1, static_cast<long>(std::ceil((std::min(target, -0.8) - la) / lq)) + 1);

    ErrValue one_ev = ErrValue::of_long(1, prec.bits());
    ErrValue aqn = a;
    for (long n = 0; n < n0; ++n) {
        res = res * (one_ev - aqn);
        aqn = aqn * q;
    }
    Real u = ub::mul(aa, pow_si(qa, n0, MPFR_RNDU));
    if (!(mul_2si(u, 1, MPFR_RNDU) < one))
        throw nonconvergence_error("pochhammer_eval: remainder bound did not contract");
    // |log prod_{n>=n0}| <= sum 2|a q^n| =: eps, so the tail factor lies in
    // the disk of radius e^eps - 1 around 1.
    Real eps = geometric_tail_bound(qa, mul_2si(u, 1, MPFR_RNDU));
    return inflate(res, ub::mul(abs_ub(res), expm1(eps, MPFR_RNDU)));
}

ErrValue pochhammer_eval(const std::vector<ErrValue>& as, const ErrValue& q,
                         Precision prec) {
    ErrValue res = ErrValue::of_long(1, prec.bits());
    for (const auto& a : as) res = res * pochhammer_eval(a, q, prec);
    return res;
}

ErrValue theta_phi(const ErrValue& q, Precision prec) {
    return theta_eval(q * q, q, prec);
}
ErrValue theta_psi(const ErrValue& q, Precision prec) {
    return theta_eval(pow_int(q, 4), q, prec);
}
ErrValue theta_fminus(const ErrValue& q, Precision prec) {
    return theta_eval(pow_int(q, 3), -q, prec);
}
ErrValue theta_chi(const ErrValue& q, Precision prec) {
    return pochhammer_eval(-q, q * q, prec);
}

}  // namespace qtheta
