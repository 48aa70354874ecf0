#pragma once

#include <optional>
#include <string>

#include "qtheta/errors.hpp"
#include "qtheta/precision.hpp"
#include "qtheta/real.hpp"

namespace qtheta {

// A complex ball: the true quantity lies within `rad` of the center
// (re, im). All arithmetic below is first-order ball propagation with the
// centers' rounding slack folded into the radius, so composition stays
// sound. Immutable by convention; every operation returns a fresh value.
struct ErrValue {
    Real re, im;  // center, working precision
    Real rad;     // absolute error bound, kRadiusBits, >= 0

    ErrValue() : re(kRadiusBits), im(kRadiusBits), rad(kRadiusBits) {}
    ErrValue(Real r, Real i, Real radius)
        : re(std::move(r)), im(std::move(i)), rad(std::move(radius)) {}

    mpfr_prec_t bits() const { return re.prec(); }

    static ErrValue zero(mpfr_prec_t bits) {
        return {Real(bits), Real(bits), Real(kRadiusBits)};
    }
    static ErrValue of_long(long x, mpfr_prec_t bits) {
        return {Real::of_long(x, bits), Real(bits), Real(kRadiusBits)};
    }
    // Exact rational input; the (tiny) representation error goes to the radius.
    static ErrValue of_mpq(const mpq_class& x, mpfr_prec_t bits) {
        Real c = Real::of_mpq(x, bits, MPFR_RNDN);
        Real lo = Real::of_mpq(x, bits, MPFR_RNDD);
        Real hi = Real::of_mpq(x, bits, MPFR_RNDU);
        return {std::move(c), Real(bits), sub(hi, lo, MPFR_RNDU)};
    }
    static ErrValue of_mpq(const mpq_class& x, const mpq_class& y, mpfr_prec_t bits) {
        ErrValue a = of_mpq(x, bits), b = of_mpq(y, bits);
        return {std::move(a.re), std::move(b.re), ub::add(a.rad, b.rad)};
    }
    static ErrValue of_real(const Real& x, const Real& radius) {
        return {x, Real(x.prec()), radius};
    }
};

// (|re| + |im|) * 2^(4 - p): covers the centers' rounding error with margin.
inline Real round_slack(const Real& re, const Real& im) {
    Real m = add(abs(re), abs(im), MPFR_RNDU);
    return mul_2si(m, 4 - static_cast<long>(join_prec(re, im)), MPFR_RNDU);
}

// Upper bound on |center|.
inline Real center_abs_ub(const ErrValue& a) { return hypot(a.re, a.im, MPFR_RNDU); }
// Upper/lower bound on |true value|.
inline Real abs_ub(const ErrValue& a) { return ub::add(center_abs_ub(a), a.rad); }
inline Real abs_lb(const ErrValue& a) {
    Real lo = sub(hypot(a.re, a.im, MPFR_RNDD), a.rad, MPFR_RNDD);
    return lo.is_neg() ? Real(kRadiusBits) : lo;
}

inline ErrValue inflate(ErrValue a, const Real& extra) {
    a.rad = ub::add(a.rad, extra);
    return a;
}

inline ErrValue operator+(const ErrValue& a, const ErrValue& b) {
    Real re = a.re + b.re, im = a.im + b.im;
    Real rad = ub::add3(a.rad, b.rad, round_slack(re, im));
    return {std::move(re), std::move(im), std::move(rad)};
}
inline ErrValue operator-(const ErrValue& a, const ErrValue& b) {
    Real re = a.re - b.re, im = a.im - b.im;
    Real rad = ub::add3(a.rad, b.rad, round_slack(re, im));
    return {std::move(re), std::move(im), std::move(rad)};
}
inline ErrValue operator-(const ErrValue& a) { return {neg(a.re), neg(a.im), a.rad}; }
inline ErrValue conj(const ErrValue& a) { return {a.re, neg(a.im), a.rad}; }
// Multiplication by i is exact.
inline ErrValue mul_i(const ErrValue& a) { return {neg(a.im), a.re, a.rad}; }

inline ErrValue operator*(const ErrValue& a, const ErrValue& b) {
    Real re = a.re * b.re - a.im * b.im;
    Real im = a.re * b.im + a.im * b.re;
    Real m1 = center_abs_ub(a), m2 = center_abs_ub(b);
    Real cross = ub::add3(ub::mul(m1, b.rad), ub::mul(m2, a.rad), ub::mul(a.rad, b.rad));
    Real slack = mul_2si(ub::mul(m1, m2), 3 - static_cast<long>(join_prec(re, im)), MPFR_RNDU);
    return {std::move(re), std::move(im), ub::add(cross, slack)};
}

inline ErrValue mul_real(const ErrValue& a, const Real& s) {
    Real re = a.re * s, im = a.im * s;
    Real rad = ub::add(ub::mul(a.rad, abs(s)), round_slack(re, im));
    return {std::move(re), std::move(im), std::move(rad)};
}
inline ErrValue mul_long(const ErrValue& a, long s) {
    return mul_real(a, Real::of_long(s, a.bits()));
}
// Scaling by an exact rational.
inline ErrValue mul_mpq(const ErrValue& a, const mpq_class& s) {
    ErrValue sv = ErrValue::of_mpq(s, a.bits());
    return a * sv;
}

inline ErrValue operator/(const ErrValue& a, const ErrValue& b) {
    Real den_lb = abs_lb(b);
    if (!(den_lb > 0))
        throw precision_error("ErrValue division: divisor ball is not certified nonzero");
    // center quotient via a * conj(b) / |b|^2
    Real n2 = b.re * b.re + b.im * b.im;
    Real re = (a.re * b.re + a.im * b.im) / n2;
    Real im = (a.im * b.re - a.re * b.im) / n2;
    Real w_ub = ub::div(abs_ub(a), den_lb);
    Real num = ub::add(a.rad, ub::mul(w_ub, b.rad));
    Real rad = ub::add(ub::div(num, den_lb),
                       mul_2si(w_ub, 5 - static_cast<long>(join_prec(re, im)), MPFR_RNDU));
    return {std::move(re), std::move(im), std::move(rad)};
}

// exp of a complex ball: |e^z - e^c| <= |e^c| (e^rad - 1).
inline ErrValue exp_ev(const ErrValue& a) {
    Real ex = exp(a.re);
    Real re = ex * cos(a.im);
    Real im = ex * sin(a.im);
    Real mag_ub = exp(add(a.re, a.rad, MPFR_RNDU), MPFR_RNDU);
    Real rad = ub::add(ub::mul(mag_ub, expm1(a.rad, MPFR_RNDU)),
                       mul_2si(mag_ub, 4 - static_cast<long>(re.prec()), MPFR_RNDU));
    return {std::move(re), std::move(im), std::move(rad)};
}

// Integer powers by binary powering over ball products.
inline ErrValue pow_int(const ErrValue& a, long e) {
    if (e == 0) return ErrValue::of_long(1, a.bits());
    bool invert = e < 0;
    unsigned long n = invert ? static_cast<unsigned long>(-(e + 1)) + 1ul
                             : static_cast<unsigned long>(e);
    ErrValue acc = ErrValue::of_long(1, a.bits());
    ErrValue base = a;
    while (n) {
        if (n & 1ul) acc = acc * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return invert ? ErrValue::of_long(1, a.bits()) / acc : acc;
}

// Square root of a ball certified real positive.
inline ErrValue sqrt_real(const ErrValue& a) {
    if (!(abs(a.im) <= a.rad) || !(sub(a.re, a.rad, MPFR_RNDD) > 0))
        throw domain_error("sqrt_real: ball is not certified real positive");
    Real re = sqrt(a.re);
    Real lo = sqrt(sub(a.re, a.rad, MPFR_RNDD), MPFR_RNDD);
    // |sqrt z - sqrt c| <= rad / (2 sqrt(lo)) on the real part; the imaginary
    // leak through the disk is bounded the same way.
    Real rad = ub::add(ub::div(a.rad, mul_2si(lo, 1, MPFR_RNDD)),
                       mul_2si(re, 3 - static_cast<long>(re.prec()), MPFR_RNDU));
    return {std::move(re), Real(a.bits()), std::move(rad)};
}

// Natural log of a ball certified real positive.
inline ErrValue log_real(const ErrValue& a) {
    Real lo = sub(a.re, a.rad, MPFR_RNDD);
    if (!(abs(a.im) <= a.rad) || !(lo > 0))
        throw domain_error("log_real: ball is not certified real positive");
    Real re = log(a.re);
    Real rad = ub::add(ub::div(a.rad, lo),
                       mul_2si(rmax(abs(re), Real::of_long(1, kRadiusBits)),
                               3 - static_cast<long>(re.prec()), MPFR_RNDU));
    return {std::move(re), Real(a.bits()), std::move(rad)};
}

// The quantity is known real; its sign is certified iff the ball excludes 0.
inline std::optional<int> certified_sign(const ErrValue& a) {
    if (abs(a.re) > a.rad && abs(a.im) <= a.rad) return a.re.sgn();
    return std::nullopt;
}
inline bool certified_nonzero(const ErrValue& a) { return abs_lb(a) > 0; }

// Residual check: |value| <= allowance (typically the combined radius).
inline bool within(const ErrValue& residual, const Real& allowance) {
    return !(center_abs_ub(residual) > allowance);
}

// pi as a ball at the given working precision.
inline ErrValue pi_ball(mpfr_prec_t bits) {
    Real c = Real::pi(bits);
    Real lo = Real::pi(bits, MPFR_RNDD);
    Real hi = Real::pi(bits, MPFR_RNDU);
    return ErrValue::of_real(c, sub(hi, lo, MPFR_RNDU));
}

// Upper bound on sum_{j>=0} first * ratio^j. Feeds every series truncation.
inline Real geometric_tail_bound(const Real& ratio, const Real& first) {
    if (ratio.is_neg() || first.is_neg())
        throw domain_error("geometric_tail_bound: negative input");
    Real one = Real::of_long(1, kRadiusBits);
    if (!(ratio < one)) throw domain_error("geometric_tail_bound: ratio >= 1");
    return ub::div(first, sub(one, ratio, MPFR_RNDD));
}

}  // namespace qtheta
