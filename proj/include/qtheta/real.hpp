#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "qtheta/precision.hpp"

namespace qtheta {

// Value-semantic wrapper around mpfr_t. Every Real carries its own mantissa
// precision; binary operations produce results at the larger of the two
// operand precisions. Rounding defaults to nearest; the directed-rounding
// overloads exist for radius bookkeeping.
class Real {
  public:
    explicit Real(mpfr_prec_t bits = kRadiusBits) {
        mpfr_init2(v_, bits);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, 2);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real of_long(long x, mpfr_prec_t bits) {
        Real r(bits);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real of_double(double x, mpfr_prec_t bits) {
        Real r(bits);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real of_mpz(const mpz_class& z, mpfr_prec_t bits, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(bits);
        mpfr_set_z(r.v_, z.get_mpz_t(), rnd);
        return r;
    }
    static Real of_mpq(const mpq_class& q, mpfr_prec_t bits, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(bits);
        mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
        return r;
    }
    static Real pi(mpfr_prec_t bits, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(bits);
        mpfr_const_pi(r.v_, rnd);
        return r;
    }
    // 2^e as an exact Real.
    static Real pow2(long e, mpfr_prec_t bits = kRadiusBits) {
        Real r(bits);
        mpfr_set_si_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_neg() const { return mpfr_sgn(v_) < 0; }
    int sgn() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    // Shortest decimal string; `digits` 0 lets mpfr pick round-trip length.
    std::string str(int digits = 0) const {
        char* s = nullptr;
        int n = mpfr_asprintf(&s, "%.*Rg", digits > 0 ? digits : 20, v_);
        std::string out = n >= 0 ? std::string(s) : std::string("nan");
        mpfr_free_str(s);
        return out;
    }

    friend int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
    friend bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Real& a, const Real& b) { return cmp(a, b) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return cmp(a, b) == 0; }

    bool operator<(long x) const { return mpfr_cmp_si(v_, x) < 0; }
    bool operator>(long x) const { return mpfr_cmp_si(v_, x) > 0; }
    bool operator>=(long x) const { return mpfr_cmp_si(v_, x) >= 0; }
    bool operator<=(long x) const { return mpfr_cmp_si(v_, x) <= 0; }

  private:
    mpfr_t v_;

    friend Real add(const Real&, const Real&, mpfr_rnd_t);
    friend Real sub(const Real&, const Real&, mpfr_rnd_t);
    friend Real mul(const Real&, const Real&, mpfr_rnd_t);
    friend Real div(const Real&, const Real&, mpfr_rnd_t);
    friend Real neg(const Real&);
    friend Real abs(const Real&);
    friend Real sqrt(const Real&, mpfr_rnd_t);
    friend Real log(const Real&, mpfr_rnd_t);
    friend Real exp(const Real&, mpfr_rnd_t);
    friend Real expm1(const Real&, mpfr_rnd_t);
    friend Real cos(const Real&, mpfr_rnd_t);
    friend Real sin(const Real&, mpfr_rnd_t);
    friend Real hypot(const Real&, const Real&, mpfr_rnd_t);
    friend Real pow_si(const Real&, long, mpfr_rnd_t);
    friend Real mul_2si(const Real&, long, mpfr_rnd_t);
    friend Real mul_si(const Real&, long, mpfr_rnd_t);
    friend Real div_si(const Real&, long, mpfr_rnd_t);
    friend Real gamma(const Real&, mpfr_rnd_t);
    friend Real rmax(const Real&, const Real&);
    friend Real rmin(const Real&, const Real&);
};

inline mpfr_prec_t join_prec(const Real& a, const Real& b) {
    return std::max(a.prec(), b.prec());
}

inline Real add(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(join_prec(a, b));
    mpfr_add(r.v_, a.v_, b.v_, rnd);
    return r;
}
inline Real sub(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(join_prec(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, rnd);
    return r;
}
inline Real mul(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(join_prec(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, rnd);
    return r;
}
inline Real div(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(join_prec(a, b));
    mpfr_div(r.v_, a.v_, b.v_, rnd);
    return r;
}
inline Real neg(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
}
inline Real abs(const Real& a) {
    Real r(a.prec());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
}
inline Real sqrt(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(a.prec());
    mpfr_sqrt(r.v_, a.v_, rnd);
    return r;
}
inline Real log(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(a.prec());
    mpfr_log(r.v_, a.v_, rnd);
    return r;
}
inline Real exp(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(a.prec());
    mpfr_exp(r.v_, a.v_, rnd);
    return r;
}
inline Real expm1(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(a.prec());
    mpfr_expm1(r.v_, a.v_, rnd);
    return r;
}
inline Real cos(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(a.prec());
    mpfr_cos(r.v_, a.v_, rnd);
    return r;
}
inline Real sin(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(a.prec());
    mpfr_sin(r.v_, a.v_, rnd);
    return r;
}
inline Real hypot(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(join_prec(a, b));
    mpfr_hypot(r.v_, a.v_, b.v_, rnd);
    return r;
}
inline Real pow_si(const Real& a, long e, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(a.prec());
    mpfr_pow_si(r.v_, a.v_, e, rnd);
    return r;
}
inline Real mul_2si(const Real& a, long e, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(a.prec());
    mpfr_mul_2si(r.v_, a.v_, e, rnd);
    return r;
}
inline Real mul_si(const Real& a, long x, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(a.prec());
    mpfr_mul_si(r.v_, a.v_, x, rnd);
    return r;
}
inline Real div_si(const Real& a, long x, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(a.prec());
    mpfr_div_si(r.v_, a.v_, x, rnd);
    return r;
}
inline Real gamma(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(a.prec());
    mpfr_gamma(r.v_, a.v_, rnd);
    return r;
}
inline Real rmax(const Real& a, const Real& b) {
    Real r(join_prec(a, b));
    mpfr_max(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
inline Real rmin(const Real& a, const Real& b) {
    Real r(join_prec(a, b));
    mpfr_min(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

inline Real operator+(const Real& a, const Real& b) { return add(a, b); }
inline Real operator-(const Real& a, const Real& b) { return sub(a, b); }
inline Real operator*(const Real& a, const Real& b) { return mul(a, b); }
inline Real operator/(const Real& a, const Real& b) { return div(a, b); }
inline Real operator-(const Real& a) { return neg(a); }

// Upper-bound helpers for radius arithmetic (all operands assumed >= 0).
namespace ub {
inline Real add(const Real& a, const Real& b) { return qtheta::add(a, b, MPFR_RNDU); }
inline Real add3(const Real& a, const Real& b, const Real& c) {
    return qtheta::add(qtheta::add(a, b, MPFR_RNDU), c, MPFR_RNDU);
}
inline Real mul(const Real& a, const Real& b) { return qtheta::mul(a, b, MPFR_RNDU); }
// Upper bound of a/b needs the denominator from below; caller passes a lower
// bound for b.
inline Real div(const Real& a, const Real& b_lo) { return qtheta::div(a, b_lo, MPFR_RNDU); }
}  // namespace ub

}  // namespace qtheta
