#include <cmath>

#include "helpers.hpp"
#include "qtheta/identities.hpp"
#include "qtheta/theta.hpp"

using namespace qtheta;
using namespace qtheta::testing;

namespace {
Precision prec50() { return Precision(50); }
}

TEST_CASE("theta series limits and zeros", "[theta]") {
    Precision prec = prec50();
    mpfr_prec_t bits = prec.bits();
    SECTION("q -> 0 leaves the m = 0,1 terms") {
        ErrValue q = ErrValue::of_mpq(mpq_class(1, mpz_class("10000000000000000000000000000000000000000")), bits);
        ErrValue v = theta_eval(q, ErrValue::of_long(1, bits), prec);
        CHECK(near_real(v, 2.0, 1e-38));
    }
    SECTION("theta vanishes at -1 and -q") {
        ErrValue q = ErrValue::of_mpq(mpq_class(3, 10), bits);
        ErrValue at_m1 = theta_eval(q, ErrValue::of_long(-1, bits), prec);
        CHECK(holds(at_m1));
        CHECK(rad_d(at_m1) < 1e-40);
        CHECK(holds(theta_eval(q, -q, prec)));
    }
    SECTION("x and q/x symmetry") {
        ErrValue q = ErrValue::of_mpq(mpq_class(3, 10), bits);
        ErrValue x = ErrValue::of_mpq(mpq_class(7, 10), bits);
        CHECK(agree(theta_eval(q, x, prec), theta_eval(q, q / x, prec)));
    }
    SECTION("domain errors") {
        ErrValue q = ErrValue::of_mpq(mpq_class(3, 2), bits);
        CHECK_THROWS_AS(theta_eval(q, ErrValue::of_long(1, bits), prec), divergence_error);
        ErrValue good = ErrValue::of_mpq(mpq_class(1, 2), bits);
        CHECK_THROWS_AS(theta_eval(good, ErrValue::zero(bits), prec), domain_error);
    }
}

TEST_CASE("theta against a direct double sum", "[theta]") {
    Precision prec = prec50();
    mpfr_prec_t bits = prec.bits();
    double qd = 0.37, xd = 1.7;
    double expect = 0;
    for (int m = -60; m <= 60; ++m) expect += std::pow(qd, m * (m - 1) / 2.0) * std::pow(xd, m);
    ErrValue v = theta_eval(ErrValue::of_mpq(dec("0.37"), bits), ErrValue::of_mpq(dec("1.7"), bits), prec);
    CHECK(near_real(v, expect, 1e-9));
}

TEST_CASE("vartheta basics", "[theta]") {
    Precision prec = prec50();
    mpfr_prec_t bits = prec.bits();
    SECTION("q -> 0 leaves n = 0") {
        TauPoint tp = TauPoint::from_tau(mpq_class(0), mpq_class(15), prec);  // |q| tiny
        ErrValue v = vartheta_eval(tp, ErrValue::of_long(1, bits), prec);
        CHECK(near_real(v, 1.0, 1e-30));
    }
    SECTION("vartheta(x) = theta_q(q^{1/2} x) and the inversion symmetry") {
        Rng rng(kDefaultSeed);
        for (int i = 0; i < 50; ++i) {
            SamplePoint sp = sample_point(rng, prec);
            ErrValue lhs = vartheta_eval(sp.tp, sp.x, prec);
            CHECK(agree(lhs, theta_eval(sp.tp.q, qpow(sp.tp, 1, 2) * sp.x, prec)));
            if (i < 20) {
                ErrValue one = ErrValue::of_long(1, bits);
                CHECK(agree(lhs, vartheta_eval(sp.tp, one / sp.x, prec)));
            }
        }
    }
    SECTION("zero at x = -q^{1/2}") {
        TauPoint tp = tau_from_negative_real(dec("-0.25"), prec);
        ErrValue v = vartheta_eval(tp, -qpow(tp, 1, 2), prec);
        CHECK(holds(v));
        CHECK(rad_d(v) < 1e-35);
    }
}

TEST_CASE("pochhammer products", "[theta]") {
    Precision prec = prec50();
    mpfr_prec_t bits = prec.bits();
    ErrValue half = ErrValue::of_mpq(mpq_class(1, 2), bits);
    SECTION("empty-ish products") {
        CHECK(near_real(pochhammer_eval(ErrValue::zero(bits), half, prec), 1.0, 1e-45));
        ErrValue small = ErrValue::of_mpq(mpq_class(1, 1000000), bits);
        CHECK(near_real(pochhammer_eval(small, small, prec), 1.0, 1e-5));
    }
    SECTION("euler product by hand") {
        // (1/2;1/2)_inf = prod (1 - 2^{-n-1})
        double expect = 1;
        for (int n = 0; n < 200; ++n) expect *= 1 - std::pow(0.5, n + 1);
        CHECK(near_real(pochhammer_eval(half, half, prec), expect, 1e-12));
    }
    SECTION("divergence") {
        ErrValue big = ErrValue::of_long(2, bits);
        CHECK_THROWS_AS(pochhammer_eval(half, big, prec), divergence_error);
    }
}

TEST_CASE("triple product at sampled points", "[theta]") {
    Precision prec = prec50();
    Rng rng(kDefaultSeed);
    for (int i = 0; i < 20; ++i) {
        SamplePoint sp = sample_point(rng, prec);
        const ErrValue& q = sp.tp.q;
        ErrValue rhs = pochhammer_eval({q, -sp.x, -(q / sp.x)}, q, prec);
        CHECK(agree(theta_eval(q, sp.x, prec), rhs));
    }
}

TEST_CASE("quasi periodicity over a shift range", "[theta]") {
    Precision prec = prec50();
    Rng rng(kDefaultSeed ^ 0x9d);
    for (int i = 0; i < 8; ++i) {
        SamplePoint sp = sample_point(rng, prec);
        const ErrValue& q = sp.tp.q;
        ErrValue base = theta_eval(q, sp.x, prec);
        for (long n = -3; n <= 3; ++n) {
            // theta(x) = q^{n(n-1)/2} x^n theta(q^n x)
            ErrValue rhs = pow_int(q, n * (n - 1) / 2) * pow_int(sp.x, n) *
                           theta_eval(q, pow_int(q, n) * sp.x, prec);
            CHECK(agree(base, rhs));
        }
    }
}

TEST_CASE("distribution formula for small factor counts", "[theta]") {
    Precision prec = prec50();
    Rng rng(kDefaultSeed ^ 0x51u);
    for (long n : {2L, 3L, 4L}) {
        SamplePoint sp = sample_point(rng, prec);
        const ErrValue& q = sp.tp.q;
        ErrValue qn = pow_int(q, n);
        ErrValue lhs = ErrValue::of_long(1, prec.bits());
        for (long j = 0; j < n; ++j) lhs = lhs * theta_eval(qn, pow_int(q, j) * sp.x, prec);
        ErrValue rhs = pow_int(pochhammer_eval(qn, qn, prec), n) /
                       pochhammer_eval(q, q, prec) * theta_eval(q, sp.x, prec);
        CHECK(agree(lhs, rhs));
    }
}

TEST_CASE("classical wrappers", "[theta]") {
    Precision prec = prec50();
    mpfr_prec_t bits = prec.bits();
    ErrValue q = ErrValue::of_mpq(dec("0.41"), bits);
    SECTION("phi is the square-exponent sum") {
        double expect = 1;
        for (int k = 1; k < 40; ++k) expect += 2 * std::pow(0.41, k * k);
        CHECK(near_real(theta_phi(q, prec), expect, 1e-12));
    }
    SECTION("psi is the triangular-exponent sum") {
        double expect = 0;
        for (int k = 0; k < 60; ++k) expect += std::pow(0.41, k * (k + 1) / 2.0);
        CHECK(near_real(theta_psi(q, prec), expect, 1e-12));
    }
    SECTION("f(-q) matches the pentagonal product") {
        CHECK(agree(theta_fminus(q, prec), pochhammer_eval(q, q, prec)));
    }
    SECTION("chi") {
        CHECK(agree(theta_chi(q, prec), pochhammer_eval(-q, q * q, prec)));
    }
}
