#include <cmath>

#include "helpers.hpp"
#include "qtheta/coeff.hpp"
#include "qtheta/identities.hpp"

using namespace qtheta;
using namespace qtheta::testing;

namespace {
Precision prec50() { return Precision(50); }
}

TEST_CASE("series evaluation at hand-checked points", "[routes]") {
    Precision prec = prec50();
    mpfr_prec_t bits = prec.bits();
    SECTION("gamma_{2,0}(1/2) is the square-exponent sum") {
        double expect = 0;
        for (int m = -10; m <= 10; ++m) expect += std::pow(0.5, m * m);
        ErrValue v = gamma_eval({2, 0}, ErrValue::of_mpq(mpq_class(1, 2), bits), prec);
        CHECK(near_real(v, expect, 1e-12));
    }
    SECTION("reduction shifts the value by a power of q") {
        ErrValue q = ErrValue::of_mpq(dec("0.31"), bits);
        ErrValue a = gamma_eval({3, 4}, q, prec);  // = q^1 gamma_{3,1}
        ErrValue b = q * gamma_eval({3, 1}, q, prec);
        CHECK(agree(a, b));
    }
    SECTION("|q| >= 1 is rejected") {
        CHECK_THROWS_AS(gamma_eval({2, 0}, ErrValue::of_long(1, bits), prec),
                        divergence_error);
    }
}

TEST_CASE("certified digits at the paper's probe points", "[routes]") {
    // independently verified: the lattice sum over a^2+ab+b^2 at these two
    // rationals (cross-checked by all four routes and an external 60-digit
    // computation)
    Precision prec = prec50();
    mpfr_prec_t bits = prec.bits();
    ErrValue va = gamma_eval({3, 0}, ErrValue::of_mpq(dec("-0.163034"), bits), prec);
    CHECK(std::abs(re_d(va) - (-2.96599709077e-6)) < 5e-17);
    CHECK(rad_d(va) < 1e-40);
    CHECK(*certified_sign(va) == -1);
    ErrValue vb = gamma_eval({3, 0}, ErrValue::of_mpq(dec("-0.163033"), bits), prec);
    CHECK(std::abs(re_d(vb) - 3.41004372883e-6) < 5e-17);
    CHECK(*certified_sign(vb) == 1);
}

TEST_CASE("c picks up the half-power of q", "[routes]") {
    Precision prec = prec50();
    SECTION("positive real branch gives the positive root") {
        TauPoint tp = TauPoint::from_tau(mpq_class(0), mpq_class(220636, 1000000), prec);
        ErrValue c = c_eval({2, 1}, tp, prec);
        ErrValue expect = qpow(tp, 1, 2) * gamma_eval({2, 1}, tp.q, prec);
        CHECK(agree(c, expect));
        CHECK(std::abs(im_d(qpow(tp, 1, 2))) < 1e-12);  // real positive root here
        CHECK(re_d(qpow(tp, 1, 2)) > 0);
    }
    SECTION("negative real branch gives i sqrt(|q|)") {
        TauPoint tp = tau_from_negative_real(dec("-0.25"), prec);
        ErrValue h = qpow(tp, 1, 2);
        CHECK(near(h, 0.0, 0.5, 1e-14));
    }
    SECTION("c_{3,2} = q^{1/2} c_{3,1}") {
        TauPoint tp = tau_from_negative_real(dec("-0.2"), prec);
        CHECK(agree(c_eval({3, 2}, tp, prec), qpow(tp, 1, 2) * c_eval({3, 1}, tp, prec)));
    }
}

TEST_CASE("recurrence route specializations", "[routes]") {
    Precision prec = prec50();
    TauPoint tp = tau_from_negative_real(dec("-0.163034"), prec);
    SECTION("k = 2 closes to a single vartheta") {
        for (long n : {0L, 1L}) {
            ErrValue lhs = c_recurrence_eval(2, n, tp, prec);
            ErrValue rhs = qpow(tp, n * n, 2) * vartheta_eval(tp, 2, qpow(tp, n), prec);
            CHECK(agree(lhs, rhs));
        }
    }
    SECTION("k = 3, n = 0 hits the certified digits") {
        ErrValue v = c_recurrence_eval(3, 0, tp, prec);
        CHECK(std::abs(re_d(v) - (-2.96599709077e-6)) < 1e-15);
        CHECK(std::abs(im_d(v)) < 1e-30);
    }
    SECTION("k = 4 against the closed form") {
        TauPoint tq = TauPoint::from_tau(mpq_class(0), mpq_class(2561, 10000), prec);
        for (long n = 0; n < 4; ++n)
            CHECK(agree(c_recurrence_eval(4, n, tq, prec), c_closed_eval({4, n}, tq, prec)));
    }
    SECTION("bounds") {
        CHECK_THROWS_AS(c_recurrence_eval(13, 0, tp, prec), domain_error);
        CHECK_THROWS_AS(c_recurrence_eval(3, 3, tp, prec), domain_error);
    }
}

TEST_CASE("four routes agree at sampled points", "[routes]") {
    Precision prec = prec50();
    Rng rng(kDefaultSeed ^ 0x4042u);
    for (int i = 0; i < 20; ++i) {
        // alternate generic complex tau and the negative-real branch
        TauPoint tp = (i % 2 == 0)
                          ? sample_point(rng, prec).tp
                          : tau_from_negative_real(
                                rng.uniform(mpq_class(-7, 10), mpq_class(-1, 20)), prec);
        for (long k = 2; k <= 4; ++k) {
            for (long n = 0; n < k; ++n) {
                ErrValue series = c_eval({k, n}, tp, prec);
                CHECK(agree(series, c_recurrence_eval(k, n, tp, prec)));
                CHECK(agree(series, c_closed_eval({k, n}, tp, prec)));
                CHECK(agree(series, c_rootsum_eval({k, n}, tp, prec)));
            }
        }
    }
}

TEST_CASE("theta-product coefficients of the fourth power", "[routes]") {
    Precision prec = prec50();
    TauPoint tp = TauPoint::from_tau(mpq_class(0), mpq_class(292, 1000), prec);
    for (long i = 0; i < 4; ++i) {
        ErrValue a4 = a4_closed_eval(i, tp, prec);
        CHECK(agree(a4, gamma_eval({4, i}, tp.q, prec)));
        ErrValue c4 = qpow(tp, i, 2) * a4;
        CHECK(agree(c4, c_closed_eval({4, i}, tp, prec)));
    }
    // a_{4,1} = a_{4,3} = theta_q(1)^3 / 2
    ErrValue t1 = theta_eval(tp.q, ErrValue::of_long(1, prec.bits()), prec);
    ErrValue half_cube = mul_mpq(pow_int(t1, 3), mpq_class(1, 2));
    CHECK(agree(a4_closed_eval(1, tp, prec), half_cube));
    CHECK(agree(a4_closed_eval(3, tp, prec), half_cube));
}

TEST_CASE("second power never vanishes on samples", "[routes]") {
    Precision prec = prec50();
    Rng rng(kDefaultSeed ^ 0x77u);
    for (int i = 0; i < 50; ++i) {
        SamplePoint sp = sample_point(rng, prec);
        for (long n : {0L, 1L}) {
            ErrValue c = c_eval({2, n}, sp.tp, prec);
            CHECK(certified_nonzero(c));
        }
    }
}

TEST_CASE("rootsum guard", "[routes]") {
    Precision prec = prec50();
    CHECK_THROWS_AS(c_rootsum_eval({1, 0}, tau_from_negative_real(dec("-0.3"), prec), prec),
                    domain_error);
}
