#include <cmath>

#include "helpers.hpp"
#include "qtheta/rng.hpp"
#include "qtheta/tau.hpp"

using namespace qtheta;
using namespace qtheta::testing;

TEST_CASE("precision floor", "[arith]") {
    CHECK_THROWS_AS(Precision(14), domain_error);
    CHECK(Precision(50).bits() > 166);
}

TEST_CASE("geometric tail bound", "[arith]") {
    auto bound = [](double r, double f) {
        return geometric_tail_bound(Real::of_double(r, 64), Real::of_double(f, 64)).to_double();
    };
    CHECK(bound(0.5, 1.0) == Catch::Approx(2.0).epsilon(1e-12));
    CHECK(bound(0.0, 3.0) == Catch::Approx(3.0).epsilon(1e-12));
    CHECK(bound(0.9, 1e-10) == Catch::Approx(1e-9).epsilon(1e-9));
    CHECK(bound(0.5, 1.0) >= 2.0);  // always an upper bound
    CHECK_THROWS_AS(geometric_tail_bound(Real::of_long(1, 64), Real::of_long(1, 64)),
                    domain_error);
}

TEST_CASE("tau from negative real", "[arith]") {
    Precision prec(50);
    SECTION("t = 1/10 gives q = -e^{-pi/5}") {
        TauPoint tp = TauPoint::from_t(mpq_class(1, 10), prec);
        CHECK(near(tp.q, -std::exp(-0.2 * M_PI), 0.0, 1e-14));
        CHECK(near(tp.tau, 0.5, 0.1, 1e-30));
    }
    SECTION("direct logarithm at the paper's sample point") {
        mpq_class q = dec("-0.163034");
        TauPoint tp = tau_from_negative_real(q, prec);
        double t_expected = -std::log(0.163034) / (2 * M_PI);
        CHECK(std::abs(im_d(tp.tau) - t_expected) < 1e-12);
        CHECK(near_real(tp.q, -0.163034, 1e-15));
    }
    SECTION("near the singular endpoint") {
        TauPoint tp = tau_from_negative_real(dec("-0.999"), prec);
        double t_expected = -std::log(0.999) / (2 * M_PI);
        CHECK(std::abs(im_d(tp.tau) - t_expected) < 1e-15);
        CHECK(rad_d(tp.tau) < 1e-40);
        CHECK(!tp.tau.im.is_zero());
    }
    SECTION("domain") {
        CHECK_THROWS_AS(tau_from_negative_real(mpq_class(1, 2), prec), domain_error);
        CHECK_THROWS_AS(tau_from_negative_real(mpq_class(-2), prec), domain_error);
    }
}

TEST_CASE("qpow on the fixed branch", "[arith]") {
    Precision prec(50);
    TauPoint tp = TauPoint::from_t(mpq_class(1, 10), prec);
    SECTION("integer power is the plain power") {
        CHECK(agree(qpow(tp, 1), tp.q));
        CHECK(agree(qpow(tp, 2), tp.q * tp.q));
        CHECK(agree(qpow(tp, -3), pow_int(tp.q, -3)));
    }
    SECTION("half power sits on the positive imaginary axis") {
        ErrValue h = qpow(tp, 1, 2);
        CHECK(near(h, 0.0, std::exp(-0.1 * M_PI), 1e-14));
    }
    SECTION("alpha = 2 lands on the positive real axis") {
        CHECK(near(qpow(tp, 2), std::exp(-0.4 * M_PI), 0.0, 1e-14));
    }
}

TEST_CASE("qpow additivity", "[arith]") {
    Precision prec(50);
    TauPoint tp = TauPoint::from_tau(mpq_class(1, 3), mpq_class(1, 5), prec);
    Rng rng(kDefaultSeed);
    for (int i = 0; i < 50; ++i) {
        mpq_class a(rng.range(-40, 40), rng.range(1, 16));
        mpq_class b(rng.range(-40, 40), rng.range(1, 16));
        a.canonicalize();
        b.canonicalize();
        CHECK(agree(qpow(tp, a) * qpow(tp, b), qpow(tp, a + b)));
    }
}

TEST_CASE("tau round trip", "[arith]") {
    Precision prec(50);
    for (mpq_class t : {mpq_class(1, 10), mpq_class(7, 100), mpq_class(288649, 1000000)}) {
        TauPoint tp1 = TauPoint::from_t(t, prec);
        // take the computed center of q as an exact rational and invert
        mpz_class mant;
        long e = static_cast<long>(mpfr_get_z_2exp(mant.get_mpz_t(), tp1.q.re.raw()));
        mpq_class q_rat(mant);
        if (e >= 0)
            for (long i = 0; i < e; ++i) q_rat *= 2;
        else
            for (long i = 0; i < -e; ++i) q_rat /= 2;
        TauPoint tp2 = tau_from_negative_real(q_rat, prec);
        ErrValue diff = tp2.tau - tp1.tau;
        CHECK(center_abs_ub(diff).to_double() <= rad_d(tp2.tau) + rad_d(tp1.tau) + 1e-45);
    }
}

TEST_CASE("recomputed q agrees with the cached q", "[arith]") {
    Precision prec(50);
    TauPoint tp = tau_from_negative_real(dec("-0.37"), prec);
    ErrValue two_pi_i = mul_i(mul_long(pi_ball(prec.bits()), 2));
    CHECK(agree(exp_ev(two_pi_i * tp.tau), tp.q));
}

namespace {

// random ball expression trees for the enclosure property
ErrValue random_tree(Rng& rng, Precision prec, int depth) {
    if (depth == 0) {
        mpq_class re(rng.range(-200, 200), 100 + rng.range(0, 50));
        mpq_class im(rng.range(-200, 200), 100 + rng.range(0, 50));
        re.canonicalize();
        im.canonicalize();
        return ErrValue::of_mpq(re, im, prec.bits());
    }
    ErrValue a = random_tree(rng, prec, depth - 1);
    ErrValue b = random_tree(rng, prec, depth - 1);
    switch (rng.range(0, 5)) {
        case 0: return a + b;
        case 1: return a - b;
        case 2: return a * b;
        case 3: return abs_lb(b) > 0 ? a / b : a + b;
        case 4: {
            // keep exp arguments tame
            ErrValue scaled = mul_mpq(a, mpq_class(1, 4));
            return abs_ub(scaled) < Real::of_long(3, kRadiusBits) ? exp_ev(scaled) : a - b;
        }
        default: return pow_int(a, rng.range(2, 4));
    }
}

}  // namespace

TEST_CASE("interval soundness across precisions", "[arith]") {
    // the value computed at doubled precision must land inside the radius
    // reported at the base precision
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng(kDefaultSeed + trial);
        Rng rng2(kDefaultSeed + trial);
        ErrValue lo = random_tree(rng, Precision(50), 4);
        ErrValue hi = random_tree(rng2, Precision(100), 4);
        ErrValue diff = lo - hi;
        CHECK(center_abs_ub(diff) <= ub::add(lo.rad, hi.rad));
    }
}

TEST_CASE("certified sign semantics", "[arith]") {
    ErrValue v = ErrValue::of_mpq(mpq_class(3, 7), Precision(50).bits());
    auto s = certified_sign(v);
    REQUIRE(s.has_value());
    CHECK(*s == 1);
    ErrValue tiny = inflate(ErrValue::zero(Precision(50).bits()), Real::of_double(1e-3, 64));
    CHECK(!certified_sign(tiny).has_value());
    CHECK(!certified_nonzero(tiny));
}
