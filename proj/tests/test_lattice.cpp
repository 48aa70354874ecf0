#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "qtheta/coeff.hpp"
#include "qtheta/lattice.hpp"
#include "qtheta/rng.hpp"

using namespace qtheta;
using namespace qtheta::testing;

namespace {

Precision prec30() { return Precision(30); }

QuadLinForm identity_form(long k) {
    std::vector<std::vector<mpq_class>> A(k, std::vector<mpq_class>(k, 0));
    for (long i = 0; i < k; ++i) A[i][i] = 1;
    return QuadLinForm(A, std::vector<mpq_class>(k, 0));
}

}  // namespace

TEST_CASE("form construction and definiteness", "[lattice]") {
    QuadLinForm q2 = QuadLinForm::theta_power_form(2);
    CHECK(q2.det() == mpq_class(3, 4));  // (k+1) 2^{-k}
    QuadLinForm q3 = QuadLinForm::theta_power_form(3);
    CHECK(q3.det() == mpq_class(1, 2));
    std::vector<std::vector<mpq_class>> bad = {{1, 2}, {2, 1}};
    CHECK_THROWS_AS(QuadLinForm(bad, {0, 0}), domain_error);
    std::vector<std::vector<mpq_class>> asym = {{1, 1}, {0, 1}};
    CHECK_THROWS_AS(QuadLinForm(asym, {0, 0}), domain_error);
}

TEST_CASE("lattice counts of the hexagonal form", "[lattice]") {
    QuadLinForm q2 = QuadLinForm::theta_power_form(2);
    CHECK(lattice_count(q2, 0) == 1);
    CHECK(lattice_count(q2, 1) == 7);
    SECTION("count tracks the area for large M") {
        double area_const = 2 * M_PI / std::sqrt(3.0);
        mpz_class c = lattice_count(q2, 100);
        CHECK(std::abs(c.get_d() - area_const * 100) < 8 * std::sqrt(100.0));
    }
    SECTION("monotone in M") {
        mpz_class prev = 0;
        for (long M : {1, 2, 5, 10, 20, 40}) {
            mpz_class c = lattice_count(q2, M);
            CHECK(c >= prev);
            prev = c;
        }
    }
}

TEST_CASE("ellipsoid volumes", "[lattice]") {
    Precision prec = prec30();
    CHECK(near_real(ellipsoid_volume(identity_form(1), 1, prec), 2.0, 1e-20));
    CHECK(near_real(ellipsoid_volume(identity_form(2), 1, prec), M_PI, 1e-12));
    CHECK(near_real(ellipsoid_volume(QuadLinForm::theta_power_form(2), 1, prec),
                    2 * M_PI / std::sqrt(3.0), 1e-12));
}

TEST_CASE("count/volume law stays bounded", "[lattice]") {
    for (long k : {2L, 3L}) {
        QuadLinForm form = QuadLinForm::theta_power_form(k);
        std::vector<double> normalized;
        for (long M : {25L, 50L, 100L, 200L, 400L}) {
            double cnt = lattice_count(form, M).get_d();
            double vol = ellipsoid_volume(form, M, prec30()).re.to_double();
            normalized.push_back(std::abs(cnt - vol) / std::pow(M, (k - 1) / 2.0));
        }
        std::vector<double> sorted = normalized;
        std::sort(sorted.begin(), sorted.end());
        double median = sorted[sorted.size() / 2];
        CHECK(sorted.back() <= 4 * std::max(median, 1e-9));
    }
}

TEST_CASE("f_kn through the power-series route", "[lattice]") {
    Precision prec(50);
    mpfr_prec_t bits = prec.bits();
    SECTION("k=2, n=0 at x=0.1 is the hexagonal series") {
        ErrValue v = f_kn_eval(2, 0, ErrValue::of_mpq(mpq_class(1, 10), bits), prec);
        int r[16] = {0};  // representation numbers of a^2+ab+b^2 by enumeration
        for (int a = -6; a <= 6; ++a)
            for (int b = -6; b <= 6; ++b) {
                int e = a * a + a * b + b * b;
                if (e < 16) r[e]++;
            }
        CHECK(r[0] == 1);
        CHECK(r[1] == 6);  // 1 + 6q + ... per the ellipse-count picture
        double expect = 0;
        for (int n = 0; n < 16; ++n) expect += r[n] * std::pow(0.1, n);
        CHECK(near_real(v, expect, 1e-12));
    }
    SECTION("x -> 0 leaves the origin") {
        ErrValue v = f_kn_eval(2, 0, ErrValue::of_mpq(mpq_class(1, mpz_class("100000000000000000000")), bits), prec);
        CHECK(near_real(v, 1.0, 1e-18));
    }
    SECTION("n=1 agrees with the shifted coefficient series") {
        ErrValue x = ErrValue::of_mpq(mpq_class(1, 10), bits);
        CHECK(agree(f_kn_eval(2, 1, x, prec), gamma_eval({3, 1}, x, prec)));
    }
    SECTION("identity chain gamma_{k+1,n}(q) = q^{n(n-1)/2} f_{k,n}(q)") {
        Rng rng(kDefaultSeed ^ 0xfeed);
        for (int i = 0; i < 20; ++i) {
            mpq_class q = rng.uniform(mpq_class(1, 20), mpq_class(3, 5));
            ErrValue x = ErrValue::of_mpq(q, bits);
            for (long n : {0L, 2L, 3L}) {
                ErrValue lhs = gamma_eval({3, n}, x, prec);
                ErrValue rhs = pow_int(x, n * (n - 1) / 2) * f_kn_eval(2, n, x, prec);
                CHECK(agree(lhs, rhs));
            }
        }
    }
}

TEST_CASE("phi generating series", "[lattice]") {
    Precision prec = prec30();
    mpfr_prec_t bits = prec.bits();
    QuadLinForm q2 = QuadLinForm::theta_power_form(2);
    SECTION("x small counts the minimal shell") {
        ErrValue v = phi_eval(q2, ErrValue::of_mpq(mpq_class(1, mpz_class("10000000000000000000")), bits), prec);
        CHECK(near_real(v, 1.0, 1e-15));
    }
    SECTION("matches the theta-power series at x = 1/2") {
        ErrValue x = ErrValue::of_mpq(mpq_class(1, 2), bits);
        CHECK(agree(phi_eval(q2, x, prec), gamma_eval({3, 0}, x, prec)));
    }
    SECTION("main-term band at x = 0.99") {
        ErrValue v = phi_eval(q2, ErrValue::of_mpq(dec("0.99"), bits), prec);
        double scaled = re_d(v) * std::pow(0.01, 1.0) * std::sqrt(3.0 / 4.0) / M_PI;
        CHECK(scaled > 0.8);
        CHECK(scaled < 1.2);
    }
    SECTION("parity split f(-x) = 2 f(x^4) - f(x)") {
        ErrValue x = ErrValue::of_mpq(dec("0.83"), bits);
        ErrValue lhs = phi_eval(q2, -x, prec);
        ErrValue rhs = mul_long(phi_eval(q2, pow_int(x, 4), prec), 2) - phi_eval(q2, x, prec);
        CHECK(agree(lhs, rhs));
    }
    SECTION("fractional exponents need a positive real x") {
        QuadLinForm half(std::vector<std::vector<mpq_class>>{{mpq_class(1, 3)}},
                         std::vector<mpq_class>{mpq_class(1, 2)});
        CHECK_THROWS_AS(phi_eval(half, ErrValue::of_mpq(mpq_class(-1, 2), bits), prec),
                        domain_error);
        CHECK(certified_nonzero(phi_eval(half, ErrValue::of_mpq(mpq_class(1, 2), bits), prec)));
    }
}

TEST_CASE("power-weighted geometric sums", "[lattice]") {
    Precision prec = prec30();
    SECTION("integer alpha closed forms") {
        CHECK(near_real(s_alpha_eval(1, mpq_class(1, 2), prec), 2.0, 1e-20));
        CHECK(near_real(s_alpha_eval(2, mpq_class(1, 2), prec), 6.0, 1e-20));
    }
    SECTION("alpha = 3/2 main-term band at x = 0.99") {
        ErrValue s = s_alpha_eval(mpq_class(3, 2), dec("0.99"), prec);
        ErrValue main = s_alpha_main_term(mpq_class(3, 2), dec("0.99"), prec);
        double ratio = re_d(s) / re_d(main);
        CHECK(ratio > 0.9);
        CHECK(ratio < 1.1);
    }
    SECTION("domain") {
        CHECK_THROWS_AS(s_alpha_eval(0, mpq_class(1, 2), prec30()), domain_error);
        CHECK_THROWS_AS(s_alpha_eval(1, mpq_class(2), prec30()), domain_error);
    }
}

TEST_CASE("poisson residual vanishes", "[lattice]") {
    Precision prec = prec30();
    SECTION("self-dual gaussian at scale pi") {
        ErrValue r = poisson_residual(identity_form(1), pi_ball(prec.bits()), prec);
        CHECK(holds(r));
        CHECK(rad_d(r) < 1e-20);
    }
    SECTION("hexagonal form, no linear part") {
        ErrValue r = poisson_residual(QuadLinForm::theta_power_form(2), mpq_class(1), prec);
        CHECK(holds(r));
    }
    SECTION("hexagonal form with linear part (1,1)") {
        QuadLinForm q2 = QuadLinForm::theta_power_form(2);
        QuadLinForm with_b(q2.A(), {1, 1});
        CHECK(holds(poisson_residual(with_b, mpq_class(1), prec)));
    }
    SECTION("seeded random forms, k <= 3") {
        Rng rng(kDefaultSeed ^ 0xab1e);
        for (int trial = 0; trial < 10; ++trial) {
            long k = 1 + trial % 3;
            // diagonally dominant => positive definite
            std::vector<std::vector<mpq_class>> A(k, std::vector<mpq_class>(k, 0));
            std::vector<mpq_class> b(k);
            for (long i = 0; i < k; ++i) {
                for (long j = i + 1; j < k; ++j) {
                    mpq_class off(rng.range(-2, 2), rng.range(2, 5));
                    A[i][j] = A[j][i] = off;
                }
                b[i] = mpq_class(rng.range(-3, 3), rng.range(1, 4));
            }
            for (long i = 0; i < k; ++i) {
                mpq_class row(0);
                for (long j = 0; j < k; ++j)
                    if (j != i) row += abs(A[i][j]);
                A[i][i] = row + mpq_class(rng.range(1, 3));
            }
            QuadLinForm form(A, b);
            ErrValue r = poisson_residual(form, mpq_class(1), prec);
            INFO("trial " << trial << " k=" << k << " |res|=" << center_abs_ub(r).str(5)
                          << " rad=" << r.rad.str(5));
            CHECK(holds(r));
        }
    }
}
