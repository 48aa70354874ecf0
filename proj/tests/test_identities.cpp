#include "helpers.hpp"
#include "qtheta/identities.hpp"
#include "qtheta/theta.hpp"

using namespace qtheta;
using namespace qtheta::testing;

TEST_CASE("registry covers every identity with a name", "[identities]") {
    CHECK(identity_table().size() == 33);
    for (const auto& info : identity_table()) {
        CHECK(identity_name(info.id) == std::string(info.name));
    }
}

TEST_CASE("every identity passes at seeded sample points", "[identities]") {
    Precision prec(50);
    for (const auto& info : identity_table()) {
        Rng rng(kDefaultSeed);
        int points = info.uses_x ? 20 : 6;  // x-independent ids only need new q
        for (int i = 0; i < points; ++i) {
            SamplePoint sp = sample_point(rng, prec);
            ErrValue res = identity_residual(info.id, sp.tp, sp.x, prec);
            INFO(info.name << " at sample " << i << ": |res|="
                           << center_abs_ub(res).str(5) << " rad=" << res.rad.str(5));
            CHECK(identity_holds(res));
        }
    }
}

TEST_CASE("identities hold on the negative-real branch", "[identities]") {
    Precision prec(50);
    TauPoint tp = tau_from_negative_real(dec("-0.3"), prec);
    ErrValue x = ErrValue::of_mpq(mpq_class(7, 10), mpq_class(1, 5), prec.bits());
    for (const auto& info : identity_table()) {
        ErrValue res = identity_residual(info.id, tp, x, prec);
        INFO(info.name);
        CHECK(identity_holds(res));
    }
}

TEST_CASE("residuals detect a broken identity", "[identities]") {
    // sanity check that the harness can fail: compare theta against a
    // deliberately wrong right-hand side
    Precision prec(50);
    Rng rng(kDefaultSeed);
    SamplePoint sp = sample_point(rng, prec);
    ErrValue lhs = theta_eval(sp.tp.q, sp.x, prec);
    ErrValue wrong = lhs + ErrValue::of_mpq(mpq_class(1, 1000), prec.bits());
    CHECK(!identity_holds(lhs - wrong));
}

TEST_CASE("deterministic sampling", "[identities]") {
    Precision prec(50);
    Rng a(kDefaultSeed), b(kDefaultSeed);
    SamplePoint p1 = sample_point(a, prec);
    SamplePoint p2 = sample_point(b, prec);
    CHECK(center_abs_ub(p1.x - p2.x).is_zero());
    CHECK(center_abs_ub(p1.tp.q - p2.tp.q).is_zero());
    // |q| stays in the contract range
    for (int i = 0; i < 40; ++i) {
        SamplePoint sp = sample_point(a, prec);
        double qa = center_abs_ub(sp.tp.q).to_double();
        double xa = center_abs_ub(sp.x).to_double();
        CHECK((qa >= 0.05 && qa <= 0.6));
        CHECK((xa >= 0.3 - 1e-9 && xa <= 3.0 + 1e-9));
    }
}
