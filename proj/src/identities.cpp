#include "qtheta/identities.hpp"

#include <cmath>

#include "qtheta/coeff.hpp"
#include "qtheta/theta.hpp"

namespace qtheta {

namespace {

// Worst certification margin among sub-residuals: pass iff all pass.
ErrValue worst_residual(const std::vector<ErrValue>& rs) {
    const ErrValue* worst = &rs.front();
    Real margin = sub(center_abs_ub(*worst), worst->rad, MPFR_RNDU);
    for (size_t i = 1; i < rs.size(); ++i) {
        Real m = sub(center_abs_ub(rs[i]), rs[i].rad, MPFR_RNDU);
        if (m > margin) {
            margin = m;
            worst = &rs[i];
        }
    }
    return *worst;
}

// sum_{l} q^{(A l^2 + B l + C)/2} x^l, one qpow per term. Powers the gauss
// weight identities through a route independent of vartheta_eval's
// incremental products.
ErrValue quad_exponent_sum(const TauPoint& tp, long A, long B, long C,
                           const ErrValue& x, Precision prec) {
    if (A < 1) throw domain_error("quad_exponent_sum: need A >= 1");
    Real qa = abs_ub(tp.q);
    Real xa_ub = abs_ub(x), xa_lb = abs_lb(x);
    if (!(qa < Real::of_long(1, kRadiusBits)) || !(xa_lb > 0))
        throw domain_error("quad_exponent_sum: bad q or x");
    double Lq = std::log(qa.to_double()), Lx = std::log(xa_ub.to_double());
    double peak = -((B / 2.0) * Lq + Lx) / (A * Lq);
    auto half_pow_ub = [&](long j) {  // qa^{j/2}, j >= 0
        Real s = sqrt(qa, MPFR_RNDU);
        return pow_si(s, j, MPFR_RNDU);
    };
    for (int attempt = 0; attempt < 8; ++attempt) {
        double drop = (prec.digits + 10) * 2.302585092994046 * (1 << attempt);
        long M = static_cast<long>(std::sqrt(2 * drop / (A * -Lq))) + 2;
        long lo = static_cast<long>(std::floor(peak)) - M;
        long hi = static_cast<long>(std::ceil(peak)) + M;
        long er = A * (2 * hi + 1) + B;   // exponent step at the right edge (in halves)
        long el = A * (1 - 2 * lo) - B;   // and at the left edge
        if (er <= 0 || el <= 0) continue;
        Real ratio_r = ub::mul(half_pow_ub(er), xa_ub);
        Real ratio_l = ub::div(half_pow_ub(el), xa_lb);
        Real one = Real::of_long(1, kRadiusBits);
        if (!(ratio_r < one) || !(ratio_l < one)) continue;

        ErrValue sum = ErrValue::zero(prec.bits());
        for (long l = lo; l <= hi; ++l)
            sum = sum + qpow(tp, mpq_class(A * l * l + B * l + C, 2)) * pow_int(x, l);
        auto edge = [&](long l) {
            long e = A * l * l + B * l + C;
            Real mag = e >= 0 ? half_pow_ub(e) : ub::div(Real::of_long(1, kRadiusBits), pow_si(sqrt(qa, MPFR_RNDD), -e, MPFR_RNDD));
            Real xp = l >= 0 ? pow_si(xa_ub, l, MPFR_RNDU)
                             : ub::div(Real::of_long(1, kRadiusBits), pow_si(xa_lb, -l, MPFR_RNDD));
            return ub::mul(mag, xp);
        };
        Real tail = ub::add(geometric_tail_bound(ratio_r, edge(hi + 1)),
                            geometric_tail_bound(ratio_l, edge(lo - 1)));
        return inflate(sum, tail);
    }
    throw nonconvergence_error("quad_exponent_sum: window did not contract");
}

using Eval = ErrValue (*)(const TauPoint&, const ErrValue&, Precision);

ErrValue one_of(const TauPoint& tp, Precision prec) {
    (void)tp;
    return ErrValue::of_long(1, prec.bits());
}

// ---- theta-side identities -------------------------------------------------

ErrValue id_theta_reflection(const TauPoint& tp, const ErrValue& x, Precision prec) {
    const ErrValue& q = tp.q;
    return theta_eval(q, x, prec) - theta_eval(q, q / x, prec);
}

ErrValue id_theta_nome4_double(const TauPoint& tp, const ErrValue& x, Precision prec) {
    (void)x;
    const ErrValue& q = tp.q;
    ErrValue q4 = pow_int(q, 4);
    ErrValue a = theta_eval(q, q, prec) - mul_long(theta_eval(q4, q, prec), 2);
    ErrValue b = theta_eval(q4, q, prec) - theta_eval(q4, pow_int(q, 3), prec);
    return worst_residual({a, b});
}

ErrValue id_theta_zero_pair(const TauPoint& tp, const ErrValue& x, Precision prec) {
    (void)x;
    const ErrValue& q = tp.q;
    ErrValue minus_one = ErrValue::of_long(-1, prec.bits());
    return worst_residual({theta_eval(q, minus_one, prec), theta_eval(q, -q, prec)});
}

ErrValue id_theta_quasi_period(const TauPoint& tp, const ErrValue& x, Precision prec) {
    const ErrValue& q = tp.q;
    // n = 2: theta(x) = q x^2 theta(q^2 x)
    return theta_eval(q, x, prec) - q * x * x * theta_eval(q, q * q * x, prec);
}

ErrValue id_triple_product(const TauPoint& tp, const ErrValue& x, Precision prec) {
    const ErrValue& q = tp.q;
    return theta_eval(q, x, prec) - pochhammer_eval({q, -x, -(q / x)}, q, prec);
}

ErrValue id_phi_product_form(const TauPoint& tp, const ErrValue& x, Precision prec) {
    (void)x;
    const ErrValue& q = tp.q;
    ErrValue q2 = q * q;
    ErrValue num = pochhammer_eval({-q, q2}, q2, prec);
    ErrValue den = pochhammer_eval({q, -q2}, q2, prec);
    return theta_phi(q, prec) - num / den;
}

ErrValue id_psi_product_form(const TauPoint& tp, const ErrValue& x, Precision prec) {
    (void)x;
    const ErrValue& q = tp.q;
    ErrValue q2 = q * q;
    return theta_psi(q, prec) - pochhammer_eval(q2, q2, prec) / pochhammer_eval(q, q2, prec);
}

ErrValue id_pentagonal_product(const TauPoint& tp, const ErrValue& x, Precision prec) {
    (void)x;
    const ErrValue& q = tp.q;
    return theta_fminus(q, prec) - pochhammer_eval(q, q, prec);
}

ErrValue id_theta_distribution(const TauPoint& tp, const ErrValue& x, Precision prec) {
    const ErrValue& q = tp.q;
    const long n = 3;
    ErrValue qn = pow_int(q, n);
    ErrValue lhs = ErrValue::of_long(1, prec.bits());
    ErrValue qj = ErrValue::of_long(1, prec.bits());
    for (long j = 0; j < n; ++j) {
        lhs = lhs * theta_eval(qn, qj * x, prec);
        qj = qj * q;
    }
    ErrValue rhs = pow_int(pochhammer_eval(qn, qn, prec), n) / pochhammer_eval(q, q, prec) *
                   theta_eval(q, x, prec);
    return lhs - rhs;
}

ErrValue id_product_split(const TauPoint& tp, const ErrValue& x, Precision prec, bool sum) {
    const ErrValue& q = tp.q;
    ErrValue y = mul_mpq(x, mpq_class(5, 7));
    ErrValue q2 = q * q;
    ErrValue lhs_a = theta_eval(q, x, prec) * theta_eval(q, y, prec);
    ErrValue lhs_b = theta_eval(q, -x, prec) * theta_eval(q, -y, prec);
    if (sum) {
        ErrValue rhs = mul_long(theta_eval(q2, x * y, prec) * theta_eval(q2, q * y / x, prec), 2);
        return lhs_a + lhs_b - rhs;
    }
    ErrValue rhs = mul_long(x * theta_eval(q2, q * x * y, prec) * theta_eval(q2, y / x, prec), 2);
    return lhs_a - lhs_b - rhs;
}

ErrValue id_psi_nome_split(const TauPoint& tp, const ErrValue& x, Precision prec) {
    const ErrValue& q = tp.q;
    ErrValue q2 = q * q;
    return theta_eval(q2, x, prec) * theta_eval(q2, q * x, prec) -
           theta_eval(q, x, prec) * theta_psi(q, prec);
}

ErrValue id_theta_even_part(const TauPoint& tp, const ErrValue& x, Precision prec) {
    const ErrValue& q = tp.q;
    ErrValue q4 = pow_int(q, 4);
    return theta_eval(q, x, prec) + theta_eval(q, -x, prec) -
           mul_long(theta_eval(q4, q * x * x, prec), 2);
}

ErrValue id_theta_odd_part(const TauPoint& tp, const ErrValue& x, Precision prec) {
    const ErrValue& q = tp.q;
    ErrValue q4 = pow_int(q, 4);
    return theta_eval(q, x, prec) - theta_eval(q, -x, prec) -
           mul_long(x * theta_eval(q4, pow_int(q, 3) * x * x, prec), 2);
}

ErrValue id_theta_reflected_product(const TauPoint& tp, const ErrValue& x, Precision prec) {
    const ErrValue& q = tp.q;
    return theta_eval(q, x, prec) * theta_eval(q, -x, prec) -
           theta_eval(q * q, -(x * x), prec) * theta_phi(-q, prec);
}

ErrValue id_theta_square_sum(const TauPoint& tp, const ErrValue& x, Precision prec) {
    const ErrValue& q = tp.q;
    ErrValue tx = theta_eval(q, x, prec), tmx = theta_eval(q, -x, prec);
    return tx * tx + tmx * tmx -
           mul_long(theta_eval(q * q, x * x, prec) * theta_phi(q, prec), 2);
}

ErrValue id_theta_square_diff(const TauPoint& tp, const ErrValue& x, Precision prec) {
    const ErrValue& q = tp.q;
    ErrValue tx = theta_eval(q, x, prec), tmx = theta_eval(q, -x, prec);
    return tx * tx - tmx * tmx -
           mul_long(x * theta_eval(q * q, q * x * x, prec) * theta_psi(q * q, prec), 4);
}

ErrValue id_theta_square_decomposition(const TauPoint& tp, const ErrValue& x, Precision prec) {
    const ErrValue& q = tp.q;
    ErrValue q2 = q * q;
    ErrValue one = ErrValue::of_long(1, prec.bits());
    ErrValue tx = theta_eval(q, x, prec);
    return tx * tx - theta_eval(q2, q, prec) * theta_eval(q2, x * x, prec) -
           x * theta_eval(q2, one, prec) * theta_eval(q2, q * x * x, prec);
}

ErrValue id_fourth_power_coeff(const TauPoint& tp, Precision prec, long i) {
    ErrValue lhs = a4_closed_eval(i, tp, prec);
    ErrValue rhs = gamma_eval({4, i}, tp.q, prec);
    if (i == 1 || i == 3) {
        // also the compact form (1/2) theta_q(1)^3
        ErrValue t1 = theta_eval(tp.q, ErrValue::of_long(1, prec.bits()), prec);
        ErrValue alt = mul_mpq(pow_int(t1, 3), mpq_class(1, 2));
        return worst_residual({lhs - rhs, lhs - alt});
    }
    return lhs - rhs;
}

// ---- vartheta-side identities ----------------------------------------------

ErrValue id_vartheta_sqrt_square(const TauPoint& tp, const ErrValue& x, Precision prec) {
    (void)x;
    ErrValue sq = qpow(tp, 1, 2);
    ErrValue v = vartheta_eval(tp, sq, prec);
    ErrValue one = ErrValue::of_long(1, prec.bits());
    return v * v - mul_long(vartheta_eval(tp, 2, one, prec) * vartheta_eval(tp, 2, qpow(tp, 1), prec), 2);
}

ErrValue id_vartheta_sqrt_product(const TauPoint& tp, const ErrValue& x, Precision prec) {
    (void)x;
    const ErrValue& q = tp.q;
    ErrValue q2 = q * q;
    ErrValue p = pochhammer_eval(q2, q2, prec);
    return vartheta_eval(tp, qpow(tp, 1, 2), prec) -
           mul_long(p * p / pochhammer_eval(q, q, prec), 2);
}

ErrValue id_vartheta_symmetry(const TauPoint& tp, const ErrValue& x, Precision prec) {
    ErrValue one = ErrValue::of_long(1, prec.bits());
    ErrValue a = vartheta_eval(tp, one / x, prec) - vartheta_eval(tp, x, prec);
    // vt(qx) = q^{-1/2} x^{-1} vt(x)
    ErrValue b = vartheta_eval(tp, tp.q * x, prec) -
                 qpow(tp, -1, 2) / x * vartheta_eval(tp, x, prec);
    return worst_residual({a, b});
}

ErrValue id_vartheta_triple_product(const TauPoint& tp, const ErrValue& x, Precision prec) {
    const ErrValue& q = tp.q;
    ErrValue sq = qpow(tp, 1, 2);
    return vartheta_eval(tp, x, prec) -
           pochhammer_eval({q, -(sq * x), -(sq / x)}, q, prec);
}

ErrValue id_vartheta_zero_set(const TauPoint& tp, const ErrValue& x, Precision prec) {
    (void)x;
    std::vector<ErrValue> rs;
    for (long j = -2; j <= 2; ++j)
        rs.push_back(vartheta_eval(tp, -qpow(tp, 2 * j + 1, 2), prec));
    return worst_residual(rs);
}

ErrValue id_vartheta_distribution(const TauPoint& tp, const ErrValue& x, Precision prec, long k) {
    const ErrValue& q = tp.q;
    ErrValue lhs = ErrValue::of_long(1, prec.bits());
    for (long j = 0; j < k; ++j) lhs = lhs * vartheta_eval(tp, k, qpow(tp, j) * x, prec);
    ErrValue qk = pow_int(q, k);
    ErrValue rhs = pow_int(pochhammer_eval(qk, qk, prec), k) / pochhammer_eval(q, q, prec) *
                   vartheta_eval(tp, qpow(tp, k - 1, 2) * x, prec);
    return lhs - rhs;
}

// ---- gauss-weight (coefficient weighting) identities ------------------------

ErrValue id_gauss_weight_nome(const TauPoint& tp, const ErrValue& x, Precision prec) {
    const long k = 2, m = 3;
    return quad_exponent_sum(tp, k + m, 0, 0, x, prec) - vartheta_eval(tp, k + m, x, prec);
}

ErrValue id_gauss_weight_monomial(const TauPoint& tp, const ErrValue& x, Precision prec) {
    const long n = 1, m = 2;
    // weight(x^n f): exponent l^2 + m(l-n)^2 = (1+m) l^2 - 2mn l + m n^2, vs
    // q^{n^2/2} x^n (weight f)(q^n x)
    ErrValue lhs = quad_exponent_sum(tp, 1 + m, -2 * m * n, m * n * n, x, prec);
    ErrValue rhs = qpow(tp, n * n, 2) * pow_int(x, n) *
                   vartheta_eval(tp, m + 1, qpow(tp, n) * x, prec);
    return lhs - rhs;
}

ErrValue id_gauss_weight_dilation(const TauPoint& tp, const ErrValue& x, Precision prec) {
    const long m = 1;
    ErrValue a = mul_mpq(x, mpq_class(2, 3));  // dilation factor a x derived from x
    return vartheta_eval(tp, m + 1, a, prec) - quad_exponent_sum(tp, m + 1, 0, 0, a, prec);
}

ErrValue id_gauss_weight_power(const TauPoint& tp, const ErrValue& x, Precision prec) {
    const long k = 2, m = 1;
    return quad_exponent_sum(tp, m + k * k, 0, 0, pow_int(x, k), prec) -
           vartheta_eval(tp, m + k * k, pow_int(x, k), prec);
}

const std::vector<IdentityInfo>& table() {
    static const std::vector<IdentityInfo> t = {
        {IdentityId::theta_reflection, "theta_reflection", true},
        {IdentityId::theta_nome4_double, "theta_nome4_double", false},
        {IdentityId::theta_zero_pair, "theta_zero_pair", false},
        {IdentityId::theta_quasi_period, "theta_quasi_period", true},
        {IdentityId::triple_product, "triple_product", true},
        {IdentityId::phi_product_form, "phi_product_form", false},
        {IdentityId::psi_product_form, "psi_product_form", false},
        {IdentityId::pentagonal_product, "pentagonal_product", false},
        {IdentityId::theta_distribution, "theta_distribution", true},
        {IdentityId::product_split_sum, "product_split_sum", true},
        {IdentityId::product_split_diff, "product_split_diff", true},
        {IdentityId::psi_nome_split, "psi_nome_split", true},
        {IdentityId::theta_even_part, "theta_even_part", true},
        {IdentityId::theta_odd_part, "theta_odd_part", true},
        {IdentityId::theta_reflected_product, "theta_reflected_product", true},
        {IdentityId::theta_square_sum, "theta_square_sum", true},
        {IdentityId::theta_square_diff, "theta_square_diff", true},
        {IdentityId::theta_square_decomposition, "theta_square_decomposition", true},
        {IdentityId::fourth_power_coeff_0, "fourth_power_coeff_0", false},
        {IdentityId::fourth_power_coeff_1, "fourth_power_coeff_1", false},
        {IdentityId::fourth_power_coeff_2, "fourth_power_coeff_2", false},
        {IdentityId::fourth_power_coeff_3, "fourth_power_coeff_3", false},
        {IdentityId::vartheta_sqrt_square, "vartheta_sqrt_square", false},
        {IdentityId::vartheta_sqrt_product, "vartheta_sqrt_product", false},
        {IdentityId::vartheta_symmetry, "vartheta_symmetry", true},
        {IdentityId::vartheta_triple_product, "vartheta_triple_product", true},
        {IdentityId::vartheta_zero_set, "vartheta_zero_set", false},
        {IdentityId::vartheta_distribution_2, "vartheta_distribution_2", true},
        {IdentityId::gauss_weight_nome, "gauss_weight_nome", true},
        {IdentityId::gauss_weight_monomial, "gauss_weight_monomial", true},
        {IdentityId::gauss_weight_dilation, "gauss_weight_dilation", true},
        {IdentityId::gauss_weight_power, "gauss_weight_power", true},
        {IdentityId::vartheta_distribution_3, "vartheta_distribution_3", true},
    };
    return t;
}

}  // namespace

const std::vector<IdentityInfo>& identity_table() { return table(); }

const char* identity_name(IdentityId id) {
    for (const auto& info : table())
        if (info.id == id) return info.name;
    throw domain_error("identity_name: unknown identity");
}

ErrValue identity_residual(IdentityId id, const TauPoint& tp, const ErrValue& x,
                           Precision prec) {
    switch (id) {
        case IdentityId::theta_reflection: return id_theta_reflection(tp, x, prec);
        case IdentityId::theta_nome4_double: return id_theta_nome4_double(tp, x, prec);
        case IdentityId::theta_zero_pair: return id_theta_zero_pair(tp, x, prec);
        case IdentityId::theta_quasi_period: return id_theta_quasi_period(tp, x, prec);
        case IdentityId::triple_product: return id_triple_product(tp, x, prec);
        case IdentityId::phi_product_form: return id_phi_product_form(tp, x, prec);
        case IdentityId::psi_product_form: return id_psi_product_form(tp, x, prec);
        case IdentityId::pentagonal_product: return id_pentagonal_product(tp, x, prec);
        case IdentityId::theta_distribution: return id_theta_distribution(tp, x, prec);
        case IdentityId::product_split_sum: return id_product_split(tp, x, prec, true);
        case IdentityId::product_split_diff: return id_product_split(tp, x, prec, false);
        case IdentityId::psi_nome_split: return id_psi_nome_split(tp, x, prec);
        case IdentityId::theta_even_part: return id_theta_even_part(tp, x, prec);
        case IdentityId::theta_odd_part: return id_theta_odd_part(tp, x, prec);
        case IdentityId::theta_reflected_product: return id_theta_reflected_product(tp, x, prec);
        case IdentityId::theta_square_sum: return id_theta_square_sum(tp, x, prec);
        case IdentityId::theta_square_diff: return id_theta_square_diff(tp, x, prec);
        case IdentityId::theta_square_decomposition:
            return id_theta_square_decomposition(tp, x, prec);
        case IdentityId::fourth_power_coeff_0: return id_fourth_power_coeff(tp, prec, 0);
        case IdentityId::fourth_power_coeff_1: return id_fourth_power_coeff(tp, prec, 1);
        case IdentityId::fourth_power_coeff_2: return id_fourth_power_coeff(tp, prec, 2);
        case IdentityId::fourth_power_coeff_3: return id_fourth_power_coeff(tp, prec, 3);
        case IdentityId::vartheta_sqrt_square: return id_vartheta_sqrt_square(tp, x, prec);
        case IdentityId::vartheta_sqrt_product: return id_vartheta_sqrt_product(tp, x, prec);
        case IdentityId::vartheta_symmetry: return id_vartheta_symmetry(tp, x, prec);
        case IdentityId::vartheta_triple_product: return id_vartheta_triple_product(tp, x, prec);
        case IdentityId::vartheta_zero_set: return id_vartheta_zero_set(tp, x, prec);
        case IdentityId::vartheta_distribution_2: return id_vartheta_distribution(tp, x, prec, 2);
        case IdentityId::gauss_weight_nome: return id_gauss_weight_nome(tp, x, prec);
        case IdentityId::gauss_weight_monomial: return id_gauss_weight_monomial(tp, x, prec);
        case IdentityId::gauss_weight_dilation: return id_gauss_weight_dilation(tp, x, prec);
        case IdentityId::gauss_weight_power: return id_gauss_weight_power(tp, x, prec);
        case IdentityId::vartheta_distribution_3: return id_vartheta_distribution(tp, x, prec, 3);
    }
    throw domain_error("identity_residual: unknown identity");
}

SamplePoint sample_point(Rng& rng, Precision prec) {
    // Im(tau) range keeps |q| in [0.05, 0.6]
    mpq_class v = rng.uniform(mpq_class(814, 10000), mpq_class(4767, 10000));
    mpq_class u = rng.uniform(mpq_class(-1, 2), mpq_class(1, 2));
    SamplePoint sp{TauPoint::from_tau(u, v, prec), ErrValue()};
    mpq_class rho = rng.uniform(mpq_class(3, 10), mpq_class(3));
    mpq_class ang = rng.uniform(mpq_class(0), mpq_class(2));
    ErrValue phase = exp_ev(mul_i(mul_mpq(pi_ball(prec.bits()), ang)));
    sp.x = mul_mpq(phase, rho);
    return sp;
}

}  // namespace qtheta
