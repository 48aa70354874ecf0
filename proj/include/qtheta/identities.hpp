#pragma once

#include <string>
#include <vector>

#include "qtheta/rng.hpp"
#include "qtheta/tau.hpp"

namespace qtheta {

// Registered numerical identities. Every id has a left- and right-hand
// evaluator; the residual is LHS - RHS as a ball, and the identity is
// verified at a point iff |residual center| <= residual radius. Ids that
// bundle several printed equalities report the sub-residual with the worst
// certification margin.
enum class IdentityId {
    theta_reflection,            // theta(x) = theta(q/x)
    theta_nome4_double,          // theta_q(q) = 2 theta_{q^4}(q) = 2 theta_{q^4}(q^3)
    theta_zero_pair,             // theta(-1) = theta(-q) = 0
    theta_quasi_period,          // theta(x) = q^{n(n-1)/2} x^n theta(q^n x)
    triple_product,              // theta(x) = (q;q)(-x;q)(-q/x;q)
    phi_product_form,            // theta_{q^2}(q) as a Pochhammer quotient
    psi_product_form,            // theta_{q^4}(q) = (q^2;q^2)/(q;q^2)
    pentagonal_product,          // theta_{q^3}(-q) = (q;q)
    theta_distribution,          // prod_j theta_{q^n}(q^j x) = ((q^n;q^n)^n/(q;q)) theta(x)
    product_split_sum,           // theta(x)theta(y) + theta(-x)theta(-y)
    product_split_diff,          // theta(x)theta(y) - theta(-x)theta(-y)
    psi_nome_split,              // theta_{q^2}(x) theta_{q^2}(qx) = theta(x) psi(q)
    theta_even_part,             // theta(x) + theta(-x) = 2 theta_{q^4}(q x^2)
    theta_odd_part,              // theta(x) - theta(-x) = 2x theta_{q^4}(q^3 x^2)
    theta_reflected_product,     // theta(x) theta(-x) = theta_{q^2}(-x^2) phi(-q)
    theta_square_sum,            // theta^2(x) + theta^2(-x) = 2 theta_{q^2}(x^2) phi(q)
    theta_square_diff,           // theta^2(x) - theta^2(-x) = 4x theta_{q^2}(qx^2) psi(q^2)
    theta_square_decomposition,  // theta^2(x) = theta_{q^2}(q)theta_{q^2}(x^2) + x theta_{q^2}(1)theta_{q^2}(qx^2)
    fourth_power_coeff_0,        // closed theta products for gamma_{4,i}
    fourth_power_coeff_1,
    fourth_power_coeff_2,
    fourth_power_coeff_3,
    vartheta_sqrt_square,        // vt^2(sqrt q) = 2 vt_{q^2}(1) vt_{q^2}(q)
    vartheta_sqrt_product,       // vt(sqrt q) = 2 (q^2;q^2)^2/(q;q)
    vartheta_symmetry,           // vt(1/x) = vt(x); vt(qx) = q^{-1/2} x^{-1} vt(x)
    vartheta_triple_product,     // vt(x) = (q, -sqrt(q) x, -sqrt(q)/x; q)
    vartheta_zero_set,           // vt(-q^{j+1/2}) = 0
    vartheta_distribution_2,     // two-factor distribution formula
    gauss_weight_nome,           // coefficient weights compose across nomes
    gauss_weight_monomial,       // weighting a shifted monomial series
    gauss_weight_dilation,       // weighting commutes with dilation
    gauss_weight_power,          // weighting under x -> x^k substitution
    vartheta_distribution_3,     // three-factor distribution formula
};

struct IdentityInfo {
    IdentityId id;
    const char* name;
    bool uses_x;
};

const std::vector<IdentityInfo>& identity_table();
const char* identity_name(IdentityId id);

// LHS - RHS at (tp, x) as a ball (worst sub-residual for bundled ids).
ErrValue identity_residual(IdentityId id, const TauPoint& tp, const ErrValue& x,
                           Precision prec);

inline bool identity_holds(const ErrValue& residual) {
    return within(residual, residual.rad);
}

// Deterministic sample points of the verification suites:
// |q| in [0.05, 0.6], |x| in [0.3, 3].
struct SamplePoint {
    TauPoint tp;
    ErrValue x;
};
SamplePoint sample_point(Rng& rng, Precision prec);

}  // namespace qtheta
