#pragma once

#include <gmpxx.h>

#include <vector>

#include "qtheta/errvalue.hpp"

namespace qtheta {

// F(y) = y^T A y (A symmetric positive definite, rational) plus a linear
// part L(y) = b^T y. Definiteness is checked on construction via exact
// pivoted elimination; det(A) > 0 comes with it.
class QuadLinForm {
  public:
    QuadLinForm(std::vector<std::vector<mpq_class>> A, std::vector<mpq_class> b);

    long dim() const { return k_; }
    const std::vector<std::vector<mpq_class>>& A() const { return A_; }
    const std::vector<mpq_class>& b() const { return b_; }
    const mpq_class& det() const { return det_; }
    const std::vector<std::vector<mpq_class>>& inv() const { return inv_; }

    mpq_class eval(const std::vector<long>& y) const;  // F(y) + L(y)
    // center c = -A^{-1} b / 2 and the completed-square constant c^T A c.
    std::vector<mpq_class> center() const;
    mpq_class center_norm() const;  // y0^2 = b^T A^{-1} b / 4

    // dim-k form behind the theta powers: Q(x) = sum_{i<=j} x_i x_j with
    // linear part -n * sum x_i.
    static QuadLinForm theta_power_form(long k, long n = 0);

  private:
    long k_;
    std::vector<std::vector<mpq_class>> A_;
    std::vector<mpq_class> b_;
    mpq_class det_;
    std::vector<std::vector<mpq_class>> inv_;
};

// Encoder for the exponent Q(m) - n S(m) of the power-series lattice sums.
struct ThetaPowerForm {
    long k;
    long n;
    QuadLinForm form() const { return QuadLinForm::theta_power_form(k, n); }
};

// Exact count of integer points with F(y) + L(y) <= M (bounding-box
// enumeration; scale error if the box exceeds the budget).
mpz_class lattice_count(const QuadLinForm& form, const mpq_class& M,
                        long long budget = 40000000);

// (V_k / sqrt(D_F)) (M + y0^2)^{k/2} with V_k = pi^{k/2} / Gamma(k/2+1).
ErrValue ellipsoid_volume(const QuadLinForm& form, const mpq_class& M, Precision prec);

// f_{k,n}(x) = sum_{m in Z^k} x^{Q(m) - n S(m)}, evaluated through the
// series of the (k+1)-th theta power (same object, one code path).
ErrValue f_kn_eval(long k, long n, const ErrValue& x, Precision prec);

// Phi_{F,L}(x) = sum_{m in Z^k} x^{F(m)+L(m)} by shell enumeration with a
// product-form Gaussian tail bound. Fractional exponents require x to be a
// certified positive real.
ErrValue phi_eval(const QuadLinForm& form, const ErrValue& x, Precision prec,
                  long long budget = 40000000);

// S_alpha(x) = sum_{n>=0} n^alpha x^n, alpha > 0, 0 < x < 1.
ErrValue s_alpha_eval(const mpq_class& alpha, const mpq_class& x, Precision prec);
// Predicted main term Gamma(alpha+1) / (1-x)^{alpha+1}.
ErrValue s_alpha_main_term(const mpq_class& alpha, const mpq_class& x, Precision prec);

// Two-sided residual of the Gaussian lattice identity
//   sum_m e^{-t(F+L)(m)} = pi^{k/2} e^{t Ftilde(b/2)} / sqrt(det(tA)) *
//                          sum_m e^{-pi^2 Ftilde(m)/t + i pi b^T A^{-1} m},
// with both sides summed independently under rigorous tails. The scale t > 0
// multiplies both parts of the form (a ball, so t = pi is expressible).
ErrValue poisson_residual(const QuadLinForm& form, const ErrValue& scale,
                          Precision prec);
ErrValue poisson_residual(const QuadLinForm& form, const mpq_class& scale,
                          Precision prec);
inline ErrValue poisson_residual(const QuadLinForm& form, Precision prec) {
    return poisson_residual(form, mpq_class(1), prec);
}

}  // namespace qtheta
