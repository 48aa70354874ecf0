#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "qtheta/errvalue.hpp"
#include "qtheta/tau.hpp"

namespace qtheta {

enum class Verdict { tends_to_zero, plus_infinity, minus_infinity, unclassified };

// Predicted behavior of gamma_{k,n}(q) as q -> -1 along (-1,0).
struct ClassificationVerdict {
    long k = 0, n = 0;
    Verdict verdict = Verdict::unclassified;
    bool corollary_flag = false;      // k - 2n mod 8 in {3,4,5}
    bool complementary_flag = false;  // k mod 8 in {2,4} and (k+1) | n
    std::optional<double> predicted_constant;  // +-2 or +-sqrt(2) scale of Gamma_{k,n}

    std::string verdict_name() const;
};

ClassificationVerdict classify(long k, long n);

// X_k = {n in [0,k] : k-2n mod 8 in {3,4,5}} and its k-periodic extension
// Y_k = X_k + kZ in canonical residue form.
struct VanishingSets {
    long k = 0;
    std::vector<long> X;
    long modulus = 0;             // Y = union of (modulus Z + r)
    std::vector<long> residues;
    std::string describe_Y() const;
};

VanishingSets vanishing_sets(long k);

// Main term of f_{k,n}(-x) as x -> 1^-:
//   pi^{k/2} sqrt(2) cos((k+eps) pi/4) / sqrt(k+1) / (1-x)^{k/2}, eps = (-1)^n.
double f_main_constant(long k, long n);
double f_main_term(long k, long n, double x);
// The positive scale pi^{k/2} sqrt(2) / sqrt(k+1) (for deviation normalization).
double f_main_scale(long k);

// Gamma_{k,n}(t) = k^{-1/2} 2^{-k/2} e^{pi n(k-n) t / k} t^{(1-k)/2}
// (the exponential factor comes from the modular prefactor
// (q e^{-pi i})^{n(n-k)/(2k)} evaluated at q = e^{pi i - 2 pi t}).
ErrValue gamma_profile(long k, long n, const mpq_class& t, Precision prec);

// tau = 1/2 + it with its modular partner tau' = -1/2 + i/(4t),
// q = e^{pi i - 2 pi t}, q' = e^{-pi i - pi/(2t)}.
struct ModularPoint {
    mpq_class t;
    TauPoint tp;
    ErrValue tau_prime;
    ErrValue q_prime;

    static ModularPoint from_t(const mpq_class& t, Precision prec);
};

// s_alpha(q) = sum_m e^{-pi i m(m/2 + n/k) - pi (alpha+m)^2/(4t)}.
ErrValue s_alpha_modular(const ModularPoint& mp, long k, long n,
                         const mpq_class& alpha, Precision prec);

// The k-element fundamental system Lambda_{k,n} (parity-dependent).
std::vector<mpq_class> lambda_system(long k, long n);

// S_{k,n}(q) = sum_{alpha in Lambda_{k,n}} s_alpha^k(q).
ErrValue S_kn_eval(const ModularPoint& mp, long k, long n, Precision prec);

// Predicted gamma_{k,n}(e^{pi i - 2 pi t}): (+-2 | +-sqrt2) * Gamma_{k,n}(t)
// in the divergent classes, or a 0-centered ball with the predicted
// exponentially small radius Gamma_{k,n}(t) e^{-kappa/t}, kappa = pi/(16k).
ErrValue gamma_asymptotic_estimate(long k, long n, const mpq_class& t, Precision prec);

// Leading behavior of vartheta_{q^k}(1) at q = e^{pi i - 2 pi t}, by k mod 4:
//   0: 1/sqrt(kt)   1: e^{i pi/4}/sqrt(2kt)
//   2: 2 e^{-pi/(4kt)}/sqrt(kt)   3: e^{-i pi/4}/sqrt(2kt)
ErrValue vartheta_qk1_asymptote(long k, const mpq_class& t, Precision prec);

// s_j = sum_{l == j mod 4} binom(k,l), exact.
struct ResidueSums {
    mpz_class s0, s1, s2, s3;
};
ResidueSums binomial_residue_sums(long k);

}  // namespace qtheta
