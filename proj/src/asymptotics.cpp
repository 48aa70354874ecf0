#include "qtheta/asymptotics.hpp"

#include <cmath>

namespace qtheta {

namespace {

long mod_pos(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

// (k', n') of the four divergent shapes of the limit theorem; sign is
// (-1)^{k'-n'}.
bool divergent_shape(long k, long n, long& kp, long& np, bool& factor_two) {
    switch (mod_pos(k, 4)) {
        case 0:
            if (n % 2 != 0) return false;
            kp = k / 4;
            np = n / 2;
            factor_two = true;
            return true;
        case 2:
            if (n % 2 != 1) return false;
            kp = (k - 2) / 4;
            np = (n - 1) / 2;
            factor_two = true;
            return true;
        case 1:
            kp = (k - 1) / 4;
            np = n / 2;  // n = 2n' or 2n'+1
            factor_two = false;
            return true;
        default:  // k = 4k'-1
            kp = (k + 1) / 4;
            np = (n + 1) / 2;  // n = 2n' or 2n'-1
            factor_two = false;
            return true;
    }
}

}  // namespace

std::string ClassificationVerdict::verdict_name() const {
    switch (verdict) {
        case Verdict::tends_to_zero: return "tends_to_zero";
        case Verdict::plus_infinity: return "plus_infinity";
        case Verdict::minus_infinity: return "minus_infinity";
        default: return "unclassified";
    }
}

ClassificationVerdict classify(long k, long n) {
    if (k < 3 || n < 0 || n >= k) throw domain_error("classify: need k >= 3 and 0 <= n < k");
    ClassificationVerdict v;
    v.k = k;
    v.n = n;
    v.corollary_flag = mod_pos(k - 2 * n, 8) >= 3 && mod_pos(k - 2 * n, 8) <= 5;
    v.complementary_flag =
        (mod_pos(k, 8) == 2 || mod_pos(k, 8) == 4) && (n % (k + 1) == 0);
    if (k % 2 == 0 && mod_pos(k - 2 * n, 4) == 2) {
        v.verdict = Verdict::tends_to_zero;
        return v;
    }
    long kp = 0, np = 0;
    bool two = false;
    if (!divergent_shape(k, n, kp, np, two)) {
        v.verdict = Verdict::unclassified;  // not reachable for 0 <= n < k
        return v;
    }
    int sign = ((kp - np) % 2 == 0) ? 1 : -1;
    v.verdict = sign > 0 ? Verdict::plus_infinity : Verdict::minus_infinity;
    v.predicted_constant = sign * (two ? 2.0 : std::sqrt(2.0));
    return v;
}

VanishingSets vanishing_sets(long k) {
    if (k < 3) throw domain_error("vanishing_sets: k must be >= 3");
    VanishingSets out;
    out.k = k;
    for (long n = 0; n <= k; ++n) {
        long r = mod_pos(k - 2 * n, 8);
        if (r >= 3 && r <= 5) out.X.push_back(n);
    }
    // residues of Y = X + kZ modulo k
    std::vector<bool> res(static_cast<size_t>(k), false);
    for (long n : out.X) res[static_cast<size_t>(mod_pos(n, k))] = true;
    // smallest divisor d of k such that the residue set is a union of full
    // classes mod d
    for (long d = 1; d <= k; ++d) {
        if (k % d != 0) continue;
        bool ok = true;
        for (long r = 0; r < d && ok; ++r) {
            bool any = false, all = true;
            for (long x = r; x < k; x += d) {
                if (res[static_cast<size_t>(x)]) any = true;
                else all = false;
            }
            if (any && !all) ok = false;
        }
        if (ok) {
            out.modulus = d;
            for (long r = 0; r < d; ++r)
                if (res[static_cast<size_t>(mod_pos(r, k))]) out.residues.push_back(r);
            break;
        }
    }
    if (out.modulus == 0) {
        out.modulus = k;
        for (long r = 0; r < k; ++r)
            if (res[static_cast<size_t>(r)]) out.residues.push_back(r);
    }
    return out;
}

std::string VanishingSets::describe_Y() const {
    if (residues.empty()) return "empty";
    std::string s;
    for (size_t i = 0; i < residues.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(modulus) + "Z";
        if (residues[i] != 0) s += "+" + std::to_string(residues[i]);
    }
    return s;
}

double f_main_scale(long k) {
    return std::pow(M_PI, k / 2.0) * std::sqrt(2.0) / std::sqrt(static_cast<double>(k + 1));
}

double f_main_constant(long k, long n) {
    double eps = (n % 2 == 0) ? 1.0 : -1.0;
    return f_main_scale(k) * std::cos((k + eps) * M_PI / 4.0);
}

double f_main_term(long k, long n, double x) {
    return f_main_constant(k, n) / std::pow(1.0 - x, k / 2.0);
}

ErrValue gamma_profile(long k, long n, const mpq_class& t, Precision prec) {
    if (!(t > 0)) throw domain_error("gamma_profile: t must be positive");
    mpfr_prec_t bits = prec.bits();
    // k^{-1/2} 2^{-k/2}
    ErrValue lead = sqrt_real(ErrValue::of_mpq(mpq_class(1, k), bits));
    mpq_class two_pow(1);
    for (long i = 0; i < k; ++i) two_pow *= 2;
    lead = lead * sqrt_real(ErrValue::of_mpq(mpq_class(1) / two_pow, bits));
    // exponential factor inherited from the modular prefactor
    // (q e^{-pi i})^{n(n-k)/(2k)} = e^{pi n(k-n) t / k} at q = e^{pi i - 2 pi t}
    ErrValue expo = exp_ev(mul_mpq(pi_ball(bits), mpq_class(n * (k - n)) * t / k));
    // t^{(1-k)/2}
    mpq_class tpow(1);
    {
        long e = 1 - k;
        mpq_class base = t;
        if (e < 0) { base = 1 / base; e = -e; }
        for (long i = 0; i < e; ++i) tpow *= base;
    }
    ErrValue tp = sqrt_real(ErrValue::of_mpq(tpow, bits));
    return lead * expo * tp;
}

ModularPoint ModularPoint::from_t(const mpq_class& t, Precision prec) {
    if (!(t > 0)) throw domain_error("ModularPoint: t must be positive");
    ModularPoint mp;
    mp.t = t;
    mp.tp = TauPoint::from_t(t, prec);
    mpfr_prec_t bits = prec.bits();
    mp.tau_prime = ErrValue::of_mpq(mpq_class(-1, 2), bits) +
                   mul_i(ErrValue::of_mpq(mpq_class(1) / (4 * t), bits));
    // q' = -e^{-pi/(2t)}
    mp.q_prime = -exp_ev(-mul_mpq(pi_ball(bits), mpq_class(1) / (2 * t)));
    return mp;
}

ErrValue s_alpha_modular(const ModularPoint& mp, long k, long n,
                         const mpq_class& alpha, Precision prec) {
    if (k < 1 || n < 0) throw domain_error("s_alpha_modular: bad (k,n)");
    mpfr_prec_t bits = prec.bits();
    ErrValue pi = pi_ball(bits);
    const mpq_class& t = mp.t;

    // window: e^{-pi W^2/(4t)} below target
    double td = t.get_d();
    double W = std::sqrt(std::max(1.0, (prec.digits + 12) * 2.302585092994046 * 4 * td / M_PI)) + 2;
    double ad = alpha.get_d();
    long m_lo = static_cast<long>(std::floor(-ad - W));
    long m_hi = static_cast<long>(std::ceil(-ad + W));

    ErrValue sum = ErrValue::zero(bits);
    for (long m = m_lo; m <= m_hi; ++m) {
        mpq_class am = alpha + m;
        mpq_class re_coeff = -am * am / (4 * t);                       // * pi
        mpq_class im_coeff = -(mpq_class(m * m, 2) + mpq_class(m * n, k));  // * pi
        ErrValue z = mul_mpq(pi, re_coeff) + mul_i(mul_mpq(pi, im_coeff));
        sum = sum + exp_ev(z);
    }
    // Gaussian tails: ratio of consecutive magnitudes at the edges
    auto edge_term = [&](const mpq_class& am) {
        return exp(Real::of_mpq(mpq_class(-am * am) / (4 * t), kRadiusBits, MPFR_RNDU) *
                       Real::pi(kRadiusBits, MPFR_RNDU),
                   MPFR_RNDU);
    };
    auto edge_ratio = [&](const mpq_class& am_next_minus_sq) {
        return exp(Real::of_mpq(am_next_minus_sq / (4 * t), kRadiusBits, MPFR_RNDU) *
                       Real::pi(kRadiusBits, MPFR_RNDU),
                   MPFR_RNDU);
    };
    mpq_class am_r = alpha + (m_hi + 1), am_l = alpha + (m_lo - 1);
    mpq_class prev_r = alpha + m_hi, prev_l = alpha + m_lo;
    // stepping outward multiplies the magnitude by e^{-pi(am_out^2 - am_in^2)/(4t)}
    Real ratio_r = edge_ratio(-(am_r * am_r - prev_r * prev_r));
    Real ratio_l = edge_ratio(-(am_l * am_l - prev_l * prev_l));
    Real one = Real::of_long(1, kRadiusBits);
    if (!(ratio_r < one) || !(ratio_l < one))
        throw nonconvergence_error("s_alpha_modular: edge ratio >= 1");
    Real tail = ub::add(geometric_tail_bound(ratio_r, edge_term(am_r)),
                        geometric_tail_bound(ratio_l, edge_term(am_l)));
    return inflate(sum, tail);
}

std::vector<mpq_class> lambda_system(long k, long n) {
    std::vector<mpq_class> alphas;
    bool k_even = (k % 2 == 0), n_even = (n % 2 == 0);
    if (k_even && n_even) {
        for (long j = -(k / 2 - 1); j <= k / 2; ++j) alphas.emplace_back(2 * j, k);
    } else if (k_even && !n_even) {
        for (long j = -k / 2; j <= k / 2 - 1; ++j) alphas.emplace_back(2 * j + 1, k);
    } else if (!k_even && n_even) {
        for (long j = -(k - 1) / 2; j <= (k - 1) / 2; ++j) alphas.emplace_back(2 * j, k);
    } else {
        for (long j = -(k - 1) / 2; j <= (k - 1) / 2; ++j) alphas.emplace_back(2 * j + 1, k);
    }
    for (auto& a : alphas) a.canonicalize();
    return alphas;
}

ErrValue S_kn_eval(const ModularPoint& mp, long k, long n, Precision prec) {
    if (k < 3 || n < 0 || n >= k) throw domain_error("S_kn_eval: need k >= 3, 0 <= n < k");
    ErrValue sum = ErrValue::zero(prec.bits());
    for (const auto& a : lambda_system(k, n))
        sum = sum + pow_int(s_alpha_modular(mp, k, n, a, prec), k);
    return sum;
}

ErrValue gamma_asymptotic_estimate(long k, long n, const mpq_class& t, Precision prec) {
    ClassificationVerdict v = classify(k, n);
    ErrValue profile = gamma_profile(k, n, t, prec);
    if (v.verdict == Verdict::tends_to_zero) {
        // certified-scale bound: kappa = pi/(16k) sits below every error
        // exponent of the S_{k,n} expansions
        Real kappa = div_si(Real::pi(kRadiusBits, MPFR_RNDU), 16 * k, MPFR_RNDU);
        Real decay = exp(neg(qtheta::div(kappa, Real::of_mpq(t, kRadiusBits, MPFR_RNDD), MPFR_RNDU)), MPFR_RNDU);
        return ErrValue::of_real(Real(prec.bits()), ub::mul(abs_ub(profile), decay));
    }
    long kp = 0, np = 0;
    bool two = false;
    divergent_shape(k, n, kp, np, two);
    int sign = ((kp - np) % 2 == 0) ? 1 : -1;
    ErrValue cst = two ? ErrValue::of_long(2, prec.bits())
                       : sqrt_real(ErrValue::of_long(2, prec.bits()));
    ErrValue out = cst * profile;
    return sign > 0 ? out : -out;
}

ErrValue vartheta_qk1_asymptote(long k, const mpq_class& t, Precision prec) {
    if (k < 1 || !(t > 0)) throw domain_error("vartheta_qk1_asymptote: bad arguments");
    mpfr_prec_t bits = prec.bits();
    ErrValue kt = ErrValue::of_mpq(t * k, bits);
    ErrValue pi = pi_ball(bits);
    switch (mod_pos(k, 4)) {
        case 0:
            return ErrValue::of_long(1, bits) / sqrt_real(kt);
        case 1:
            return exp_ev(mul_i(mul_mpq(pi, mpq_class(1, 4)))) / sqrt_real(mul_long(kt, 2));
        case 2:
            // the proof's exponent e^{-pi/(4kt)} (the displayed formula drops the pi)
            return mul_long(exp_ev(-mul_mpq(pi, mpq_class(1) / (4 * k * t))), 2) / sqrt_real(kt);
        default:
            return exp_ev(mul_i(mul_mpq(pi, mpq_class(-1, 4)))) / sqrt_real(mul_long(kt, 2));
    }
}

ResidueSums binomial_residue_sums(long k) {
    if (k < 1) throw domain_error("binomial_residue_sums: k must be >= 1");
    ResidueSums s;
    mpz_class* slots[4] = {&s.s0, &s.s1, &s.s2, &s.s3};
    mpz_class binom;
    for (long l = 0; l <= k; ++l) {
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(l));
        *slots[l % 4] += binom;
    }
    return s;
}

}  // namespace qtheta
