#include "qtheta/lattice.hpp"

#include <cmath>
#include <map>

#include "qtheta/coeff.hpp"

namespace qtheta {

namespace {

long long tri(long long n) { return n * (n - 1) / 2; }

// Gamma(x) ball for exact rational x > 0.
ErrValue gamma_ball(const mpq_class& x, mpfr_prec_t bits) {
    Real arg = Real::of_mpq(x, bits);
    Real c = gamma(arg);
    Real rad = mul_2si(abs(c), 2 - static_cast<long>(bits), MPFR_RNDU);
    return ErrValue::of_real(c, rad);
}

// z^{k/2} for a certified positive real ball.
ErrValue half_power(const ErrValue& z, long k) {
    if (k % 2 == 0) return pow_int(z, k / 2);
    return sqrt_real(pow_int(z, k));
}

// Directed bound of b^e for 0 < b < 1 (Real upper bounds in, upper bound out).
Real pow_mpq_ub(const Real& b, const mpq_class& e) {
    if (e == 0) return Real::of_long(1, kRadiusBits);
    bool epos = e > 0;
    // b^e = exp(e ln b); ln b < 0.
    Real lnb = log(b, epos ? MPFR_RNDU : MPFR_RNDD);
    Real prod = mul(lnb, Real::of_mpq(e, kRadiusBits, epos ? MPFR_RNDU : MPFR_RNDD), MPFR_RNDU);
    return exp(prod, MPFR_RNDU);
}

// Upper bound of sum_{j in Z} t^{(j+c)^2} <= 1 + 2 sum_{j>=1} t^{j^2} + 2,
// c arbitrary (shift-invariant bound), 0 < t < 1.
Real theta_1d_ub(const Real& t) {
    Real one = Real::of_long(1, kRadiusBits);
    if (!(t < one)) throw nonconvergence_error("theta_1d_ub: base >= 1");
    Real sum = one;
    Real p = t;         // t^{j^2}
    Real step = mul(t, mul(t, t, MPFR_RNDU), MPFR_RNDU);  // t^{2j+1}
    Real t2 = mul(t, t, MPFR_RNDU);
    long j = 1;
    while (true) {
        sum = add(sum, mul_2si(p, 1, MPFR_RNDU), MPFR_RNDU);
        if (mul_2si(sum, -100, MPFR_RNDU) > p || j > 4000000) break;
        p = mul(p, step, MPFR_RNDU);
        step = mul(step, t2, MPFR_RNDU);
        ++j;
    }
    Real ratio = pow_si(t, 2 * j + 1, MPFR_RNDU);
    sum = add(sum, geometric_tail_bound(ratio, mul_2si(mul(p, ratio, MPFR_RNDU), 1, MPFR_RNDU)), MPFR_RNDU);
    // slack for the worst-case lattice shift
    return add(sum, mul_2si(one, 1, MPFR_RNDU), MPFR_RNDU);
}

struct Box {
    std::vector<long> lo, hi;
    long long cells = 1;
};

// Axis-aligned bounding box of {y : (y-c)^T A (y-c) <= Mp} with margin.
Box bounding_box(const QuadLinForm& f, const mpq_class& Mp, long long budget) {
    Box box;
    long k = f.dim();
    auto c = f.center();
    box.lo.resize(k);
    box.hi.resize(k);
    if (Mp < 0) {
        box.cells = 0;
        return box;
    }
    for (long i = 0; i < k; ++i) {
        double ri = std::sqrt(std::max(0.0, mpq_class(Mp * f.inv()[i][i]).get_d())) + 2.0;
        double ci = c[static_cast<size_t>(i)].get_d();
        box.lo[static_cast<size_t>(i)] = static_cast<long>(std::floor(ci - ri));
        box.hi[static_cast<size_t>(i)] = static_cast<long>(std::ceil(ci + ri));
        box.cells *= box.hi[static_cast<size_t>(i)] - box.lo[static_cast<size_t>(i)] + 1;
        if (box.cells > budget)
            throw scale_error("lattice enumeration box exceeds budget");
    }
    return box;
}

template <class Visit>
void for_each_point(const Box& box, std::vector<long>& y, long depth, Visit&& visit) {
    if (box.cells == 0) return;
    if (depth == static_cast<long>(box.lo.size())) {
        visit(y);
        return;
    }
    for (long v = box.lo[static_cast<size_t>(depth)]; v <= box.hi[static_cast<size_t>(depth)]; ++v) {
        y[static_cast<size_t>(depth)] = v;
        for_each_point(box, y, depth + 1, visit);
    }
}

// Product-form tail for sum over F+L > M of x^{F+L}, 0 < x < 1:
//   x^{M/2} * x^{-c'/2} * prod_i Theta_i(x^{lambda/2})
// with lambda a positive lower bound of the smallest eigenvalue.
Real gaussian_tail_ub(const QuadLinForm& f, const Real& x_ub, const mpq_class& M) {
    long k = f.dim();
    mpq_class R(0);
    for (long i = 0; i < k; ++i) {
        mpq_class row(0);
        for (long j = 0; j < k; ++j) row += abs(f.A()[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        if (row > R) R = row;
    }
    mpq_class lam = f.det();
    for (long i = 0; i < k - 1; ++i) lam /= R;  // det / R^{k-1} <= lambda_min
    Real theta = theta_1d_ub(pow_mpq_ub(x_ub, lam / 2));
    Real prod = pow_si(theta, k, MPFR_RNDU);
    Real head = mul(pow_mpq_ub(x_ub, M / 2), pow_mpq_ub(x_ub, -f.center_norm() / 2), MPFR_RNDU);
    return mul(head, prod, MPFR_RNDU);
}

}  // namespace

QuadLinForm::QuadLinForm(std::vector<std::vector<mpq_class>> A, std::vector<mpq_class> b)
    : k_(static_cast<long>(A.size())), A_(std::move(A)), b_(std::move(b)) {
    if (k_ < 1 || b_.size() != static_cast<size_t>(k_))
        throw domain_error("QuadLinForm: inconsistent dimensions");
    for (long i = 0; i < k_; ++i) {
        if (A_[static_cast<size_t>(i)].size() != static_cast<size_t>(k_))
            throw domain_error("QuadLinForm: A is not square");
        for (long j = 0; j < k_; ++j)
            if (A_[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
                A_[static_cast<size_t>(j)][static_cast<size_t>(i)])
                throw domain_error("QuadLinForm: A is not symmetric");
    }
    // pivoted elimination: positive pivots <=> positive definite; det = product
    auto M = A_;
    det_ = 1;
    for (long i = 0; i < k_; ++i) {
        mpq_class piv = M[static_cast<size_t>(i)][static_cast<size_t>(i)];
        if (piv <= 0) throw domain_error("QuadLinForm: A is not positive definite");
        det_ *= piv;
        for (long r = i + 1; r < k_; ++r) {
            mpq_class fct = M[static_cast<size_t>(r)][static_cast<size_t>(i)] / piv;
            for (long c = i; c < k_; ++c)
                M[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                    fct * M[static_cast<size_t>(i)][static_cast<size_t>(c)];
        }
    }
    // inverse by Gauss-Jordan
    auto W = A_;
    inv_.assign(static_cast<size_t>(k_), std::vector<mpq_class>(static_cast<size_t>(k_), 0));
    for (long i = 0; i < k_; ++i) inv_[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    for (long i = 0; i < k_; ++i) {
        mpq_class piv = W[static_cast<size_t>(i)][static_cast<size_t>(i)];
        for (long c = 0; c < k_; ++c) {
            W[static_cast<size_t>(i)][static_cast<size_t>(c)] /= piv;
            inv_[static_cast<size_t>(i)][static_cast<size_t>(c)] /= piv;
        }
        for (long r = 0; r < k_; ++r) {
            if (r == i) continue;
            mpq_class fct = W[static_cast<size_t>(r)][static_cast<size_t>(i)];
            if (fct == 0) continue;
            for (long c = 0; c < k_; ++c) {
                W[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                    fct * W[static_cast<size_t>(i)][static_cast<size_t>(c)];
                inv_[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                    fct * inv_[static_cast<size_t>(i)][static_cast<size_t>(c)];
            }
        }
    }
}

mpq_class QuadLinForm::eval(const std::vector<long>& y) const {
    mpq_class v(0);
    for (long i = 0; i < k_; ++i) {
        for (long j = 0; j < k_; ++j)
            v += A_[static_cast<size_t>(i)][static_cast<size_t>(j)] * y[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
        v += b_[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
    }
    return v;
}

std::vector<mpq_class> QuadLinForm::center() const {
    std::vector<mpq_class> c(static_cast<size_t>(k_), 0);
    for (long i = 0; i < k_; ++i) {
        for (long j = 0; j < k_; ++j)
            c[static_cast<size_t>(i)] -= inv_[static_cast<size_t>(i)][static_cast<size_t>(j)] * b_[static_cast<size_t>(j)];
        c[static_cast<size_t>(i)] /= 2;
    }
    return c;
}

mpq_class QuadLinForm::center_norm() const {
    mpq_class v(0);
    for (long i = 0; i < k_; ++i)
        for (long j = 0; j < k_; ++j)
            v += b_[static_cast<size_t>(i)] * inv_[static_cast<size_t>(i)][static_cast<size_t>(j)] * b_[static_cast<size_t>(j)];
    return v / 4;
}

QuadLinForm QuadLinForm::theta_power_form(long k, long n) {
    std::vector<std::vector<mpq_class>> A(static_cast<size_t>(k),
                                          std::vector<mpq_class>(static_cast<size_t>(k)));
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j)
            A[static_cast<size_t>(i)][static_cast<size_t>(j)] = (i == j) ? mpq_class(1) : mpq_class(1, 2);
    std::vector<mpq_class> b(static_cast<size_t>(k), mpq_class(-n));
    return QuadLinForm(std::move(A), std::move(b));
}

mpz_class lattice_count(const QuadLinForm& form, const mpq_class& M, long long budget) {
    mpq_class Mp = M + form.center_norm();
    Box box = bounding_box(form, Mp, budget);
    mpz_class count(0);
    std::vector<long> y(static_cast<size_t>(form.dim()));
    for_each_point(box, y, 0, [&](const std::vector<long>& pt) {
        if (form.eval(pt) <= M) ++count;
    });
    return count;
}

ErrValue ellipsoid_volume(const QuadLinForm& form, const mpq_class& M, Precision prec) {
    long k = form.dim();
    mpfr_prec_t bits = prec.bits();
    mpq_class Mp = M + form.center_norm();
    if (Mp < 0) throw domain_error("ellipsoid_volume: M + y0^2 must be >= 0");
    if (Mp == 0) return ErrValue::zero(bits);
    ErrValue vk = half_power(pi_ball(bits), k) / gamma_ball(mpq_class(k, 2) + 1, bits);
    ErrValue scaled = half_power(ErrValue::of_mpq(Mp, bits), k);
    return vk * scaled / sqrt_real(ErrValue::of_mpq(form.det(), bits));
}

ErrValue f_kn_eval(long k, long n, const ErrValue& x, Precision prec) {
    if (!(abs_ub(x) < Real::of_long(1, kRadiusBits)))
        throw divergence_error("f_kn_eval: |x| not certified < 1");
    long long pole = tri(n);
    if (pole > 0 && !(abs_lb(x) > 0))
        throw domain_error("f_kn_eval: x = 0 but the series has a pole");
    ErrValue g = gamma_eval({k + 1, n}, x, prec);
    if (pole == 0) return g;
    return g * pow_int(x, static_cast<long>(-pole));
}

ErrValue phi_eval(const QuadLinForm& form, const ErrValue& x, Precision prec,
                  long long budget) {
    Real xa = abs_ub(x);
    Real one = Real::of_long(1, kRadiusBits);
    if (!(xa < one)) throw divergence_error("phi_eval: |x| >= 1");
    if (!(abs_lb(x) > 0)) throw domain_error("phi_eval: x = 0");

    // grow the cut until the tail meets the precision target
    Real target = pow_si(Real::of_long(10, kRadiusBits), -(prec.digits + 5), MPFR_RNDU);
    mpq_class Mcut(16);
    for (int i = 0; i < 64; ++i) {
        if (!(gaussian_tail_ub(form, xa, Mcut) > target)) break;
        Mcut *= 2;
        bounding_box(form, Mcut + form.center_norm(), budget);  // budget check early
        if (i == 63) throw nonconvergence_error("phi_eval: tail did not contract");
    }

    std::map<mpq_class, long long> shells;
    Box box = bounding_box(form, Mcut + form.center_norm(), budget);
    std::vector<long> y(static_cast<size_t>(form.dim()));
    for_each_point(box, y, 0, [&](const std::vector<long>& pt) {
        mpq_class e = form.eval(pt);
        if (e <= Mcut) shells[e] += 1;
    });

    bool integral = true;
    for (const auto& [e, cnt] : shells)
        if (e.get_den() != 1) { integral = false; break; }

    ErrValue sum = ErrValue::zero(prec.bits());
    if (integral) {
        for (const auto& [e, cnt] : shells)
            sum = sum + mul_long(pow_int(x, e.get_num().get_si()), cnt);
    } else {
        if (!(abs(x.im) <= x.rad) || !(sub(x.re, x.rad, MPFR_RNDD) > 0))
            throw domain_error("phi_eval: fractional exponents need a positive real x");
        ErrValue lx = log_real(x);
        for (const auto& [e, cnt] : shells)
            sum = sum + mul_long(exp_ev(mul_mpq(lx, e)), cnt);
    }
    return inflate(sum, gaussian_tail_ub(form, xa, Mcut));
}

ErrValue s_alpha_eval(const mpq_class& alpha, const mpq_class& x, Precision prec) {
    if (alpha <= 0) throw domain_error("s_alpha_eval: alpha must be > 0");
    if (!(x > 0 && x < 1)) throw domain_error("s_alpha_eval: x must lie in (0,1)");
    mpfr_prec_t bits = prec.bits();
    ErrValue xb = ErrValue::of_mpq(x, bits);
    Real xa = abs_ub(xb);

    double a = mpq_class(alpha).get_d();
    double peak = a / (-std::log(x.get_d()));
    long N = std::max<long>(32, static_cast<long>(2 * peak) + 16);
    Real target = pow_si(Real::of_long(10, kRadiusBits), -(prec.digits + 5), MPFR_RNDU);

    auto term_ub = [&](long n) {
        Real nn = Real::of_long(n, kRadiusBits);
        Real np = exp(mul(Real::of_mpq(alpha, kRadiusBits, MPFR_RNDU), log(nn, MPFR_RNDU), MPFR_RNDU), MPFR_RNDU);
        return mul(np, pow_si(xa, n, MPFR_RNDU), MPFR_RNDU);
    };
    auto ratio_ub = [&](long n) {  // ((n+1)/n)^alpha * x at the boundary
        Real r = div(Real::of_long(n + 1, kRadiusBits), Real::of_long(n, kRadiusBits), MPFR_RNDU);
        Real rp = exp(mul(Real::of_mpq(alpha, kRadiusBits, MPFR_RNDU), log(r, MPFR_RNDU), MPFR_RNDU), MPFR_RNDU);
        return mul(rp, xa, MPFR_RNDU);
    };
    for (int i = 0; i < 60; ++i) {
        Real r = ratio_ub(N);
        if (r < Real::of_long(1, kRadiusBits) &&
            !(geometric_tail_bound(r, term_ub(N + 1)) > target))
            break;
        N += N / 2 + 16;
    }

    ErrValue sum = ErrValue::zero(bits);
    ErrValue av = ErrValue::of_mpq(alpha, bits);
    ErrValue xp = xb;  // x^n
    for (long n = 1; n <= N; ++n) {
        ErrValue npow = exp_ev(av * log_real(ErrValue::of_long(n, bits)));
        sum = sum + npow * xp;
        xp = xp * xb;
    }
    Real r = ratio_ub(N);
    return inflate(sum, geometric_tail_bound(r, term_ub(N + 1)));
}

ErrValue s_alpha_main_term(const mpq_class& alpha, const mpq_class& x, Precision prec) {
    mpfr_prec_t bits = prec.bits();
    ErrValue g = gamma_ball(alpha + 1, bits);
    ErrValue one_minus = ErrValue::of_mpq(1 - x, bits);
    ErrValue denom = exp_ev(mul_mpq(log_real(one_minus), alpha + 1));
    return g / denom;
}

ErrValue poisson_residual(const QuadLinForm& form, const mpq_class& scale, Precision prec) {
    if (scale <= 0) throw domain_error("poisson_residual: scale must be > 0");
    return poisson_residual(form, ErrValue::of_mpq(scale, prec.bits()), prec);
}

ErrValue poisson_residual(const QuadLinForm& form, const ErrValue& t, Precision prec) {
    if (!(sub(t.re, t.rad, MPFR_RNDD) > 0) || !(abs(t.im) <= t.rad))
        throw domain_error("poisson_residual: scale must be certified real positive");
    long k = form.dim();
    mpfr_prec_t bits = prec.bits();
    Real target = pow_si(Real::of_long(10, kRadiusBits), -(prec.digits / 2 + 8), MPFR_RNDU);

    // left side: sum e^{-t (F+L)(m)} = Phi_{F,L}(e^{-t})
    ErrValue x_left = exp_ev(-t);
    Real xl = abs_ub(x_left);
    mpq_class Mcut(16);
    while (gaussian_tail_ub(form, xl, Mcut) > target) Mcut *= 2;
    Box box = bounding_box(form, Mcut + form.center_norm(), 40000000);
    ErrValue lhs = ErrValue::zero(bits);
    ErrValue llog = -t;  // log of e^{-t}
    std::map<mpq_class, long long> shells;
    std::vector<long> y(static_cast<size_t>(k));
    for_each_point(box, y, 0, [&](const std::vector<long>& pt) {
        mpq_class e = form.eval(pt);
        if (e <= Mcut) shells[e] += 1;
    });
    for (const auto& [e, cnt] : shells) lhs = lhs + mul_long(exp_ev(mul_mpq(llog, e)), cnt);
    lhs = inflate(lhs, gaussian_tail_ub(form, xl, Mcut));

    // right side: prefactor * sum_m e^{-pi^2 Ftilde(m)/t} e^{i pi b^T A^{-1} m}
    QuadLinForm dual(form.inv(), std::vector<mpq_class>(static_cast<size_t>(k), 0));
    ErrValue pi = pi_ball(bits);
    ErrValue x_right = exp_ev(-(pi * pi / t));
    Real xr = abs_ub(x_right);
    mpq_class McutR(16);
    while (gaussian_tail_ub(dual, xr, McutR) > target) McutR *= 2;
    Box boxR = bounding_box(dual, McutR, 40000000);
    // phase coefficients b^T A^{-1}
    std::vector<mpq_class> phase(static_cast<size_t>(k), 0);
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j)
            phase[static_cast<size_t>(i)] += form.b()[static_cast<size_t>(j)] * form.inv()[static_cast<size_t>(j)][static_cast<size_t>(i)];
    ErrValue rhs = ErrValue::zero(bits);
    ErrValue rlog = -(pi * pi / t);
    for_each_point(boxR, y, 0, [&](const std::vector<long>& pt) {
        mpq_class e = dual.eval(pt);
        if (e > McutR) return;
        mpq_class ph(0);
        for (long i = 0; i < k; ++i) ph += phase[static_cast<size_t>(i)] * pt[static_cast<size_t>(i)];
        ErrValue z = mul_mpq(rlog, e) + mul_i(mul_mpq(pi, ph));
        rhs = rhs + exp_ev(z);
    });
    rhs = inflate(rhs, gaussian_tail_ub(dual, xr, McutR));

    // det(tA) = t^k det A
    ErrValue det_scaled = mul_mpq(pow_int(t, k), form.det());
    ErrValue pref = half_power(pi, k) * exp_ev(mul_mpq(t, form.center_norm())) /
                    sqrt_real(det_scaled);
    return lhs - pref * rhs;
}

}  // namespace qtheta
