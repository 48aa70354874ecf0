#include "qtheta/tau.hpp"

namespace qtheta {

TauPoint TauPoint::from_tau(const mpq_class& u, const mpq_class& v, Precision prec) {
    if (v <= 0) throw domain_error("TauPoint: Im(tau) must be positive");
    TauPoint tp;
    tp.prec = prec;
    tp.tau = ErrValue::of_mpq(u, v, prec.bits());
    // q = e^{2 pi i tau}
    ErrValue two_pi_i = mul_i(mul_long(pi_ball(prec.bits()), 2));
    tp.q = exp_ev(two_pi_i * tp.tau);
    return tp;
}

TauPoint TauPoint::from_negative_real(const mpq_class& q_neg, Precision prec) {
    if (!(q_neg > -1 && q_neg < 0))
        throw domain_error("TauPoint::from_negative_real: q must lie in (-1,0)");
    mpfr_prec_t bits = prec.bits();
    TauPoint tp;
    tp.prec = prec;
    // t = -ln|q| / (2 pi) > 0
    ErrValue absq = ErrValue::of_mpq(mpq_class(-q_neg), bits);
    ErrValue t = -log_real(absq) / mul_long(pi_ball(bits), 2);
    ErrValue half = ErrValue::of_mpq(mpq_class(1, 2), bits);
    tp.tau = half + mul_i(t);
    // The defining value of q is exact; keep it instead of the exp round trip.
    tp.q = ErrValue::of_mpq(q_neg, bits);
    return tp;
}

TauPoint TauPoint::from_t(const mpq_class& t, Precision prec) {
    if (t <= 0) throw domain_error("TauPoint::from_t: t must be positive");
    mpfr_prec_t bits = prec.bits();
    TauPoint tp;
    tp.prec = prec;
    ErrValue half = ErrValue::of_mpq(mpq_class(1, 2), bits);
    ErrValue ti = ErrValue::of_mpq(t, bits);
    tp.tau = half + mul_i(ti);
    // q = -e^{-2 pi t}
    tp.q = -exp_ev(-(mul_long(pi_ball(bits), 2) * ti));
    return tp;
}

TauPoint tau_from_negative_real(const mpq_class& q_neg, Precision prec) {
    return TauPoint::from_negative_real(q_neg, prec);
}

ErrValue qpow(const TauPoint& tp, long num, long den) {
    return qpow(tp, mpq_class(num, den));
}

ErrValue qpow(const TauPoint& tp, const mpq_class& alpha) {
    mpq_class a(alpha);
    a.canonicalize();
    mpfr_prec_t bits = tp.prec.bits();
    if (a == 0) return ErrValue::of_long(1, bits);
    // e^{2 pi i alpha tau}
    ErrValue z = mul_i(mul_mpq(mul_long(pi_ball(bits), 2), a)) * tp.tau;
    return exp_ev(z);
}

}  // namespace qtheta
