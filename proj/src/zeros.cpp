#include "qtheta/zeros.hpp"

#include <algorithm>

#include "qtheta/asymptotics.hpp"

namespace qtheta {

std::optional<int> certified_sign_at(long k, long n, const mpq_class& q,
                                     Precision prec, const EvalOptions& opts) {
    if (!(q > -1 && q < 0)) throw domain_error("certified_sign_at: q must lie in (-1,0)");
    int digits = prec.digits;
    for (int step = 0; step < 3; ++step) {
        ErrValue qv = ErrValue::of_mpq(q, Precision(digits).bits());
        ErrValue g = gamma_eval({k, n}, qv, Precision(digits), opts);
        if (auto s = certified_sign(g)) return s;
        digits *= 2;
    }
    return std::nullopt;
}

ScanResult scan_sign_changes(long k, long n, const mpq_class& lo, const mpq_class& hi,
                             long grid, Precision prec, const EvalOptions& opts) {
    if (!(lo > -1 && hi < 0 && lo < hi))
        throw domain_error("scan_sign_changes: need -1 < lo < hi < 0");
    if (grid < 2) throw domain_error("scan_sign_changes: grid must be >= 2");

    ScanResult out;
    mpq_class cell = (hi - lo) / (grid - 1);
    std::vector<std::pair<mpq_class, int>> certified;  // ordered (q, sign)
    for (long i = 0; i < grid; ++i) {
        mpq_class q = lo + cell * i;
        auto s = certified_sign_at(k, n, q, prec, opts);
        if (s) {
            certified.emplace_back(q, *s);
            continue;
        }
        // refinement: probe symmetric offsets inside the cell
        bool rescued = false;
        for (long denom : {4L, 16L}) {
            mpq_class dq = cell / denom;
            mpq_class ql = q - dq, qr = q + dq;
            if (!(ql > -1) || !(qr < 0)) continue;
            auto sl = certified_sign_at(k, n, ql, prec, opts);
            auto sr = certified_sign_at(k, n, qr, prec, opts);
            if (sl && sr) {
                certified.emplace_back(ql, *sl);
                certified.emplace_back(qr, *sr);
                rescued = true;
                break;
            }
        }
        if (!rescued)
            out.gaps.emplace_back(std::max(mpq_class(q - cell / 2), lo),
                                  std::min(mpq_class(q + cell / 2), hi));
    }
    std::sort(certified.begin(), certified.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i + 1 < certified.size(); ++i) {
        if (certified[i].second != certified[i + 1].second) {
            ZeroBracket b;
            b.k = k;
            b.n = n;
            b.lo = certified[i].first;
            b.hi = certified[i + 1].first;
            b.sign_lo = certified[i].second;
            b.sign_hi = certified[i + 1].second;
            out.brackets.push_back(std::move(b));
        }
    }
    return out;
}

ZeroBracket bisect_certified(const ZeroBracket& bracket, const mpq_class& target_width,
                             Precision prec, const EvalOptions& opts) {
    if (bracket.sign_lo == bracket.sign_hi || bracket.sign_lo == 0)
        throw domain_error("bisect_certified: input bracket lacks certified opposite signs");
    ZeroBracket b = bracket;
    while (b.width() > target_width) {
        mpq_class mid = (b.lo + b.hi) / 2;
        std::optional<int> s = certified_sign_at(b.k, b.n, mid, prec, opts);
        if (!s) {
            // the midpoint may sit on the zero: nudge it
            mid += b.width() / 1000;
            s = certified_sign_at(b.k, b.n, mid, prec, opts);
        }
        if (!s) throw precision_error("bisect_certified: certification failed at max precision");
        if (*s == b.sign_lo) {
            b.lo = mid;
        } else {
            b.hi = mid;
            b.sign_hi = *s;
        }
    }
    return b;
}

FindZerosResult find_zeros(long k, long n, Precision prec, const EvalOptions& opts) {
    if (k < 1 || n < 0 || n >= k) throw domain_error("find_zeros: need k >= 1, 0 <= n < k");
    FindZerosResult out;
    if (k <= 2) {
        out.note = "non-vanishing route (triple product)";
    } else {
        ClassificationVerdict v = classify(k, n);
        out.note = "predicted " + v.verdict_name() +
                   (v.corollary_flag ? " [vanishing family]" : "");
    }
    ScanResult scan = scan_sign_changes(k, n, mpq_class(-999, 1000), mpq_class(-1, 1000),
                                        256, prec, opts);
    out.gaps = std::move(scan.gaps);
    mpq_class width(1, 100000000);
    for (const auto& coarse : scan.brackets)
        out.brackets.push_back(bisect_certified(coarse, width, prec, opts));
    if (k >= 3 && out.brackets.empty() &&
        classify(k, n).verdict == Verdict::minus_infinity) {
        out.contradiction =
            "classification predicts a sign change on (-1,0) but the scan found none; "
            "grid or precision is insufficient, or the window misses the zero";
    }
    return out;
}

}  // namespace qtheta
