#include "qtheta/series.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace qtheta {

namespace {

constexpr long long kInfExp = std::numeric_limits<long long>::max() / 4;

long long tri(long long m) { return m * (m - 1) / 2; }

long floor_div(long a, long b) {  // b > 0
    long q = a / b;
    return (a % b != 0 && (a < 0)) ? q - 1 : q;
}

template <class C>
struct Row {
    long e0 = 0;
    std::vector<C> v;
};

// One convolution stage: add one theta factor to every (index-sum, exponent)
// state, pruning states that provably cannot reach (n, <=N).
template <class C>
std::map<long, Row<C>> dp_stage(const std::map<long, Row<C>>& cur,
                                const std::vector<std::pair<long, long>>& support,
                                long n, long N, long remaining_after) {
    std::map<long, Row<C>> next;
    for (const auto& [s, row] : cur) {
        long row_len = static_cast<long>(row.v.size());
        for (const auto& [m, tm] : support) {
            long s2 = s + m;
            long long me_rem = remaining_after > 0 ? min_exponent(remaining_after, n - s2)
                                                   : (s2 == n ? 0 : kInfExp);
            if (me_rem >= kInfExp) continue;
            long e_hi = static_cast<long>(N - me_rem) - tm;
            if (e_hi < row.e0) continue;
            long len = std::min(row_len, e_hi - row.e0 + 1);
            auto it = next.find(s2);
            if (it == next.end()) {
                Row<C> fresh;
                fresh.e0 = row.e0 + tm;  // tightened as smaller offsets arrive
                fresh.v.assign(static_cast<size_t>(N - fresh.e0 + 1), C(0));
                it = next.emplace(s2, std::move(fresh)).first;
            }
            Row<C>& dst = it->second;
            long base = row.e0 + tm;
            if (base < dst.e0) {
                // extend the row downward
                std::vector<C> grown(static_cast<size_t>(N - base + 1), C(0));
                std::copy(dst.v.begin(), dst.v.end(),
                          grown.begin() + (dst.e0 - base));
                dst.v = std::move(grown);
                dst.e0 = base;
            }
            long off = base - dst.e0;
            for (long i = 0; i < len; ++i) dst.v[static_cast<size_t>(off + i)] += row.v[static_cast<size_t>(i)];
        }
    }
    return next;
}

inline mpz_class to_mpz(long long v) { return mpz_class(static_cast<long>(v)); }
inline mpz_class to_mpz(const mpz_class& v) { return v; }

template <class C>
IntSeries dp_run(long k, long n, long N) {
    auto support = exponent_support(N);
    std::map<long, Row<C>> cur;
    cur[0] = Row<C>{0, {C(1)}};
    for (long j = 0; j < k; ++j) cur = dp_stage<C>(cur, support, n, N, k - j - 1);

    IntSeries out;
    out.coeffs.assign(static_cast<size_t>(N + 1), mpz_class(0));
    auto it = cur.find(n);
    if (it != cur.end()) {
        const Row<C>& row = it->second;
        for (long i = 0; i < static_cast<long>(row.v.size()); ++i) {
            long e = row.e0 + i;
            if (e <= N) out.coeffs[static_cast<size_t>(e)] = to_mpz(row.v[static_cast<size_t>(i)]);
        }
    }
    return out;
}

}  // namespace

std::vector<std::pair<long, long>> exponent_support(long N) {
    std::vector<std::pair<long, long>> s;
    for (long m = 0;; ++m) {  // nonnegative side: T(m) = m(m-1)/2
        long long t = tri(m);
        if (t > N) break;
        s.emplace_back(m, static_cast<long>(t));
    }
    for (long m = -1;; --m) {
        long long t = tri(m);
        if (t > N) break;
        s.emplace_back(m, static_cast<long>(t));
    }
    return s;
}

long long min_exponent(long r, long d) {
    if (r == 0) return d == 0 ? 0 : kInfExp;
    long a = floor_div(d, r);
    long t = d - r * a;  // 0 <= t < r
    return t * tri(a + 1) + (r - t) * tri(a);
}

ReducedKey reduce(const CoeffKey& key) {
    if (key.k < 1) throw domain_error("CoeffKey: k must be >= 1");
    long k = key.k;
    long j = floor_div(key.n, k);
    long i = key.n - j * k;
    long long shift = k * (static_cast<long long>(j) * (j - 1) / 2) +
                      static_cast<long long>(i) * j;
    return {k, i, shift};
}

MajorantSeries coeff_majorant(long k, long N) {
    auto support = exponent_support(N);
    MajorantSeries out;

    std::vector<unsigned long long> a(static_cast<size_t>(N + 1), 0), b;
    a[0] = 1;
    bool ok = true;
    for (long j = 0; j < k && ok; ++j) {
        b.assign(a.size(), 0);
        for (const auto& [m, t] : support) {
            (void)m;
            for (long e = 0; e + t <= N; ++e) {
                if (__builtin_add_overflow(b[static_cast<size_t>(e + t)], a[static_cast<size_t>(e)],
                                           &b[static_cast<size_t>(e + t)])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
        }
        std::swap(a, b);
    }
    if (ok) {
        out.fits_i64 = true;
        // also require headroom below 2^63 so the signed DP lane is safe
        for (auto v : a)
            if (v > (1ull << 62)) { out.fits_i64 = false; break; }
        out.a.reserve(a.size());
        for (auto v : a) out.a.emplace_back(static_cast<unsigned long>(v));
        if (out.fits_i64) return out;
    }

    // bigint lane
    out.fits_i64 = false;
    std::vector<mpz_class> za(static_cast<size_t>(N + 1), mpz_class(0)), zb;
    za[0] = 1;
    for (long j = 0; j < k; ++j) {
        zb.assign(za.size(), mpz_class(0));
        for (const auto& [m, t] : support) {
            (void)m;
            for (long e = 0; e + t <= N; ++e) zb[static_cast<size_t>(e + t)] += za[static_cast<size_t>(e)];
        }
        std::swap(za, zb);
    }
    out.a = std::move(za);
    return out;
}

IntSeries gamma_series_dp(long k, long n, long N) {
    if (k < 1) throw domain_error("gamma_series_dp: k must be >= 1");
    if (n < 0 || n >= k) throw domain_error("gamma_series_dp: need 0 <= n < k");
    if (N < 0) throw domain_error("gamma_series_dp: N must be >= 0");
    MajorantSeries maj = coeff_majorant(k, N);
    if (maj.fits_i64) return dp_run<long long>(k, n, N);
    return dp_run<mpz_class>(k, n, N);
}

namespace {

void enum_rec(long depth, long k, long n, long N, long sum, long long expo,
              const std::vector<std::pair<long, long>>& support,
              std::vector<mpz_class>& acc) {
    if (depth == k - 1) {
        long last = n - sum;
        long long t = tri(last);
        if (t <= N - expo) acc[static_cast<size_t>(expo + t)] += 1;
        return;
    }
    long rem = k - 1 - depth;  // free coordinates left after this one
    for (const auto& [m, t] : support) {
        if (expo + t > N) continue;
        // cheap reachability cut: remaining free + final coordinate
        if (min_exponent(rem, n - sum - m) > N - expo - t) continue;
        enum_rec(depth + 1, k, n, N, sum + m, expo + t, support, acc);
    }
}

}  // namespace

IntSeries gamma_series_enum(long k, long n, long N) {
    if (k < 1 || n < 0 || n >= k) throw domain_error("gamma_series_enum: need k >= 1, 0 <= n < k");
    if (k > 6 || N > 60) throw scale_error("gamma_series_enum: reference path capped at k <= 6, N <= 60");
    IntSeries out;
    out.coeffs.assign(static_cast<size_t>(N + 1), mpz_class(0));
    auto support = exponent_support(N);
    if (k == 1) {
        if (n == 0) out.coeffs[0] = 1;
        return out;
    }
    enum_rec(0, k, n, N, 0, 0, support, out.coeffs);
    return out;
}

IntSeries gamma_series(const CoeffKey& key, long N) {
    ReducedKey rk = reduce(key);
    IntSeries out;
    out.coeffs.assign(static_cast<size_t>(N + 1), mpz_class(0));
    if (rk.shift > N) return out;
    IntSeries base = gamma_series_dp(rk.k, rk.i, N - static_cast<long>(rk.shift));
    for (long m = 0; m <= base.order(); ++m)
        out.coeffs[static_cast<size_t>(m + rk.shift)] = base.coeffs[static_cast<size_t>(m)];
    return out;
}

}  // namespace qtheta
