#pragma once

#include <gmpxx.h>

#include <vector>

#include "qtheta/errors.hpp"

namespace qtheta {

// Truncated power series in q with exact integer coefficients;
// coeffs[m] is the coefficient of q^m, m = 0..order (inclusive).
struct IntSeries {
    std::vector<mpz_class> coeffs;

    long order() const { return static_cast<long>(coeffs.size()) - 1; }
    const mpz_class& at(long m) const { return coeffs.at(static_cast<size_t>(m)); }
};

// Coefficient index (k,n); n may be any integer and is reduced internally:
// n = j*k + i with 0 <= i < k gives gamma_{k,n} = q^{k*j(j-1)/2 + i*j} gamma_{k,i}.
struct CoeffKey {
    long k;
    long n;
};

struct ReducedKey {
    long k;
    long i;           // class of n modulo k
    long long shift;  // q-exponent relating gamma_{k,n} to gamma_{k,i}; >= 0
};

ReducedKey reduce(const CoeffKey& key);

// Exact series of gamma_{k,n} to order N by the k-fold convolution DP over
// the single-factor support {(m, m(m-1)/2) : m(m-1)/2 <= N}. 0 <= n < k.
IntSeries gamma_series_dp(long k, long n, long N);

// Same series by direct enumeration of k-tuples; the independent reference.
// Capped at k <= 6, N <= 60 (scale error beyond).
IntSeries gamma_series_enum(long k, long n, long N);

// Any-n front end applying the modular reduction.
IntSeries gamma_series(const CoeffKey& key, long N);

// Majorant A_k(m) >= gamma_{k,n}(m) for every n: the number of k-tuples with
// exponent sum m, no constraint on the index sum. Satisfies
// sum_m A_k(m) x^m = (sum_j x^{j(j-1)/2})^k exactly, which gives the
// evaluation tail bound. fits_i64 reports whether the u64 fast path held.
struct MajorantSeries {
    std::vector<mpz_class> a;
    bool fits_i64 = true;
};
MajorantSeries coeff_majorant(long k, long N);

// Single-index exponent support: all m with m(m-1)/2 <= N, with exponents.
std::vector<std::pair<long, long>> exponent_support(long N);

// Minimal exponent sum over r integers with index sum d (0 if r==0 && d==0).
long long min_exponent(long r, long d);

}  // namespace qtheta
