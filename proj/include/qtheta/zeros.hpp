#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "qtheta/coeff.hpp"

namespace qtheta {

// A certified sign-change interval of gamma_{k,n} inside (-1,0): both
// endpoint evaluations exclude zero and the signs differ.
struct ZeroBracket {
    long k = 0, n = 0;
    mpq_class lo, hi;
    int sign_lo = 0, sign_hi = 0;
    mpq_class width() const { return hi - lo; }
};

struct ScanResult {
    std::vector<ZeroBracket> brackets;
    std::vector<std::pair<mpq_class, mpq_class>> gaps;  // uncertifiable subintervals
};

// Certified sign of gamma_{k,n}(q) at an exact rational q in (-1,0), with
// precision escalation; nullopt when certification fails within the budget.
std::optional<int> certified_sign_at(long k, long n, const mpq_class& q,
                                     Precision prec, const EvalOptions& opts = {});

// Evaluate signs on an inclusive grid over [lo,hi] and report adjacent
// certified sign flips as coarse brackets. Uncertifiable grid points are
// probed at subdivided offsets, then reported as gaps.
ScanResult scan_sign_changes(long k, long n, const mpq_class& lo, const mpq_class& hi,
                             long grid, Precision prec, const EvalOptions& opts = {});

// Shrink a bracket to the target width keeping endpoint signs certified;
// midpoints that resist certification are perturbed by width/1000 and the
// precision ladder is escalated before giving up.
ZeroBracket bisect_certified(const ZeroBracket& bracket, const mpq_class& target_width,
                             Precision prec, const EvalOptions& opts = {});

struct FindZerosResult {
    std::vector<ZeroBracket> brackets;
    std::vector<std::pair<mpq_class, mpq_class>> gaps;
    std::string note;  // classification context
    std::optional<std::string> contradiction;
};

// Scan the default window (-0.999,-0.001) on a 256 grid and refine every
// sign change to width 1e-8. When the classification predicts a divergence
// to -infinity, an empty result is flagged as a contradiction diagnostic.
FindZerosResult find_zeros(long k, long n, Precision prec, const EvalOptions& opts = {});

}  // namespace qtheta
