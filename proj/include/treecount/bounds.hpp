#pragma once

#include "treecount/count_table.hpp"
#include "treecount/signed_rep.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace treecount {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A bound recurrence B(q) = sum_d coeffs[d] * B(q-d) with an exact seed
// window covering [first_q - max_lag, first_q - 1].
struct BoundSpec {
    CoefficientList coeffs;
    std::map<std::int64_t, BigInt> seed;
    std::int64_t first_q = 0;

    // Seeds [2, max_lag+1] with exact h values; first predicted q = max_lag+2.
    static BoundSpec from_table(const CountTable& table, int i, BoundKind kind);
    // Seeds [q - max_lag, q - 1]; the single-step prediction at q.
    static BoundSpec reseeded(const CountTable& table, int i, BoundKind kind, std::int64_t q);

    void check() const; // throws std::invalid_argument on bad coeffs/seed window
};

// Exact integer recurrence values for q in [first_q, q_max], seeds included.
std::map<std::int64_t, BigInt> bound_sequence(const BoundSpec& spec, std::int64_t q_max);

struct SandwichReport {
    int n = 0;
    int i = 0;
    std::int64_t first_q = 0;
    std::int64_t q_max = 0;
    std::int64_t points = 0;
    bool ok = false;
    std::string failure; // empty when ok
    std::int64_t bad_q = -1;
    BigInt bad_lower, bad_upper, bad_exact;
};

// Autonomous sandwich lower(q) <= h(q) <= upper(q) on every valid q in
// [first predicted q, q_max], plus the re-seeded gap identity
// upper(q) - lower(q) = h(q - i - (n-1)).
SandwichReport verify_sandwich(const CountTable& table, int i, std::int64_t q_max);

// Real roots of x^m = sum_d coeffs[d] x^(m-d), largest first. The dominant
// root comes from a bisected sign change of the scaled polynomial
// f(x) = 1 - sum_d coeffs[d] x^(-d) on (1, n]; later roots by synthetic
// deflation re-polished against the undeflated polynomial. Every returned
// root r satisfies |f(r)| <= 1e-10.
std::vector<double> characteristic_roots(const CoefficientList& coeffs, int count,
                                         double bracket_tol = 1e-12);

struct AsymptoticFit {
    int n = 0;
    int i = 0;
    std::vector<double> roots;     // descending
    std::vector<double> constants; // same length
    double residual = 0.0;         // max |sum_k c_k r_k^q / h(q) - 1| over the window
    std::int64_t window_lo = 0, window_hi = 0;
    bool experimental = false; // more than two terms
};

// Least-squares fit of h(q) ~ sum_k c_k r_k^q minimizing the relative
// residual over the valid q in [q_lo, q_hi].
AsymptoticFit fit_constants(const CountTable& table, int i, const std::vector<double>& roots,
                            std::int64_t q_lo, std::int64_t q_hi);

double approx_h(const AsymptoticFit& fit, std::int64_t q); // throws std::overflow_error
double approx_log10_h(const AsymptoticFit& fit, double q); // safe at extreme q

} // namespace treecount
