#pragma once

#include "treecount/schedule.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace treecount {

enum class TermTag { plain, even, odd }; // plain: an h(q-lag) term; even/odd: e/o(q-lag)

struct SignedTerm {
    int lag;            // >= 1 always (substitution strictly increases lag)
    std::int64_t coeff; // nonzero
    TermTag tag;

    bool operator==(const SignedTerm&) const = default;
};

// A t-count expressed as a signed sum of lagged series terms, e.g.
// t(14,q) = h(q-7)-h(q-8)-h(q-9)-h(q-10)+h(q-11), or for binary-ternary rows
// t(8,q_o) = (q-4)_e-(q-6)_o. Terms are sorted by (lag, tag) and the (lag,
// tag) pairs are strictly increasing.
struct SignedRep {
    std::string subject;
    std::vector<SignedTerm> terms;

    int max_lag() const;
    std::string to_string() const;

    bool operator==(const SignedRep&) const = default;
};

// First q at which the row identity is numerically guaranteed: below this the
// recursive subtraction can reach the excluded degenerate count.
inline int first_valid_q(const SignedRep& rep) { return rep.max_lag() + 2; }

// Row for t_n(ns, q) as pure h-lags, by recursive substitution of
// t_n(ns,q) = h(q-s(n-1)) - sum_{j<=((s-1)/n)} t_n(nj, q-s(n-1)).
SignedRep rep_row(int n, int s);

enum class BoundKind { lower, upper };

inline const char* to_string(BoundKind k) { return k == BoundKind::lower ? "lower" : "upper"; }

// Column sums of the first i rows: recurrence coefficients bounding h_n(q).
// Dense by lag; zeros are kept (lag d has coefficient coeffs[d-1]).
struct CoefficientList {
    int n = 0;
    int i = 0;
    BoundKind kind = BoundKind::lower;
    std::vector<std::int64_t> coeffs;

    int max_lag() const { return static_cast<int>(coeffs.size()); }
};

CoefficientList lower_coeffs(int n, int i); // requires (n-1) | i
CoefficientList upper_coeffs(int n, int i); // lower with +1 at lag i+(n-1)

// Binary-ternary rows over e/o lags, by joint substitution of the odd- and
// even-top recurrences. parity names the expanded side: odd rows express
// t(2s, q_o), even rows t(3s, q_e).
SignedRep bt_row(Parity parity, int s);

struct BtRep {
    Parity parity = Parity::odd;
    int i = 0;
    std::vector<SignedRep> rows; // s = 1..i
    SignedRep aggregate;         // merged sum of the rows
};

BtRep bt_rep(Parity parity, int i);

} // namespace treecount
