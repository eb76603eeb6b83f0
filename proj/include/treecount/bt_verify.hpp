#pragma once

#include "treecount/count_table.hpp"
#include "treecount/signed_rep.hpp"

#include <optional>
#include <string>
#include <vector>

namespace treecount {

struct GridPoint {
    std::int64_t s = 0; // 0 for claims indexed by q alone
    std::int64_t q = 0;
    BigInt lhs, rhs;
    BigInt margin; // rhs - lhs; 0 for equality claims when they hold
    bool ok = false;
};

struct VerificationReport {
    std::string claim;     // short id, e.g. "4.1.1"
    std::string statement; // the checked formula in plain text
    std::vector<GridPoint> points;
    bool ok = false;
    std::optional<GridPoint> counterexample;
    // On failure: outcome of re-checking the failing point against direct
    // enumeration, to separate a counting bug from a wrong identity.
    std::string diagnosis;
};

// t_odd(2s, q) = E(q-s) - sum_{j=1..floor((s-1)/3)} t_even(3j, q-s), where
// E(1) = 1 (the single-vertex tree) and E(x) = e(x) otherwise. Checked on
// s <= s_max, q <= q_max at the points where the expansion argument is
// sound: q-s >= 2, or s = 1 with q-s >= 1.
VerificationReport verify_thm_411(const CountTable& bt, std::int64_t s_max, std::int64_t q_max);

// t_even(3s, q) = o(q-2s) - sum_{j=1..floor((s-1)/2)} t_odd(2j, q-2s),
// checked where q-2s >= 1.
VerificationReport verify_thm_412(const CountTable& bt, std::int64_t s_max, std::int64_t q_max);

// o(q+1) <= o(q) + e(q) for 2 <= q <= q_max.
VerificationReport verify_ineq_42(const CountTable& bt, std::int64_t q_max);

// e(q+2) <= o(q) + e(q) for 2 <= q <= q_max.
VerificationReport verify_ineq_43(const CountTable& bt, std::int64_t q_max);

// Evaluates the aggregate signed representation of the first i rows against
// exact e/o values: it must equal sum_{s=1..i} t(ns, q) exactly, and that
// truncated sum is at most the full per-parity total. margin records the
// omitted tail. q_lo must be at least max_lag + 2 of the aggregate.
VerificationReport verify_bt_rep(const CountTable& bt, Parity parity, int i, std::int64_t q_lo,
                                 std::int64_t q_hi);

} // namespace treecount
