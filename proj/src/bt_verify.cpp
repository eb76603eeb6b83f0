#include "treecount/bt_verify.hpp"

#include "treecount/oracle.hpp"

#include <stdexcept>

namespace treecount {

namespace {

constexpr std::int64_t kOracleRecheckLimit = 24; // direct enumeration stays fast up to here

BigInt oracle_t(std::int64_t p, std::int64_t q, Parity top) {
    auto by_top = count_by_top_and_parity(BranchingSchedule::binary_ternary(), q);
    auto it = by_top.find(TopClass{p, top});
    return it == by_top.end() ? BigInt(0) : it->second;
}

std::string recheck_point(const CountTable& bt, std::int64_t p, std::int64_t q, Parity top) {
    if (q > kOracleRecheckLimit)
        return "failing point beyond the direct-enumeration horizon; not cross-checked";
    BigInt direct = oracle_t(p, q, top);
    if (direct == bt.t(p, q, top))
        return "table entry matches direct enumeration; the identity itself fails here";
    return "table entry disagrees with direct enumeration; counting bug in the table";
}

std::string recheck_total(const CountTable& bt, std::int64_t q) {
    if (q > kOracleRecheckLimit)
        return "failing point beyond the direct-enumeration horizon; not cross-checked";
    BigInt eo = 0, oo = 0;
    for (const auto& [top, cnt] : count_by_top_and_parity(BranchingSchedule::binary_ternary(), q))
        (top.parity == Parity::even ? eo : oo) += cnt;
    if (eo == bt.e(q) && oo == bt.o(q))
        return "per-parity totals match direct enumeration; the inequality itself fails here";
    return "per-parity totals disagree with direct enumeration; counting bug in the table";
}

void fail(VerificationReport& rep, GridPoint point, std::string diagnosis) {
    point.ok = false;
    rep.counterexample = point;
    rep.diagnosis = std::move(diagnosis);
    rep.points.push_back(std::move(point));
    rep.ok = false;
}

} // namespace

VerificationReport verify_thm_411(const CountTable& bt, std::int64_t s_max, std::int64_t q_max) {
    if (q_max > bt.max_q()) throw std::out_of_range("q_max exceeds the table horizon");
    VerificationReport rep;
    rep.claim = "4.1.1";
    rep.statement = "t_odd(2s, q) = E(q-s) - sum_{j=1..(s-1)/3} t_even(3j, q-s)";
    rep.ok = true;
    for (std::int64_t s = 1; s <= s_max; ++s) {
        for (std::int64_t q = 2; q <= q_max; ++q) {
            std::int64_t rest = q - s;
            bool sound = rest >= 2 || (s == 1 && rest >= 1);
            if (!sound) continue;
            BigInt lhs = bt.t(2 * s, q, Parity::odd);
            BigInt rhs = rest == 1 ? BigInt(1) : bt.e(rest);
            for (std::int64_t j = 1; j <= (s - 1) / 3; ++j)
                rhs -= bt.t(3 * j, rest, Parity::even);
            GridPoint point{s, q, lhs, rhs, rhs - lhs, lhs == rhs};
            if (!point.ok) {
                fail(rep, point, recheck_point(bt, 2 * s, q, Parity::odd));
                return rep;
            }
            rep.points.push_back(std::move(point));
        }
    }
    return rep;
}

VerificationReport verify_thm_412(const CountTable& bt, std::int64_t s_max, std::int64_t q_max) {
    if (q_max > bt.max_q()) throw std::out_of_range("q_max exceeds the table horizon");
    VerificationReport rep;
    rep.claim = "4.1.2";
    rep.statement = "t_even(3s, q) = o(q-2s) - sum_{j=1..(s-1)/2} t_odd(2j, q-2s)";
    rep.ok = true;
    for (std::int64_t s = 1; s <= s_max; ++s) {
        for (std::int64_t q = 2; q <= q_max; ++q) {
            std::int64_t rest = q - 2 * s;
            if (rest < 1) continue;
            BigInt lhs = bt.t(3 * s, q, Parity::even);
            BigInt rhs = bt.o(rest);
            for (std::int64_t j = 1; j <= (s - 1) / 2; ++j)
                rhs -= bt.t(2 * j, rest, Parity::odd);
            GridPoint point{s, q, lhs, rhs, rhs - lhs, lhs == rhs};
            if (!point.ok) {
                fail(rep, point, recheck_point(bt, 3 * s, q, Parity::even));
                return rep;
            }
            rep.points.push_back(std::move(point));
        }
    }
    return rep;
}

VerificationReport verify_ineq_42(const CountTable& bt, std::int64_t q_max) {
    if (q_max + 1 > bt.max_q()) throw std::out_of_range("need table horizon of q_max + 1");
    VerificationReport rep;
    rep.claim = "4.2";
    rep.statement = "o(q+1) <= o(q) + e(q)";
    rep.ok = true;
    for (std::int64_t q = 2; q <= q_max; ++q) {
        BigInt lhs = bt.o(q + 1);
        BigInt rhs = bt.o(q) + bt.e(q);
        GridPoint point{0, q, lhs, rhs, rhs - lhs, lhs <= rhs};
        if (!point.ok) {
            fail(rep, point, recheck_total(bt, q + 1));
            return rep;
        }
        rep.points.push_back(std::move(point));
    }
    return rep;
}

VerificationReport verify_ineq_43(const CountTable& bt, std::int64_t q_max) {
    if (q_max + 2 > bt.max_q()) throw std::out_of_range("need table horizon of q_max + 2");
    VerificationReport rep;
    rep.claim = "4.3";
    rep.statement = "e(q+2) <= o(q) + e(q)";
    rep.ok = true;
    for (std::int64_t q = 2; q <= q_max; ++q) {
        BigInt lhs = bt.e(q + 2);
        BigInt rhs = bt.o(q) + bt.e(q);
        GridPoint point{0, q, lhs, rhs, rhs - lhs, lhs <= rhs};
        if (!point.ok) {
            fail(rep, point, recheck_total(bt, q + 2));
            return rep;
        }
        rep.points.push_back(std::move(point));
    }
    return rep;
}

VerificationReport verify_bt_rep(const CountTable& bt, Parity parity, int i, std::int64_t q_lo,
                                 std::int64_t q_hi) {
    BtRep rep_rows = bt_rep(parity, i);
    std::int64_t first_ok = first_valid_q(rep_rows.aggregate);
    if (q_lo < first_ok)
        throw std::invalid_argument("q range starts below the first valid q (" +
                                    std::to_string(first_ok) + ") for this representation");
    if (q_hi > bt.max_q()) throw std::out_of_range("q range exceeds the table horizon");

    VerificationReport rep;
    rep.claim = parity == Parity::odd ? "rep-odd" : "rep-even";
    rep.statement = rep_rows.aggregate.subject + " rows 1.." + std::to_string(i) +
                    " vs truncated t-sum; margin is the omitted tail";
    rep.ok = true;
    int factor = parity == Parity::odd ? 2 : 3;
    for (std::int64_t q = q_lo; q <= q_hi; ++q) {
        BigInt from_rep = 0;
        for (const auto& term : rep_rows.aggregate.terms) {
            BigInt base = term.tag == TermTag::even ? bt.e(q - term.lag) : bt.o(q - term.lag);
            from_rep += term.coeff * base;
        }
        BigInt truncated = 0;
        for (int s = 1; s <= i; ++s)
            truncated += bt.t(static_cast<std::int64_t>(factor) * s, q, parity);
        BigInt total = parity == Parity::odd ? bt.o(q) : bt.e(q);
        GridPoint point{0, q, from_rep, truncated, total - truncated,
                        from_rep == truncated && truncated <= total};
        if (!point.ok) {
            fail(rep, point, "aggregate representation mismatch; re-derive the rows");
            return rep;
        }
        rep.points.push_back(std::move(point));
    }
    return rep;
}

} // namespace treecount
