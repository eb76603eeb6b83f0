#pragma once

#include "treecount/numeric.hpp"
#include "treecount/schedule.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace treecount {

// Exact class counts t(p, q) computed by the forward expansion recurrence:
// a tree with q' leaves and p' = n*s on top arises uniquely from a tree with
// q = q' - (n-1)s leaves and p >= s on top by expanding s top leaves. The
// degenerate single-vertex tree (p=1, q=1) seeds the tables; user-facing
// totals never report q <= 1.
//
// Immutable after construction; concurrent reads are safe.
class CountTable {
public:
    static CountTable nary(int n, std::int64_t max_q);
    static CountTable binary_ternary(std::int64_t max_q);

    bool is_binary_ternary() const { return n_ == 0; }
    int n() const; // constant-schedule branching factor
    std::int64_t max_q() const { return max_q_; }
    BranchingSchedule schedule() const;

    // n-ary accessors
    BigInt t(std::int64_t p, std::int64_t q) const; // 0 for impossible (p,q)
    BigInt h(std::int64_t q) const;                 // sum over p; 0 for q <= 1
    BigInt H_from_k(std::int64_t k) const;          // h(n + k(n-1))
    std::vector<std::pair<std::int64_t, BigInt>> row(std::int64_t q) const; // (p, count), p up

    // binary-ternary accessors
    BigInt t(std::int64_t p, std::int64_t q, Parity top) const;
    BigInt e(std::int64_t q) const; // even top level, degenerate excluded
    BigInt o(std::int64_t q) const;
    std::vector<std::pair<std::int64_t, BigInt>> row(std::int64_t q, Parity top) const;

    // Rebuild from stored rows (cache deserialization); totals are recomputed.
    static CountTable from_rows(int n, std::int64_t max_q,
                                std::vector<std::vector<BigInt>> rows);
    static CountTable from_bt_rows(std::int64_t max_q, std::vector<std::vector<BigInt>> odd,
                                   std::vector<std::vector<BigInt>> even);

private:
    CountTable() = default;
    void require_nary() const;
    void require_bt() const;

    int n_ = 0; // 0 marks the binary-ternary table
    std::int64_t max_q_ = 0;
    // n-ary: rows_[q][s-1] = t(n*s, q). binary-ternary: odd_[q][s-1] = t(2s, q)
    // with odd top, even_[q][s-1] = t(3s, q) with even top.
    std::vector<std::vector<BigInt>> rows_, odd_, even_;
    std::vector<BigInt> h_, e_, o_; // per-q totals
};

} // namespace treecount
