#include "treecount/count_table.hpp"

#include <stdexcept>

namespace treecount {

namespace {

// suffix[j] = sum of row[j..]; one extra slot so suffix[width] = 0
std::vector<BigInt> suffix_sums(const std::vector<BigInt>& row) {
    std::vector<BigInt> suffix(row.size() + 1);
    for (size_t j = row.size(); j-- > 0;)
        suffix[j] = row[j] + suffix[j + 1];
    return suffix;
}

// Sum of row entries with index s1 >= j0 (1-based), given its suffix array.
const BigInt& suffix_at(const std::vector<BigInt>& suffix, std::int64_t j0) {
    static const BigInt zero = 0;
    if (j0 < 1)
        j0 = 1;
    if (static_cast<size_t>(j0) > suffix.size())
        return zero;
    return suffix[static_cast<size_t>(j0 - 1)];
}

} // namespace

CountTable CountTable::nary(int n, std::int64_t max_q) {
    if (n < 2)
        throw std::invalid_argument("n must be >= 2");
    if (max_q < 1)
        throw std::invalid_argument("max_q must be >= 1");
    CountTable table;
    table.n_ = n;
    table.max_q_ = max_q;
    table.rows_.resize(static_cast<size_t>(max_q) + 1);
    table.h_.assign(static_cast<size_t>(max_q) + 1, 0);

    std::vector<std::vector<BigInt>> suffixes(static_cast<size_t>(max_q) + 1);
    for (std::int64_t q = 2; q <= max_q; ++q) {
        const std::int64_t width = q / n;
        auto& row = table.rows_[static_cast<size_t>(q)];
        row.assign(static_cast<size_t>(width), 0);
        for (std::int64_t s = 1; s <= width; ++s) {
            const std::int64_t q_prev = q - static_cast<std::int64_t>(n - 1) * s;
            BigInt value = 0;
            if (q_prev == 1) {
                // expanding the bare root: p = 1 >= s only for s = 1
                if (s == 1)
                    value = 1;
            } else if (q_prev >= 2) {
                // sum of t(p, q_prev) over p = n*s1 >= s
                value = suffix_at(suffixes[static_cast<size_t>(q_prev)], (s + n - 1) / n);
            }
            row[static_cast<size_t>(s - 1)] = std::move(value);
        }
        for (const auto& v : row)
            table.h_[static_cast<size_t>(q)] += v;
        suffixes[static_cast<size_t>(q)] = suffix_sums(row);
    }
    return table;
}

CountTable CountTable::binary_ternary(std::int64_t max_q) {
    if (max_q < 1)
        throw std::invalid_argument("max_q must be >= 1");
    CountTable table;
    table.n_ = 0;
    table.max_q_ = max_q;
    table.odd_.resize(static_cast<size_t>(max_q) + 1);
    table.even_.resize(static_cast<size_t>(max_q) + 1);
    table.e_.assign(static_cast<size_t>(max_q) + 1, 0);
    table.o_.assign(static_cast<size_t>(max_q) + 1, 0);

    std::vector<std::vector<BigInt>> odd_suffix(static_cast<size_t>(max_q) + 1);
    std::vector<std::vector<BigInt>> even_suffix(static_cast<size_t>(max_q) + 1);
    for (std::int64_t q = 2; q <= max_q; ++q) {
        // odd top: p = 2s, obtained from an even-top (q - s) tree with p >= s
        auto& odd_row = table.odd_[static_cast<size_t>(q)];
        odd_row.assign(static_cast<size_t>(q / 2), 0);
        for (std::int64_t s = 1; s <= q / 2; ++s) {
            const std::int64_t q_prev = q - s;
            BigInt value = 0;
            if (q_prev == 1) {
                if (s == 1) // the bare root is the even-top base
                    value = 1;
            } else if (q_prev >= 2) {
                value = suffix_at(even_suffix[static_cast<size_t>(q_prev)], (s + 2) / 3);
            }
            odd_row[static_cast<size_t>(s - 1)] = std::move(value);
        }
        for (const auto& v : odd_row)
            table.o_[static_cast<size_t>(q)] += v;
        odd_suffix[static_cast<size_t>(q)] = suffix_sums(odd_row);

        // even top: p = 3s, obtained from an odd-top (q - 2s) tree with p >= s
        auto& even_row = table.even_[static_cast<size_t>(q)];
        even_row.assign(static_cast<size_t>(q / 3), 0);
        for (std::int64_t s = 1; s <= q / 3; ++s) {
            const std::int64_t q_prev = q - 2 * s;
            BigInt value = 0;
            if (q_prev >= 2) // the degenerate base has an even top, so q_prev = 1 gives nothing
                value = suffix_at(odd_suffix[static_cast<size_t>(q_prev)], (s + 1) / 2);
            even_row[static_cast<size_t>(s - 1)] = std::move(value);
        }
        for (const auto& v : even_row)
            table.e_[static_cast<size_t>(q)] += v;
        even_suffix[static_cast<size_t>(q)] = suffix_sums(even_row);
    }
    return table;
}

CountTable CountTable::from_rows(int n, std::int64_t max_q,
                                 std::vector<std::vector<BigInt>> rows) {
    if (n < 2 || max_q < 1 || rows.size() != static_cast<size_t>(max_q) + 1)
        throw std::invalid_argument("bad row data");
    CountTable table;
    table.n_ = n;
    table.max_q_ = max_q;
    table.rows_ = std::move(rows);
    table.h_.assign(static_cast<size_t>(max_q) + 1, 0);
    for (std::int64_t q = 2; q <= max_q; ++q)
        for (const auto& v : table.rows_[static_cast<size_t>(q)])
            table.h_[static_cast<size_t>(q)] += v;
    return table;
}

CountTable CountTable::from_bt_rows(std::int64_t max_q, std::vector<std::vector<BigInt>> odd,
                                    std::vector<std::vector<BigInt>> even) {
    if (max_q < 1 || odd.size() != static_cast<size_t>(max_q) + 1 ||
        even.size() != static_cast<size_t>(max_q) + 1)
        throw std::invalid_argument("bad row data");
    CountTable table;
    table.n_ = 0;
    table.max_q_ = max_q;
    table.odd_ = std::move(odd);
    table.even_ = std::move(even);
    table.o_.assign(static_cast<size_t>(max_q) + 1, 0);
    table.e_.assign(static_cast<size_t>(max_q) + 1, 0);
    for (std::int64_t q = 2; q <= max_q; ++q) {
        for (const auto& v : table.odd_[static_cast<size_t>(q)])
            table.o_[static_cast<size_t>(q)] += v;
        for (const auto& v : table.even_[static_cast<size_t>(q)])
            table.e_[static_cast<size_t>(q)] += v;
    }
    return table;
}

int CountTable::n() const {
    require_nary();
    return n_;
}

BranchingSchedule CountTable::schedule() const {
    return is_binary_ternary() ? BranchingSchedule::binary_ternary()
                               : BranchingSchedule::n_ary(n_);
}

void CountTable::require_nary() const {
    if (is_binary_ternary())
        throw std::logic_error("n-ary accessor used on a binary-ternary table");
}

void CountTable::require_bt() const {
    if (!is_binary_ternary())
        throw std::logic_error("binary-ternary accessor used on an n-ary table");
}

BigInt CountTable::t(std::int64_t p, std::int64_t q) const {
    require_nary();
    if (q > max_q_)
        throw std::out_of_range("q beyond table horizon");
    if (p == 1 && q == 1)
        return 1; // degenerate tree
    if (q < 2 || p < 2 || p % n_ != 0)
        return 0;
    const auto& row = rows_[static_cast<size_t>(q)];
    const std::int64_t s = p / n_;
    if (s < 1 || static_cast<size_t>(s) > row.size())
        return 0;
    return row[static_cast<size_t>(s - 1)];
}

BigInt CountTable::h(std::int64_t q) const {
    require_nary();
    if (q > max_q_)
        throw std::out_of_range("q beyond table horizon");
    if (q < 2)
        return 0;
    return h_[static_cast<size_t>(q)];
}

BigInt CountTable::H_from_k(std::int64_t k) const {
    require_nary();
    if (k < 0)
        throw std::domain_error("k must be >= 0");
    return h(n_ + k * (n_ - 1));
}

std::vector<std::pair<std::int64_t, BigInt>> CountTable::row(std::int64_t q) const {
    require_nary();
    if (q > max_q_)
        throw std::out_of_range("q beyond table horizon");
    std::vector<std::pair<std::int64_t, BigInt>> out;
    if (q < 2)
        return out;
    const auto& row = rows_[static_cast<size_t>(q)];
    for (size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0)
            out.emplace_back(static_cast<std::int64_t>(j + 1) * n_, row[j]);
    return out;
}

BigInt CountTable::t(std::int64_t p, std::int64_t q, Parity top) const {
    require_bt();
    if (q > max_q_)
        throw std::out_of_range("q beyond table horizon");
    if (p == 1 && q == 1)
        return top == Parity::even ? 1 : 0; // degenerate tree: top level 0 is even
    if (q < 2 || p < 2)
        return 0;
    const int b = top == Parity::odd ? 2 : 3;
    if (p % b != 0)
        return 0;
    const auto& rows = top == Parity::odd ? odd_ : even_;
    const auto& row = rows[static_cast<size_t>(q)];
    const std::int64_t s = p / b;
    if (s < 1 || static_cast<size_t>(s) > row.size())
        return 0;
    return row[static_cast<size_t>(s - 1)];
}

BigInt CountTable::e(std::int64_t q) const {
    require_bt();
    if (q > max_q_)
        throw std::out_of_range("q beyond table horizon");
    if (q < 2)
        return 0;
    return e_[static_cast<size_t>(q)];
}

BigInt CountTable::o(std::int64_t q) const {
    require_bt();
    if (q > max_q_)
        throw std::out_of_range("q beyond table horizon");
    if (q < 2)
        return 0;
    return o_[static_cast<size_t>(q)];
}

std::vector<std::pair<std::int64_t, BigInt>> CountTable::row(std::int64_t q, Parity top) const {
    require_bt();
    if (q > max_q_)
        throw std::out_of_range("q beyond table horizon");
    std::vector<std::pair<std::int64_t, BigInt>> out;
    if (q < 2)
        return out;
    const auto& rows = top == Parity::odd ? odd_ : even_;
    const int b = top == Parity::odd ? 2 : 3;
    const auto& row = rows[static_cast<size_t>(q)];
    for (size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0)
            out.emplace_back(static_cast<std::int64_t>(j + 1) * b, row[j]);
    return out;
}

} // namespace treecount
