#include "treecount/signed_rep.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace treecount {

namespace {

using TermMap = std::map<std::pair<int, TermTag>, std::int64_t>; // (lag, tag) -> coeff

std::vector<SignedTerm> to_terms(const TermMap& map, const char* context) {
    std::vector<SignedTerm> terms;
    terms.reserve(map.size());
    for (const auto& [key, coeff] : map) {
        if (coeff == 0)
            continue;
        if (key.first < 1)
            throw std::logic_error(std::string(context) + ": non-positive lag generated");
        terms.push_back(SignedTerm{key.first, coeff, key.second});
    }
    return terms;
}

// Rows 1..s_max for the constant schedule, rows[s] keyed by lag only.
std::vector<TermMap> nary_rows(int n, int s_max) {
    std::vector<TermMap> rows(static_cast<size_t>(s_max) + 1);
    for (int s = 1; s <= s_max; ++s) {
        TermMap& row = rows[static_cast<size_t>(s)];
        const int shift = s * (n - 1);
        row[{shift, TermTag::plain}] = 1;
        for (int j = 1; j <= (s - 1) / n; ++j)
            for (const auto& [key, coeff] : rows[static_cast<size_t>(j)])
                row[{key.first + shift, key.second}] -= coeff;
    }
    return rows;
}

struct BtRows {
    std::vector<TermMap> odd, even; // index s
};

BtRows bt_rows(int s_max) {
    BtRows rows;
    rows.odd.resize(static_cast<size_t>(s_max) + 1);
    rows.even.resize(static_cast<size_t>(s_max) + 1);
    for (int s = 1; s <= s_max; ++s) {
        TermMap& odd = rows.odd[static_cast<size_t>(s)];
        odd[{s, TermTag::even}] = 1;
        for (int j = 1; j <= (s - 1) / 3; ++j)
            for (const auto& [key, coeff] : rows.even[static_cast<size_t>(j)])
                odd[{key.first + s, key.second}] -= coeff;

        TermMap& even = rows.even[static_cast<size_t>(s)];
        even[{2 * s, TermTag::odd}] = 1;
        for (int m = 1; m <= (s - 1) / 2; ++m)
            for (const auto& [key, coeff] : rows.odd[static_cast<size_t>(m)])
                even[{key.first + 2 * s, key.second}] -= coeff;
    }
    return rows;
}

void require_positive_s(int s) {
    if (s < 1)
        throw std::invalid_argument("s must be >= 1");
}

} // namespace

int SignedRep::max_lag() const {
    int m = 0;
    for (const auto& term : terms)
        m = std::max(m, term.lag);
    return m;
}

std::string SignedRep::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& term : terms) {
        if (term.coeff < 0)
            os << '-';
        else if (!first)
            os << '+';
        first = false;
        const auto mag = term.coeff < 0 ? -term.coeff : term.coeff;
        if (mag != 1)
            os << mag;
        switch (term.tag) {
        case TermTag::plain:
            os << "h(q-" << term.lag << ")";
            break;
        case TermTag::even:
            os << "(q-" << term.lag << ")_e";
            break;
        case TermTag::odd:
            os << "(q-" << term.lag << ")_o";
            break;
        }
    }
    return os.str();
}

SignedRep rep_row(int n, int s) {
    if (n < 2)
        throw std::invalid_argument("n must be >= 2");
    require_positive_s(s);
    auto rows = nary_rows(n, s);
    std::ostringstream subject;
    subject << "t_" << n << "(" << static_cast<std::int64_t>(n) * s << ",q)";
    return SignedRep{subject.str(), to_terms(rows[static_cast<size_t>(s)], "rep_row")};
}

CoefficientList lower_coeffs(int n, int i) {
    if (n < 2)
        throw std::invalid_argument("n must be >= 2");
    if (i < 1)
        throw std::invalid_argument("i must be >= 1");
    if (i % (n - 1) != 0)
        throw std::domain_error("truncation depth i must be a multiple of n-1 so that the lagged "
                                "q values keep q = 1 (mod n-1)");
    auto rows = nary_rows(n, i);
    std::map<int, std::int64_t> column;
    int max_lag = 0;
    for (int s = 1; s <= i; ++s)
        for (const auto& [key, coeff] : rows[static_cast<size_t>(s)]) {
            column[key.first] += coeff;
            max_lag = std::max(max_lag, key.first);
        }
    CoefficientList list;
    list.n = n;
    list.i = i;
    list.kind = BoundKind::lower;
    list.coeffs.assign(static_cast<size_t>(max_lag), 0);
    for (const auto& [lag, coeff] : column)
        list.coeffs[static_cast<size_t>(lag - 1)] = coeff;
    while (!list.coeffs.empty() && list.coeffs.back() == 0)
        list.coeffs.pop_back();
    return list;
}

CoefficientList upper_coeffs(int n, int i) {
    CoefficientList list = lower_coeffs(n, i);
    list.kind = BoundKind::upper;
    const int bump = i + (n - 1);
    if (list.max_lag() < bump)
        list.coeffs.resize(static_cast<size_t>(bump), 0);
    list.coeffs[static_cast<size_t>(bump - 1)] += 1;
    return list;
}

SignedRep bt_row(Parity parity, int s) {
    require_positive_s(s);
    auto rows = bt_rows(s);
    const TermMap& row =
        parity == Parity::odd ? rows.odd[static_cast<size_t>(s)] : rows.even[static_cast<size_t>(s)];
    std::ostringstream subject;
    if (parity == Parity::odd)
        subject << "t_2,3(" << 2 * s << ",q_o)";
    else
        subject << "t_2,3(" << 3 * s << ",q_e)";
    return SignedRep{subject.str(), to_terms(row, "bt_row")};
}

BtRep bt_rep(Parity parity, int i) {
    if (i < 1)
        throw std::invalid_argument("i must be >= 1");
    auto rows = bt_rows(i);
    BtRep rep;
    rep.parity = parity;
    rep.i = i;
    TermMap total;
    for (int s = 1; s <= i; ++s) {
        const TermMap& row =
            parity == Parity::odd ? rows.odd[static_cast<size_t>(s)] : rows.even[static_cast<size_t>(s)];
        std::ostringstream subject;
        if (parity == Parity::odd)
            subject << "t_2,3(" << 2 * s << ",q_o)";
        else
            subject << "t_2,3(" << 3 * s << ",q_e)";
        rep.rows.push_back(SignedRep{subject.str(), to_terms(row, "bt_rep")});
        for (const auto& [key, coeff] : row)
            total[key] += coeff;
    }
    rep.aggregate =
        SignedRep{parity == Parity::odd ? "q_o" : "q_e", to_terms(total, "bt_rep aggregate")};
    return rep;
}

} // namespace treecount
