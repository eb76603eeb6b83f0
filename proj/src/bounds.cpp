#include "treecount/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace treecount {

namespace {

BigInt exact_h(const CountTable& table, std::int64_t q) {
    if (q <= 1) return 0; // nothing below the smallest proper tree
    return table.h(q);
}

} // namespace

void BoundSpec::check() const {
    bool any = false;
    for (auto c : coeffs.coeffs)
        if (c != 0) any = true;
    if (!any) throw std::invalid_argument("bound recurrence has no nonzero coefficients");
    std::int64_t lag = coeffs.max_lag();
    for (std::int64_t q = first_q - lag; q < first_q; ++q)
        if (!seed.count(q)) throw std::invalid_argument("seed window is missing q=" + std::to_string(q));
}

BoundSpec BoundSpec::from_table(const CountTable& table, int i, BoundKind kind) {
    CoefficientList cl = kind == BoundKind::lower ? lower_coeffs(table.n(), i)
                                                  : upper_coeffs(table.n(), i);
    BoundSpec spec;
    spec.coeffs = cl;
    std::int64_t lag = cl.max_lag();
    spec.first_q = lag + 2;
    for (std::int64_t q = 2; q <= lag + 1; ++q)
        spec.seed[q] = exact_h(table, q);
    spec.check();
    return spec;
}

BoundSpec BoundSpec::reseeded(const CountTable& table, int i, BoundKind kind, std::int64_t q) {
    CoefficientList cl = kind == BoundKind::lower ? lower_coeffs(table.n(), i)
                                                  : upper_coeffs(table.n(), i);
    BoundSpec spec;
    spec.coeffs = cl;
    spec.first_q = q;
    std::int64_t lag = cl.max_lag();
    for (std::int64_t j = q - lag; j < q; ++j)
        spec.seed[j] = exact_h(table, j);
    spec.check();
    return spec;
}

std::map<std::int64_t, BigInt> bound_sequence(const BoundSpec& spec, std::int64_t q_max) {
    spec.check();
    std::map<std::int64_t, BigInt> values = spec.seed;
    std::int64_t lag = spec.coeffs.max_lag();
    for (std::int64_t q = spec.first_q; q <= q_max; ++q) {
        BigInt v = 0;
        for (std::int64_t d = 1; d <= lag; ++d) {
            std::int64_t c = spec.coeffs.coeffs[static_cast<std::size_t>(d - 1)];
            if (c == 0) continue;
            auto it = values.find(q - d);
            BigInt prev = it == values.end() ? BigInt(0) : it->second;
            v += c * prev;
        }
        values[q] = v;
    }
    return values;
}

SandwichReport verify_sandwich(const CountTable& table, int i, std::int64_t q_max) {
    SandwichReport rep;
    rep.n = table.n();
    rep.i = i;
    rep.q_max = q_max;

    BoundSpec lo = BoundSpec::from_table(table, i, BoundKind::lower);
    BoundSpec hi = BoundSpec::from_table(table, i, BoundKind::upper);
    rep.first_q = std::max(lo.first_q, hi.first_q);

    auto lower = bound_sequence(lo, q_max);
    auto upper = bound_sequence(hi, q_max);

    int n = table.n();
    for (std::int64_t q = rep.first_q; q <= q_max; ++q) {
        if ((q - 1) % (n - 1) != 0) continue; // off-lattice q carry no trees
        BigInt h = table.h(q);
        const BigInt& lv = lower.at(q);
        const BigInt& uv = upper.at(q);
        ++rep.points;
        if (!(lv <= h && h <= uv)) {
            rep.failure = "sandwich violated";
            rep.bad_q = q;
            rep.bad_lower = lv;
            rep.bad_upper = uv;
            rep.bad_exact = h;
            return rep;
        }
        // One-step gap identity under exact re-seeding: the two predictions
        // differ by exactly the count i + (n-1) lags back.
        BoundSpec rlo = BoundSpec::reseeded(table, i, BoundKind::lower, q);
        BoundSpec rhi = BoundSpec::reseeded(table, i, BoundKind::upper, q);
        BigInt step_lo = bound_sequence(rlo, q).at(q);
        BigInt step_hi = bound_sequence(rhi, q).at(q);
        BigInt gap = step_hi - step_lo;
        BigInt want = exact_h(table, q - i - (n - 1));
        if (gap != want) {
            rep.failure = "gap identity violated";
            rep.bad_q = q;
            rep.bad_lower = step_lo;
            rep.bad_upper = step_hi;
            rep.bad_exact = want;
            return rep;
        }
    }
    rep.ok = true;
    return rep;
}

namespace {

// f(x) = 1 - sum_d c_d x^(-d), evaluated by Horner in y = 1/x. Roots of f on
// x > 1 are the characteristic roots of the recurrence.
long double eval_f(const std::vector<std::int64_t>& c, long double x) {
    long double y = 1.0L / x;
    long double acc = 0.0L;
    for (std::size_t d = c.size(); d-- > 0;)
        acc = acc * y + static_cast<long double>(c[d]);
    return 1.0L - acc * y;
}

long double bisect(const std::vector<std::int64_t>& c, long double a, long double b,
                   double tol) {
    long double fa = eval_f(c, a);
    for (int iter = 0; iter < 200 && b - a > tol; ++iter) {
        long double mid = 0.5L * (a + b);
        long double fm = eval_f(c, mid);
        if ((fa < 0) == (fm < 0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5L * (a + b);
}

// Rightmost sign change of f on (left, right]; returns false if none.
bool rightmost_bracket(const std::vector<std::int64_t>& c, long double left, long double right,
                       int points, long double& lo, long double& hi) {
    long double prev_x = right;
    long double prev_f = eval_f(c, right);
    bool found = false;
    for (int k = 1; k <= points; ++k) {
        long double x = right - (right - left) * k / points;
        long double f = eval_f(c, x);
        if ((f < 0) != (prev_f < 0)) {
            lo = x;
            hi = prev_x;
            found = true;
            break;
        }
        prev_x = x;
        prev_f = f;
    }
    return found;
}

} // namespace

std::vector<double> characteristic_roots(const CoefficientList& coeffs, int count,
                                         double bracket_tol) {
    if (count < 1) throw std::invalid_argument("need at least one root");
    const auto& c = coeffs.coeffs;
    std::int64_t m = coeffs.max_lag();
    if (m < 1) throw std::invalid_argument("empty coefficient list");

    // Monic polynomial p(x) = x^m - sum c_d x^(m-d); p[k] is the coefficient
    // of x^k. Kept exact in long double (all entries are small integers).
    std::vector<long double> poly(static_cast<std::size_t>(m) + 1, 0.0L);
    poly[static_cast<std::size_t>(m)] = 1.0L;
    for (std::int64_t d = 1; d <= m; ++d)
        poly[static_cast<std::size_t>(m - d)] = -static_cast<long double>(c[static_cast<std::size_t>(d - 1)]);

    std::vector<double> roots;
    long double left_wall = 1.0L + 1e-9L;
    long double right_wall = static_cast<long double>(coeffs.n);

    // Dominant root: rightmost sign change of f. The scan runs right-to-left
    // because small spurious wiggles of f appear near x = 1 for deep
    // truncations and must not shadow the true dominant root.
    long double lo, hi;
    if (!rightmost_bracket(c, left_wall, right_wall, 8192, lo, hi))
        throw NumericalError("no real characteristic root in (1, n]");
    long double r = bisect(c, lo, hi, bracket_tol);
    if (std::abs(static_cast<double>(eval_f(c, r))) > 1e-10)
        throw NumericalError("dominant root failed the residual check");
    roots.push_back(static_cast<double>(r));

    std::vector<long double> work = poly;
    while (static_cast<int>(roots.size()) < count) {
        long double known = static_cast<long double>(roots.back());
        // Backward synthetic division by (x - known): solve from the constant
        // term upward. Stable when |known| > 1, unlike the forward direction.
        // Matching x^k in p(x) = (x - r) q(x) gives p[k] = q[k-1] - r q[k],
        // so q[k] = (q[k-1] - p[k]) / r starting from the constant term.
        std::size_t deg = work.size() - 1;
        if (deg == 0)
            throw NumericalError("polynomial fully deflated; no further roots to extract");
        std::vector<long double> quot(deg, 0.0L);
        quot[0] = -work[0] / known;
        for (std::size_t k = 1; k < deg; ++k)
            quot[k] = (quot[k - 1] - work[k]) / known;

        // Rightmost sign change of the quotient inside (1, previous root).
        long double qlo = 0, qhi = 0;
        long double ceiling = known - 1e-9L;
        if (ceiling <= left_wall)
            throw NumericalError("next real root collapsed onto the previous one");
        long double prev_x = ceiling;
        auto eval_poly = [](const std::vector<long double>& p, long double x) {
            long double acc = 0.0L;
            for (std::size_t k = p.size(); k-- > 0;)
                acc = acc * x + p[k];
            return acc;
        };
        long double prev_f = eval_poly(quot, ceiling);
        bool found = false;
        const int points = 8192;
        for (int k = 1; k <= points; ++k) {
            long double x = ceiling - (ceiling - left_wall) * k / points;
            long double f = eval_poly(quot, x);
            if ((f < 0) != (prev_f < 0)) {
                qlo = x;
                qhi = prev_x;
                found = true;
                break;
            }
            prev_x = x;
            prev_f = f;
        }
        if (!found)
            throw NumericalError(
                "no further real root below " + std::to_string(static_cast<double>(known)) +
                "; the remaining spectrum is likely a complex pair");
        long double fa = eval_poly(quot, qlo);
        long double a = qlo, b = qhi;
        for (int iter = 0; iter < 200 && b - a > bracket_tol; ++iter) {
            long double mid = 0.5L * (a + b);
            long double fm = eval_poly(quot, mid);
            if ((fa < 0) == (fm < 0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        long double est = 0.5L * (a + b);

        // Deflation drags in rounding error, so re-polish against the
        // original f: scan a window around the estimate and bisect the sign
        // change closest to it.
        long double wlo = std::max(left_wall, est - 0.05L);
        long double whi = std::min(ceiling, est + 0.05L);
        long double best_lo = 0, best_hi = 0, best_dist = 1e30L;
        const int wpoints = 4096;
        long double px = wlo;
        long double pf = eval_f(c, wlo);
        for (int k = 1; k <= wpoints; ++k) {
            long double x = wlo + (whi - wlo) * k / wpoints;
            long double f = eval_f(c, x);
            if ((f < 0) != (pf < 0)) {
                long double center = 0.5L * (px + x);
                long double dist = std::abs(center - est);
                if (dist < best_dist) {
                    best_dist = dist;
                    best_lo = px;
                    best_hi = x;
                }
            }
            px = x;
            pf = f;
        }
        if (best_dist > 1e29L)
            throw NumericalError("deflated root estimate did not survive re-polishing; "
                                 "the remaining spectrum is likely a complex pair");
        long double polished = bisect(c, best_lo, best_hi, bracket_tol);
        if (std::abs(static_cast<double>(eval_f(c, polished))) > 1e-10)
            throw NumericalError("root failed the residual check after polishing");
        roots.push_back(static_cast<double>(polished));
        work = quot;
    }
    return roots;
}

namespace {

// Gaussian elimination with partial pivoting on a k x (k+1) augmented matrix.
std::vector<long double> solve_linear(std::vector<std::vector<long double>> m) {
    std::size_t k = m.size();
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (m[piv][col] == 0.0L) throw NumericalError("singular normal equations in the fit");
        std::swap(m[col], m[piv]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            long double f = m[r][col] / m[col][col];
            for (std::size_t cc = col; cc <= k; ++cc)
                m[r][cc] -= f * m[col][cc];
        }
    }
    std::vector<long double> x(k);
    for (std::size_t r = 0; r < k; ++r)
        x[r] = m[r][k] / m[r][r];
    return x;
}

} // namespace

AsymptoticFit fit_constants(const CountTable& table, int i, const std::vector<double>& roots,
                            std::int64_t q_lo, std::int64_t q_hi) {
    if (roots.empty()) throw std::invalid_argument("fit needs at least one root");
    if (q_lo >= q_hi) throw std::invalid_argument("fit window is empty");
    int n = table.n();
    std::size_t k = roots.size();

    // Rows: sum_j c_j (r_j^q / h(q)) = 1 for each valid q in the window.
    // Dividing by h(q) makes the least squares relative, so late (huge) rows
    // do not drown out early ones.
    std::vector<std::vector<long double>> rows;
    for (std::int64_t q = q_lo; q <= q_hi; ++q) {
        if ((q - 1) % (n - 1) != 0) continue;
        BigInt h = table.h(q);
        if (h == 0) continue;
        long double hval = static_cast<long double>(h.convert_to<double>());
        // convert_to<double> saturates around 1e308; log-domain fallback
        long double log_h = 0.0L;
        bool use_log = !std::isfinite(static_cast<double>(hval));
        if (use_log) {
            std::string s = h.str();
            log_h = static_cast<long double>(s.size() - 1);
            long double mant = 0.0L;
            for (std::size_t d = 0; d < std::min<std::size_t>(s.size(), 18); ++d)
                mant = mant * 10.0L + (s[d] - '0');
            mant /= std::pow(10.0L, static_cast<long double>(std::min<std::size_t>(s.size(), 18) - 1));
            log_h += std::log10(mant);
        }
        std::vector<long double> row(k);
        for (std::size_t j = 0; j < k; ++j) {
            long double lr = std::log(static_cast<long double>(roots[j])) * q;
            if (use_log)
                row[j] = std::exp(lr - log_h * std::log(10.0L));
            else
                row[j] = std::exp(lr) / hval;
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() < k) throw std::invalid_argument("fit window has fewer valid q than roots");

    std::vector<std::vector<long double>> normal(k, std::vector<long double>(k + 1, 0.0L));
    for (const auto& row : rows)
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < k; ++b)
                normal[a][b] += row[a] * row[b];
            normal[a][k] += row[a]; // target is the all-ones vector
        }
    auto sol = solve_linear(std::move(normal));

    AsymptoticFit fit;
    fit.n = n;
    fit.i = i;
    fit.roots = roots;
    fit.constants.reserve(k);
    for (auto v : sol) fit.constants.push_back(static_cast<double>(v));
    fit.window_lo = q_lo;
    fit.window_hi = q_hi;
    fit.experimental = k > 2;

    long double worst = 0.0L;
    for (const auto& row : rows) {
        long double s = 0.0L;
        for (std::size_t j = 0; j < k; ++j)
            s += sol[j] * row[j];
        worst = std::max(worst, std::abs(s - 1.0L));
    }
    fit.residual = static_cast<double>(worst);
    return fit;
}

double approx_h(const AsymptoticFit& fit, std::int64_t q) {
    long double s = 0.0L;
    for (std::size_t j = 0; j < fit.roots.size(); ++j)
        s += static_cast<long double>(fit.constants[j]) *
             std::pow(static_cast<long double>(fit.roots[j]), static_cast<long double>(q));
    double out = static_cast<double>(s);
    if (!std::isfinite(out))
        throw std::overflow_error("approximated count overflows double at q=" + std::to_string(q));
    return out;
}

double approx_log10_h(const AsymptoticFit& fit, double q) {
    // Factor out the dominant term so the sum of ratios stays finite.
    std::size_t k = fit.roots.size();
    if (k == 0) throw std::invalid_argument("empty fit");
    std::size_t dom = 0;
    long double best = -1e30L;
    for (std::size_t j = 0; j < k; ++j) {
        long double mag = std::log10(static_cast<long double>(fit.roots[j])) * q;
        if (std::abs(fit.constants[j]) > 0 && mag > best) {
            best = mag;
            dom = j;
        }
    }
    long double log_dom = std::log10(std::abs(static_cast<long double>(fit.constants[dom]))) +
                          std::log10(static_cast<long double>(fit.roots[dom])) * q;
    long double ratio_sum = 0.0L;
    for (std::size_t j = 0; j < k; ++j) {
        long double rel = std::log10(std::abs(static_cast<long double>(fit.constants[j])) /
                                     std::abs(static_cast<long double>(fit.constants[dom]))) +
                          (std::log10(static_cast<long double>(fit.roots[j])) -
                           std::log10(static_cast<long double>(fit.roots[dom]))) * q;
        long double sign = (fit.constants[j] < 0) == (fit.constants[dom] < 0) ? 1.0L : -1.0L;
        ratio_sum += sign * std::pow(10.0L, rel);
    }
    if (ratio_sum <= 0)
        throw NumericalError("approximation is nonpositive at q=" + std::to_string(q));
    return static_cast<double>(log_dom + std::log10(ratio_sum));
}

} // namespace treecount
