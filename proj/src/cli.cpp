#include "treecount/cli.hpp"

#include "treecount/bounds.hpp"
#include "treecount/bt_verify.hpp"
#include "treecount/cache.hpp"
#include "treecount/count_table.hpp"
#include "treecount/oracle.hpp"
#include "treecount/signed_rep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <ostream>
#include <regex>

namespace treecount {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kSchemaVersion = 1;
constexpr const char* kFloatFormat = "%.17g";

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, kFloatFormat, v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    q += '"';
    return q;
}

void emit_json(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

json schedule_json(const BranchingSchedule& schedule) {
    return json(schedule.factors());
}

// ---------------------------------------------------------------- oracle --

struct OracleArgs {
    std::string schedule;
    std::int64_t q = 0;
    bool list = false;
    bool by_top = false;
    int threads = 1;
    std::string format = "json";
};

int run_oracle(const OracleArgs& a, std::ostream& out, std::ostream& err) {
    BranchingSchedule schedule = parse_schedule(a.schedule);
    OracleOptions opt;
    opt.keep_profiles = a.list;
    opt.threads = a.threads;
    OracleResult result = enumerate_profiles(schedule, a.q, opt);

    if (a.format == "json") {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["schedule"] = schedule_json(schedule);
        doc["q"] = a.q;
        doc["count"] = result.count.str();
        if (a.by_top) {
            json rows = json::array();
            for (const auto& [top, cnt] : result.by_top)
                rows.push_back({{"p", top.p}, {"parity", to_string(top.parity)}, {"count", cnt.str()}});
            doc["by_top"] = rows;
        }
        if (a.list) {
            json rows = json::array();
            for (const auto& profile : result.profiles)
                rows.push_back(json(profile.internal()));
            doc["profiles"] = rows;
        }
        emit_json(out, doc);
        return 0;
    }
    if (a.format == "table") {
        out << "schedule " << schedule.label() << ", q = " << a.q << "\n";
        out << "count = " << result.count.str() << "\n";
        if (a.by_top)
            for (const auto& [top, cnt] : result.by_top)
                out << "  p = " << top.p << " (" << to_string(top.parity) << "): " << cnt.str()
                    << "\n";
        if (a.list)
            for (const auto& profile : result.profiles) {
                out << "  [";
                const auto& internal = profile.internal();
                for (std::size_t j = 0; j < internal.size(); ++j)
                    out << (j ? "," : "") << internal[j];
                out << "]\n";
            }
        return 0;
    }
    // csv
    if (a.list) {
        err << "error: profile listings have no csv form; use json or table\n";
        return 2;
    }
    if (a.by_top) {
        out << "p,parity,count\n";
        for (const auto& [top, cnt] : result.by_top)
            out << top.p << "," << to_string(top.parity) << "," << cnt.str() << "\n";
    } else {
        out << "count\n" << result.count.str() << "\n";
    }
    return 0;
}

// ----------------------------------------------------------------- exact --

struct ExactArgs {
    int n = 0;
    std::string schedule;
    std::int64_t q = 0;
    bool by_parity = false;
    bool no_cache = false;
    std::string cache_dir;
    std::string format = "json";
};

CountTable load_or_build(const BranchingSchedule& schedule, std::int64_t q, bool no_cache,
                         const std::string& cache_dir) {
    auto build = [&] {
        return schedule.uniform() ? CountTable::nary(schedule.factor(0), q)
                                  : CountTable::binary_ternary(q);
    };
    if (no_cache) return build();
    fs::path file = resolve_cache_dir(cache_dir) / cache_file_name(schedule, q);
    if (auto cached = load_table(file); cached && cached->max_q() == q) return std::move(*cached);
    CountTable table = build();
    save_table(table, file); // best effort; an unwritable cache dir is not an error
    return table;
}

int run_exact(const ExactArgs& a, std::ostream& out, std::ostream& err) {
    BranchingSchedule schedule =
        a.n > 0 ? BranchingSchedule::n_ary(a.n) : parse_schedule(a.schedule);
    bool bt = !schedule.uniform();
    if (bt && !(schedule == BranchingSchedule::binary_ternary())) {
        err << "error: exact tables cover uniform schedules and 2,3\n";
        return 2;
    }
    if (a.by_parity && !bt) {
        err << "error: --by-parity applies to the 2,3 schedule only\n";
        return 2;
    }
    CountTable table = load_or_build(schedule, a.q, a.no_cache, a.cache_dir);

    if (!bt) {
        BigInt h = table.h(a.q);
        if (a.format == "json") {
            json doc;
            doc["schema_version"] = kSchemaVersion;
            doc["n"] = schedule.factor(0);
            doc["q"] = a.q;
            doc["h"] = h.str();
            emit_json(out, doc);
        } else if (a.format == "table") {
            out << "h_" << schedule.factor(0) << "(" << a.q << ") = " << h.str() << "\n";
        } else {
            out << "q,h\n" << a.q << "," << h.str() << "\n";
        }
        return 0;
    }

    BigInt e = table.e(a.q), o = table.o(a.q);
    BigInt total = e + o;
    if (a.format == "json") {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["schedule"] = schedule_json(schedule);
        doc["q"] = a.q;
        doc["total"] = total.str();
        if (a.by_parity) {
            doc["e"] = e.str();
            doc["o"] = o.str();
        }
        emit_json(out, doc);
    } else if (a.format == "table") {
        out << "schedule 2,3, q = " << a.q << "\n";
        if (a.by_parity) {
            out << "e(" << a.q << ") = " << e.str() << "\n";
            out << "o(" << a.q << ") = " << o.str() << "\n";
        }
        out << "total = " << total.str() << "\n";
    } else {
        if (a.by_parity)
            out << "q,e,o,total\n"
                << a.q << "," << e.str() << "," << o.str() << "," << total.str() << "\n";
        else
            out << "q,total\n" << a.q << "," << total.str() << "\n";
    }
    return 0;
}

// ------------------------------------------------------------------- rep --

struct RepArgs {
    int n = 0;
    std::string bt; // "odd" or "even"
    int rows = 0;
    std::string format = "json";
};

json term_json(const SignedTerm& term) {
    json t;
    t["lag"] = term.lag;
    t["coeff"] = term.coeff;
    if (term.tag != TermTag::plain)
        t["series"] = term.tag == TermTag::even ? "e" : "o";
    return t;
}

int run_rep_nary(const RepArgs& a, std::ostream& out) {
    std::vector<SignedRep> rows;
    rows.reserve(static_cast<std::size_t>(a.rows));
    for (int s = 1; s <= a.rows; ++s)
        rows.push_back(rep_row(a.n, s));

    if (a.format == "json") {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["n"] = a.n;
        json jrows = json::array();
        for (int s = 1; s <= a.rows; ++s) {
            const auto& row = rows[static_cast<std::size_t>(s - 1)];
            json jr;
            jr["s"] = s;
            jr["p"] = static_cast<std::int64_t>(a.n) * s;
            jr["subject"] = row.subject;
            jr["text"] = row.to_string();
            jr["first_valid_q"] = first_valid_q(row);
            json terms = json::array();
            for (const auto& term : row.terms)
                terms.push_back(term_json(term));
            jr["terms"] = terms;
            jrows.push_back(jr);
        }
        doc["rows"] = jrows;
        emit_json(out, doc);
        return 0;
    }
    if (a.format == "table") {
        for (const auto& row : rows)
            out << row.subject << " = " << row.to_string() << "\n";
        return 0;
    }
    // csv chart: one column per lag, +1/-1 cells, absent entries empty
    int max_lag = 0;
    for (const auto& row : rows)
        max_lag = std::max(max_lag, row.max_lag());
    for (int d = 1; d <= max_lag; ++d)
        out << ",i=" << d;
    out << "\n";
    for (const auto& row : rows) {
        out << csv_quote(row.subject);
        std::vector<std::int64_t> cells(static_cast<std::size_t>(max_lag), 0);
        for (const auto& term : row.terms)
            cells[static_cast<std::size_t>(term.lag - 1)] = term.coeff;
        for (int d = 1; d <= max_lag; ++d) {
            out << ",";
            auto c = cells[static_cast<std::size_t>(d - 1)];
            if (c != 0) out << c;
        }
        out << "\n";
    }
    return 0;
}

int run_rep_bt(const RepArgs& a, std::ostream& out) {
    Parity parity = a.bt == "odd" ? Parity::odd : Parity::even;
    BtRep rep = bt_rep(parity, a.rows);

    if (a.format == "json") {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["parity"] = to_string(parity);
        json jrows = json::array();
        for (int s = 1; s <= a.rows; ++s) {
            const auto& row = rep.rows[static_cast<std::size_t>(s - 1)];
            json jr;
            jr["s"] = s;
            jr["subject"] = row.subject;
            jr["text"] = row.to_string();
            json terms = json::array();
            for (const auto& term : row.terms)
                terms.push_back(term_json(term));
            jr["terms"] = terms;
            jrows.push_back(jr);
        }
        doc["rows"] = jrows;
        json agg;
        agg["subject"] = rep.aggregate.subject;
        agg["text"] = rep.aggregate.to_string();
        json aterms = json::array();
        for (const auto& term : rep.aggregate.terms)
            aterms.push_back(term_json(term));
        agg["terms"] = aterms;
        doc["aggregate"] = agg;
        emit_json(out, doc);
        return 0;
    }
    if (a.format == "table") {
        for (const auto& row : rep.rows)
            out << row.to_string() << "\n";
        return 0;
    }
    out << "s,text\n";
    for (int s = 1; s <= a.rows; ++s)
        out << s << ","
            << csv_quote(rep.rows[static_cast<std::size_t>(s - 1)].to_string()) << "\n";
    return 0;
}

// ---------------------------------------------------------------- bounds --

struct BoundsArgs {
    int n = 0;
    int i = 0;
    std::int64_t qmax = 0;
    bool verify = false;
    std::string format = "json";
};

int run_bounds(const BoundsArgs& a, std::ostream& out, std::ostream& err) {
    CountTable table = CountTable::nary(a.n, a.qmax);
    BoundSpec lo = BoundSpec::from_table(table, a.i, BoundKind::lower);
    BoundSpec hi = BoundSpec::from_table(table, a.i, BoundKind::upper);
    std::int64_t first_q = std::max(lo.first_q, hi.first_q);
    auto lower = bound_sequence(lo, a.qmax);
    auto upper = bound_sequence(hi, a.qmax);

    struct Row {
        std::int64_t q;
        BigInt lower, exact, upper, gap;
    };
    std::vector<Row> rows;
    for (std::int64_t q = first_q; q <= a.qmax; ++q) {
        if ((q - 1) % (a.n - 1) != 0) continue;
        Row r{q, lower.at(q), table.h(q), upper.at(q), upper.at(q) - lower.at(q)};
        rows.push_back(std::move(r));
    }

    SandwichReport report;
    if (a.verify) report = verify_sandwich(table, a.i, a.qmax);

    if (a.format == "json") {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["n"] = a.n;
        doc["i"] = a.i;
        doc["qmax"] = a.qmax;
        doc["first_q"] = first_q;
        json jrows = json::array();
        for (const auto& r : rows)
            jrows.push_back({{"q", r.q},
                             {"lower", r.lower.str()},
                             {"h", r.exact.str()},
                             {"upper", r.upper.str()},
                             {"gap", r.gap.str()}});
        doc["rows"] = jrows;
        if (a.verify) {
            json v;
            v["ok"] = report.ok;
            v["points"] = report.points;
            if (!report.ok) {
                v["failure"] = report.failure;
                v["q"] = report.bad_q;
            }
            doc["verify"] = v;
        }
        emit_json(out, doc);
    } else if (a.format == "table") {
        out << "n = " << a.n << ", i = " << a.i << ", first predicted q = " << first_q << "\n";
        for (const auto& r : rows)
            out << "q = " << r.q << ": " << r.lower.str() << " <= " << r.exact.str()
                << " <= " << r.upper.str() << " (gap " << r.gap.str() << ")\n";
        if (a.verify)
            out << (report.ok ? "verify: ok, " : "verify: FAILED, ") << report.points
                << " points\n";
    } else {
        out << "q,lower,h,upper,gap\n";
        for (const auto& r : rows)
            out << r.q << "," << r.lower.str() << "," << r.exact.str() << "," << r.upper.str()
                << "," << r.gap.str() << "\n";
    }
    if (a.verify && !report.ok) {
        err << "error: " << report.failure << " at q = " << report.bad_q << "\n";
        return 1;
    }
    return 0;
}

// ------------------------------------------------------------------- fit --

struct FitArgs {
    int n = 0;
    int i = 0;
    std::string window = "60:120";
    int roots = 2;
    bool json_flag = false;
    std::string format = "json";
};

int run_fit(const FitArgs& a, std::ostream& out) {
    std::regex window_re("^([0-9]+):([0-9]+)$");
    std::smatch m;
    if (!std::regex_match(a.window, m, window_re))
        throw std::invalid_argument("window must look like 60:120");
    std::int64_t lo = std::stoll(m[1]), hi = std::stoll(m[2]);

    CountTable table = CountTable::nary(a.n, hi);
    CoefficientList coeffs = lower_coeffs(a.n, a.i);
    std::vector<double> roots = characteristic_roots(coeffs, a.roots);
    AsymptoticFit fit = fit_constants(table, a.i, roots, lo, hi);

    std::string format = a.json_flag ? "json" : a.format;
    if (format == "json") {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["n"] = a.n;
        doc["i"] = a.i;
        doc["window"] = {lo, hi};
        doc["float_format"] = kFloatFormat;
        json jroots = json::array(), jconsts = json::array();
        for (double r : fit.roots) jroots.push_back(fmt_double(r));
        for (double c : fit.constants) jconsts.push_back(fmt_double(c));
        doc["roots"] = jroots;
        doc["constants"] = jconsts;
        doc["residual"] = fmt_double(fit.residual);
        doc["experimental"] = fit.experimental;
        emit_json(out, doc);
    } else if (format == "table") {
        out << "n = " << a.n << ", i = " << a.i << ", window " << lo << ".." << hi << "\n";
        for (std::size_t k = 0; k < fit.roots.size(); ++k)
            out << "r" << k + 1 << " = " << fmt_double(fit.roots[k]) << ", c" << k + 1 << " = "
                << fmt_double(fit.constants[k]) << "\n";
        out << "residual = " << fmt_double(fit.residual) << "\n";
        if (fit.experimental) out << "note: more than two terms is experimental\n";
    } else {
        out << "name,value\n";
        for (std::size_t k = 0; k < fit.roots.size(); ++k) {
            out << "r" << k + 1 << "," << fmt_double(fit.roots[k]) << "\n";
            out << "c" << k + 1 << "," << fmt_double(fit.constants[k]) << "\n";
        }
        out << "residual," << fmt_double(fit.residual) << "\n";
    }
    return 0;
}

// -------------------------------------------------------------- bt verify --

struct BtArgs {
    std::string theorem;
    std::int64_t qmax = 30;
    std::int64_t smax = 0; // 0 = default for the chosen claim
    bool json_flag = false;
    std::string format = "json";
};

int run_bt_verify(const BtArgs& a, std::ostream& out, std::ostream& err) {
    CountTable table = CountTable::binary_ternary(a.qmax + 2);
    VerificationReport report;
    if (a.theorem == "4.1.1")
        report = verify_thm_411(table, a.smax > 0 ? a.smax : 8, a.qmax);
    else if (a.theorem == "4.1.2")
        report = verify_thm_412(table, a.smax > 0 ? a.smax : 6, a.qmax);
    else if (a.theorem == "4.2")
        report = verify_ineq_42(table, a.qmax);
    else if (a.theorem == "4.3")
        report = verify_ineq_43(table, a.qmax);
    else {
        err << "error: --theorem must be one of 4.1.1, 4.1.2, 4.2, 4.3\n";
        return 2;
    }

    std::string format = a.json_flag ? "json" : a.format;
    if (format == "json") {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["claim"] = report.claim;
        doc["statement"] = report.statement;
        doc["ok"] = report.ok;
        doc["points"] = report.points.size();
        json margins = json::array();
        for (const auto& point : report.points) {
            json p;
            if (point.s > 0) p["s"] = point.s;
            p["q"] = point.q;
            p["margin"] = point.margin.str();
            margins.push_back(p);
        }
        doc["margins"] = margins;
        if (!report.ok && report.counterexample) {
            const auto& c = *report.counterexample;
            json jc;
            if (c.s > 0) jc["s"] = c.s;
            jc["q"] = c.q;
            jc["lhs"] = c.lhs.str();
            jc["rhs"] = c.rhs.str();
            doc["counterexample"] = jc;
            doc["diagnosis"] = report.diagnosis;
        }
        emit_json(out, doc);
    } else if (format == "table") {
        out << report.claim << ": " << report.statement << "\n";
        out << (report.ok ? "PASS" : "FAIL") << " (" << report.points.size() << " points)\n";
        if (!report.ok && report.counterexample) {
            const auto& c = *report.counterexample;
            out << "counterexample:";
            if (c.s > 0) out << " s = " << c.s << ",";
            out << " q = " << c.q << ", lhs = " << c.lhs.str() << ", rhs = " << c.rhs.str()
                << "\n";
            out << "diagnosis: " << report.diagnosis << "\n";
        }
    } else {
        out << "s,q,lhs,rhs,margin\n";
        for (const auto& point : report.points)
            out << point.s << "," << point.q << "," << point.lhs.str() << "," << point.rhs.str()
                << "," << point.margin.str() << "\n";
    }
    if (!report.ok) {
        err << "error: verification failed for " << report.claim << "\n";
        return 1;
    }
    return 0;
}

// ----------------------------------------------------------------- cache --

struct CacheArgs {
    std::string cache_dir;
    std::string format = "json";
};

bool is_cache_file(const fs::path& p) {
    static const std::regex name_re("^[a-z0-9]+-q[0-9]+\\.json$");
    return std::regex_match(p.filename().string(), name_re);
}

int run_cache_info(const CacheArgs& a, std::ostream& out) {
    fs::path dir = resolve_cache_dir(a.cache_dir);
    std::vector<std::pair<std::string, std::uintmax_t>> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec))
        if (entry.is_regular_file() && is_cache_file(entry.path()))
            files.emplace_back(entry.path().filename().string(), entry.file_size());
    std::sort(files.begin(), files.end());

    if (a.format == "json") {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["dir"] = dir.string();
        json jfiles = json::array();
        for (const auto& [name, bytes] : files)
            jfiles.push_back({{"name", name}, {"bytes", bytes}});
        doc["files"] = jfiles;
        emit_json(out, doc);
    } else {
        out << "cache dir: " << dir.string() << "\n";
        for (const auto& [name, bytes] : files)
            out << "  " << name << " (" << bytes << " bytes)\n";
        if (files.empty()) out << "  (empty)\n";
    }
    return 0;
}

int run_cache_clear(const CacheArgs& a, std::ostream& out) {
    fs::path dir = resolve_cache_dir(a.cache_dir);
    std::vector<fs::path> victims;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec))
        if (entry.is_regular_file() && is_cache_file(entry.path()))
            victims.push_back(entry.path());
    std::sort(victims.begin(), victims.end());
    std::size_t removed = 0;
    for (const auto& p : victims)
        if (fs::remove(p, ec)) ++removed;

    if (a.format == "json") {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["dir"] = dir.string();
        doc["removed"] = removed;
        emit_json(out, doc);
    } else {
        out << "removed " << removed << " cache files from " << dir.string() << "\n";
    }
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact counts, signed representations, and growth constants for "
                 "level-profile tree classes"};
    app.require_subcommand(1);

    auto add_format = [](CLI::App* cmd, std::string& target) {
        cmd->add_option("--format", target, "output format: json, csv, or table")
            ->check(CLI::IsMember({"json", "csv", "table"}));
    };

    OracleArgs oracle_args;
    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive level-profile enumeration");
    oracle_cmd->add_option("--schedule", oracle_args.schedule, "branching factors, e.g. 2 or 2,3")
        ->required();
    oracle_cmd->add_option("--q", oracle_args.q, "total number of leaves")
        ->required()
        ->check(CLI::PositiveNumber);
    oracle_cmd->add_flag("--list", oracle_args.list, "include the profiles themselves");
    oracle_cmd->add_flag("--by-top", oracle_args.by_top, "break the count down by top class");
    oracle_cmd->add_option("--threads", oracle_args.threads, "worker threads")
        ->check(CLI::PositiveNumber);
    add_format(oracle_cmd, oracle_args.format);

    ExactArgs exact_args;
    auto* exact_cmd = app.add_subcommand("exact", "exact counts from the expansion recurrence");
    auto* exact_n = exact_cmd->add_option("--n", exact_args.n, "uniform branching factor")
                        ->check(CLI::Range(2, 64));
    exact_cmd->add_option("--schedule", exact_args.schedule, "branching factors, e.g. 2 or 2,3")
        ->excludes(exact_n);
    exact_cmd->add_option("--q", exact_args.q, "total number of leaves")
        ->required()
        ->check(CLI::PositiveNumber);
    exact_cmd->add_flag("--by-parity", exact_args.by_parity,
                        "report even- and odd-top totals separately (2,3 only)");
    exact_cmd->add_flag("--no-cache", exact_args.no_cache, "recompute even if a cache file exists");
    exact_cmd->add_option("--cache-dir", exact_args.cache_dir, "cache directory override");
    add_format(exact_cmd, exact_args.format);

    RepArgs rep_args;
    auto* rep_cmd = app.add_subcommand("rep", "signed lag representations of the t-rows");
    auto* rep_n = rep_cmd->add_option("--n", rep_args.n, "uniform branching factor")
                      ->check(CLI::Range(2, 64));
    rep_cmd->add_option("--bt", rep_args.bt, "2,3 rows: odd or even")
        ->check(CLI::IsMember({"odd", "even"}))
        ->excludes(rep_n);
    rep_cmd->add_option("--rows", rep_args.rows, "number of rows s = 1..rows")
        ->required()
        ->check(CLI::Range(1, 256));
    add_format(rep_cmd, rep_args.format);

    BoundsArgs bounds_args;
    auto* bounds_cmd = app.add_subcommand("bounds", "truncated recurrence bounds on h_n(q)");
    bounds_cmd->add_option("--n", bounds_args.n, "uniform branching factor")
        ->required()
        ->check(CLI::Range(2, 64));
    bounds_cmd->add_option("--i", bounds_args.i, "truncation depth (multiple of n-1)")
        ->required()
        ->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--qmax", bounds_args.qmax, "largest q to tabulate")
        ->required()
        ->check(CLI::PositiveNumber);
    bounds_cmd->add_flag("--verify", bounds_args.verify,
                         "check the sandwich and the gap identity exactly");
    add_format(bounds_cmd, bounds_args.format);

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand("fit", "characteristic roots and fitted constants");
    fit_cmd->add_option("--n", fit_args.n, "uniform branching factor")
        ->required()
        ->check(CLI::Range(2, 64));
    fit_cmd->add_option("--i", fit_args.i, "truncation depth (multiple of n-1)")
        ->required()
        ->check(CLI::PositiveNumber);
    fit_cmd->add_option("--window", fit_args.window, "fit window lo:hi (default 60:120)");
    fit_cmd->add_option("--roots", fit_args.roots, "number of real roots to extract")
        ->check(CLI::Range(1, 16));
    fit_cmd->add_flag("--json", fit_args.json_flag, "force json output");
    add_format(fit_cmd, fit_args.format);

    BtArgs bt_args;
    auto* bt_cmd = app.add_subcommand("bt", "2,3-tree claims");
    bt_cmd->require_subcommand(1);
    auto* bt_verify_cmd = bt_cmd->add_subcommand("verify", "check a counting claim exactly");
    bt_verify_cmd
        ->add_option("--theorem", bt_args.theorem, "claim id: 4.1.1, 4.1.2, 4.2, or 4.3")
        ->required()
        ->check(CLI::IsMember({"4.1.1", "4.1.2", "4.2", "4.3"}));
    bt_verify_cmd->add_option("--qmax", bt_args.qmax, "largest q in the sweep")
        ->check(CLI::PositiveNumber);
    bt_verify_cmd->add_option("--smax", bt_args.smax, "largest s in the grid (default 8 or 6)")
        ->check(CLI::PositiveNumber);
    bt_verify_cmd->add_flag("--json", bt_args.json_flag, "force json output");
    add_format(bt_verify_cmd, bt_args.format);

    CacheArgs cache_args;
    auto* cache_cmd = app.add_subcommand("cache", "inspect or clear the table cache");
    cache_cmd->require_subcommand(1);
    auto* cache_info_cmd = cache_cmd->add_subcommand("info", "list cached table files");
    auto* cache_clear_cmd = cache_cmd->add_subcommand("clear", "delete cached table files");
    for (auto* cmd : {cache_info_cmd, cache_clear_cmd}) {
        cmd->add_option("--cache-dir", cache_args.cache_dir, "cache directory override");
        add_format(cmd, cache_args.format);
    }

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("treecount");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (oracle_cmd->parsed()) return run_oracle(oracle_args, out, err);
        if (exact_cmd->parsed()) {
            if (exact_args.n == 0 && exact_args.schedule.empty()) {
                err << "error: exact needs --n or --schedule\n";
                return 2;
            }
            return run_exact(exact_args, out, err);
        }
        if (rep_cmd->parsed()) {
            if ((rep_args.n == 0) == rep_args.bt.empty()) {
                err << "error: rep needs exactly one of --n or --bt\n";
                return 2;
            }
            return rep_args.n > 0 ? run_rep_nary(rep_args, out) : run_rep_bt(rep_args, out);
        }
        if (bounds_cmd->parsed()) return run_bounds(bounds_args, out, err);
        if (fit_cmd->parsed()) return run_fit(fit_args, out);
        if (bt_cmd->parsed()) return run_bt_verify(bt_args, out, err);
        if (cache_info_cmd->parsed()) return run_cache_info(cache_args, out);
        if (cache_clear_cmd->parsed()) return run_cache_clear(cache_args, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand\n";
    return 2;
}

} // namespace treecount
