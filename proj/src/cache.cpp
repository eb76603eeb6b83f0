#include "treecount/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <unistd.h>

#include <json.hpp>

namespace treecount {

namespace {

using nlohmann::json;

json rows_to_json(const CountTable& table, std::int64_t max_q, bool bt, Parity parity) {
    json rows = json::array();
    for (std::int64_t q = 2; q <= max_q; ++q) {
        auto row = bt ? table.row(q, parity) : table.row(q);
        if (row.empty())
            continue;
        json entries = json::array();
        for (auto& [p, count] : row)
            entries.push_back(json::array({p, count.str()}));
        rows.push_back(json::array({q, std::move(entries)}));
    }
    return rows;
}

// Rebuild dense per-s rows from the sparse (p, count) lists.
std::vector<std::vector<BigInt>> rows_from_json(const json& rows, std::int64_t max_q, int branch) {
    std::vector<std::vector<BigInt>> dense(static_cast<size_t>(max_q) + 1);
    for (std::int64_t q = 2; q <= max_q; ++q)
        dense[static_cast<size_t>(q)].assign(static_cast<size_t>(q / branch), 0);
    for (const auto& row : rows) {
        const std::int64_t q = row.at(0).get<std::int64_t>();
        if (q < 2 || q > max_q)
            throw std::runtime_error("row q out of range");
        for (const auto& entry : row.at(1)) {
            const std::int64_t p = entry.at(0).get<std::int64_t>();
            if (p < branch || p % branch != 0)
                throw std::runtime_error("row p not a branch multiple");
            const std::int64_t s = p / branch;
            auto& target = dense[static_cast<size_t>(q)];
            if (static_cast<size_t>(s) > target.size())
                throw std::runtime_error("row p out of range");
            target[static_cast<size_t>(s - 1)] = BigInt(entry.at(1).get<std::string>());
        }
    }
    return dense;
}

} // namespace

std::filesystem::path resolve_cache_dir(const std::string& flag_value) {
    if (!flag_value.empty())
        return flag_value;
    if (const char* env = std::getenv("TREECOUNT_CACHE_DIR"); env && *env)
        return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return std::filesystem::path(xdg) / "treecount";
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".cache" / "treecount";
    return std::filesystem::path(".treecount-cache");
}

std::string cache_file_name(const BranchingSchedule& schedule, std::int64_t max_q) {
    std::string stem = schedule.uniform() ? "nary" + std::to_string(schedule.factor(0)) : "bt23";
    return stem + "-q" + std::to_string(max_q) + ".json";
}

bool save_table(const CountTable& table, const std::filesystem::path& file) {
    json doc;
    doc["format_version"] = cache_format_version;
    doc["max_q"] = table.max_q();
    if (table.is_binary_ternary()) {
        doc["kind"] = "bt23";
        doc["odd_rows"] = rows_to_json(table, table.max_q(), true, Parity::odd);
        doc["even_rows"] = rows_to_json(table, table.max_q(), true, Parity::even);
    } else {
        doc["kind"] = "nary";
        doc["n"] = table.n();
        doc["rows"] = rows_to_json(table, table.max_q(), false, Parity::even);
    }

    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
    auto tmp = file;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            return false;
        out << doc.dump() << '\n';
        if (!out)
            return false;
    }
    std::filesystem::rename(tmp, file, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        return false;
    }
    return true;
}

std::optional<CountTable> load_table(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        return std::nullopt;
    try {
        json doc = json::parse(in);
        if (doc.at("format_version").get<int>() != cache_format_version)
            return std::nullopt;
        const auto max_q = doc.at("max_q").get<std::int64_t>();
        const auto kind = doc.at("kind").get<std::string>();
        if (kind == "nary") {
            const int n = doc.at("n").get<int>();
            if (n < 2)
                return std::nullopt;
            return CountTable::from_rows(n, max_q, rows_from_json(doc.at("rows"), max_q, n));
        }
        if (kind == "bt23") {
            return CountTable::from_bt_rows(max_q, rows_from_json(doc.at("odd_rows"), max_q, 2),
                                            rows_from_json(doc.at("even_rows"), max_q, 3));
        }
        return std::nullopt;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

} // namespace treecount
