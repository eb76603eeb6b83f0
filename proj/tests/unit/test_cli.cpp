#include "treecount/cli.hpp"

#include "doctest.h"
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

using namespace treecount;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out, err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliResult r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("treecount-cli-" + std::to_string(::getpid()) + "-" +
                                            std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

// Saves and restores one environment variable across a test.
struct EnvGuard {
    std::string name;
    std::string old_value;
    bool had = false;
    explicit EnvGuard(std::string var) : name(std::move(var)) {
        if (const char* v = std::getenv(name.c_str())) {
            had = true;
            old_value = v;
        }
    }
    ~EnvGuard() {
        if (had)
            ::setenv(name.c_str(), old_value.c_str(), 1);
        else
            ::unsetenv(name.c_str());
    }
};

} // namespace

TEST_CASE("exact count, json golden") {
    CliResult r = run({"exact", "--n", "2", "--q", "5", "--no-cache"});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    CHECK(r.out == "{\n"
                   "  \"h\": \"3\",\n"
                   "  \"n\": 2,\n"
                   "  \"q\": 5,\n"
                   "  \"schema_version\": 1\n"
                   "}\n");
}

TEST_CASE("exact count, table and csv formats") {
    CliResult table = run({"exact", "--n", "2", "--q", "40", "--no-cache", "--format", "table"});
    CHECK(table.code == 0);
    CHECK(table.out == "h_2(40) = 2023774607\n");

    CliResult csv = run({"exact", "--n", "2", "--q", "5", "--no-cache", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out == "q,h\n5,3\n");

    CliResult via_schedule =
        run({"exact", "--schedule", "2", "--q", "40", "--no-cache", "--format", "table"});
    CHECK(via_schedule.out == table.out);
}

TEST_CASE("exact count for the mixed schedule") {
    CliResult r = run({"exact", "--schedule", "2,3", "--q", "20", "--by-parity", "--no-cache",
                       "--format", "table"});
    CHECK(r.code == 0);
    CHECK(r.out == "schedule 2,3, q = 20\n"
                   "e(20) = 251\n"
                   "o(20) = 376\n"
                   "total = 627\n");

    CliResult j = run({"exact", "--schedule", "2,3", "--q", "20", "--by-parity", "--no-cache"});
    json doc = json::parse(j.out);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["schedule"] == json::array({2, 3}));
    CHECK(doc["e"] == "251");
    CHECK(doc["o"] == "376");
    CHECK(doc["total"] == "627");
}

TEST_CASE("oracle enumeration through the cli") {
    CliResult r = run({"oracle", "--schedule", "2", "--q", "4", "--list"});
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["count"] == "2");
    CHECK(doc["profiles"] == json::array({{1, 1, 1}, {1, 2}}));

    CliResult by_top = run({"oracle", "--schedule", "2,3", "--q", "8", "--by-top"});
    json doc2 = json::parse(by_top.out);
    CHECK(doc2["by_top"] ==
          json::array({{{"p", 2}, {"parity", "odd"}, {"count", "1"}},
                       {{"p", 3}, {"parity", "even"}, {"count", "1"}},
                       {{"p", 4}, {"parity", "odd"}, {"count", "1"}}}));

    CliResult csv = run({"oracle", "--schedule", "2,3", "--q", "8", "--by-top", "--format", "csv"});
    CHECK(csv.out == "p,parity,count\n2,odd,1\n3,even,1\n4,odd,1\n");

    CliResult plain = run({"oracle", "--schedule", "2", "--q", "6", "--format", "csv"});
    CHECK(plain.out == "count\n5\n");

    CliResult threaded = run({"oracle", "--schedule", "2", "--q", "12", "--threads", "4",
                              "--format", "csv"});
    CHECK(threaded.out == "count\n159\n");
}

TEST_CASE("the first binary rows render as a csv chart") {
    // lag -> coefficient for rows s = 1..8
    const std::vector<std::map<int, int>> rows = {
        {{1, 1}},
        {{2, 1}},
        {{3, 1}, {4, -1}},
        {{4, 1}, {5, -1}},
        {{5, 1}, {6, -1}, {7, -1}},
        {{6, 1}, {7, -1}, {8, -1}},
        {{7, 1}, {8, -1}, {9, -1}, {10, -1}, {11, 1}},
        {{8, 1}, {9, -1}, {10, -1}, {11, -1}, {12, 1}},
    };
    std::string expected;
    for (int d = 1; d <= 12; ++d) expected += ",i=" + std::to_string(d);
    expected += "\n";
    for (std::size_t s = 1; s <= rows.size(); ++s) {
        expected += "\"t_2(" + std::to_string(2 * s) + ",q)\"";
        for (int d = 1; d <= 12; ++d) {
            expected += ",";
            auto it = rows[s - 1].find(d);
            if (it != rows[s - 1].end()) expected += std::to_string(it->second);
        }
        expected += "\n";
    }

    CliResult r = run({"rep", "--n", "2", "--rows", "8", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == expected);
}

TEST_CASE("rep json carries rows with lags and validity") {
    CliResult r = run({"rep", "--n", "2", "--rows", "3"});
    json doc = json::parse(r.out);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["rows"].size() == 3);
    CHECK(doc["rows"][2]["subject"] == "t_2(6,q)");
    CHECK(doc["rows"][2]["text"] == "h(q-3)-h(q-4)");
    CHECK(doc["rows"][2]["first_valid_q"] == 6);
    CHECK(doc["rows"][2]["terms"] ==
          json::array({{{"lag", 3}, {"coeff", 1}}, {{"lag", 4}, {"coeff", -1}}}));
}

TEST_CASE("the first twelve odd-side rows match the known listing") {
    CliResult r = run({"rep", "--bt", "odd", "--rows", "12", "--format", "table"});
    CHECK(r.code == 0);
    CHECK(r.out == "(q-1)_e\n"
                   "(q-2)_e\n"
                   "(q-3)_e\n"
                   "(q-4)_e-(q-6)_o\n"
                   "(q-5)_e-(q-7)_o\n"
                   "(q-6)_e-(q-8)_o\n"
                   "(q-7)_e-(q-9)_o-(q-11)_o\n"
                   "(q-8)_e-(q-10)_o-(q-12)_o\n"
                   "(q-9)_e-(q-11)_o-(q-13)_o\n"
                   "(q-10)_e-(q-12)_o-(q-14)_o-(q-16)_o+(q-17)_e\n"
                   "(q-11)_e-(q-13)_o-(q-15)_o-(q-17)_o+(q-18)_e\n"
                   "(q-12)_e-(q-14)_o-(q-16)_o-(q-18)_o+(q-19)_e\n");

    CliResult j = run({"rep", "--bt", "odd", "--rows", "4"});
    json doc = json::parse(j.out);
    CHECK(doc["parity"] == "odd");
    CHECK(doc["aggregate"]["subject"] == "q_o");
    CHECK(doc["rows"][3]["text"] == "(q-4)_e-(q-6)_o");
}

TEST_CASE("bounds sandwich through the cli") {
    CliResult r = run({"bounds", "--n", "2", "--i", "30", "--qmax", "60", "--verify"});
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["verify"]["ok"] == true);
    CHECK(doc["verify"]["points"].get<int>() > 0);
    REQUIRE(!doc["rows"].empty());
    json last = doc["rows"].back();
    CHECK(last["q"] == 60);
    CHECK(last["h"] == "241725942889019");

    // the depth-1 binary truncation is not a bound, and the verifier says so
    CliResult bad = run({"bounds", "--n", "2", "--i", "1", "--qmax", "20", "--verify"});
    CHECK(bad.code == 1);
    CHECK(bad.err == "error: sandwich violated at q = 7\n");
    json bad_doc = json::parse(bad.out);
    CHECK(bad_doc["verify"]["ok"] == false);
    CHECK(bad_doc["verify"]["failure"] == "sandwich violated");
}

TEST_CASE("fit reports the binary growth constants") {
    CliResult r = run({"fit", "--n", "2", "--i", "60"});
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["float_format"] == "%.17g");
    CHECK(doc["window"] == json::array({60, 120}));
    CHECK(doc["experimental"] == false);
    double r1 = std::stod(doc["roots"][0].get<std::string>());
    double r2 = std::stod(doc["roots"][1].get<std::string>());
    double c1 = std::stod(doc["constants"][0].get<std::string>());
    CHECK(std::abs(r1 - 1.7941471875416766) < 1e-9);
    CHECK(std::abs(r2 - 1.2795491347212862) < 1e-9);
    CHECK(std::abs(c1 - 0.1418532020854744) < 1e-6);
    CHECK(std::stod(doc["residual"].get<std::string>()) < 1e-11);
}

TEST_CASE("fit format handling") {
    CliResult csv = run({"fit", "--n", "2", "--i", "4", "--window", "20:40", "--roots", "1",
                         "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("name,value\nr1,", 0) == 0);

    CliResult forced = run({"fit", "--n", "2", "--i", "4", "--window", "20:40", "--roots", "1",
                            "--format", "table", "--json"});
    CHECK(forced.code == 0);
    CHECK(forced.out.front() == '{');
}

TEST_CASE("bt verify through the cli") {
    CliResult r = run({"bt", "verify", "--theorem", "4.2", "--qmax", "30"});
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["claim"] == "4.2");
    CHECK(doc["ok"] == true);
    CHECK(doc["points"] == 29);
    CHECK(doc["margins"].size() == 29);
    CHECK(doc["margins"][0] == json({{"q", 2}, {"margin", "1"}}));

    CliResult grid = run({"bt", "verify", "--theorem", "4.1.1", "--qmax", "24", "--json"});
    CHECK(grid.code == 0);
    CHECK(json::parse(grid.out)["points"] == 149);

    CliResult table = run({"bt", "verify", "--theorem", "4.3", "--qmax", "10", "--format",
                           "table"});
    CHECK(table.code == 0);
    CHECK(table.out == "4.3: e(q+2) <= o(q) + e(q)\nPASS (9 points)\n");

    CliResult csv = run({"bt", "verify", "--theorem", "4.1.1", "--qmax", "6", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("s,q,lhs,rhs,margin\n1,2,1,1,0\n", 0) == 0);
}

TEST_CASE("exact results are cached and reused byte for byte") {
    TempDir dir;
    std::vector<std::string> args = {"exact", "--n", "2", "--q", "40", "--cache-dir",
                                     dir.path.string()};
    CliResult cold = run(args);
    CHECK(cold.code == 0);
    CHECK(fs::exists(dir.path / "nary2-q40.json"));
    CliResult warm = run(args);
    CHECK(warm.code == 0);
    CHECK(warm.out == cold.out);

    std::vector<std::string> no_cache = args;
    no_cache.push_back("--no-cache");
    CHECK(run(no_cache).out == cold.out);

    std::vector<std::string> bt_args = {"exact", "--schedule", "2,3", "--q", "20", "--by-parity",
                                        "--cache-dir", dir.path.string()};
    CliResult bt_cold = run(bt_args);
    CHECK(fs::exists(dir.path / "bt23-q20.json"));
    CHECK(run(bt_args).out == bt_cold.out);
}

TEST_CASE("cache info and clear manage only cache files") {
    TempDir dir;
    run({"exact", "--n", "2", "--q", "30", "--cache-dir", dir.path.string()});
    run({"exact", "--n", "3", "--q", "31", "--cache-dir", dir.path.string()});
    std::ofstream(dir.path / "notes.txt") << "keep me\n";

    CliResult info = run({"cache", "info", "--cache-dir", dir.path.string()});
    CHECK(info.code == 0);
    json doc = json::parse(info.out);
    CHECK(doc["dir"] == dir.path.string());
    REQUIRE(doc["files"].size() == 2);
    CHECK(doc["files"][0]["name"] == "nary2-q30.json");
    CHECK(doc["files"][1]["name"] == "nary3-q31.json");
    CHECK(doc["files"][0]["bytes"].get<std::uintmax_t>() > 0);

    CliResult table = run({"cache", "info", "--cache-dir", dir.path.string(), "--format",
                           "table"});
    CHECK(table.out.find("nary2-q30.json") != std::string::npos);

    CliResult cleared = run({"cache", "clear", "--cache-dir", dir.path.string()});
    CHECK(cleared.code == 0);
    CHECK(json::parse(cleared.out)["removed"] == 2);
    CHECK(!fs::exists(dir.path / "nary2-q30.json"));
    CHECK(fs::exists(dir.path / "notes.txt"));

    CliResult empty_info = run({"cache", "info", "--cache-dir", dir.path.string()});
    CHECK(json::parse(empty_info.out)["files"].empty());
}

TEST_CASE("cache directory resolution order") {
    EnvGuard tc("TREECOUNT_CACHE_DIR");
    EnvGuard xdg("XDG_CACHE_HOME");
    TempDir env_dir, flag_dir, xdg_dir;

    ::setenv("TREECOUNT_CACHE_DIR", env_dir.path.c_str(), 1);
    json doc = json::parse(run({"cache", "info"}).out);
    CHECK(doc["dir"] == env_dir.path.string());

    json doc2 = json::parse(run({"cache", "info", "--cache-dir", flag_dir.path.string()}).out);
    CHECK(doc2["dir"] == flag_dir.path.string());

    ::unsetenv("TREECOUNT_CACHE_DIR");
    ::setenv("XDG_CACHE_HOME", xdg_dir.path.c_str(), 1);
    json doc3 = json::parse(run({"cache", "info"}).out);
    CHECK(doc3["dir"] == (xdg_dir.path / "treecount").string());
}

TEST_CASE("every json payload carries the schema version") {
    TempDir dir;
    const std::vector<std::vector<std::string>> invocations = {
        {"oracle", "--schedule", "2", "--q", "4"},
        {"exact", "--n", "2", "--q", "5", "--no-cache"},
        {"rep", "--n", "2", "--rows", "2"},
        {"rep", "--bt", "even", "--rows", "2"},
        {"bounds", "--n", "2", "--i", "4", "--qmax", "20"},
        {"fit", "--n", "2", "--i", "4", "--window", "20:40", "--roots", "1"},
        {"bt", "verify", "--theorem", "4.3", "--qmax", "10"},
        {"cache", "info", "--cache-dir", dir.path.string()},
        {"cache", "clear", "--cache-dir", dir.path.string()},
    };
    for (const auto& args : invocations) {
        CliResult r = run(args);
        CHECK(r.code == 0);
        json doc = json::parse(r.out);
        CHECK(doc["schema_version"] == 1);
    }
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"exact", "--n", "2", "--q", "5", "--bogus"}).code == 2);
    CHECK(run({"oracle", "--schedule", "2"}).code == 2);
    CHECK(run({"exact", "--q", "5"}).code == 2);
    CHECK(run({"exact", "--n", "65", "--q", "5"}).code == 2);
    CHECK(run({"exact", "--q", "0", "--n", "2"}).code == 2);
    CHECK(run({"exact", "--schedule", "3,2", "--q", "8"}).code == 2);
    CHECK(run({"exact", "--n", "2", "--schedule", "2", "--q", "5"}).code == 2);
    CHECK(run({"rep", "--rows", "4"}).code == 2);
    CHECK(run({"rep", "--n", "2", "--bt", "odd", "--rows", "4"}).code == 2);
    CHECK(run({"rep", "--n", "2", "--rows", "0"}).code == 2);
    CHECK(run({"rep", "--bt", "sideways", "--rows", "4"}).code == 2);
    CHECK(run({"oracle", "--schedule", "2", "--q", "4", "--list", "--format", "csv"}).code == 2);
    CHECK(run({"oracle", "--schedule", "1", "--q", "3"}).code == 2);
    CHECK(run({"oracle", "--schedule", "2", "--q", "12", "--threads", "0"}).code == 2);
    CHECK(run({"bt", "verify", "--theorem", "4.5", "--qmax", "10"}).code == 2);
    CHECK(run({"fit", "--n", "2", "--i", "4", "--window", "60-120"}).code == 2);
    CHECK(run({}).code == 2);

    CliResult needs_one = run({"exact", "--q", "5"});
    CHECK(needs_one.err == "error: exact needs --n or --schedule\n");
    CliResult mixed = run({"exact", "--schedule", "3,2", "--q", "8"});
    CHECK(mixed.err == "error: exact tables cover uniform schedules and 2,3\n");
    CliResult listing = run({"oracle", "--schedule", "2", "--q", "4", "--list", "--format",
                             "csv"});
    CHECK(listing.err == "error: profile listings have no csv form; use json or table\n");
}

TEST_CASE("numerical failures exit with 1") {
    // the depth-2 truncation has one real root; asking for two hits the
    // complex pair and the run fails
    CliResult r = run({"fit", "--n", "2", "--i", "2", "--roots", "2"});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("error: ", 0) == 0);
}

TEST_CASE("help is exit 0") {
    CliResult top = run({"--help"});
    CHECK(top.code == 0);
    CHECK(top.out.find("oracle") != std::string::npos);
    CHECK(top.out.find("bounds") != std::string::npos);

    CliResult sub = run({"exact", "--help"});
    CHECK(sub.code == 0);
    CHECK(sub.out.find("--no-cache") != std::string::npos);
}
