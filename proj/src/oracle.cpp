#include "treecount/oracle.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

namespace treecount {

namespace {

struct Bucket {
    BigInt count = 0;
    std::map<TopClass, BigInt> by_top;
    std::vector<std::vector<std::int64_t>> profiles;
};

void emit(Bucket& out, bool keep_profiles, const std::vector<std::int64_t>& internal, int level,
          std::int64_t p) {
    out.count += 1;
    out.by_top[TopClass{p, level_parity(level)}] += 1;
    if (keep_profiles)
        out.profiles.push_back(internal);
}

// Depth-first over i_level in [1, a]; `prefix` holds i_0..i_{level-1} and
// `acc` the leaves strictly below `level`. Stopping is checked before any
// extension so the output stays in lexicographic order (a prefix sorts before
// its extensions). A state that stops exactly at q has no valid extensions:
// expanding i vertices adds at least i*(b-1) >= 1 net leaves.
void dfs(const BranchingSchedule& schedule, std::int64_t q, int level, std::int64_t a,
         std::int64_t acc, std::vector<std::int64_t>& prefix, Bucket& out, bool keep_profiles) {
    if (acc + a == q)
        emit(out, keep_profiles, prefix, level, a);
    const std::int64_t b = schedule.factor(level);
    for (std::int64_t i = 1; i <= a; ++i) {
        // Minimum final total if we expand i vertices here and stop right after.
        if (acc + a + i * (b - 1) > q)
            break;
        prefix.push_back(i);
        dfs(schedule, q, level + 1, b * i, acc + (a - i), prefix, out, keep_profiles);
        prefix.pop_back();
    }
}

struct Unit {
    bool is_leaf; // a finished profile found during the prefix walk
    std::vector<std::int64_t> prefix;
    int level;
    std::int64_t a;
    std::int64_t acc;
};

// Walk the first `depth` levels sequentially, recording finished profiles and
// pending subtrees in lexicographic order.
void collect_units(const BranchingSchedule& schedule, std::int64_t q, int level, std::int64_t a,
                   std::int64_t acc, std::vector<std::int64_t>& prefix, int depth,
                   bool include_degenerate, std::vector<Unit>& units) {
    if (acc + a == q) {
        if (level > 0 || include_degenerate)
            units.push_back(Unit{true, prefix, level, a, acc});
    }
    if (level == depth) {
        if (acc + a < q)
            units.push_back(Unit{false, prefix, level, a, acc});
        return;
    }
    const std::int64_t b = schedule.factor(level);
    for (std::int64_t i = 1; i <= a; ++i) {
        if (acc + a + i * (b - 1) > q)
            break;
        prefix.push_back(i);
        collect_units(schedule, q, level + 1, b * i, acc + (a - i), prefix, depth,
                      include_degenerate, units);
        prefix.pop_back();
    }
}

} // namespace

OracleResult enumerate_profiles(const BranchingSchedule& schedule, std::int64_t q,
                                const OracleOptions& options) {
    if (q < 1)
        throw std::domain_error("q must be >= 1");

    const int split_depth = 3;
    std::vector<Unit> units;
    {
        std::vector<std::int64_t> prefix;
        collect_units(schedule, q, 0, 1, 0, prefix, split_depth, options.include_degenerate,
                      units);
    }

    std::vector<Bucket> buckets(units.size());
    size_t task_count = 0;
    for (size_t k = 0; k < units.size(); ++k) {
        if (units[k].is_leaf)
            emit(buckets[k], options.keep_profiles, units[k].prefix, units[k].level, units[k].a);
        else
            ++task_count;
    }

    auto run_unit = [&](size_t k) {
        std::vector<std::int64_t> prefix = units[k].prefix;
        dfs(schedule, q, units[k].level, units[k].a, units[k].acc, prefix, buckets[k],
            options.keep_profiles);
    };

    const int threads = std::max(1, options.threads);
    if (threads == 1 || task_count <= 1) {
        for (size_t k = 0; k < units.size(); ++k)
            if (!units[k].is_leaf)
                run_unit(k);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (;;) {
                size_t k = next.fetch_add(1);
                if (k >= units.size())
                    return;
                if (!units[k].is_leaf)
                    run_unit(k);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    OracleResult result{schedule, q, 0, {}, {}};
    for (auto& bucket : buckets) {
        result.count += bucket.count;
        for (auto& [cls, cnt] : bucket.by_top)
            result.by_top[cls] += cnt;
        if (options.keep_profiles)
            for (auto& internal : bucket.profiles)
                result.profiles.emplace_back(schedule, std::move(internal));
    }
    return result;
}

BigInt count_oracle(const BranchingSchedule& schedule, std::int64_t q) {
    OracleOptions options;
    options.keep_profiles = false;
    return enumerate_profiles(schedule, q, options).count;
}

std::map<TopClass, BigInt> count_by_top_and_parity(const BranchingSchedule& schedule,
                                                   std::int64_t q) {
    OracleOptions options;
    options.keep_profiles = false;
    return enumerate_profiles(schedule, q, options).by_top;
}

} // namespace treecount
