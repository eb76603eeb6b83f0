#pragma once

#include "treecount/profile.hpp"

#include <map>

namespace treecount {

struct OracleOptions {
    bool include_degenerate = false; // count the single-vertex tree at q = 1
    bool keep_profiles = true;       // materialize the profile list
    int threads = 1;
};

struct TopClass {
    std::int64_t p; // leaves on the top level
    Parity parity;  // parity of the top level

    bool operator<(const TopClass& other) const {
        if (p != other.p)
            return p < other.p;
        return static_cast<int>(parity) < static_cast<int>(other.parity);
    }
    bool operator==(const TopClass& other) const = default;
};

struct OracleResult {
    BranchingSchedule schedule;
    std::int64_t q;
    BigInt count;
    std::map<TopClass, BigInt> by_top;
    std::vector<LevelProfile> profiles; // lexicographic by internal list
};

// Exhaustive search over level profiles with total leaf count q.
// Output order (and content) is independent of the thread count.
OracleResult enumerate_profiles(const BranchingSchedule& schedule, std::int64_t q,
                                const OracleOptions& options = {});

// Count without materializing the profile list.
BigInt count_oracle(const BranchingSchedule& schedule, std::int64_t q);

std::map<TopClass, BigInt> count_by_top_and_parity(const BranchingSchedule& schedule,
                                                   std::int64_t q);

} // namespace treecount
