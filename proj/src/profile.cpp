#include "treecount/profile.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace treecount {

namespace {

std::vector<std::int64_t> derive_vertices(const BranchingSchedule& schedule,
                                          const std::vector<std::int64_t>& internal) {
    std::vector<std::int64_t> a(internal.size() + 1);
    a[0] = 1;
    for (size_t j = 0; j < internal.size(); ++j)
        a[j + 1] = static_cast<std::int64_t>(schedule.factor(static_cast<int>(j))) * internal[j];
    return a;
}

std::vector<std::int64_t> derive_leaves(const std::vector<std::int64_t>& vertices,
                                        const std::vector<std::int64_t>& internal) {
    std::vector<std::int64_t> l(vertices.size());
    for (size_t j = 0; j < internal.size(); ++j)
        l[j] = vertices[j] - internal[j];
    l.back() = vertices.back();
    return l;
}

} // namespace

LevelProfile::LevelProfile(BranchingSchedule schedule, std::vector<std::int64_t> internal)
    : schedule_(std::move(schedule)), internal_(std::move(internal)),
      vertices_(derive_vertices(schedule_, internal_)) {
    leaves_ = derive_leaves(vertices_, internal_);
}

LevelProfile::LevelProfile(BranchingSchedule schedule, std::vector<std::int64_t> internal,
                           std::vector<std::int64_t> leaves)
    : schedule_(std::move(schedule)), internal_(std::move(internal)), leaves_(std::move(leaves)),
      vertices_(derive_vertices(schedule_, internal_)) {
    if (leaves_.size() != internal_.size() + 1)
        throw ValidationError("leaf list must have one more entry than the internal list");
}

std::int64_t LevelProfile::leaf_count() const {
    return std::accumulate(leaves_.begin(), leaves_.end(), std::int64_t{0});
}

std::int64_t LevelProfile::top_internal() const {
    if (internal_.empty())
        throw std::logic_error("degenerate profile has no top internal count");
    return internal_.back();
}

std::int64_t LevelProfile::internal_total() const {
    return std::accumulate(internal_.begin(), internal_.end(), std::int64_t{0});
}

std::vector<std::string> validate_profile(const LevelProfile& profile) {
    std::vector<std::string> violations;
    const auto& internal = profile.internal();
    const int levels = profile.levels();
    for (int j = 0; j < levels; ++j) {
        std::int64_t i_j = internal[static_cast<size_t>(j)];
        std::int64_t a_j = profile.vertices_at(j);
        if (i_j < 1)
            violations.push_back("i_j >= 1 fails at j=" + std::to_string(j));
        else if (i_j > a_j)
            violations.push_back("i_j <= a_j fails at j=" + std::to_string(j) + " (i=" +
                                 std::to_string(i_j) + ", a=" + std::to_string(a_j) + ")");
    }
    const auto& leaves = profile.leaves();
    for (int j = 0; j < levels; ++j) {
        std::int64_t expect = profile.vertices_at(j) - internal[static_cast<size_t>(j)];
        if (leaves[static_cast<size_t>(j)] != expect)
            violations.push_back("l_j = a_j - i_j fails at j=" + std::to_string(j));
    }
    if (leaves.back() != profile.vertices_at(levels))
        violations.push_back("top level must be all leaves (l_L = a_L)");
    if (kraft_sum(profile) != 1)
        violations.push_back("generalized Kraft equality fails (sum != 1)");
    return violations;
}

Rational kraft_sum(const LevelProfile& profile) {
    Rational sum = 0;
    BigInt denom = 1; // product of branching factors above level j
    const auto& leaves = profile.leaves();
    for (size_t j = 0; j < leaves.size(); ++j) {
        if (leaves[j] != 0)
            sum += Rational(leaves[j], denom);
        denom *= profile.schedule().factor(static_cast<int>(j));
    }
    return sum;
}

HuffmanSequence profile_to_sequence(const LevelProfile& profile) {
    auto violations = validate_profile(profile);
    if (!violations.empty())
        throw ValidationError("invalid profile: " + violations.front());
    HuffmanSequence depths;
    depths.reserve(static_cast<size_t>(profile.leaf_count()));
    const auto& leaves = profile.leaves();
    for (size_t j = 0; j < leaves.size(); ++j)
        depths.insert(depths.end(), static_cast<size_t>(leaves[j]), static_cast<int>(j));
    return depths;
}

LevelProfile sequence_to_profile(const BranchingSchedule& schedule,
                                 const HuffmanSequence& depths) {
    if (depths.empty())
        throw ValidationError("empty depth sequence");
    if (!std::is_sorted(depths.begin(), depths.end()))
        throw ValidationError("depth sequence must be non-decreasing");
    if (depths.front() < 0)
        throw ValidationError("negative depth");
    const int max_depth = depths.back();
    std::vector<std::int64_t> leaves(static_cast<size_t>(max_depth) + 1, 0);
    for (int d : depths)
        ++leaves[static_cast<size_t>(d)];
    std::vector<std::int64_t> internal(static_cast<size_t>(max_depth));
    std::int64_t a = 1;
    for (int j = 0; j < max_depth; ++j) {
        std::int64_t i_j = a - leaves[static_cast<size_t>(j)];
        if (i_j < 1)
            throw ValidationError("depth sequence not realizable: no internal vertex at level " +
                                  std::to_string(j));
        internal[static_cast<size_t>(j)] = i_j;
        a = schedule.factor(j) * i_j;
    }
    if (leaves.back() != a)
        throw ValidationError("depth sequence not realizable: top level mismatch");
    LevelProfile profile(schedule, std::move(internal));
    auto violations = validate_profile(profile);
    if (!violations.empty())
        throw ValidationError("invalid profile from sequence: " + violations.front());
    return profile;
}

Rational kraft_sum(const BranchingSchedule& schedule, const HuffmanSequence& depths) {
    Rational sum = 0;
    for (int d : depths) {
        BigInt denom = 1;
        for (int j = 0; j < d; ++j)
            denom *= schedule.factor(j);
        sum += Rational(1, denom);
    }
    return sum;
}

nlohmann::json profile_to_json(const LevelProfile& profile) {
    return nlohmann::json{{"schedule", profile.schedule().factors()},
                          {"internal", profile.internal()}};
}

LevelProfile profile_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("schedule") || !j.contains("internal"))
        throw ValidationError("profile JSON must be {\"schedule\":[...],\"internal\":[...]}");
    try {
        auto factors = j.at("schedule").get<std::vector<int>>();
        auto internal = j.at("internal").get<std::vector<std::int64_t>>();
        return LevelProfile(BranchingSchedule(std::move(factors)), std::move(internal));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("profile JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("profile JSON: ") + e.what());
    }
}

} // namespace treecount
