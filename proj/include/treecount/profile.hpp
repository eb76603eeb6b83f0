#pragma once

#include "treecount/numeric.hpp"
#include "treecount/schedule.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace treecount {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical representative of a Huffman-equivalence class: the number of
// internal vertices at each level below the top. Level counts follow from
// a_0 = 1, a_{j+1} = b_j * i_j; leaves at level j are l_j = a_j - i_j and
// the whole top level is leaves. The empty internal list is the degenerate
// single-vertex tree (root is a leaf, q = 1).
class LevelProfile {
public:
    LevelProfile(BranchingSchedule schedule, std::vector<std::int64_t> internal);
    // Explicit leaf counts; used to represent structurally inconsistent
    // profiles (validation and kraft_sum work off the stored leaves).
    LevelProfile(BranchingSchedule schedule, std::vector<std::int64_t> internal,
                 std::vector<std::int64_t> leaves);

    const BranchingSchedule& schedule() const { return schedule_; }
    const std::vector<std::int64_t>& internal() const { return internal_; }
    const std::vector<std::int64_t>& leaves() const { return leaves_; }

    int levels() const { return static_cast<int>(internal_.size()); } // L
    std::int64_t vertices_at(int level) const { return vertices_.at(static_cast<size_t>(level)); }
    std::int64_t leaf_count() const;                                  // q
    std::int64_t top_leaf_count() const { return vertices_.back(); }  // p = a_L
    std::int64_t top_internal() const;                                // s = i_{L-1}
    std::int64_t internal_total() const;                              // number of internal vertices
    Parity top_parity() const { return level_parity(levels()); }
    bool degenerate() const { return internal_.empty(); }

    bool operator==(const LevelProfile& other) const {
        return schedule_ == other.schedule_ && internal_ == other.internal_ &&
               leaves_ == other.leaves_;
    }

private:
    BranchingSchedule schedule_;
    std::vector<std::int64_t> internal_;
    std::vector<std::int64_t> leaves_;
    std::vector<std::int64_t> vertices_; // a_0..a_L derived from internal
};

// Empty result means the profile is a valid full tree; otherwise one message
// per violated invariant (including the exact Kraft check).
std::vector<std::string> validate_profile(const LevelProfile& profile);

// Sum over stored leaves of the reciprocal path products; exactly 1 for every
// valid full tree.
Rational kraft_sum(const LevelProfile& profile);

// Non-decreasing root-to-leaf depths, one per leaf.
using HuffmanSequence = std::vector<int>;

HuffmanSequence profile_to_sequence(const LevelProfile& profile); // throws ValidationError
LevelProfile sequence_to_profile(const BranchingSchedule& schedule,
                                 const HuffmanSequence& depths); // throws ValidationError
Rational kraft_sum(const BranchingSchedule& schedule, const HuffmanSequence& depths);

nlohmann::json profile_to_json(const LevelProfile& profile);
LevelProfile profile_from_json(const nlohmann::json& j); // throws ValidationError on bad shape

} // namespace treecount
