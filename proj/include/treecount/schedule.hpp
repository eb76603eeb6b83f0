#pragma once

#include <string>
#include <vector>

namespace treecount {

enum class Parity { even, odd };

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }
inline Parity level_parity(int level) { return level % 2 == 0 ? Parity::even : Parity::odd; }

// Per-level branching factors, cycled with period = factors.size().
// Level j of a tree branches factor(j) ways.
class BranchingSchedule {
public:
    explicit BranchingSchedule(std::vector<int> factors);

    static BranchingSchedule n_ary(int n);
    static BranchingSchedule binary_ternary() { return BranchingSchedule({2, 3}); }

    int factor(int level) const { return factors_[static_cast<size_t>(level) % factors_.size()]; }
    const std::vector<int>& factors() const { return factors_; }
    const std::string& label() const { return label_; }
    bool uniform() const { return factors_.size() == 1; }

    bool operator==(const BranchingSchedule& other) const { return factors_ == other.factors_; }

private:
    std::vector<int> factors_;
    std::string label_;
};

// "2" -> [2], "2,3" -> [2,3]
BranchingSchedule parse_schedule(const std::string& text);

} // namespace treecount
