#include "treecount/schedule.hpp"

#include <sstream>
#include <stdexcept>

namespace treecount {

BranchingSchedule::BranchingSchedule(std::vector<int> factors) : factors_(std::move(factors)) {
    if (factors_.empty())
        throw std::invalid_argument("branching schedule needs at least one factor");
    for (int b : factors_)
        if (b < 2)
            throw std::invalid_argument("branching factor " + std::to_string(b) + " < 2");
    if (factors_.size() == 1) {
        label_ = "n-ary(" + std::to_string(factors_[0]) + ")";
    } else {
        std::ostringstream os;
        for (size_t j = 0; j < factors_.size(); ++j)
            os << (j ? "," : "") << factors_[j];
        label_ = os.str();
    }
}

BranchingSchedule BranchingSchedule::n_ary(int n) { return BranchingSchedule({n}); }

BranchingSchedule parse_schedule(const std::string& text) {
    std::vector<int> factors;
    std::string tok;
    std::istringstream is(text);
    while (std::getline(is, tok, ',')) {
        size_t used = 0;
        int v;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad schedule token '" + tok + "'");
        }
        if (used != tok.size())
            throw std::invalid_argument("bad schedule token '" + tok + "'");
        factors.push_back(v);
    }
    return BranchingSchedule(std::move(factors));
}

} // namespace treecount
