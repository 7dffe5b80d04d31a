#pragma once

#include <vector>

#include "mwelect/profile.hpp"
#include "mwelect/rational.hpp"

namespace mwelect {

struct RankInterval {
    RankValue lo = 0, hi = 0;  // inclusive
};

// Sorted set of distinct ranks stored as disjoint runs. Pools of free ranks
// can span most of 1..m, so run-based storage keeps symmetric-profile
// operations proportional to the number of placed candidates, not to m.
class RankSet {
  public:
    RankSet() = default;

    static RankSet from_intervals(std::vector<RankInterval> runs);
    static RankSet from_values(std::vector<RankValue> values);  // need not be sorted
    // All ranks 1..m not in `excluded` (which must be sorted & distinct).
    static RankSet complement(int m, const std::vector<RankValue>& excluded);

    long long count() const { return count_; }
    bool empty() const { return count_ == 0; }
    long long count_leq(RankValue t) const;
    bool contains(RankValue r) const;
    const std::vector<RankInterval>& runs() const { return runs_; }

    BigInt sum_values() const;
    std::vector<RankValue> values() const;

  private:
    std::vector<RankInterval> runs_;
    long long count_ = 0;
};

}  // namespace mwelect
