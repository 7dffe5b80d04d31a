#pragma once

#include <cstdint>
#include <vector>

#include "mwelect/rational.hpp"

namespace mwelect {

using CandidateId = std::int32_t;
using RankValue = std::int32_t;  // 1 = best, m = worst

// A voter's total order over candidates 0..m-1, stored both ways.
class Ranking {
  public:
    Ranking() = default;

    // `order` lists candidate ids from most to least preferred.
    static Ranking from_order(const std::vector<CandidateId>& order);
    // `ranks[c]` is candidate c's rank in 1..m.
    static Ranking from_ranks(const std::vector<RankValue>& ranks);

    int m() const { return static_cast<int>(rank_of_.size()); }
    RankValue rank_of(CandidateId c) const { return rank_of_[c]; }
    CandidateId candidate_at(RankValue r) const { return candidate_at_[r - 1]; }
    CandidateId top() const { return candidate_at_[0]; }
    CandidateId bottom() const { return candidate_at_.back(); }

    const std::vector<RankValue>& ranks() const { return rank_of_; }
    std::vector<CandidateId> order() const { return candidate_at_; }

  private:
    void check_bijection() const;
    std::vector<RankValue> rank_of_;       // candidate -> rank
    std::vector<CandidateId> candidate_at_;  // rank-1 -> candidate
};

// n voters' total orders over m candidates, with optional positive
// multiplicities. Immutable after construction; scoring is pure.
struct PreferenceProfile {
    int m = 0;
    std::vector<Ranking> voters;
    std::vector<Rational> weights;  // empty means unit weights

    static PreferenceProfile from_orders(int m, const std::vector<std::vector<CandidateId>>& orders,
                                         std::vector<Rational> weights = {});

    int num_voters() const { return static_cast<int>(voters.size()); }
    bool weighted() const { return !weights.empty(); }
    Rational weight_of(int voter) const { return weighted() ? weights[voter] : Rational(1); }
    Rational total_weight() const;

    void validate() const;  // throws ArgError on any invariant violation
};

// A size-k candidate subset; members kept sorted.
struct Committee {
    std::vector<CandidateId> members;

    static Committee of(std::vector<CandidateId> ids);

    int k() const { return static_cast<int>(members.size()); }
    bool contains(CandidateId c) const;
    void validate(int m) const;
};

}  // namespace mwelect
