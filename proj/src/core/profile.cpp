#include "mwelect/profile.hpp"

#include <algorithm>

#include "mwelect/errors.hpp"

namespace mwelect {

Ranking Ranking::from_order(const std::vector<CandidateId>& order) {
    Ranking r;
    r.candidate_at_ = order;
    r.rank_of_.assign(order.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        CandidateId c = order[i];
        if (c < 0 || static_cast<std::size_t>(c) >= order.size())
            throw ArgError("ranking references candidate id " + std::to_string(c) +
                           " outside 0.." + std::to_string(order.size() - 1));
        r.rank_of_[c] = static_cast<RankValue>(i + 1);
    }
    r.check_bijection();
    return r;
}

Ranking Ranking::from_ranks(const std::vector<RankValue>& ranks) {
    Ranking r;
    r.rank_of_ = ranks;
    r.candidate_at_.assign(ranks.size(), -1);
    for (std::size_t c = 0; c < ranks.size(); ++c) {
        RankValue rk = ranks[c];
        if (rk < 1 || static_cast<std::size_t>(rk) > ranks.size())
            throw ArgError("rank " + std::to_string(rk) + " outside 1.." +
                           std::to_string(ranks.size()));
        r.candidate_at_[rk - 1] = static_cast<CandidateId>(c);
    }
    r.check_bijection();
    return r;
}

void Ranking::check_bijection() const {
    for (std::size_t i = 0; i < candidate_at_.size(); ++i) {
        CandidateId c = candidate_at_[i];
        if (c < 0) throw ArgError("ranking is not a bijection: rank " + std::to_string(i + 1) +
                                  " unassigned");
        if (rank_of_[c] != static_cast<RankValue>(i + 1))
            throw ArgError("ranking is not a bijection: candidate " + std::to_string(c) +
                           " repeated");
    }
}

PreferenceProfile PreferenceProfile::from_orders(int m,
                                                 const std::vector<std::vector<CandidateId>>& orders,
                                                 std::vector<Rational> weights) {
    PreferenceProfile p;
    p.m = m;
    p.voters.reserve(orders.size());
    for (const auto& o : orders) {
        if (static_cast<int>(o.size()) != m)
            throw ArgError("ranking lists " + std::to_string(o.size()) + " candidates, expected " +
                           std::to_string(m));
        p.voters.push_back(Ranking::from_order(o));
    }
    p.weights = std::move(weights);
    p.validate();
    return p;
}

Rational PreferenceProfile::total_weight() const {
    if (!weighted()) return Rational(num_voters());
    Rational w;
    for (const auto& x : weights) w += x;
    return w;
}

void PreferenceProfile::validate() const {
    if (m < 1) throw ArgError("profile needs at least one candidate");
    if (voters.empty()) throw ArgError("profile needs at least one voter");
    for (const auto& v : voters)
        if (v.m() != m) throw ArgError("ranking size differs from candidate count");
    if (!weights.empty()) {
        if (weights.size() != voters.size())
            throw ArgError("weight count differs from voter count");
        for (const auto& w : weights)
            if (w.sign() <= 0) throw ArgError("voter weights must be positive");
    }
}

Committee Committee::of(std::vector<CandidateId> ids) {
    Committee t;
    t.members = std::move(ids);
    std::sort(t.members.begin(), t.members.end());
    for (std::size_t i = 1; i < t.members.size(); ++i)
        if (t.members[i] == t.members[i - 1])
            throw ArgError("committee has duplicate candidate " + std::to_string(t.members[i]));
    return t;
}

bool Committee::contains(CandidateId c) const {
    return std::binary_search(members.begin(), members.end(), c);
}

void Committee::validate(int m) const {
    if (members.empty()) throw ArgError("committee is empty");
    for (CandidateId c : members)
        if (c < 0 || c >= m)
            throw ArgError("committee member " + std::to_string(c) + " outside 0.." +
                           std::to_string(m - 1));
}

}  // namespace mwelect
