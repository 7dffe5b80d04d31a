#include "mwelect/scoring.hpp"

#include <algorithm>

#include "mwelect/errors.hpp"
#include "mwelect/order_stats.hpp"

namespace mwelect {

namespace {

void check_committee(const PreferenceProfile& profile, const Committee& committee, int s) {
    committee.validate(profile.m);
    if (s < 1 || s > committee.k())
        throw ArgError("s must satisfy 1 <= s <= k (got s=" + std::to_string(s) +
                       ", k=" + std::to_string(committee.k()) + ")");
}

}  // namespace

CommonWeights common_weights(const PreferenceProfile& profile) {
    CommonWeights cw;
    cw.numerators.reserve(profile.voters.size());
    if (!profile.weighted()) {
        cw.denominator = 1;
        cw.numerators.assign(profile.voters.size(), BigInt(1));
        cw.total = profile.num_voters();
        return cw;
    }
    BigInt lcm = 1;
    for (const auto& w : profile.weights) lcm = boost::multiprecision::lcm(lcm, w.den());
    cw.denominator = lcm;
    cw.total = 0;
    for (const auto& w : profile.weights) {
        cw.numerators.push_back(w.num() * (lcm / w.den()));
        cw.total += cw.numerators.back();
    }
    return cw;
}

Rational score_s_borda(const PreferenceProfile& profile, const Committee& committee, int s) {
    check_committee(profile, committee, s);
    CommonWeights cw = common_weights(profile);
    BigInt acc = 0;
    std::vector<RankValue> ranks(committee.members.size());
    for (int v = 0; v < profile.num_voters(); ++v) {
        const Ranking& r = profile.voters[v];
        for (std::size_t i = 0; i < committee.members.size(); ++i)
            ranks[i] = r.rank_of(committee.members[i]);
        std::nth_element(ranks.begin(), ranks.begin() + (s - 1), ranks.end());
        long long sum = 0;
        for (int i = 0; i < s; ++i) sum += ranks[i];
        acc += cw.numerators[v] * sum;
    }
    return Rational(acc, cw.total);
}

Rational score_satisfaction(const PreferenceProfile& profile, const Committee& committee, int s) {
    return Rational(BigInt(s) * (profile.m + 1)) - score_s_borda(profile, committee, s);
}

Rational rand_benchmark(int m, int k, int s) {
    if (!(1 <= s && s <= k && k <= m)) throw ArgError("rand_benchmark needs 1 <= s <= k <= m");
    return Rational(BigInt(s) * (s + 1) * (m + 1), BigInt(2) * (k + 1));
}

Rational expected_completion_score(const PreferenceProfile& profile,
                                   const std::vector<CandidateId>& fixed, int k, int s) {
    int m = profile.m;
    Committee fc = Committee::of(fixed);  // validates distinctness
    if (!fixed.empty()) fc.validate(m);
    if (static_cast<int>(fixed.size()) > k) throw ArgError("|fixed| exceeds k");
    if (k > m) throw ArgError("k exceeds m");
    if (s < 1 || s > k) throw ArgError("s must satisfy 1 <= s <= k");
    long long draws = k - static_cast<long long>(fixed.size());

    CommonWeights cw = common_weights(profile);
    Rational total;
    std::vector<RankValue> fixed_ranks(fixed.size());
    std::vector<RankValue> pool_ranks;
    pool_ranks.reserve(m - fixed.size());
    for (int v = 0; v < profile.num_voters(); ++v) {
        const Ranking& r = profile.voters[v];
        for (std::size_t i = 0; i < fc.members.size(); ++i)
            fixed_ranks[i] = r.rank_of(fc.members[i]);
        pool_ranks.clear();
        for (CandidateId c = 0; c < m; ++c)
            if (!fc.contains(c)) pool_ranks.push_back(r.rank_of(c));
        Rational e = expected_smallest_sum(fixed_ranks, RankSet::from_values(pool_ranks), draws, s);
        total += Rational(cw.numerators[v]) * e;
    }
    return total / Rational(cw.total);
}

Rational expected_score_symmetric_blocks(const SymmetricProfile& sp,
                                         const std::vector<CandidateId>& chosen_critical,
                                         const std::vector<long long>& draws_per_block, int s) {
    if (static_cast<int>(draws_per_block.size()) != sp.num_blocks())
        throw ArgError("draws_per_block size must match block count");
    long long chosen = static_cast<long long>(chosen_critical.size());
    std::vector<int> crit_idx;
    for (CandidateId c : chosen_critical) {
        int i = sp.critical_index(c);
        if (i < 0) throw ArgError("candidate " + std::to_string(c) + " is not critical");
        crit_idx.push_back(i);
    }
    std::sort(crit_idx.begin(), crit_idx.end());
    for (std::size_t i = 1; i < crit_idx.size(); ++i)
        if (crit_idx[i] == crit_idx[i - 1]) throw ArgError("duplicate chosen critical");
    for (int b = 0; b < sp.num_blocks(); ++b) {
        if (draws_per_block[b] < 0) throw ArgError("negative dummy count");
        chosen += draws_per_block[b];
    }
    if (chosen < s) throw ArgError("committee smaller than s");
    if (s < 1) throw ArgError("s must be >= 1");

    Rational total;
    std::vector<RankValue> fixed;
    for (std::size_t g = 0; g < sp.groups.size(); ++g) {
        fixed.clear();
        for (int i : crit_idx) fixed.push_back(sp.groups[g].placed[i]);
        std::vector<PoolDraw> pools;
        for (int b = 0; b < sp.num_blocks(); ++b) {
            PoolDraw pd;
            pd.pool = sp.support(b, static_cast<int>(g));
            pd.draws = draws_per_block[b];
            if (pd.draws > static_cast<long long>(sp.block_ids(b).size()))
                throw ArgError("dummy count exceeds block size");
            pools.push_back(std::move(pd));
        }
        Rational e = expected_smallest_sum_multi(fixed, pools, s);
        total += sp.groups[g].weight * e;
    }
    return total;
}

Rational expected_score_symmetric(const SymmetricProfile& sp,
                                  const std::vector<CandidateId>& chosen_critical,
                                  long long dummy_count, int s) {
    if (sp.num_blocks() != 1)
        throw ArgError("profile has multiple exchangeable blocks; use the per-block overload");
    return expected_score_symmetric_blocks(sp, chosen_critical, {dummy_count}, s);
}

Rational committee_score_symmetric(const SymmetricProfile& sp, const Committee& committee, int s) {
    committee.validate(sp.m);
    if (s < 1 || s > committee.k()) throw ArgError("s must satisfy 1 <= s <= k");
    std::vector<CandidateId> crit;
    std::vector<long long> per_block(sp.num_blocks(), 0);
    for (CandidateId c : committee.members) {
        if (sp.critical_index(c) >= 0) {
            crit.push_back(c);
        } else {
            int b = sp.block_index(c);
            if (b < 0) throw ArgError("candidate " + std::to_string(c) + " not in any block");
            ++per_block[b];
        }
    }
    return expected_score_symmetric_blocks(sp, crit, per_block, s);
}

}  // namespace mwelect
