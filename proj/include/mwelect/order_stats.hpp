#pragma once

#include <vector>

#include "mwelect/rank_set.hpp"
#include "mwelect/rational.hpp"

namespace mwelect {

// C(n, r); zero when r < 0 or r > n.
BigInt binomial(long long n, long long r);

// Expected t-th smallest rank of a uniformly random k-subset of ranks 1..m:
// t * (m+1) / (k+1).
Rational expected_order_stat(int m, int k, int t);

// Distribution of the number of "marked" items in a uniform `draws`-subset of
// a `population`, as the marked count grows one at a time. Probabilities are
// kept as integer numerators over the fixed denominator C(population, draws),
// truncated above `cap` (entries beyond cap are never needed by callers).
class HypergeomPmf {
  public:
    HypergeomPmf(long long population, long long draws, int cap);

    void advance_marked();  // marked count L -> L+1
    long long marked() const { return marked_; }
    const BigInt& denominator() const { return denom_; }
    const BigInt& numerator(int x) const { return num_[x]; }

    // Sum_{x=0}^{w0-1} (w0 - x) * num[x]; zero when w0 <= 0.
    BigInt partial_expectation(int w0) const;

  private:
    long long pop_, draws_, marked_;
    int cap_;
    std::vector<BigInt> num_;
    BigInt denom_;
};

// Exact E[sum of the s smallest ranks] when `draws` ranks are drawn uniformly
// without replacement from `pool` and unioned with `fixed`. Ranks must be
// distinct across fixed and pool; |fixed| + draws >= s is required.
Rational expected_smallest_sum(const std::vector<RankValue>& fixed, const RankSet& pool,
                               long long draws, int s);

struct PoolDraw {
    RankSet pool;
    long long draws = 0;
};

// Multi-pool generalization: independent uniform draws from each pool.
Rational expected_smallest_sum_multi(const std::vector<RankValue>& fixed,
                                     const std::vector<PoolDraw>& pools, int s);

// E[min rank] specialization with run-level summation; cost is proportional
// to the number of pool runs below the smallest fixed rank, independent of m.
// `fixed_min` is the smallest fixed rank, or 0 for "none".
Rational expected_min_rank(RankValue fixed_min, const RankSet& pool, long long draws);
// Numerator of sum_{t=lo}^{hi-1} C(P - pool.count_leq(t), draws) over C(P, draws):
// the survival mass used for incremental s=1 marginals.
BigInt min_rank_survival_sum(RankValue lo, RankValue hi, const RankSet& pool, long long draws);

// One selection step, one voter (or voter group): expected completion values
// for every candidate rank that might be added, in O(max_rank * s) setup and
// O(1) per query. `fixed` holds the ranks already chosen, `draws` candidates
// are completed uniformly from `pool`; with `exclude_added` the added rank is
// itself a pool member and is removed from the draw pool (the Banzhaf case).
class CompletionSweep {
  public:
    // max_rank bounds the queried ranks (usually m); terms beyond the last
    // fixed/pool rank still matter while fewer than s members are available.
    CompletionSweep(const std::vector<RankValue>& fixed, const RankSet& pool, long long draws,
                    int s, bool exclude_added, RankValue max_rank);

    const BigInt& denominator() const { return denom_; }
    // Numerator of E[sum of s smallest | fixed ∪ {r} ∪ draws].
    BigInt value_with(RankValue r) const { return pref_a_[r] + suf_b_[r]; }
    // Numerator of E[sum of s smallest | fixed ∪ draws] (exclude_added off only).
    const BigInt& base_value() const { return base_; }

  private:
    BigInt denom_, base_;
    std::vector<BigInt> pref_a_;  // pref_a_[r] = sum_{t<r} A_t
    std::vector<BigInt> suf_b_;   // suf_b_[r]  = sum_{t>=r} B_t
};

}  // namespace mwelect
