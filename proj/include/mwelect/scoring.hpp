#pragma once

#include <vector>

#include "mwelect/profile.hpp"
#include "mwelect/rational.hpp"
#include "mwelect/symmetric.hpp"

namespace mwelect {

// Exact s-Borda score: weighted average over voters of the sum of the s
// smallest ranks among committee members (rank 1 = best).
Rational score_s_borda(const PreferenceProfile& profile, const Committee& committee, int s);

// Satisfaction view: s*(m+1) - score_s_borda.
Rational score_satisfaction(const PreferenceProfile& profile, const Committee& committee, int s);

// Expected s-Borda score of a uniformly random size-k committee:
// s(s+1)/2 * (m+1)/(k+1).
Rational rand_benchmark(int m, int k, int s);

// Expected s-Borda score when the k - |fixed| remaining seats are filled
// uniformly at random from the candidates outside `fixed`.
Rational expected_completion_score(const PreferenceProfile& profile,
                                   const std::vector<CandidateId>& fixed, int k, int s);

// Expected s-Borda score of a committee made of the given critical candidates
// plus `dummy_count` exchangeable dummies (single-block profiles).
Rational expected_score_symmetric(const SymmetricProfile& sp,
                                  const std::vector<CandidateId>& chosen_critical,
                                  long long dummy_count, int s);

// Multi-block version: draws_per_block[b] exchangeable members from block b.
Rational expected_score_symmetric_blocks(const SymmetricProfile& sp,
                                         const std::vector<CandidateId>& chosen_critical,
                                         const std::vector<long long>& draws_per_block, int s);

// Score of a concrete committee on a symmetric profile (non-critical members
// are exchangeable, so this is exact).
Rational committee_score_symmetric(const SymmetricProfile& sp, const Committee& committee, int s);

// Per-voter weight numerators over a common denominator, for integer-only
// accumulation in inner loops.
struct CommonWeights {
    std::vector<BigInt> numerators;
    BigInt denominator;  // sum of numerators = total weight * denominator
    BigInt total;        // sum of numerators
};
CommonWeights common_weights(const PreferenceProfile& profile);

}  // namespace mwelect
