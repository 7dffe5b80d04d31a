#pragma once

#include <cstdint>
#include <vector>

#include "mwelect/lp.hpp"
#include "mwelect/profile.hpp"
#include "mwelect/rng.hpp"
#include "mwelect/symmetric.hpp"

namespace mwelect {

// Pairwise dependent rounding of fractional masses with an integral sum K:
// returns a 0/1 vector with exactly K ones and per-index expectation y_j.
// Pair selection is the lowest-index fractional pair; only the mass-shift
// direction is random.
std::vector<int> dependent_round(const std::vector<double>& y, Rng& rng);

struct RoundingOutcome {
    std::vector<CandidateId> t1;  // dependent rounding of the scaled LP mass
    std::vector<CandidateId> t2;  // uniform fill to k members
    std::uint64_t seed = 0;
};

struct LpRoundResult {
    Committee committee;  // t1 ∪ t2
    RoundingOutcome outcome;
    Rational score;
    FractionalSolution lp;
};

// The scaled hybrid selection: solve the relaxation, scale y so that
// floor(k * (1 - 1/sqrt(s))) mass remains, round dependently, and fill the
// remaining seats uniformly. s = 1 is rejected (the scale factor vanishes and
// the procedure degenerates to a uniform draw).
LpRoundResult lp_round_select(const PreferenceProfile& profile, int k, int s, std::uint64_t seed);
LpRoundResult lp_round_select(const SymmetricProfile& sp, int k, int s, std::uint64_t seed);

// Rounding stage against a precomputed relaxation solution, so sweeps over
// seeds can share one solve.
LpRoundResult lp_round_with_solution(const PreferenceProfile& profile, int k, int s,
                                     const FractionalSolution& lp, std::uint64_t seed);
LpRoundResult lp_round_with_solution(const SymmetricProfile& sp, int k, int s,
                                     const FractionalSolution& lp, std::uint64_t seed);

}  // namespace mwelect
