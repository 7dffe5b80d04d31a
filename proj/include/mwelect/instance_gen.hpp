#pragma once

#include <cstdint>
#include <vector>

#include "mwelect/profile.hpp"
#include "mwelect/symmetric.hpp"

namespace mwelect {

// Regular max-coverage instance: every set has size universe/budget.
struct CoverInstance {
    int universe = 0;                    // elements 0..universe-1
    int budget = 0;                      // number of sets a cover may use
    std::vector<std::vector<int>> sets;  // each of size universe/budget

    void validate() const;
};

// n independent uniformly random rankings. k is carried for bookkeeping only
// (it bounds nothing here beyond k <= m).
PreferenceProfile gen_random(int m, int n, int k, std::uint64_t seed);

// One voter per permutation of the m candidates (m <= 8).
PreferenceProfile gen_all_permutations(int m);

struct SpiralParams {
    int layers = 8;
    double a = 0.1;            // top-layer rank scale; small keeps windows thin
    int resolution = 1000;     // angular grid steps per layer
    int rank_grid = 500000;    // number of candidates m
    double window_margin = 1.60;  // tie margin at theta = 0, decaying as phi^theta
};

struct SpiralInstance {
    SymmetricProfile profile;
    int k = 0;                            // criticals, including the opener
    std::vector<CandidateId> pick_order;  // intended greedy order (ascending ids)
    int bumped_ranks = 0;                 // rank-rounding collisions resolved
    int gap_cells = 0;                    // grid cells left uncovered at layer tails
};

// Golden-ratio spiral instance: critical candidate ranks decay by the golden
// ratio per layer; window lengths are tuned so each critical's marginal gain
// matches a dummy's, with `window_margin` breaking the tie in the critical's
// favor. Greedy should take the opener and then the spiral in order.
SpiralInstance gen_spiral(const SpiralParams& params);

// Two exchangeable candidate blocks: type X spans ranks [a*m, b*m] and type Y
// the complement, for every voter. The committee-monotonicity gap instance.
SymmetricProfile gen_monotonicity_gap(int m, double a = 0.377, double b = 0.552);

// Three equal voter groups with two critical candidates placed top/second,
// bottom/top and bottom/second-bottom; dummies exchangeable. Downstream
// analysis uses k = floor(sqrt(m)) - 1.
SymmetricProfile gen_core_counterexample(int m);

// k/s voter groups; group j places criticals j, (k/s)+j, 2(k/s)+j, ... at
// ranks 1..s, all other criticals at the bottom, dummies exchangeable between.
SymmetricProfile gen_sborda_bad(int m, int k, int s);

struct CoverGenOptions {
    int copy_cap = 16;              // distinct dummy randomizations per element
    long long cell_budget = 100000000;  // voters x candidates materialization cap
};

// Reduction-style instance from a cover instance: one critical candidate per
// set, placed at the top for voters of covered elements and at the bottom
// otherwise; dummies are randomized per voter copy, copies carried as weights.
PreferenceProfile gen_from_cover(const CoverInstance& cover, double epsilon, std::uint64_t seed,
                                 const CoverGenOptions& opts = {});

// Candidate count used by gen_from_cover: ceil((2/epsilon') * budget * #sets),
// epsilon' = 10 * epsilon.
int cover_profile_m(const CoverInstance& cover, double epsilon);

}  // namespace mwelect
