#pragma once

#include <vector>

#include "mwelect/profile.hpp"
#include "mwelect/rank_set.hpp"
#include "mwelect/rational.hpp"

namespace mwelect {

// One voter group: a fixed rank for every critical candidate. Group weight is
// the fraction of voters; weights across a profile sum to 1.
struct SymmetricGroup {
    Rational weight;
    std::vector<RankValue> placed;  // placed[i] = rank of critical[i] in this group
};

// Compact stand-in for a profile whose non-critical ("dummy") candidates
// appear in all permutations over each group's free ranks. This captures the
// factorially-large constructions exactly: scores are expectations over the
// implicit permutations, computed with hypergeometric order statistics.
//
// Non-critical candidates may optionally be split into several exchangeable
// blocks, each permuted over its own rank support (per group). The default is
// a single block over all free ranks; block supports, when present, must
// partition the free ranks and match block sizes.
struct SymmetricProfile {
    int m = 0;
    std::vector<CandidateId> critical;  // sorted ids
    std::vector<SymmetricGroup> groups;
    std::vector<std::vector<CandidateId>> blocks;      // empty => one default block
    std::vector<std::vector<RankSet>> block_supports;  // [block][group]; empty => free ranks

    int num_critical() const { return static_cast<int>(critical.size()); }
    int num_groups() const { return static_cast<int>(groups.size()); }
    int num_blocks() const { return blocks.empty() ? 1 : static_cast<int>(blocks.size()); }
    long long num_free() const { return m - num_critical(); }

    // Index of a candidate in `critical`, or -1.
    int critical_index(CandidateId c) const;
    // Block index of a non-critical candidate.
    int block_index(CandidateId c) const;
    std::vector<CandidateId> block_ids(int b) const;

    std::vector<RankValue> sorted_placed(int group) const;
    RankSet free_ranks(int group) const;
    RankSet support(int block, int group) const;

    void validate() const;

    // Explicit profile with one voter per dummy permutation (per group),
    // weighted so totals match. Refuses above `max_voters`.
    PreferenceProfile materialize(long long max_voters = 100000) const;
};

}  // namespace mwelect
