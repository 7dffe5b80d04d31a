#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mwelect/profile.hpp"
#include "mwelect/rational.hpp"
#include "mwelect/symmetric.hpp"

namespace mwelect {

struct TracePick {
    CandidateId candidate = -1;
    bool dummy = false;  // exchangeable dummy pick on a symmetric profile
    Rational score;      // objective after this pick (see rule notes below)
    Rational marginal;   // previous objective minus this one
};

// Trace notes: greedy records the committee's own score after each pick; with
// fewer than s members that is the sum of all members' ranks. Banzhaf records
// its completion objective (expected final score), which is non-increasing at
// every step; its last entry equals the final committee score.
struct SelectionTrace {
    std::string rule;
    int k = 0, s = 0;
    std::vector<TracePick> picks;
};

struct SelectionResult {
    Committee committee;
    Rational score;  // exact s-Borda score of the final committee
    SelectionTrace trace;
};

// Greedy: each step adds the candidate minimizing the resulting score, ties
// to the lowest candidate id.
SelectionResult greedy(const PreferenceProfile& profile, int k, int s);
SelectionResult greedy(const SymmetricProfile& sp, int k, int s);

// Float-mode greedy for large explicit instances (1e-9 comparison tolerance,
// documented in the README); exact mode is authoritative.
SelectionResult greedy_float(const PreferenceProfile& profile, int k, int s);

// Banzhaf: each step adds the candidate minimizing the expected final s-Borda
// score over uniform completions of the committee.
SelectionResult banzhaf(const PreferenceProfile& profile, int k, int s);
SelectionResult banzhaf(const SymmetricProfile& sp, int k, int s);

struct BruteForceResult {
    Committee committee;
    Rational score;
};

// Global optimum by enumeration; refuses when the committee count exceeds cap.
BruteForceResult brute_force_opt(const PreferenceProfile& profile, int k, int s,
                                 long long cap = 10000000);
BruteForceResult brute_force_opt(const SymmetricProfile& sp, int k, int s,
                                 long long cap = 10000000);

struct RandomCommitteeResult {
    double mean = 0.0;
    double stddev = 0.0;  // population standard deviation over trials
    Committee best;
    Rational best_score;
};

RandomCommitteeResult random_committee(const PreferenceProfile& profile, int k, int s,
                                       std::uint64_t seed, int trials);
RandomCommitteeResult random_committee(const SymmetricProfile& sp, int k, int s,
                                       std::uint64_t seed, int trials);

}  // namespace mwelect
