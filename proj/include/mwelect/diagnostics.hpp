#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mwelect/io.hpp"
#include "mwelect/profile.hpp"
#include "mwelect/rational.hpp"
#include "mwelect/selection.hpp"
#include "mwelect/symmetric.hpp"

namespace mwelect {

struct BlockingEntry {
    CandidateId candidate = -1;
    Rational supporter_fraction;  // fraction of total voter weight preferring it to all of T
};

struct CoreReport {
    Rational alpha;
    bool in_core = true;
    std::vector<BlockingEntry> blocking;  // candidates with fraction >= alpha/k
};

// Blocking candidates per the alpha-approximate core: c blocks T when at
// least alpha*n/k voters strictly prefer c to every member of T (1-Borda).
CoreReport core_blocking(const PreferenceProfile& profile, const Committee& committee,
                         const Rational& alpha);
CoreReport core_blocking(const SymmetricProfile& sp, const Committee& committee,
                         const Rational& alpha);

// For a committee certified in the alpha-core (alpha >= 1), asserts the score
// bound alpha * (k+1)/k * (m+1)/(k+1) exactly. Throws if the committee is not
// in the alpha-core.
bool verify_core_score_bound(const PreferenceProfile& profile, const Committee& committee,
                             const Rational& alpha);

enum class Rule { Greedy, Banzhaf };

struct MonotoneChainResult {
    bool is_monotone = true;
    int first_violation = 0;  // k at which containment first fails; 0 if none
};

MonotoneChainResult check_monotone_chain(Rule rule, const PreferenceProfile& profile, int k_max,
                                         int s);
MonotoneChainResult check_monotone_chain(Rule rule, const SymmetricProfile& sp, int k_max, int s);

struct MonotonicityBound {
    double bound = 0;
    std::string argmin_branch;  // "Y", "XX" or "XY"
    double y_branch = 0, xx_branch = 0, xy_branch = 0;
};

// Closed forms behind the committee-monotonicity gap: the (k+1)-scaled scores
// of one Y; two X; one X plus one Y, in the large-m limit.
MonotonicityBound eval_monotonicity_bound(double a, double b);

struct RuleOutcome {
    std::string rule;
    Rational score;
    double wall_ms = 0;
    std::optional<Rational> ratio_vs_rand;
    std::optional<Rational> ratio_vs_opt;
    std::optional<Committee> committee;
    std::optional<SelectionTrace> trace;
    std::optional<double> random_mean;  // random rule only
    std::optional<double> random_stddev;
};

struct RunReport {
    std::string instance_id;
    std::uint64_t seed = 0;
    int m = 0, k = 0, s = 0;
    long long voters = 0;  // voters or groups
    bool symmetric = false;
    Rational rand_value;  // rand_benchmark(m, k, s), denominator of ratio_vs_rand
    std::optional<Rational> opt_score;
    std::vector<RuleOutcome> rules;
};

struct ReportOptions {
    std::uint64_t seed = 0;
    int trials = 1000;           // random rule
    long long opt_cap = 10000000;
    bool attach_opt = true;      // attach Opt when enumeration fits the cap
    bool with_traces = true;
    bool exact = true;           // float-mode greedy on large explicit profiles when off
};

// Known rule names: greedy, banzhaf, random, opt, lp-round.
RunReport run_report(const LoadedProfile& instance, const std::vector<std::string>& rules, int k,
                     int s, const ReportOptions& opts);

std::string report_to_json(const RunReport& report);
std::string report_csv_header();
std::string report_to_csv_rows(const RunReport& report);

}  // namespace mwelect
