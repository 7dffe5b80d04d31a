#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mwelect {

struct CheckLine {
    std::string label;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    bool pass = true;
    std::vector<CheckLine> lines;

    void add(CheckLine line) {
        pass = pass && line.pass;
        lines.push_back(std::move(line));
    }
};

struct VerifyOptions {
    std::uint64_t seed = 20240915;
    int sweep_instances = 1000;  // size of the random-instance sweeps
    bool quick = false;          // shrink everything for smoke tests
};

// Each check pins its own instance sizes and tolerances; options only control
// sweep sizes and the master seed.
CheckLine check_greedy_bound_1borda(const VerifyOptions& opts);   // greedy <= 2*(m+1)/(k+1)
CheckLine check_banzhaf_bounds(const VerifyOptions& opts);        // banzhaf <= s(s+1)/2*(m+1)/(k+1)
CheckLine check_greedy_bound_sborda(const VerifyOptions& opts);   // greedy <= 2s^2*(m+1)/(k+1)
CheckLine check_spiral(const VerifyOptions& opts);                // spiral order + ratio > 1.5
CheckLine check_monotonicity_gap(const VerifyOptions& opts);      // bound > 1.015 + m = 1e4 match
CheckLine check_core_results(const VerifyOptions& opts);          // counterexample + score bound
CheckLine check_sborda_separation(const VerifyOptions& opts);     // greedy >= (s^2/8)*Rand at 400/80/16
CheckLine check_completion_formula(const VerifyOptions& opts);    // vs completion enumeration
CheckLine check_order_stats(const VerifyOptions& opts);           // exhaustive m <= 8
CheckLine check_dependent_rounding(const VerifyOptions& opts);    // sums + 4-sigma marginals
CheckLine check_lp(const VerifyOptions& opts);                    // relaxation + rounding separation
CheckLine check_cover_reduction(const VerifyOptions& opts);       // YES-cover score
CheckLine check_random_benchmark(const VerifyOptions& opts);      // random instances near Rand
CheckLine check_banzhaf_monotonicity_witness(const VerifyOptions& opts);

std::vector<std::string> verify_suite_names();
SuiteResult verify_suite(const std::string& name, const VerifyOptions& opts);

}  // namespace mwelect
