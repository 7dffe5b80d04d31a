#include "mwelect/rounding.hpp"

#include <algorithm>
#include <cmath>

#include "mwelect/errors.hpp"
#include "mwelect/scoring.hpp"

namespace mwelect {

namespace {

constexpr double kSnap = 1e-9;

bool fractional(double v) { return v > kSnap && v < 1.0 - kSnap; }

}  // namespace

std::vector<int> dependent_round(const std::vector<double>& y, Rng& rng) {
    const int n = static_cast<int>(y.size());
    double sum = 0;
    for (double v : y) {
        if (v < -kSnap || v > 1.0 + kSnap) throw ArgError("mass outside [0, 1]");
        sum += v;
    }
    long long target = std::llround(sum);
    if (std::abs(sum - target) > 1e-9 * std::max<double>(1, n))
        throw ArgError("masses must sum to an integer");

    std::vector<double> w = y;
    for (double& v : w) v = std::min(1.0, std::max(0.0, v));

    int a = 0;
    while (true) {
        while (a < n && !fractional(w[a])) ++a;
        if (a >= n) break;
        int b = a + 1;
        while (b < n && !fractional(w[b])) ++b;
        if (b >= n) {
            // single fractional entry left; the integral sum forces it to 0 or 1
            w[a] = w[a] >= 0.5 ? 1.0 : 0.0;
            break;
        }
        double alpha = std::min(1.0 - w[a], w[b]);
        double beta = std::min(w[a], 1.0 - w[b]);
        if (rng.uniform01() < beta / (alpha + beta)) {
            w[a] += alpha;
            w[b] -= alpha;
        } else {
            w[a] -= beta;
            w[b] += beta;
        }
        if (w[a] < kSnap) w[a] = 0.0;
        if (w[a] > 1.0 - kSnap) w[a] = 1.0;
        if (w[b] < kSnap) w[b] = 0.0;
        if (w[b] > 1.0 - kSnap) w[b] = 1.0;
    }

    std::vector<int> out(n, 0);
    long long ones = 0;
    for (int i = 0; i < n; ++i) {
        out[i] = w[i] >= 0.5 ? 1 : 0;
        ones += out[i];
    }
    if (ones != target) throw ArgError("dependent rounding lost mass");  // defends the invariant
    return out;
}

namespace {

template <class ScoreFn>
LpRoundResult round_from_solution(int m, int k, int s, const FractionalSolution& lp,
                                  std::uint64_t seed, ScoreFn&& score_of) {
    if (s < 2) throw ArgError("lp-round requires s >= 2; with s = 1 the scaled mass is empty");
    if (k > m) throw ArgError("k exceeds m");
    if (static_cast<int>(lp.y.size()) != m) throw ArgError("solution size mismatch");

    Rng rng(seed);
    const int t1_size = static_cast<int>(std::floor(k * (1.0 - 1.0 / std::sqrt(double(s))) + 1e-12));
    LpRoundResult res;
    res.lp = lp;
    res.outcome.seed = seed;

    std::vector<int> chosen(m, 0);
    if (t1_size > 0) {
        double ysum = 0;
        for (double v : lp.y) ysum += v;
        std::vector<double> scaled(lp.y);
        for (double& v : scaled) v *= t1_size / ysum;  // mass sums to exactly t1_size
        chosen = dependent_round(scaled, rng);
    }
    for (int j = 0; j < m; ++j)
        if (chosen[j]) res.outcome.t1.push_back(j);

    std::vector<CandidateId> rest;
    for (int j = 0; j < m; ++j)
        if (!chosen[j]) rest.push_back(j);
    int need = k - static_cast<int>(res.outcome.t1.size());
    std::vector<int> pick = rng.sample_without_replacement(static_cast<int>(rest.size()), need);
    for (int idx : pick) res.outcome.t2.push_back(rest[idx]);

    std::vector<CandidateId> members = res.outcome.t1;
    members.insert(members.end(), res.outcome.t2.begin(), res.outcome.t2.end());
    res.committee = Committee::of(std::move(members));
    res.score = score_of(res.committee);
    return res;
}

}  // namespace

LpRoundResult lp_round_with_solution(const PreferenceProfile& profile, int k, int s,
                                     const FractionalSolution& lp, std::uint64_t seed) {
    return round_from_solution(profile.m, k, s, lp, seed, [&](const Committee& c) {
        return score_s_borda(profile, c, s);
    });
}

LpRoundResult lp_round_with_solution(const SymmetricProfile& sp, int k, int s,
                                     const FractionalSolution& lp, std::uint64_t seed) {
    return round_from_solution(sp.m, k, s, lp, seed, [&](const Committee& c) {
        return committee_score_symmetric(sp, c, s);
    });
}

LpRoundResult lp_round_select(const PreferenceProfile& profile, int k, int s, std::uint64_t seed) {
    if (s < 2) throw ArgError("lp-round requires s >= 2; with s = 1 the scaled mass is empty");
    FractionalSolution lp = solve_relaxation(profile, k, s);
    return lp_round_with_solution(profile, k, s, lp, seed);
}

LpRoundResult lp_round_select(const SymmetricProfile& sp, int k, int s, std::uint64_t seed) {
    if (s < 2) throw ArgError("lp-round requires s >= 2; with s = 1 the scaled mass is empty");
    FractionalSolution lp = solve_relaxation(sp, k, s);
    return lp_round_with_solution(sp, k, s, lp, seed);
}

}  // namespace mwelect
