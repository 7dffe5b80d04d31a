#include "mwelect/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mwelect/diagnostics.hpp"
#include "mwelect/errors.hpp"
#include "mwelect/instance_gen.hpp"
#include "mwelect/order_stats.hpp"
#include "mwelect/rounding.hpp"
#include "mwelect/scoring.hpp"
#include "mwelect/selection.hpp"

namespace mwelect {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

struct SweepInstance {
    PreferenceProfile profile;
    int m, k;
};

SweepInstance sweep_instance(std::uint64_t seed) {
    Rng rng(seed);
    int m = 5 + static_cast<int>(rng.below(46));  // 5..50
    int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
    int n = 5 + static_cast<int>(rng.below(21));  // 5..25
    return {gen_random(m, n, k, rng.next()), m, k};
}

}  // namespace

CheckLine check_greedy_bound_1borda(const VerifyOptions& opts) {
    int count = opts.quick ? 60 : std::max(1000, opts.sweep_instances);
    int violations = 0;
    double worst = 0;
    for (int i = 0; i < count; ++i) {
        SweepInstance si = sweep_instance(opts.seed + i);
        SelectionResult g = greedy(si.profile, si.k, 1);
        Rational bound = Rational(2 * (si.m + 1), si.k + 1);
        if (!(g.score <= bound)) ++violations;
        worst = std::max(worst, (g.score / Rational(si.m + 1, si.k + 1)).to_double());
    }
    return {"greedy 1-Borda bound: score <= 2(m+1)/(k+1) on " + std::to_string(count) +
                " random instances",
            violations == 0, "violations=" + std::to_string(violations) +
                                 " worst_ratio_vs_rand=" + fmt(worst)};
}

CheckLine check_banzhaf_bounds(const VerifyOptions& opts) {
    int count = opts.quick ? 40 : std::max(1000, opts.sweep_instances);
    int violations = 0, runs = 0;
    double worst = 0;
    for (int i = 0; i < count; ++i) {
        SweepInstance si = sweep_instance(opts.seed + i);
        for (int s = 1; s <= std::min(3, si.k); ++s) {
            SelectionResult b = banzhaf(si.profile, si.k, s);
            Rational bound = rand_benchmark(si.m, si.k, s);
            if (!(b.score <= bound)) ++violations;
            worst = std::max(worst, (b.score / bound).to_double());
            ++runs;
        }
    }
    return {"banzhaf optimality: score <= s(s+1)/2*(m+1)/(k+1) over " + std::to_string(runs) +
                " runs (s in 1..3)",
            violations == 0,
            "violations=" + std::to_string(violations) + " worst_ratio=" + fmt(worst)};
}

CheckLine check_greedy_bound_sborda(const VerifyOptions& opts) {
    int count = opts.quick ? 40 : std::max(500, opts.sweep_instances / 2);
    int violations = 0, runs = 0;
    for (int i = 0; i < count; ++i) {
        SweepInstance si = sweep_instance(opts.seed + 7000 + i);
        for (int s = 1; s <= std::min(5, si.k); ++s) {
            SelectionResult g = greedy(si.profile, si.k, s);
            Rational bound = Rational(BigInt(2) * s * s * (si.m + 1), BigInt(si.k + 1));
            if (!(g.score <= bound)) ++violations;
            ++runs;
        }
    }
    return {"greedy s-Borda bound: score <= 2s^2*(m+1)/(k+1) over " + std::to_string(runs) +
                " runs (s in 1..5)",
            violations == 0, "violations=" + std::to_string(violations)};
}

namespace {

struct SpiralRun {
    bool in_order = true;
    bool no_dummy = true;
    Rational ratio;
};

SpiralRun run_spiral(int resolution) {
    SpiralParams params;
    params.layers = 8;
    params.resolution = resolution;
    SpiralInstance inst = gen_spiral(params);
    SelectionResult g = greedy(inst.profile, inst.k, 1);
    SpiralRun out;
    for (std::size_t i = 0; i < g.trace.picks.size(); ++i) {
        if (g.trace.picks[i].dummy) out.no_dummy = false;
        if (g.trace.picks[i].candidate != inst.pick_order[i]) out.in_order = false;
    }
    out.ratio = g.score * Rational(inst.k + 1) / Rational(inst.profile.m + 1);
    return out;
}

}  // namespace

CheckLine check_spiral(const VerifyOptions& opts) {
    // The continuum construction reaches 1.962 * Rand only asymptotically; at
    // this scale we require the structural properties plus ratio > 1.5 and
    // monotone convergence in the resolution.
    std::vector<int> resolutions = opts.quick ? std::vector<int>{100, 400}
                                              : std::vector<int>{100, 1000, 10000};
    std::vector<SpiralRun> runs;
    for (int r : resolutions) runs.push_back(run_spiral(r));
    const SpiralRun& base = runs[opts.quick ? 1 : 1];
    bool order_ok = true, dummy_ok = true, mono_ok = true;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        order_ok = order_ok && runs[i].in_order;
        dummy_ok = dummy_ok && runs[i].no_dummy;
        if (i > 0) mono_ok = mono_ok && runs[i - 1].ratio <= runs[i].ratio;
    }
    bool ratio_ok = base.ratio > Rational(3, 2);
    std::ostringstream detail;
    detail << "ratios=";
    for (std::size_t i = 0; i < runs.size(); ++i)
        detail << (i ? "," : "") << fmt(runs[i].ratio.to_double());
    detail << " in_order=" << order_ok << " no_dummy=" << dummy_ok;
    return {"spiral lower bound: greedy follows the spiral, no dummy, ratio > 1.5 and "
            "non-decreasing in resolution",
            order_ok && dummy_ok && mono_ok && ratio_ok, detail.str()};
}

CheckLine check_monotonicity_gap(const VerifyOptions& opts) {
    MonotonicityBound mb = eval_monotonicity_bound(0.377, 0.552);
    bool closed_ok = mb.bound > 1.015;

    // Exact block scores at m = 1e4 against the closed forms, O(1/m) apart.
    int m = opts.quick ? 2000 : 10000;
    SymmetricProfile sp = gen_monotonicity_gap(m, 0.377, 0.552);
    Rational ry = expected_score_symmetric_blocks(sp, {}, {0, 1}, 1);
    Rational rxx = expected_score_symmetric_blocks(sp, {}, {2, 0}, 1);
    Rational rxy = expected_score_symmetric_blocks(sp, {}, {1, 1}, 1);
    double tol = 10.0 / m;
    double dy = std::abs(2 * ry.to_double() / (m + 1) - mb.y_branch);
    double dxx = std::abs(3 * rxx.to_double() / (m + 1) - mb.xx_branch);
    double dxy = std::abs(3 * rxy.to_double() / (m + 1) - mb.xy_branch);
    bool match_ok = dy < tol && dxx < tol && dxy < tol;

    return {"monotonicity gap: closed-form bound > 1.015 and m=" + std::to_string(m) +
                " profile matches the forms within O(1/m)",
            closed_ok && match_ok,
            "bound=" + fmt(mb.bound) + " (" + mb.argmin_branch + ") errors=" + fmt(dy) + "," +
                fmt(dxx) + "," + fmt(dxy)};
}

CheckLine check_banzhaf_monotonicity_witness(const VerifyOptions& opts) {
    (void)opts;
    // Materialized gap instance at m = 6: the k=1 optimum is the band
    // candidate, the k=2 optimum is two outside candidates.
    SymmetricProfile sp = gen_monotonicity_gap(6, 0.377, 0.552);
    PreferenceProfile p = sp.materialize();
    MonotoneChainResult banz = check_monotone_chain(Rule::Banzhaf, p, 2, 1);
    MonotoneChainResult greedy_chain = check_monotone_chain(Rule::Greedy, p, 6, 1);
    bool pass = !banz.is_monotone && banz.first_violation == 2 && greedy_chain.is_monotone;
    return {"banzhaf committee-monotonicity violation found on the gap instance (greedy stays "
            "monotone)",
            pass, banz.is_monotone ? "no violation found" :
                                     "violation at k=" + std::to_string(banz.first_violation)};
}

CheckLine check_core_results(const VerifyOptions& opts) {
    bool pass = true;
    std::ostringstream detail;
    // Counterexample family: opt, greedy and banzhaf all pick c2 + dummies,
    // and c1 blocks with a third of the voters.
    for (int m : {16, 25, 36}) {
        int k = static_cast<int>(std::floor(std::sqrt(double(m)))) - 1;
        SymmetricProfile sp = gen_core_counterexample(m);
        auto is_c2_plus_dummies = [&](const Committee& c) {
            if (c.contains(0)) return false;
            return c.contains(1);
        };
        BruteForceResult opt = brute_force_opt(sp, k, 1);
        SelectionResult g = greedy(sp, k, 1);
        SelectionResult b = banzhaf(sp, k, 1);
        bool sel_ok = is_c2_plus_dummies(opt.committee) && is_c2_plus_dummies(g.committee) &&
                      is_c2_plus_dummies(b.committee) && opt.score == g.score && g.score == b.score;
        CoreReport rep = core_blocking(sp, g.committee, Rational(k, 3));
        bool block_ok = !rep.in_core && rep.blocking.size() >= 1 && rep.blocking[0].candidate == 0 &&
                        rep.blocking[0].supporter_fraction == Rational(1, 3);
        if (!(sel_ok && block_ok)) {
            pass = false;
            detail << "m=" << m << " failed; ";
        }
    }

    // Score bound for certified core committees, exhaustively on small random
    // profiles: alpha* is the smallest certifiable level (at least 1).
    int profiles = opts.quick ? 6 : 30;
    Rng rng(opts.seed + 99);
    int checked = 0;
    for (int i = 0; i < profiles; ++i) {
        int m = 3 + static_cast<int>(rng.below(6));  // 3..8
        int n = 3 + static_cast<int>(rng.below(6));
        PreferenceProfile p = gen_random(m, n, 0, rng.next());
        for (int k = 1; k <= m; ++k) {
            std::vector<CandidateId> idx(k);
            for (int t = 0; t < k; ++t) idx[t] = t;
            while (true) {
                Committee c = Committee::of(idx);
                Rational max_frac(0);
                CoreReport all = core_blocking(p, c, Rational(1, 1000000));
                for (const auto& e : all.blocking) max_frac = std::max(max_frac, e.supporter_fraction);
                Rational alpha_lim = std::max(Rational(1), Rational(k) * max_frac);
                Rational bound = alpha_lim * Rational(k + 1, k) * Rational(m + 1, k + 1);
                if (!(score_s_borda(p, c, 1) <= bound)) {
                    pass = false;
                    detail << "bound failed m=" << m << " k=" << k << "; ";
                }
                // strictly inside the core at alpha_lim + epsilon
                if (!verify_core_score_bound(p, c, alpha_lim + Rational(1, 1000000))) {
                    pass = false;
                    detail << "verify_core_score_bound failed; ";
                }
                ++checked;
                int t = k - 1;
                while (t >= 0 && idx[t] == m - k + t) --t;
                if (t < 0) break;
                ++idx[t];
                for (int u = t + 1; u < k; ++u) idx[u] = idx[u - 1] + 1;
            }
        }
    }
    detail << "committees_checked=" << checked;
    return {"core: counterexample family selects {c2}+dummies with c1 blocking at weight 1/3; "
            "score bound holds for every certified core committee (m <= 8)",
            pass, detail.str()};
}

CheckLine check_sborda_separation(const VerifyOptions& opts) {
    int m = 400, k = 80, s = 16;
    if (opts.quick) {
        m = 100;
        k = 20;
        s = 4;
    }
    SymmetricProfile sp = gen_sborda_bad(m, k, s);
    std::vector<CandidateId> all_crit(sp.critical.begin(), sp.critical.end());
    Rational opt_score = expected_score_symmetric(sp, all_crit, 0, s);
    Rational opt_bound(BigInt(s) * (s + 1), 2);
    SelectionResult g = greedy(sp, k, s);
    bool first_dummies = true;
    for (int i = 0; i < s; ++i) first_dummies = first_dummies && g.trace.picks[i].dummy;
    Rational lower = Rational(BigInt(s) * s * (m + 1), BigInt(8) * (k + 1));
    bool pass = opt_score <= opt_bound && first_dummies && g.score >= lower;
    return {"s-Borda separation at (m,k,s)=(" + std::to_string(m) + "," + std::to_string(k) + "," +
                std::to_string(s) + "): criticals score <= s(s+1)/2, greedy opens with s dummy "
                "picks and scores >= (s^2/8)*Rand",
            pass, "opt=" + fmt(opt_score.to_double()) + " greedy=" + fmt(g.score.to_double()) +
                      " required>=" + fmt(lower.to_double())};
}

namespace {

// Enumeration oracle for the completion expectation.
Rational completion_by_enumeration(const PreferenceProfile& p, const std::vector<CandidateId>& fixed,
                                   int k, int s) {
    std::vector<CandidateId> rest;
    for (CandidateId c = 0; c < p.m; ++c)
        if (std::find(fixed.begin(), fixed.end(), c) == fixed.end()) rest.push_back(c);
    int d = k - static_cast<int>(fixed.size());
    std::vector<int> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    Rational sum;
    long long count = 0;
    while (true) {
        std::vector<CandidateId> members = fixed;
        for (int i : idx) members.push_back(rest[i]);
        sum += score_s_borda(p, Committee::of(members), s);
        ++count;
        if (d == 0) break;
        int t = d - 1;
        while (t >= 0 && idx[t] == static_cast<int>(rest.size()) - d + t) --t;
        if (t < 0) break;
        ++idx[t];
        for (int u = t + 1; u < d; ++u) idx[u] = idx[u - 1] + 1;
    }
    return sum / Rational(count);
}

}  // namespace

CheckLine check_completion_formula(const VerifyOptions& opts) {
    int cases = opts.quick ? 40 : 200;
    Rng rng(opts.seed + 555);
    int mismatches = 0;
    for (int i = 0; i < cases; ++i) {
        int m = 3 + static_cast<int>(rng.below(5));  // 3..7
        int k = 1 + static_cast<int>(rng.below(std::min(4, m)));
        int s = 1 + static_cast<int>(rng.below(std::min(3, k)));
        int n = 2 + static_cast<int>(rng.below(4));
        PreferenceProfile p = gen_random(m, n, k, rng.next());
        int f = static_cast<int>(rng.below(k + 1));
        std::vector<int> pick = Rng(rng.next()).sample_without_replacement(m, f);
        std::vector<CandidateId> fixed(pick.begin(), pick.end());
        Rational direct = expected_completion_score(p, fixed, k, s);
        Rational oracle = completion_by_enumeration(p, fixed, k, s);
        if (direct != oracle) ++mismatches;
    }
    return {"completion expectation equals full enumeration on " + std::to_string(cases) +
                " random (m<=7, k<=4, s<=3) cases",
            mismatches == 0, "mismatches=" + std::to_string(mismatches)};
}

CheckLine check_order_stats(const VerifyOptions& opts) {
    (void)opts;
    bool pass = true;
    for (int m = 1; m <= 8; ++m) {
        for (int k = 1; k <= m; ++k) {
            std::vector<Rational> sums(k + 1);
            std::vector<int> idx(k);
            for (int i = 0; i < k; ++i) idx[i] = i;
            long long count = 0;
            while (true) {
                for (int t = 1; t <= k; ++t) sums[t] += Rational(idx[t - 1] + 1);
                ++count;
                int t = k - 1;
                while (t >= 0 && idx[t] == m - k + t) --t;
                if (t < 0) break;
                ++idx[t];
                for (int u = t + 1; u < k; ++u) idx[u] = idx[u - 1] + 1;
            }
            for (int t = 1; t <= k; ++t) {
                if (sums[t] / Rational(count) != expected_order_stat(m, k, t)) pass = false;
            }
        }
    }
    return {"order statistics: exhaustive enumeration matches t(m+1)/(k+1) for all m <= 8", pass,
            ""};
}

CheckLine check_dependent_rounding(const VerifyOptions& opts) {
    int vectors = opts.quick ? 8 : 50;
    int trials = opts.quick ? 4000 : 100000;
    Rng meta(opts.seed + 777);
    bool pass = true;
    std::ostringstream detail;
    for (int i = 0; i < vectors; ++i) {
        int len = 3 + static_cast<int>(meta.below(38));
        std::vector<double> y(len);
        double sum = 0;
        for (double& v : y) {
            v = meta.uniform01();
            sum += v;
        }
        long long target = std::max<long long>(1, std::llround(sum));
        if (target > len) target = len;
        // adjust the vector so the mass sums exactly to the target
        double scale = target / sum;
        bool ok = scale <= 1.0;
        if (ok) {
            for (double& v : y) v *= scale;
        } else {
            double deficit = target - sum;
            for (int j = 0; j < len && deficit > 1e-12; ++j) {
                double add = std::min(deficit, 1.0 - y[j]);
                y[j] += add;
                deficit -= add;
            }
        }
        std::vector<long long> counts(len, 0);
        Rng rng(opts.seed + 1000 + i);
        for (int t = 0; t < trials; ++t) {
            std::vector<int> out = dependent_round(y, rng);
            long long ones = 0;
            for (int j = 0; j < len; ++j) {
                ones += out[j];
                counts[j] += out[j];
            }
            if (ones != target) {
                pass = false;
                detail << "sum broke on vector " << i << "; ";
                break;
            }
        }
        for (int j = 0; j < len; ++j) {
            double p = y[j];
            double sigma = std::sqrt(trials * p * (1 - p));
            if (std::abs(counts[j] - trials * p) > 4 * sigma + 1e-9) {
                pass = false;
                detail << "marginal " << j << " of vector " << i << " outside 4 sigma; ";
            }
        }
    }
    detail << vectors << " vectors x " << trials << " trials";
    return {"dependent rounding: exact sum every trial, marginals within 4-sigma binomial bands",
            pass, detail.str()};
}

CheckLine check_lp(const VerifyOptions& opts) {
    bool pass = true;
    std::ostringstream detail;

    int cases = opts.quick ? 20 : 100;
    Rng rng(opts.seed + 333);
    DenseSimplexSolver simplex;
    double worst_gap = 0;
    for (int i = 0; i < cases; ++i) {
        int m = 4 + static_cast<int>(rng.below(5));  // 4..8
        int k = 2 + static_cast<int>(rng.below(std::min(4, m) - 1));
        int s = 1 + static_cast<int>(rng.below(std::min(3, k)));
        int n = 2 + static_cast<int>(rng.below(5));
        PreferenceProfile p = gen_random(m, n, k, rng.next());
        FractionalSolution fs = solve_lp(build_lp(p, k, s), simplex);
        Rational opt = brute_force_opt(p, k, s).score;
        double od = opt.to_double();
        if (fs.objective_mean > od * (1 + 1e-6) + 1e-9) {
            pass = false;
            detail << "relaxation above opt on case " << i << "; ";
        }
        // cross-route: the reduction solver must agree with the simplex
        FractionalSolution red = solve_relaxation(p, k, s);
        double gap = std::abs(red.objective - fs.objective) / std::max(1.0, std::abs(fs.objective));
        worst_gap = std::max(worst_gap, gap);
        if (gap > 1e-6) {
            pass = false;
            detail << "reduction/simplex gap " << fmt(gap) << " on case " << i << "; ";
        }
    }
    detail << "relaxation_cases=" << cases << " worst_route_gap=" << fmt(worst_gap);

    // Rounding separation on the s-Borda bad instance.
    int m = 400, k = 80, s = 16, seeds = 50;
    if (opts.quick) {
        m = 100;
        k = 20;
        s = 4;
        seeds = 8;
    }
    SymmetricProfile sp = gen_sborda_bad(m, k, s);
    SelectionResult g = greedy(sp, k, s);
    FractionalSolution lp = solve_relaxation(sp, k, s);
    Rational mean;
    for (int i = 0; i < seeds; ++i) {
        LpRoundResult r = lp_round_with_solution(sp, k, s, lp, opts.seed + 4000 + i);
        mean += r.score;
    }
    mean /= Rational(seeds);
    if (!(mean < g.score)) {
        pass = false;
        detail << " lp-round mean " << fmt(mean.to_double()) << " not below greedy "
               << fmt(g.score.to_double());
    } else {
        detail << " lp_round_mean=" << fmt(mean.to_double()) << " greedy=" << fmt(g.score.to_double());
    }
    return {"lp: relaxation below brute-force opt (1e-6 rel) with both solve routes agreeing; "
            "lp-round mean beats greedy on the s-Borda bad instance",
            pass, detail.str()};
}

CheckLine check_cover_reduction(const VerifyOptions& opts) {
    (void)opts;
    CoverInstance cover;
    cover.universe = 12;
    cover.budget = 3;
    cover.sets = {{0, 1, 2, 3}, {4, 5, 6, 7}, {8, 9, 10, 11},
                  {0, 1, 4, 8}, {2, 5, 9, 10}, {3, 6, 7, 11}};
    double eps = 0.05;
    int m = cover_profile_m(cover, eps);
    PreferenceProfile p = gen_from_cover(cover, eps, opts.seed + 12, {});
    Committee yes = Committee::of({0, 1, 2});  // the disjoint covering sets
    Rational score = score_s_borda(p, yes, 1);
    Rational z(static_cast<long long>(cover.sets.size()));
    Rational eps_rand = Rational(1, 2) * Rational(m + 1, cover.budget + 1);
    bool pass = score <= z && z < eps_rand && m == 72;
    return {"cover reduction: YES-cover committee scores <= z < eps'*(m+1)/(k+1) (m=72)", pass,
            "score=" + score.str() + " z=6 bound=" + fmt(eps_rand.to_double())};
}

CheckLine check_random_benchmark(const VerifyOptions& opts) {
    // Random profiles are concentrated near Rand; the check is statistical
    // and re-runs once on failure by design.
    int m = 20, k = 3;
    double eps = 0.2;
    int n = static_cast<int>(std::ceil(m * (k + 1) * (k + 1) / (eps * eps)));
    int seeds = opts.quick ? 6 : 20;
    int need = seeds / 2;
    Rational threshold = Rational(8, 10) * Rational(m + 1, k + 1);
    auto run_batch = [&](std::uint64_t base) {
        int good = 0;
        for (int i = 0; i < seeds; ++i) {
            PreferenceProfile p = gen_random(m, opts.quick ? n / 10 : n, k, base + i);
            BruteForceResult opt = brute_force_opt(p, k, 1);
            if (opt.score > threshold) ++good;
        }
        return good;
    };
    int good = run_batch(opts.seed + 31000);
    bool rerun = false;
    if (good < need) {
        rerun = true;
        good = run_batch(opts.seed + 62000);
    }
    return {"random instances: Opt > (1-eps)*Rand in at least half of " + std::to_string(seeds) +
                " seeds (flaky-tolerant, one re-run)",
            good >= need,
            "good=" + std::to_string(good) + "/" + std::to_string(seeds) +
                (rerun ? " (after re-run)" : "")};
}

std::vector<std::string> verify_suite_names() {
    return {"greedy-bounds", "banzhaf-bounds", "core", "monotone", "lp", "order-stats"};
}

SuiteResult verify_suite(const std::string& name, const VerifyOptions& opts) {
    SuiteResult res;
    res.suite = name;
    if (name == "greedy-bounds") {
        res.add(check_greedy_bound_1borda(opts));
        res.add(check_greedy_bound_sborda(opts));
        res.add(check_spiral(opts));
        res.add(check_sborda_separation(opts));
    } else if (name == "banzhaf-bounds") {
        res.add(check_banzhaf_bounds(opts));
        res.add(check_completion_formula(opts));
        res.add(check_cover_reduction(opts));
        res.add(check_random_benchmark(opts));
    } else if (name == "core") {
        res.add(check_core_results(opts));
    } else if (name == "monotone") {
        res.add(check_monotonicity_gap(opts));
        res.add(check_banzhaf_monotonicity_witness(opts));
    } else if (name == "lp") {
        res.add(check_dependent_rounding(opts));
        res.add(check_lp(opts));
    } else if (name == "order-stats") {
        res.add(check_order_stats(opts));
    } else {
        throw ArgError("unknown verify suite '" + name + "'");
    }
    return res;
}

}  // namespace mwelect
