#include "mwelect/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mwelect/errors.hpp"
#include "mwelect/rng.hpp"

namespace mwelect {

void CoverInstance::validate() const {
    if (universe < 1 || budget < 1) throw ArgError("cover instance needs universe and budget >= 1");
    if (universe % budget != 0) throw ArgError("budget must divide the universe size");
    if (sets.empty()) throw ArgError("cover instance needs at least one set");
    const int set_size = universe / budget;
    for (const auto& s : sets) {
        if (static_cast<int>(s.size()) != set_size)
            throw ArgError("every set must have size universe/budget = " +
                           std::to_string(set_size));
        std::vector<int> sorted = s;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] < 0 || sorted[i] >= universe) throw ArgError("set element out of range");
            if (i > 0 && sorted[i] == sorted[i - 1]) throw ArgError("duplicate element in set");
        }
    }
}

PreferenceProfile gen_random(int m, int n, int k, std::uint64_t seed) {
    if (m < 1 || n < 1) throw ArgError("gen_random needs m, n >= 1");
    if (k < 0 || k > m) throw ArgError("k outside 0..m");
    Rng rng(seed);
    std::vector<std::vector<CandidateId>> orders(n);
    for (int v = 0; v < n; ++v) {
        std::vector<CandidateId> ord(m);
        std::iota(ord.begin(), ord.end(), 0);
        rng.shuffle(ord);
        orders[v] = std::move(ord);
    }
    return PreferenceProfile::from_orders(m, orders);
}

PreferenceProfile gen_all_permutations(int m) {
    if (m < 1) throw ArgError("m must be >= 1");
    if (m > 8)
        throw ArgError("m! voters is infeasible beyond m = 8; use a SymmetricProfile instead");
    std::vector<std::vector<CandidateId>> orders;
    std::vector<CandidateId> ord(m);
    std::iota(ord.begin(), ord.end(), 0);
    do {
        orders.push_back(ord);
    } while (std::next_permutation(ord.begin(), ord.end()));
    return PreferenceProfile::from_orders(m, orders);
}

// --------------------------------------------------------------------------
// Spiral
// --------------------------------------------------------------------------

SpiralInstance gen_spiral(const SpiralParams& params) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    const double log_phi = std::log(phi);
    const int L = params.layers;
    const double a = params.a;
    const int R = params.resolution;
    const int m = params.rank_grid;

    if (L < 2) throw ArgError("spiral needs at least 2 layers");
    if (R < 100) throw ArgError("resolution must be at least 100 steps per layer");
    if (params.window_margin < 1.0) throw ArgError("window margin must be >= 1");
    // The opener's average rank a*X/phi (in units of m) must stay below the
    // dummy average of ~1/2, or greedy starts with a dummy.
    const double x_over_a = (phi - 1.0) / log_phi;  // X = a * x_over_a
    if (!(a > 0) || a * x_over_a / phi >= 0.49)
        throw ArgError("a too large: the opening candidate would lose to a dummy");

    // Windows are calibrated against the walk's own discrete state: a window
    // [theta, theta + w/R) grows until it can match the current dummy
    // marginal times kappa(theta), then its rank is placed inside the spiral
    // band [g(theta + w/R), g(theta)] so the improvement hits the target
    // almost exactly. Three structural rules keep greedy on the spiral:
    //   - kappa DECAYS along the spiral: a window one layer down, scored
    //     while its voters still sit two layers up, ties the current window
    //     exactly (phi^2 + phi = 1), so a constant margin would leave that
    //     comparison to rounding noise;
    //   - windows never cross layer boundaries, and a layer tail too small
    //     to support a window is left uncovered (an oversized tail window
    //     would overshoot its target and win the two-layers-up comparison);
    //   - the walk stops once nominal windows drop under 3 grid cells, where
    //     rank-band calibration loses control of the overshoot. Coarse
    //     resolutions therefore realize a shallower spiral.
    const double mu = params.window_margin - 1.0;
    if (mu <= 0) throw ArgError("window margin must exceed 1");
    const double h_nominal0 = a * (phi * phi - 1.0) / (4.0 * phi * phi * phi * log_phi);

    struct Window {
        long long start;  // grid steps
        int width;
        RankValue rank;
    };
    std::vector<Window> windows;
    // cur[g]: the rank voter g holds once all walked windows are picked
    std::vector<double> cur(R);
    int gap_cells = 0;
    // Dummy marginal of the walk state: sum_g T(cur_g) / pool with T(c) =
    // c(c-1)/2. Placed-rank exclusions are O(layers/cur) and absorbed by the
    // margin; the pool size needs a second pass since K follows the walk.
    double pool_size = m - 300.0;
    for (int pass = 0; pass < 2; ++pass) {
        windows.clear();
        gap_cells = 0;
        double t_sum = 0;
        for (int g = 0; g < R; ++g) {
            double theta0 = static_cast<double>(g) / R - 1.0;
            cur[g] = std::max(1.0, std::round(a * std::pow(phi, theta0) * m));
            t_sum += cur[g] * (cur[g] - 1) / 2;
        }
        // Window spans per layer come from the continuum boundary density
        // 1/h(theta) normalized to tile the circle exactly. Each window's
        // RANK is then the largest value that (a) beats the current dummy
        // marginal by kappa(theta) and (b) keeps this window strictly below
        // every earlier pick at every earlier state (evaluated exactly from
        // the walk's own history). Constraint (b) is what realizes the
        // "breaks ties in its favor" assumption: a window one layer down,
        // scored while its voters still sit two layers up, ties the current
        // window exactly in the continuum (phi^2 + phi = 1).
        std::vector<long long> improvements;                     // per placed window
        std::vector<std::vector<std::pair<int, double>>> hist(R);  // (state, value before)
        bool walk_done = false;
        for (int t = 0; t < L && !walk_done; ++t) {
            std::vector<double> density(R);
            double total = 0;
            for (int j = 0; j < R; ++j) {
                double theta = t + static_cast<double>(j) / R;
                double h = (1.0 + mu * std::pow(phi, theta)) * h_nominal0 * std::pow(phi, theta);
                density[j] = 1.0 / h;
                total += density[j];
            }
            int n_windows = std::max(1, static_cast<int>(std::llround(total / R)));

            int c = 0;
            double acc = 0;
            for (int i = 0; i < n_windows && !walk_done && c < R; ++i) {
                double cut = total * (i + 1) / n_windows;
                int end = c;
                while (end < R && (acc < cut - 1e-9 || end == c)) {
                    acc += density[end];
                    ++end;
                }
                if (i == n_windows - 1) end = R;
                int w = end - c;
                double theta = t + static_cast<double>(c) / R;
                double kappa = 1.0 + mu * std::pow(phi, theta);
                double target = kappa * t_sum / pool_size;

                // hist holds (covering pick, value before it): the value at
                // a state is the first entry strictly after it.
                auto value_at = [&](int cell, int state) {
                    for (const auto& [st, val] : hist[cell])
                        if (state < st) return val;
                    return cur[cell];
                };
                // Smallest rank keeping this window's exact integer value at
                // every earlier state at or below the value picked there
                // (greedy breaks the remaining ties toward the earlier id).
                auto dominance_floor = [&](int w_try, double min_cur) {
                    int state_count = static_cast<int>(windows.size());
                    double r_min = 1;
                    if (state_count == 0) return r_min;
                    std::vector<int> breaks;
                    breaks.push_back(0);
                    for (int j = 0; j < w_try; ++j)
                        for (const auto& [st, val] : hist[c + j])
                            if (st > 0) breaks.push_back(st);
                    std::sort(breaks.begin(), breaks.end());
                    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
                    std::vector<double> vals(w_try);
                    for (std::size_t b = 0; b < breaks.size(); ++b) {
                        int seg_start = breaks[b];
                        int seg_end = (b + 1 < breaks.size() ? breaks[b + 1] : state_count) - 1;
                        if (seg_end < seg_start || seg_start >= state_count) continue;
                        long long min_i = improvements[seg_start];
                        for (int j = seg_start; j <= seg_end; ++j)
                            min_i = std::min(min_i, improvements[j]);
                        // a few units of slack cover rank-collision bumps
                        double allowed = static_cast<double>(min_i) - 9.0;
                        for (int j = 0; j < w_try; ++j) vals[j] = value_at(c + j, seg_start);
                        double lo = 0, hi = min_cur;
                        for (int it = 0; it < 60; ++it) {
                            double mid = (lo + hi) / 2;
                            double bsum = 0;
                            for (double v : vals)
                                if (v > mid) bsum += v - mid;
                            (bsum > allowed ? lo : hi) = mid;
                        }
                        r_min = std::max(r_min, std::ceil(hi));
                    }
                    return r_min;
                };

                bool ok = false;
                double r = 1;
                if (c + w <= R) {
                    double s_w = 0, min_cur = cur[c];
                    for (int j = 0; j < w; ++j) {
                        s_w += cur[c + j];
                        min_cur = std::min(min_cur, cur[c + j]);
                    }
                    double r_best = std::min(std::floor((s_w - target) / w), min_cur - 1);
                    double r_min = dominance_floor(w, min_cur);
                    if (r_best >= r_min && r_best >= 1) {
                        r = r_best;
                        ok = true;
                    }
                }
                if (!ok) {  // dominance infeasible: the spiral ends here
                    gap_cells += R - c;
                    walk_done = true;
                    break;
                }
                long long improvement = 0;
                for (int j = 0; j < w; ++j)
                    improvement += static_cast<long long>(cur[c + j]) - static_cast<long long>(r);
                windows.push_back({static_cast<long long>(t) * R + c, w,
                                   static_cast<RankValue>(r)});
                improvements.push_back(improvement);
                int state_idx = static_cast<int>(windows.size());
                for (int j = 0; j < w; ++j) {
                    hist[c + j].push_back({state_idx, cur[c + j]});
                    t_sum += r * (r - 1) / 2 - cur[c + j] * (cur[c + j] - 1) / 2;
                    cur[c + j] = r;
                }
                c = end;
            }
        }
        if (windows.empty()) throw ArgError("no spiral windows fit these parameters");
        double K_est = static_cast<double>(windows.size()) + 1;
        if (m <= 4 * K_est) throw ArgError("rank grid too small for the critical count");
        pool_size = m - K_est;
    }
    const int K = static_cast<int>(windows.size()) + 1;  // plus the opener
    if (m < 4 * K) throw ArgError("rank grid too small for the critical count");

    SpiralInstance inst;
    inst.k = K;
    inst.pick_order.resize(K);
    std::iota(inst.pick_order.begin(), inst.pick_order.end(), 0);

    SymmetricProfile& sp = inst.profile;
    sp.m = m;
    sp.critical.resize(K);
    std::iota(sp.critical.begin(), sp.critical.end(), 0);
    sp.groups.reserve(R);

    // windows sorted by start; voter at cell g is covered in layer t by the
    // window containing step (t-1)*R + g
    std::vector<long long> starts;
    starts.reserve(windows.size());
    for (const auto& w : windows) starts.push_back(w.start);

    int bumped = 0;
    for (int g = 0; g < R; ++g) {
        SymmetricGroup grp;
        grp.weight = Rational(1, R);
        grp.placed.assign(K, 0);

        // covering criticals: desired ranks, deepest (largest position) first
        struct Desired {
            int candidate;
            RankValue rank;
            double theta;
        };
        std::vector<Desired> cover;
        double theta0 = static_cast<double>(g) / R - 1.0;
        RankValue r0 = std::max<RankValue>(
            1, static_cast<RankValue>(std::llround(a * std::pow(phi, theta0) * m)));
        cover.push_back({0, r0, theta0});
        for (int t = 0; t < L; ++t) {
            long long step = static_cast<long long>(t) * R + g;
            auto it = std::upper_bound(starts.begin(), starts.end(), step);
            int wi = static_cast<int>(it - starts.begin()) - 1;
            if (wi < 0 || step >= windows[wi].start + windows[wi].width)
                continue;  // gap cell or truncated layer: no coverage here
            cover.push_back({wi + 1, windows[wi].rank,
                             static_cast<double>(windows[wi].start) / R});
        }
        std::sort(cover.begin(), cover.end(), [](const Desired& x, const Desired& y) {
            if (x.rank != y.rank) return x.rank < y.rank;
            return x.theta > y.theta;  // deeper keeps the smaller rank on ties
        });
        std::vector<bool> taken(m + 1, false);
        for (auto& d : cover) {
            RankValue r = d.rank;
            while (r <= m && taken[r]) {
                ++r;
                ++bumped;
            }
            if (r > m) throw ArgError("rank grid exhausted while resolving collisions");
            taken[r] = true;
            grp.placed[d.candidate] = r;
        }
        // non-covering criticals fill the bottom ranks, ascending id
        std::vector<int> rest;
        for (int c = 0; c < K; ++c)
            if (grp.placed[c] == 0) rest.push_back(c);
        RankValue bottom = static_cast<RankValue>(m - rest.size() + 1);
        for (int c : rest) {
            RankValue r = bottom++;
            if (taken[r]) throw ArgError("bottom block collides with spiral ranks");
            taken[r] = true;
            grp.placed[c] = r;
        }
        sp.groups.push_back(std::move(grp));
    }
    inst.bumped_ranks = bumped;
    inst.gap_cells = gap_cells;
    sp.validate();
    return inst;
}

// --------------------------------------------------------------------------
// Monotonicity gap
// --------------------------------------------------------------------------

SymmetricProfile gen_monotonicity_gap(int m, double a, double b) {
    if (!(0 < a && a < b && b < 1)) throw ArgError("need 0 < a < b < 1");
    if (m < 6) throw ArgError("m too small for the gap construction");
    RankValue lo = static_cast<RankValue>(std::ceil(a * m));
    RankValue hi = static_cast<RankValue>(std::floor(b * m));
    if (lo < 2) lo = 2;  // type Y keeps at least rank 1
    if (hi >= m) hi = m - 1;
    if (lo > hi) throw ArgError("band [a*m, b*m] contains no rank");
    int nx = hi - lo + 1;

    SymmetricProfile sp;
    sp.m = m;
    sp.groups.push_back({Rational(1), {}});
    std::vector<CandidateId> xs(nx), ys(m - nx);
    std::iota(xs.begin(), xs.end(), 0);
    std::iota(ys.begin(), ys.end(), nx);
    sp.blocks = {xs, ys};
    RankSet x_support = RankSet::from_intervals({{lo, hi}});
    std::vector<RankInterval> yruns;
    if (lo > 1) yruns.push_back({1, static_cast<RankValue>(lo - 1)});
    if (hi < m) yruns.push_back({static_cast<RankValue>(hi + 1), static_cast<RankValue>(m)});
    RankSet y_support = RankSet::from_intervals(yruns);
    sp.block_supports = {{x_support}, {y_support}};
    sp.validate();
    return sp;
}

// --------------------------------------------------------------------------
// Core counterexample
// --------------------------------------------------------------------------

SymmetricProfile gen_core_counterexample(int m) {
    if (m < 9) throw ArgError("core counterexample needs m >= 9");
    SymmetricProfile sp;
    sp.m = m;
    sp.critical = {0, 1};  // c1 = 0, c2 = 1
    RankValue M = static_cast<RankValue>(m);
    sp.groups.push_back({Rational(1, 3), {1, 2}});
    sp.groups.push_back({Rational(1, 3), {M, 1}});
    sp.groups.push_back({Rational(1, 3), {M, static_cast<RankValue>(M - 1)}});
    sp.validate();
    return sp;
}

// --------------------------------------------------------------------------
// s-Borda bad instance
// --------------------------------------------------------------------------

SymmetricProfile gen_sborda_bad(int m, int k, int s) {
    if (s < 1) throw ArgError("s must be >= 1");
    if (k < s || k % s != 0) throw ArgError("s must divide k");
    if (m <= k) throw ArgError("need m > k so dummies exist");
    const int G = k / s;

    SymmetricProfile sp;
    sp.m = m;
    sp.critical.resize(k);
    std::iota(sp.critical.begin(), sp.critical.end(), 0);
    for (int j = 0; j < G; ++j) {
        SymmetricGroup grp;
        grp.weight = Rational(1, G);
        grp.placed.assign(k, 0);
        for (int i = 0; i < s; ++i) grp.placed[i * G + j] = static_cast<RankValue>(i + 1);
        RankValue bottom = static_cast<RankValue>(m - (k - s) + 1);
        for (int c = 0; c < k; ++c)
            if (grp.placed[c] == 0) grp.placed[c] = bottom++;
        sp.groups.push_back(std::move(grp));
    }
    sp.validate();
    return sp;
}

// --------------------------------------------------------------------------
// Cover reduction
// --------------------------------------------------------------------------

int cover_profile_m(const CoverInstance& cover, double epsilon) {
    if (!(epsilon > 0 && epsilon <= 0.1)) throw ArgError("epsilon must lie in (0, 0.1]");
    double eps_prime = 10 * epsilon;
    double m = std::ceil(2.0 / eps_prime * cover.budget * static_cast<double>(cover.sets.size()));
    return static_cast<int>(m);
}

PreferenceProfile gen_from_cover(const CoverInstance& cover, double epsilon, std::uint64_t seed,
                                 const CoverGenOptions& opts) {
    cover.validate();
    const int m = cover_profile_m(cover, epsilon);
    const int z = static_cast<int>(cover.sets.size());
    const int n_u = cover.universe;
    const int k = cover.budget;
    if (m <= z) throw ArgError("epsilon too large: no dummy candidates remain");

    // copy multiplier stabilizing the dummy randomness; carried as weights
    long long copies_needed = static_cast<long long>(
        std::ceil(10.0 * m * k * k / (n_u * epsilon * epsilon)));
    int copies = static_cast<int>(std::min<long long>(copies_needed, opts.copy_cap));
    long long cells = static_cast<long long>(n_u) * copies * m;
    if (cells > opts.cell_budget)
        throw CapError("cover instance materialization needs " + std::to_string(cells) +
                           " cells, over the budget of " + std::to_string(opts.cell_budget),
                       std::to_string(cells));

    std::vector<std::vector<int>> covering(n_u);
    for (int si = 0; si < z; ++si)
        for (int e : cover.sets[si]) covering[e].push_back(si);
    for (auto& c : covering) std::sort(c.begin(), c.end());

    Rng rng(seed);
    std::vector<std::vector<CandidateId>> orders;
    std::vector<Rational> weights;
    Rational w(copies_needed, copies);
    for (int e = 0; e < n_u; ++e) {
        std::vector<CandidateId> non_covering;
        for (int si = 0; si < z; ++si)
            if (!std::binary_search(covering[e].begin(), covering[e].end(), si))
                non_covering.push_back(si);
        for (int cp = 0; cp < copies; ++cp) {
            std::vector<CandidateId> order;
            order.reserve(m);
            for (int si : covering[e]) order.push_back(si);
            std::vector<CandidateId> dummies(m - z);
            std::iota(dummies.begin(), dummies.end(), z);
            rng.shuffle(dummies);
            order.insert(order.end(), dummies.begin(), dummies.end());
            order.insert(order.end(), non_covering.begin(), non_covering.end());
            orders.push_back(std::move(order));
            weights.push_back(w);
        }
    }
    return PreferenceProfile::from_orders(m, orders, std::move(weights));
}

}  // namespace mwelect
