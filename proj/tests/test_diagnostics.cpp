#include <doctest.h>

#include "mwelect/diagnostics.hpp"
#include "mwelect/errors.hpp"
#include "mwelect/instance_gen.hpp"
#include "mwelect/rng.hpp"
#include "mwelect/scoring.hpp"
#include "test_util.hpp"

using namespace mwelect;

TEST_CASE("core blocking on explicit profiles") {
    // single voter, committee = second choice: the top choice blocks
    auto p = PreferenceProfile::from_orders(3, {{2, 0, 1}});
    CoreReport rep = core_blocking(p, Committee::of({0}), Rational(1));
    CHECK(!rep.in_core);
    REQUIRE(rep.blocking.size() == 1);
    CHECK(rep.blocking[0].candidate == 2);
    CHECK(rep.blocking[0].supporter_fraction == Rational(1));

    // committee containing every voter's top candidate is in core for all alpha
    auto q = PreferenceProfile::from_orders(4, {{1, 0, 2, 3}, {1, 3, 0, 2}, {2, 1, 3, 0}});
    CoreReport rep2 = core_blocking(q, Committee::of({1, 2}), Rational(1, 1000));
    CHECK(rep2.in_core);
}

TEST_CASE("blocking sets shrink as alpha grows") {
    Rng rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        auto p = gen_random(7, 9, 2, rng.next());
        Committee c = Committee::of({0, 3});
        CoreReport lo = core_blocking(p, c, Rational(1, 2));
        CoreReport hi = core_blocking(p, c, Rational(3, 2));
        for (const auto& b : hi.blocking) {
            bool found = false;
            for (const auto& a : lo.blocking) found = found || a.candidate == b.candidate;
            CHECK(found);
        }
    }
}

TEST_CASE("core blocking on the counterexample instance") {
    SymmetricProfile sp = gen_core_counterexample(16);
    int k = 3;
    auto g = greedy(sp, k, 1);
    CoreReport rep = core_blocking(sp, g.committee, Rational(k, 3));
    CHECK(!rep.in_core);
    REQUIRE(!rep.blocking.empty());
    CHECK(rep.blocking[0].candidate == 0);  // c1 blocks
    CHECK(rep.blocking[0].supporter_fraction == Rational(1, 3));

    // symmetric and materialized blocking agree
    SymmetricProfile small;
    small.m = 7;
    small.critical = {0, 1};
    small.groups.push_back({Rational(1, 3), {1, 2}});
    small.groups.push_back({Rational(1, 3), {7, 1}});
    small.groups.push_back({Rational(1, 3), {7, 6}});
    small.validate();
    PreferenceProfile mat = small.materialize();
    Committee c = Committee::of({1, 2, 3});
    CoreReport a = core_blocking(small, c, Rational(1, 2));
    CoreReport b = core_blocking(mat, c, Rational(1, 2));
    REQUIRE(a.blocking.size() == b.blocking.size());
    for (std::size_t i = 0; i < a.blocking.size(); ++i) {
        CHECK(a.blocking[i].candidate == b.blocking[i].candidate);
        CHECK(a.blocking[i].supporter_fraction == b.blocking[i].supporter_fraction);
    }
}

TEST_CASE("core score bound") {
    auto p = PreferenceProfile::from_orders(4, {{1, 0, 2, 3}, {1, 3, 0, 2}});
    CHECK(verify_core_score_bound(p, Committee::of({1}), Rational(1)));
    CHECK_THROWS_AS(verify_core_score_bound(p, Committee::of({1}), Rational(1, 2)), ArgError);

    // exhaustive: the bound holds at the tightest certifiable alpha >= 1
    Rng rng(66);
    for (int trial = 0; trial < 8; ++trial) {
        int m = 4 + static_cast<int>(rng.below(4));
        auto q = gen_random(m, 5, 2, rng.next());
        for (int k = 1; k <= m; ++k) {
            testutil::for_each_committee(m, k, [&](const std::vector<CandidateId>& idx) {
                Committee c = Committee::of(idx);
                CoreReport all = core_blocking(q, c, Rational(1, 1000000));
                Rational worst(0);
                for (const auto& e : all.blocking)
                    worst = std::max(worst, e.supporter_fraction);
                Rational alpha = std::max(Rational(1), Rational(k) * worst) + Rational(1, 1000000);
                CHECK(verify_core_score_bound(q, c, alpha));
            });
        }
    }
}

TEST_CASE("monotone chains") {
    auto p = gen_random(8, 6, 1, 77);
    CHECK(check_monotone_chain(Rule::Greedy, p, 8, 1).is_monotone);
    CHECK(check_monotone_chain(Rule::Greedy, p, 1, 1).is_monotone);  // trivially

    // banzhaf violates monotonicity on the gap instance, materialized at m=6
    SymmetricProfile gap = gen_monotonicity_gap(6, 0.377, 0.552);
    PreferenceProfile mat = gap.materialize();
    MonotoneChainResult res = check_monotone_chain(Rule::Banzhaf, mat, 2, 1);
    CHECK(!res.is_monotone);
    CHECK(res.first_violation == 2);
    CHECK(check_monotone_chain(Rule::Greedy, mat, 6, 1).is_monotone);
}

TEST_CASE("monotonicity bound closed forms") {
    MonotonicityBound mb = eval_monotonicity_bound(0.377, 0.552);
    CHECK(mb.bound > 1.015);
    CHECK(mb.bound == doctest::Approx(1.015060).epsilon(1e-4));
    CHECK(mb.xy_branch == doctest::Approx(1.015128).epsilon(1e-4));
    CHECK(mb.xx_branch == doctest::Approx(1.306).epsilon(1e-3));
    CHECK(mb.argmin_branch == "Y");

    // continuity as b approaches a
    MonotonicityBound near = eval_monotonicity_bound(0.4, 0.4 + 1e-6);
    CHECK(near.xx_branch == doctest::Approx(3 * 0.4).epsilon(1e-4));
    CHECK_THROWS_AS(eval_monotonicity_bound(0.5, 0.4), ArgError);
}

TEST_CASE("run reports carry scores, ratios and traces") {
    LoadedProfile lp;
    lp.explicit_profile = gen_random(7, 5, 3, 123);
    ReportOptions opts;
    opts.seed = 9;
    opts.trials = 50;
    RunReport rep = run_report(lp, {"greedy", "banzhaf", "random", "opt"}, 3, 1, opts);
    REQUIRE(rep.rules.size() == 4);
    CHECK(rep.rand_value == rand_benchmark(7, 3, 1));
    REQUIRE(rep.opt_score.has_value());
    for (const auto& r : rep.rules) {
        REQUIRE(r.ratio_vs_rand.has_value());
        REQUIRE(r.ratio_vs_opt.has_value());
        CHECK(*r.ratio_vs_opt >= Rational(1));
    }
    // greedy ratio_vs_rand <= 2, banzhaf <= 1 for s=1
    CHECK(*rep.rules[0].ratio_vs_rand <= Rational(2));
    CHECK(*rep.rules[1].ratio_vs_rand <= Rational(1));

    std::string j = report_to_json(rep);
    CHECK(j.find("\"rules\"") != std::string::npos);
    std::string csv = report_to_csv_rows(rep);
    CHECK(csv.find("greedy") != std::string::npos);
    CHECK(report_csv_header().rfind("instance,", 0) == 0);
}
