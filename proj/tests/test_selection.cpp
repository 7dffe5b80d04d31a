#include <doctest.h>

#include "mwelect/errors.hpp"
#include "mwelect/instance_gen.hpp"
#include "mwelect/rng.hpp"
#include "mwelect/scoring.hpp"
#include "mwelect/selection.hpp"
#include "test_util.hpp"

using namespace mwelect;

TEST_CASE("greedy spec examples") {
    auto p = PreferenceProfile::from_orders(2, {{0, 1}, {1, 0}});
    auto g = greedy(p, 1, 1);
    CHECK(g.committee.members == std::vector<CandidateId>{0});  // tie -> lowest id
    CHECK(g.score == Rational(3, 2));

    // k = m gives everyone their top s
    auto q = gen_random(6, 5, 6, 31);
    for (int s = 1; s <= 3; ++s)
        CHECK(greedy(q, 6, s).score == Rational(s * (s + 1) / 2));
}

TEST_CASE("greedy trace: scores non-increasing once s members are chosen") {
    Rng rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        int m = 5 + static_cast<int>(rng.below(6));
        int n = 3 + static_cast<int>(rng.below(5));
        auto p = gen_random(m, n, 1, rng.next());
        int k = 2 + static_cast<int>(rng.below(m - 1));
        int s = 1 + static_cast<int>(rng.below(std::min(3, k)));
        auto g = greedy(p, k, s);
        REQUIRE(static_cast<int>(g.trace.picks.size()) == k);
        for (int j = s; j < k; ++j)
            CHECK(g.trace.picks[j].score <= g.trace.picks[j - 1].score);
        // final trace score is the committee's exact score
        CHECK(g.trace.picks.back().score == score_s_borda(p, g.committee, s));
    }
}

TEST_CASE("greedy is committee-monotone") {
    Rng rng(78);
    for (int trial = 0; trial < 10; ++trial) {
        auto p = gen_random(8, 6, 1, rng.next());
        std::vector<CandidateId> prev;
        for (int k = 1; k <= 8; ++k) {
            auto g = greedy(p, k, 1);
            if (!prev.empty())
                CHECK(std::includes(g.committee.members.begin(), g.committee.members.end(),
                                    prev.begin(), prev.end()));
            prev = g.committee.members;
        }
    }
}

TEST_CASE("greedy_float agrees with exact greedy on small instances") {
    Rng rng(79);
    for (int trial = 0; trial < 10; ++trial) {
        auto p = gen_random(9, 7, 1, rng.next());
        auto a = greedy(p, 4, 2);
        auto b = greedy_float(p, 4, 2);
        CHECK(a.committee.members == b.committee.members);
        CHECK(a.score == b.score);
    }
}

TEST_CASE("banzhaf on the uniform profile hits the benchmark exactly") {
    auto ap = gen_all_permutations(4);
    auto b = banzhaf(ap, 2, 1);
    CHECK(b.score == Rational(5, 3));
    // k = m picks everything
    CHECK(banzhaf(ap, 4, 2).score == Rational(3));
}

TEST_CASE("banzhaf trace: completion objective is non-increasing, start to end") {
    Rng rng(80);
    for (int trial = 0; trial < 12; ++trial) {
        int m = 5 + static_cast<int>(rng.below(5));
        auto p = gen_random(m, 5, 1, rng.next());
        int k = 2 + static_cast<int>(rng.below(m - 2));
        int s = 1 + static_cast<int>(rng.below(std::min(2, k)));
        auto b = banzhaf(p, k, s);
        Rational prev = rand_benchmark(m, k, s);
        for (const auto& pick : b.trace.picks) {
            CHECK(pick.score <= prev);
            prev = pick.score;
        }
        CHECK(b.trace.picks.back().score == score_s_borda(p, b.committee, s));
    }
}

TEST_CASE("brute force equals exhaustive enumeration, lexicographic ties") {
    Rng rng(81);
    for (int trial = 0; trial < 15; ++trial) {
        int m = 4 + static_cast<int>(rng.below(4));
        auto p = gen_random(m, 4, 3, rng.next());
        int k = 1 + static_cast<int>(rng.below(std::min(3, m)));
        int s = 1 + static_cast<int>(rng.below(k));
        auto bf = brute_force_opt(p, k, s);
        bool found_better = false;
        bool found_equal_smaller = false;
        testutil::for_each_committee(m, k, [&](const std::vector<CandidateId>& idx) {
            Rational sc = testutil::naive_score(p, idx, s);
            if (sc < bf.score) found_better = true;
            if (sc == bf.score && idx < bf.committee.members) found_equal_smaller = true;
        });
        CHECK(!found_better);
        CHECK(!found_equal_smaller);
    }
    // 1 voter, k=2, s=1: top candidate plus the lowest other id, score 1
    auto p1 = PreferenceProfile::from_orders(4, {{2, 0, 1, 3}});
    auto bf1 = brute_force_opt(p1, 2, 1);
    CHECK(bf1.score == Rational(1));
    CHECK(bf1.committee.members == std::vector<CandidateId>{0, 2});
}

TEST_CASE("brute force respects the enumeration cap") {
    auto p = gen_random(30, 3, 3, 1);
    CHECK_THROWS_AS(brute_force_opt(p, 15, 1, 1000), CapError);
}

TEST_CASE("opt lower-bounds every rule") {
    Rng rng(82);
    for (int trial = 0; trial < 10; ++trial) {
        int m = 5 + static_cast<int>(rng.below(4));
        auto p = gen_random(m, 6, 1, rng.next());
        int k = 2 + static_cast<int>(rng.below(3));
        if (k > m) continue;
        int s = 1 + static_cast<int>(rng.below(std::min(2, k)));
        Rational opt = brute_force_opt(p, k, s).score;
        CHECK(opt <= greedy(p, k, s).score);
        CHECK(opt <= banzhaf(p, k, s).score);
        CHECK(opt <= random_committee(p, k, s, trial, 20).best_score);
    }
}

TEST_CASE("random committee baseline") {
    auto p = gen_random(6, 5, 6, 3);
    auto one = random_committee(p, 6, 2, 9, 1);
    CHECK(one.best_score == Rational(3));  // k=m: the whole candidate set

    // reproducible per seed
    auto a = random_committee(p, 3, 1, 1234, 50);
    auto b = random_committee(p, 3, 1, 1234, 50);
    CHECK(a.best.members == b.best.members);
    CHECK(a.mean == b.mean);
    CHECK(a.best_score == b.best_score);

    // mean near the benchmark with a generous band
    auto big = random_committee(gen_random(10, 8, 4, 4), 4, 1, 7, 20000);
    double bench = rand_benchmark(10, 4, 1).to_double();
    CHECK(std::abs(big.mean - bench) < 3 * big.stddev / std::sqrt(20000.0) + 0.05);
}

TEST_CASE("symmetric rules agree with rules on the materialized profile") {
    SymmetricProfile sp = gen_core_counterexample(9);  // 7 dummies -> cap guards
    // use a smaller instance we can materialize: m=8-style sibling
    SymmetricProfile small;
    small.m = 8;
    small.critical = {0, 1};
    small.groups.push_back({Rational(1, 3), {1, 2}});
    small.groups.push_back({Rational(1, 3), {8, 1}});
    small.groups.push_back({Rational(1, 3), {8, 7}});
    small.validate();
    PreferenceProfile mat = small.materialize();

    for (int k : {1, 2, 3}) {
        for (int s = 1; s <= std::min(k, 2); ++s) {
            auto gs = greedy(small, k, s);
            auto gm = greedy(mat, k, s);
            CHECK(gs.score == gm.score);
            CHECK(gs.committee.members == gm.committee.members);
            auto bs = banzhaf(small, k, s);
            auto bm = banzhaf(mat, k, s);
            CHECK(bs.score == bm.score);
            CHECK(bs.committee.members == bm.committee.members);
            auto os = brute_force_opt(small, k, s);
            auto om = brute_force_opt(mat, k, s);
            CHECK(os.score == om.score);
        }
    }
}

TEST_CASE("core counterexample: the published selection behavior") {
    SymmetricProfile sp = gen_core_counterexample(16);
    // greedy picks c2 first, then dummies, never c1
    auto g = greedy(sp, 3, 1);
    CHECK(g.trace.picks[0].candidate == 1);
    CHECK(g.trace.picks[1].dummy);
    CHECK(g.trace.picks[2].dummy);
    CHECK(!g.committee.contains(0));
    // banzhaf picks c2 first too
    auto b = banzhaf(sp, 3, 1);
    CHECK(b.trace.picks[0].candidate == 1);
    CHECK(!b.committee.contains(0));
    CHECK(b.score == g.score);
}
