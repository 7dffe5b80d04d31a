#include <doctest.h>

#include "mwelect/errors.hpp"
#include "mwelect/instance_gen.hpp"
#include "mwelect/rng.hpp"
#include "mwelect/scoring.hpp"
#include "test_util.hpp"

using namespace mwelect;

TEST_CASE("s-Borda scores on toy profiles") {
    auto p = PreferenceProfile::from_orders(3, {{0, 1, 2}});
    CHECK(score_s_borda(p, Committee::of({1, 2}), 1) == Rational(2));
    CHECK(score_s_borda(p, Committee::of({1, 2}), 2) == Rational(5));
    CHECK(score_satisfaction(p, Committee::of({0}), 1) == Rational(3));
    CHECK_THROWS_AS(score_s_borda(p, Committee::of({1, 2}), 3), ArgError);

    // every singleton on the all-permutations profile scores (m+1)/2... with
    // k=1 the random benchmark: here (3+1)/(1+1) = 2
    auto ap = gen_all_permutations(3);
    for (CandidateId c = 0; c < 3; ++c)
        CHECK(score_s_borda(ap, Committee::of({c}), 1) == Rational(2));
}

TEST_CASE("satisfaction identity and recomputation") {
    Rng rng(3);
    auto p = gen_random(6, 7, 3, 11);
    testutil::for_each_committee(6, 3, [&](const std::vector<CandidateId>& idx) {
        Committee c = Committee::of(idx);
        CHECK(score_satisfaction(p, c, 1) == Rational(7) - score_s_borda(p, c, 1));
        CHECK(score_satisfaction(p, c, 2) == Rational(14) - score_s_borda(p, c, 2));
    });
}

TEST_CASE("random benchmark closed form") {
    CHECK(rand_benchmark(9, 4, 1) == Rational(2));
    CHECK(rand_benchmark(5, 5, 5) == Rational(15));  // m(m+1)/2 when s=k=m
    CHECK(rand_benchmark(4, 2, 1) == Rational(5, 3));
    CHECK_THROWS_AS(rand_benchmark(4, 5, 1), ArgError);
}

TEST_CASE("scores are monotone under committee growth") {
    auto p = gen_random(7, 6, 3, 21);
    testutil::for_each_committee(7, 3, [&](const std::vector<CandidateId>& idx) {
        Committee c = Committee::of(idx);
        for (CandidateId extra = 0; extra < 7; ++extra) {
            if (c.contains(extra)) continue;
            std::vector<CandidateId> grown = idx;
            grown.push_back(extra);
            for (int s = 1; s <= 3; ++s)
                CHECK(score_s_borda(p, Committee::of(grown), s) <= score_s_borda(p, c, s));
        }
    });
}

TEST_CASE("expected completion score: spec examples and enumeration") {
    auto p = gen_random(5, 3, 3, 5);
    // fixed of size k equals the plain score
    testutil::for_each_committee(5, 3, [&](const std::vector<CandidateId>& idx) {
        CHECK(expected_completion_score(p, idx, 3, 2) == score_s_borda(p, Committee::of(idx), 2));
    });
    // empty fixed, s=1: (m+1)/(k+1) on every profile
    CHECK(expected_completion_score(p, {}, 3, 1) == Rational(6, 4));
    // |fixed|=1: mean over all C(4,2)=6 completions
    for (CandidateId c = 0; c < 5; ++c) {
        Rational acc;
        int count = 0;
        testutil::for_each_committee(5, 3, [&](const std::vector<CandidateId>& idx) {
            if (std::find(idx.begin(), idx.end(), c) == idx.end()) return;
            acc += score_s_borda(p, Committee::of(idx), 1);
            ++count;
        });
        CHECK(count == 6);
        CHECK(expected_completion_score(p, {c}, 3, 1) == acc / Rational(count));
    }
}

TEST_CASE("symmetric scoring equals scoring the materialized profile") {
    // every m <= 6 single-block instance here is materialized exhaustively
    SymmetricProfile sp;
    sp.m = 6;
    sp.critical = {0, 1};
    sp.groups.push_back({Rational(1, 4), {1, 4}});
    sp.groups.push_back({Rational(3, 4), {6, 2}});
    sp.validate();
    PreferenceProfile mat = sp.materialize();
    CHECK(mat.num_voters() == 2 * 24);

    for (int dummies = 0; dummies <= 2; ++dummies) {
        for (int pick_crit = 0; pick_crit < 4; ++pick_crit) {
            std::vector<CandidateId> crit;
            if (pick_crit & 1) crit.push_back(0);
            if (pick_crit & 2) crit.push_back(1);
            int size = static_cast<int>(crit.size()) + dummies;
            if (size < 1) continue;
            for (int s = 1; s <= size; ++s) {
                Rational sym = expected_score_symmetric(sp, crit, dummies, s);
                // any concrete dummies work; exchangeability makes them equal
                std::vector<CandidateId> members = crit;
                for (int d = 0; d < dummies; ++d) members.push_back(2 + d);
                CHECK(sym == testutil::naive_score(mat, members, s));
                CHECK(sym == committee_score_symmetric(sp, Committee::of(members), s));
            }
        }
    }
}

TEST_CASE("core counterexample closed forms, exactly and asymptotically") {
    // exact values at m=16, k=3 (computed by enumeration logic above)
    SymmetricProfile sp = gen_core_counterexample(16);
    CHECK(expected_score_symmetric(sp, {1}, 2, 1) == Rational(8, 3));
    CHECK(expected_score_symmetric(sp, {0, 1}, 1, 1) == Rational(19, 6));
    CHECK(expected_score_symmetric(sp, {0}, 2, 1) == Rational(4));
    CHECK(expected_score_symmetric(sp, {}, 3, 1) == Rational(19, 4));

    // published forms hold to leading order: r(D_{k-1} + c2) -> (m+1)/(3k) + 1
    int m = 400;
    int k = 19;  // floor(sqrt(400)) - 1
    SymmetricProfile big = gen_core_counterexample(m);
    double got = expected_score_symmetric(big, {1}, k - 1, 1).to_double();
    double asym = (m + 1.0) / (3.0 * k) + 1.0;
    CHECK(std::abs(got - asym) / asym < 0.02);
    double got_d = expected_score_symmetric(big, {}, k, 1).to_double();
    double asym_d = (m + 1.0) / (k + 1.0);
    CHECK(std::abs(got_d - asym_d) / asym_d < 0.06);
}

TEST_CASE("symmetric scoring validates preconditions") {
    SymmetricProfile sp = gen_core_counterexample(16);
    CHECK_THROWS_AS(expected_score_symmetric(sp, {5}, 1, 1), ArgError);   // not critical
    CHECK_THROWS_AS(expected_score_symmetric(sp, {0}, 0, 2), ArgError);   // fewer than s
    CHECK_THROWS_AS(expected_score_symmetric(sp, {0}, 99, 1), ArgError);  // too many dummies
}
