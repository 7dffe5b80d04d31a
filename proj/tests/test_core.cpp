#include <doctest.h>

#include "mwelect/errors.hpp"
#include "mwelect/profile.hpp"
#include "mwelect/rank_set.hpp"
#include "mwelect/rational.hpp"
#include "mwelect/rng.hpp"

using namespace mwelect;

TEST_CASE("rational arithmetic stays reduced and exact") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(Rational(-4, -6) == Rational(2, 3));
    CHECK(Rational(4, -6) == Rational(-2, 3));
    CHECK(Rational(0, 5).den() == 1);
    CHECK_THROWS_AS(Rational(1, 0), ArgError);
    CHECK(Rational::parse("7/3") == Rational(7, 3));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational(7, 3).str() == "7/3");
    CHECK(Rational(6, 3).str() == "2");
}

TEST_CASE("rational float view is accurate") {
    Rational r(1, 3);
    CHECK(r.to_double() == doctest::Approx(1.0 / 3).epsilon(1e-12));
    // value with large numerator and denominator
    BigInt big = BigInt(1) << 200;
    Rational huge(big * 2 + 1, big * 3);
    CHECK(huge.to_double() == doctest::Approx(2.0 / 3).epsilon(1e-12));
}

TEST_CASE("rankings must be bijections") {
    CHECK_THROWS_AS(Ranking::from_order({0, 0, 1}), ArgError);
    CHECK_THROWS_AS(Ranking::from_order({0, 1, 4}), ArgError);
    Ranking r = Ranking::from_order({2, 0, 1});
    CHECK(r.rank_of(2) == 1);
    CHECK(r.rank_of(0) == 2);
    CHECK(r.candidate_at(3) == 1);
    CHECK(r.top() == 2);
    CHECK(r.bottom() == 1);
}

TEST_CASE("profile validation") {
    CHECK_THROWS_AS(PreferenceProfile::from_orders(2, {}), ArgError);
    CHECK_THROWS_AS(PreferenceProfile::from_orders(2, {{0, 1}}, {Rational(0)}), ArgError);
    auto p = PreferenceProfile::from_orders(2, {{0, 1}, {1, 0}}, {Rational(1, 2), Rational(3, 2)});
    CHECK(p.total_weight() == Rational(2));
}

TEST_CASE("committee invariants") {
    CHECK_THROWS_AS(Committee::of({1, 1}), ArgError);
    Committee c = Committee::of({3, 1, 2});
    CHECK(c.members == std::vector<CandidateId>{1, 2, 3});
    CHECK(c.contains(2));
    CHECK(!c.contains(0));
    CHECK_THROWS_AS(c.validate(3), ArgError);  // member 3 needs m >= 4
}

TEST_CASE("rank sets: complement, counting, runs") {
    RankSet s = RankSet::complement(10, {3, 4, 8});
    CHECK(s.count() == 7);
    CHECK(s.count_leq(5) == 3);  // 1, 2, 5
    CHECK(s.contains(5));
    CHECK(!s.contains(4));
    CHECK(s.sum_values() == BigInt(1 + 2 + 5 + 6 + 7 + 9 + 10));
    CHECK_THROWS_AS(RankSet::from_values({2, 2}), ArgError);
    RankSet merged = RankSet::from_intervals({{5, 6}, {1, 4}});
    CHECK(merged.runs().size() == 1);  // adjacent runs coalesce
}

TEST_CASE("rng determinism and bounds") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.below(97) == b.below(97));
    Rng c(7);
    for (int i = 0; i < 1000; ++i) {
        auto v = c.below(13);
        CHECK(v < 13);
    }
    auto sample = Rng(3).sample_without_replacement(10, 4);
    CHECK(sample.size() == 4);
    std::sort(sample.begin(), sample.end());
    CHECK(std::unique(sample.begin(), sample.end()) == sample.end());
}
