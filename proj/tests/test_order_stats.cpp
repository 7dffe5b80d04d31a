#include <doctest.h>

#include "mwelect/errors.hpp"
#include "mwelect/order_stats.hpp"
#include "mwelect/rng.hpp"
#include "test_util.hpp"

using namespace mwelect;

TEST_CASE("binomials") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(5, 6) == 0);
    CHECK(binomial(5, -1) == 0);
    CHECK(binomial(50, 25) == BigInt("126410606437752"));
}

TEST_CASE("expected order statistic closed form vs full enumeration") {
    // all m <= 8: mean t-th smallest over every k-subset equals t(m+1)/(k+1)
    for (int m = 1; m <= 8; ++m) {
        for (int k = 1; k <= m; ++k) {
            std::vector<Rational> sums(k + 1);
            long long count = 0;
            testutil::for_each_committee(m, k, [&](const std::vector<CandidateId>& idx) {
                for (int t = 1; t <= k; ++t) sums[t] += Rational(idx[t - 1] + 1);
                ++count;
            });
            for (int t = 1; t <= k; ++t)
                CHECK(sums[t] / Rational(count) == expected_order_stat(m, k, t));
        }
    }
    CHECK(expected_order_stat(3, 1, 1) == Rational(2));
    CHECK(expected_order_stat(5, 2, 2) == Rational(4));
    CHECK(expected_order_stat(6, 3, 2) == Rational(7, 2));
    CHECK_THROWS_AS(expected_order_stat(3, 4, 1), ArgError);
}

namespace {

// Oracle: enumerate every draw from the pool.
Rational smallest_sum_oracle(const std::vector<RankValue>& fixed, std::vector<RankValue> pool,
                             int draws, int s) {
    Rational acc;
    long long count = 0;
    testutil::for_each_committee(static_cast<int>(pool.size()), draws,
                                 [&](const std::vector<CandidateId>& idx) {
                                     std::vector<RankValue> all = fixed;
                                     for (int i : idx) all.push_back(pool[i]);
                                     std::sort(all.begin(), all.end());
                                     long long sum = 0;
                                     for (int i = 0; i < s; ++i) sum += all[i];
                                     acc += Rational(sum);
                                     ++count;
                                 });
    return acc / Rational(count);
}

}  // namespace

TEST_CASE("expected smallest-rank sums match enumeration") {
    // spec examples
    CHECK(expected_smallest_sum({1, 2}, RankSet(), 0, 2) == Rational(3));
    CHECK(expected_smallest_sum({}, RankSet::from_intervals({{1, 9}}), 4, 1) == Rational(2));
    CHECK(expected_smallest_sum({3}, RankSet::from_values({1, 2, 4, 5}), 2, 2) ==
          smallest_sum_oracle({3}, {1, 2, 4, 5}, 2, 2));

    // randomized sweep against the enumeration oracle
    Rng rng(99);
    for (int trial = 0; trial < 150; ++trial) {
        int m = 4 + static_cast<int>(rng.below(6));  // ranks drawn from 1..m
        std::vector<RankValue> all(m);
        for (int i = 0; i < m; ++i) all[i] = i + 1;
        rng.shuffle(all);
        int nf = static_cast<int>(rng.below(4));
        std::vector<RankValue> fixed(all.begin(), all.begin() + nf);
        int pool_n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - nf - 1)));
        std::vector<RankValue> pool(all.begin() + nf, all.begin() + nf + pool_n);
        int draws = static_cast<int>(rng.below(pool_n + 1));
        int avail = nf + draws;
        if (avail < 1) continue;
        int s = 1 + static_cast<int>(rng.below(avail));
        Rational got = expected_smallest_sum(fixed, RankSet::from_values(pool), draws, s);
        CHECK(got == smallest_sum_oracle(fixed, pool, draws, s));
    }
}

TEST_CASE("expected smallest-rank sums reject bad input") {
    CHECK_THROWS_AS(expected_smallest_sum({1}, RankSet::from_values({1, 2}), 1, 1), ArgError);
    CHECK_THROWS_AS(expected_smallest_sum({1}, RankSet::from_values({2}), 2, 1), ArgError);
    CHECK_THROWS_AS(expected_smallest_sum({1}, RankSet::from_values({2}), 0, 2), ArgError);
}

TEST_CASE("multi-pool draws: independent pools convolve") {
    // oracle by double enumeration on a tiny case: pools {1,4} draw 1, {2,6} draw 1
    std::vector<RankValue> p1 = {1, 4}, p2 = {2, 6};
    Rational acc;
    for (RankValue x : p1)
        for (RankValue y : p2) {
            std::vector<RankValue> all = {x, y, 3};
            std::sort(all.begin(), all.end());
            acc += Rational(all[0] + all[1]);
        }
    acc /= Rational(4);
    std::vector<PoolDraw> pools;
    pools.push_back({RankSet::from_values(p1), 1});
    pools.push_back({RankSet::from_values(p2), 1});
    CHECK(expected_smallest_sum_multi({3}, pools, 2) == acc);
}

TEST_CASE("expected_min_rank agrees with the general kernel") {
    Rng rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        int m = 6 + static_cast<int>(rng.below(20));
        std::vector<RankValue> placed;
        for (RankValue r = 1; r <= m; ++r)
            if (rng.below(4) == 0) placed.push_back(r);
        RankSet pool = RankSet::complement(m, placed);
        if (pool.empty()) continue;
        int draws = 1 + static_cast<int>(rng.below(std::min<long long>(pool.count(), 5)));
        RankValue fmin = placed.empty() ? 0 : placed[rng.below(placed.size())];
        if (fmin == 0) {
            CHECK(expected_min_rank(0, pool, draws) ==
                  expected_smallest_sum({}, pool, draws, 1));
        } else {
            CHECK(expected_min_rank(fmin, pool, draws) ==
                  expected_smallest_sum({fmin}, pool, draws, 1));
        }
    }
}

TEST_CASE("completion sweep matches one-shot kernel evaluations") {
    Rng rng(17);
    for (int trial = 0; trial < 80; ++trial) {
        int m = 5 + static_cast<int>(rng.below(8));
        // split ranks into fixed and pool
        std::vector<RankValue> fixed, pool;
        for (RankValue r = 1; r <= m; ++r) (rng.below(3) == 0 ? fixed : pool).push_back(r);
        if (pool.size() < 2) continue;
        int s = 1 + static_cast<int>(rng.below(3));
        RankSet pool_set = RankSet::from_values(pool);

        SUBCASE("") {}
        // exclude_added: the added rank comes out of the pool (Banzhaf step)
        {
            int draws = static_cast<int>(rng.below(pool.size()));  // <= pool-1
            CompletionSweep sweep(fixed, pool_set, draws, s, true, static_cast<RankValue>(m));
            for (RankValue r : pool) {
                if (static_cast<int>(fixed.size()) + 1 + draws < s) continue;
                std::vector<RankValue> f2 = fixed;
                f2.push_back(r);
                std::vector<RankValue> rest;
                for (RankValue q : pool)
                    if (q != r) rest.push_back(q);
                Rational expect = expected_smallest_sum(f2, RankSet::from_values(rest), draws, s);
                Rational got(sweep.value_with(r), sweep.denominator());
                CHECK(got == expect);
            }
        }
        // keep the pool intact: the added rank is external (symmetric greedy)
        {
            int draws = static_cast<int>(rng.below(pool.size() + 1));
            if (!fixed.empty()) {
                RankValue r = fixed.back();
                std::vector<RankValue> f2(fixed.begin(), fixed.end() - 1);
                CompletionSweep sweep(f2, pool_set, draws, s, false, static_cast<RankValue>(m));
                if (static_cast<int>(f2.size()) + 1 + draws >= s) {
                    Rational expect = expected_smallest_sum(fixed, pool_set, draws, s);
                    Rational got(sweep.value_with(r), sweep.denominator());
                    CHECK(got == expect);
                }
                if (static_cast<int>(f2.size()) + draws >= s) {
                    Rational base(sweep.base_value(), sweep.denominator());
                    CHECK(base == expected_smallest_sum(f2, pool_set, draws, s));
                }
            }
        }
    }
}
