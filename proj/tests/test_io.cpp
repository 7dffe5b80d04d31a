#include <doctest.h>

#include <cstdio>

#include "mwelect/errors.hpp"
#include "mwelect/instance_gen.hpp"
#include "mwelect/io.hpp"
#include "mwelect/selection.hpp"

using namespace mwelect;

TEST_CASE("text round trip, with and without weights") {
    auto p = gen_random(5, 4, 2, 3);
    std::string text = profile_to_text(p, 2);
    LoadedProfile lp = parse_profile(text, ProfileFormat::Text);
    CHECK(!lp.is_symmetric());
    CHECK(lp.s_default == 2);
    CHECK(profile_to_text(*lp.explicit_profile, 2) == text);

    PreferenceProfile w = p;
    w.weights = {Rational(1), Rational(1, 2), Rational(3), Rational(2, 7)};
    std::string wt = profile_to_text(w, 1);
    CHECK(wt.find("w=1/2") != std::string::npos);
    LoadedProfile lw = parse_profile(wt, ProfileFormat::Text);
    CHECK(lw.explicit_profile->weights[3] == Rational(2, 7));
}

TEST_CASE("json round trip for explicit and symmetric profiles") {
    auto p = gen_random(5, 3, 2, 8);
    LoadedProfile lp = parse_profile(profile_to_json(p, 3), ProfileFormat::Json);
    CHECK(lp.s_default == 3);
    CHECK(profile_to_text(*lp.explicit_profile) == profile_to_text(p));

    SymmetricProfile sp = gen_core_counterexample(16);
    LoadedProfile ls = parse_profile(symmetric_to_json(sp, 1), ProfileFormat::Json);
    REQUIRE(ls.is_symmetric());
    CHECK(symmetric_to_json(*ls.symmetric_profile) == symmetric_to_json(sp));

    SymmetricProfile gap = gen_monotonicity_gap(100);
    LoadedProfile lg = parse_profile(symmetric_to_json(gap, 1), ProfileFormat::Json);
    REQUIRE(lg.is_symmetric());
    CHECK(lg.symmetric_profile->num_blocks() == 2);
    CHECK(symmetric_to_json(*lg.symmetric_profile) == symmetric_to_json(gap));
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_profile("", ProfileFormat::Text), ParseError);
    // repeated candidate id in a ranking
    try {
        parse_profile("3 1 1\n0 0 2\n", ProfileFormat::Text);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    // wrong id count
    CHECK_THROWS_AS(parse_profile("3 1 1\n0 1\n", ProfileFormat::Text), ParseError);
    CHECK_THROWS_AS(parse_profile("{not json", ProfileFormat::Json), ParseError);
}

TEST_CASE("preflib strict-order formats") {
    // modern layout with metadata
    std::string soc =
        "# FILE NAME: demo.soc\n"
        "# NUMBER ALTERNATIVES: 4\n"
        "# NUMBER VOTERS: 9\n"
        "3: 1,3,2,4\n"
        "2: 2,1,4,3\n"
        "4: 4,3,2,1\n";
    LoadedProfile lp = parse_profile(soc, ProfileFormat::PrefLib);
    REQUIRE(!lp.is_symmetric());
    const auto& p = *lp.explicit_profile;
    CHECK(p.m == 4);
    CHECK(p.num_voters() == 3);
    CHECK(p.weights[0] == Rational(3));      // count prefix becomes weight
    CHECK(p.voters[0].rank_of(0) == 1);      // ids shift to 0-based
    CHECK(p.voters[2].rank_of(3) == 1);
    CHECK(p.total_weight() == Rational(9));

    // legacy layout: m, names, count line, ballots
    std::string legacy =
        "3\n"
        "1,alpha\n"
        "2,beta\n"
        "3,gamma\n"
        "5,5,2\n"
        "3,1,2,3\n"
        "2,3,2,1\n";
    LoadedProfile ll = parse_profile(legacy, ProfileFormat::PrefLib);
    CHECK(ll.explicit_profile->m == 3);
    CHECK(ll.explicit_profile->num_voters() == 2);
    CHECK(ll.explicit_profile->weights[1] == Rational(2));

    // incomplete ballots are rejected
    std::string bad = "# NUMBER ALTERNATIVES: 4\n2: 1,2\n";
    CHECK_THROWS_AS(parse_profile(bad, ProfileFormat::PrefLib), ParseError);
}

TEST_CASE("file save and load round trip") {
    auto p = gen_random(6, 4, 2, 15);
    std::string path = "/tmp/mwelect_io_test.json";
    save_profile(p, path, ProfileFormat::Json, 2);
    LoadedProfile lp = load_profile(path);
    CHECK(lp.s_default == 2);
    CHECK(profile_to_text(*lp.explicit_profile) == profile_to_text(p));
    std::remove(path.c_str());
}

TEST_CASE("cover round trip") {
    CoverInstance cover;
    cover.universe = 6;
    cover.budget = 2;
    cover.sets = {{0, 1, 2}, {3, 4, 5}, {0, 2, 4}};
    std::string text = cover_to_text(cover);
    CoverInstance back = parse_cover(text);
    CHECK(back.universe == 6);
    CHECK(back.sets == cover.sets);
    CHECK_THROWS_AS(parse_cover("6 2 2\n0 1 2\n"), ParseError);  // set count mismatch
}

TEST_CASE("trace serialization") {
    auto p = gen_random(5, 3, 2, 4);
    auto g = greedy(p, 2, 1);
    std::string j = trace_to_json(g.trace);
    CHECK(j.find("\"rule\": \"greedy\"") != std::string::npos);
    CHECK(j.find("\"picks\"") != std::string::npos);
    CHECK(j.find("\"score\"") != std::string::npos);
}
