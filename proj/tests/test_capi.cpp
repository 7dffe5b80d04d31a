// Exercises the shared-library surface the CLI is built on.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "mwelect.h"

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    mw_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("version and error reporting") {
    CHECK(mw_version() != nullptr);
    mw_profile* p = nullptr;
    CHECK(mw_profile_load("/nonexistent/file", "auto", &p) == MW_ERR_PARSE);
    CHECK(std::strlen(mw_last_error()) > 0);
}

TEST_CASE("generate, info, score, save, load") {
    mw_profile* p = nullptr;
    REQUIRE(mw_profile_generate(R"({"kind":"random","m":6,"n":4,"k":2,"seed":3})", &p) == MW_OK);
    int32_t m = 0, sym = -1, sdef = 0;
    int64_t n = 0;
    CHECK(mw_profile_info(p, &m, &n, &sym, &sdef) == MW_OK);
    CHECK(m == 6);
    CHECK(n == 4);
    CHECK(sym == 0);

    int32_t members[2] = {0, 1};
    char* score = nullptr;
    REQUIRE(mw_score(p, members, 2, 1, &score) == MW_OK);
    std::string sc = take(score);
    CHECK(!sc.empty());

    CHECK(mw_profile_save(p, "/tmp/mwelect_capi.json", "json") == MW_OK);
    mw_profile_free(p);

    mw_profile* q = nullptr;
    REQUIRE(mw_profile_load("/tmp/mwelect_capi.json", "auto", &q) == MW_OK);
    char* score2 = nullptr;
    REQUIRE(mw_score(q, members, 2, 1, &score2) == MW_OK);
    CHECK(take(score2) == sc);
    mw_profile_free(q);
    std::remove("/tmp/mwelect_capi.json");
}

TEST_CASE("generate symmetric kinds and solve") {
    mw_profile* p = nullptr;
    REQUIRE(mw_profile_generate(R"({"kind":"core-cex","m":16})", &p) == MW_OK);
    int32_t sym = 0;
    mw_profile_info(p, nullptr, nullptr, &sym, nullptr);
    CHECK(sym == 1);

    char* report = nullptr;
    REQUIRE(mw_solve(p, "greedy", 3, 1, 0, nullptr, &report) == MW_OK);
    std::string rep = take(report);
    CHECK(rep.find("\"score\": \"8/3\"") != std::string::npos);
    mw_profile_free(p);
}

TEST_CASE("solve validates rules and arguments") {
    mw_profile* p = nullptr;
    REQUIRE(mw_profile_generate(R"({"kind":"allperm","m":4})", &p) == MW_OK);
    char* out = nullptr;
    CHECK(mw_solve(p, "no-such-rule", 2, 1, 0, nullptr, &out) == MW_ERR_ARGUMENT);
    CHECK(mw_solve(p, "greedy", 9, 1, 0, nullptr, &out) == MW_ERR_ARGUMENT);
    CHECK(mw_solve(p, "lp-round", 2, 1, 0, nullptr, &out) == MW_ERR_ARGUMENT);  // s = 1
    mw_profile_free(p);
}

TEST_CASE("verify runs a quick suite") {
    char* summary = nullptr;
    mw_status st = mw_verify("order-stats", R"({"quick":true})", &summary);
    std::string s = take(summary);
    CHECK(st == MW_OK);
    CHECK(s.find("\"pass\": true") != std::string::npos);
    CHECK(mw_verify("bogus-suite", nullptr, nullptr) == MW_ERR_ARGUMENT);
}

TEST_CASE("bench manifest produces a CSV") {
    const char* manifest = R"({
        "schema": 1,
        "entries": [
            {"id": "tiny", "instance": {"kind": "random", "m": 6, "n": 4, "seed": 1},
             "rules": ["greedy", "banzhaf"], "k": [2, 3], "s": 1, "seeds": [0, 1]}
        ]
    })";
    REQUIRE(mw_bench(manifest, "/tmp/mwelect_bench.csv") == MW_OK);
    std::ifstream f("/tmp/mwelect_bench.csv");
    std::string line;
    std::getline(f, line);
    CHECK(line.rfind("instance,", 0) == 0);
    int rows = 0;
    while (std::getline(f, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2 * 2 * 2);  // rules x k range x seeds
    std::remove("/tmp/mwelect_bench.csv");

    CHECK(mw_bench("{\"schema\":2,\"entries\":[]}", "/tmp/x.csv") == MW_ERR_PARSE);
}

TEST_CASE("monotonicity bound export") {
    double bound = 0;
    char label[4];
    REQUIRE(mw_eval_monotonicity_bound(0.377, 0.552, &bound, label) == MW_OK);
    CHECK(bound > 1.015);
    CHECK(std::string(label) == "Y");
}
