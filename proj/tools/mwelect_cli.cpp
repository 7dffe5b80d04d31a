// Command-line front end for the mwelect library: generate instances, run
// selection rules, verify the bound batteries, and sweep benchmark manifests.
// Exit codes: 0 success, 2 usage error, 3 verification failure, 4 resource cap.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mwelect.h"

namespace {

int status_to_exit(mw_status st) {
    switch (st) {
        case MW_OK:
            return 0;
        case MW_ERR_ARGUMENT:
        case MW_ERR_PARSE:
            return 2;
        case MW_ERR_VERIFY:
            return 3;
        case MW_ERR_CAP:
            return 4;
        default:
            return 1;
    }
}

int fail(mw_status st) {
    std::cerr << "error: " << mw_last_error() << "\n";
    return status_to_exit(st);
}

std::uint64_t default_seed() {
    const char* env = std::getenv("MWELECT_SEED");
    if (env && *env) return std::strtoull(env, nullptr, 10);
    return 0;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path + ".tmp", std::ios::binary | std::ios::trunc);
    f << text;
    f.close();
    std::rename((out_path + ".tmp").c_str(), out_path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"committee selection under the s-Borda rule"};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate an instance file");
    std::string g_kind, g_out, g_cover;
    int g_m = 0, g_n = 0, g_k = 1, g_s = 1, g_layers = 8, g_resolution = 1000;
    int g_rank_grid = 500000;
    double g_eps = 0.05, g_a = -1, g_b = -1, g_margin = -1;
    std::uint64_t g_seed = default_seed();
    gen->add_option("--kind", g_kind,
                    "random|allperm|spiral|monotone-gap|core-cex|sborda-bad|from-cover")
        ->required();
    gen->add_option("--m", g_m, "candidate count");
    gen->add_option("--n", g_n, "voter count (random)");
    gen->add_option("--k", g_k, "committee size hint");
    gen->add_option("--s", g_s, "default s for the instance file");
    gen->add_option("--seed", g_seed, "RNG seed (default MWELECT_SEED or 0)");
    gen->add_option("--out", g_out, "output path ('-' for stdout)")->required();
    gen->add_option("--eps", g_eps, "epsilon for from-cover");
    gen->add_option("--cover", g_cover, "cover instance file for from-cover");
    gen->add_option("--layers", g_layers, "spiral layers");
    gen->add_option("--resolution", g_resolution, "spiral grid steps per layer");
    gen->add_option("--rank-grid", g_rank_grid, "spiral candidate count");
    gen->add_option("--a", g_a, "spiral scale / gap band start");
    gen->add_option("--b", g_b, "gap band end");
    gen->add_option("--margin", g_margin, "spiral window margin");

    // ---- solve ----
    auto* solve = app.add_subcommand("solve", "run a selection rule on an instance");
    std::string s_in, s_rule = "greedy", s_out;
    int s_k = 0, s_s = 0, s_trials = 1000;
    bool s_exact = true, s_float = false, s_no_trace = false;
    std::uint64_t s_seed = default_seed();
    solve->add_option("--in", s_in, "instance file")->required();
    solve->add_option("--rule", s_rule, "greedy|banzhaf|random|opt|lp-round");
    solve->add_option("--k", s_k, "committee size")->required();
    solve->add_option("--s", s_s, "s-Borda parameter (default: the file's)");
    solve->add_option("--seed", s_seed, "seed for random/lp-round");
    solve->add_option("--trials", s_trials, "trials for the random rule");
    solve->add_flag("--exact,!--float", s_exact, "exact rational scoring (default below m=2000)");
    solve->add_flag("--no-trace", s_no_trace, "omit the pick trace from the report");
    solve->add_option("--out", s_out, "report path ('-' for stdout)");
    (void)s_float;

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string v_suite;
    int v_instances = 1000;
    std::uint64_t v_seed = 20240915;
    bool v_quick = false;
    std::string v_out;
    verify->add_option("--suite", v_suite,
                       "greedy-bounds|banzhaf-bounds|core|monotone|lp|order-stats|all")
        ->required();
    verify->add_option("--seeds", v_instances, "random-instance sweep size");
    verify->add_option("--seed", v_seed, "master seed");
    verify->add_flag("--quick", v_quick, "reduced sizes for smoke runs");
    verify->add_option("--out", v_out, "write the JSON summary here as well");

    // ---- bench ----
    auto* bench = app.add_subcommand("bench", "run a benchmark manifest, emit CSV");
    std::string b_manifest, b_out;
    bench->add_option("--manifest", b_manifest, "manifest JSON file")->required();
    bench->add_option("--out", b_out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (gen->parsed()) {
        std::ostringstream params;
        params << "{\"kind\":\"" << g_kind << "\",\"seed\":" << g_seed << ",\"s_default\":" << g_s;
        if (g_kind == "random") {
            if (g_m <= 0 || g_n <= 0) {
                std::cerr << "error: gen --kind random needs --m and --n\n";
                return 2;
            }
            params << ",\"m\":" << g_m << ",\"n\":" << g_n << ",\"k\":" << g_k;
        } else if (g_kind == "allperm" || g_kind == "core-cex") {
            params << ",\"m\":" << g_m;
        } else if (g_kind == "monotone-gap") {
            params << ",\"m\":" << g_m;
            if (g_a > 0) params << ",\"a\":" << g_a;
            if (g_b > 0) params << ",\"b\":" << g_b;
        } else if (g_kind == "spiral") {
            params << ",\"layers\":" << g_layers << ",\"resolution\":" << g_resolution
                   << ",\"rank_grid\":" << g_rank_grid;
            if (g_a > 0) params << ",\"a\":" << g_a;
            if (g_margin > 0) params << ",\"window_margin\":" << g_margin;
        } else if (g_kind == "sborda-bad") {
            params << ",\"m\":" << g_m << ",\"k\":" << g_k << ",\"s\":" << g_s;
        } else if (g_kind == "from-cover") {
            if (g_cover.empty()) {
                std::cerr << "error: gen --kind from-cover needs --cover\n";
                return 2;
            }
            params << ",\"cover_path\":\"" << json_escape(g_cover) << "\",\"eps\":" << g_eps;
        } else {
            std::cerr << "error: unknown kind '" << g_kind << "'\n";
            return 2;
        }
        params << "}";
        mw_profile* prof = nullptr;
        mw_status st = mw_profile_generate(params.str().c_str(), &prof);
        if (st != MW_OK) return fail(st);
        st = mw_profile_save(prof, g_out.c_str(), "auto");
        mw_profile_free(prof);
        if (st != MW_OK) return fail(st);
        std::cerr << "wrote " << g_out << "\n";
        return 0;
    }

    if (solve->parsed()) {
        mw_profile* prof = nullptr;
        mw_status st = mw_profile_load(s_in.c_str(), "auto", &prof);
        if (st != MW_OK) return fail(st);
        if (s_s <= 0) {
            int32_t sd = 1;
            mw_profile_info(prof, nullptr, nullptr, nullptr, &sd);
            s_s = sd;
        }
        std::ostringstream opts;
        opts << "{\"trials\":" << s_trials << ",\"exact\":" << (s_exact ? "true" : "false")
             << ",\"with_trace\":" << (s_no_trace ? "false" : "true") << "}";
        char* report = nullptr;
        st = mw_solve(prof, s_rule.c_str(), s_k, s_s, s_seed, opts.str().c_str(), &report);
        mw_profile_free(prof);
        if (st != MW_OK) return fail(st);
        emit(report, s_out);
        mw_string_free(report);
        return 0;
    }

    if (verify->parsed()) {
        std::ostringstream opts;
        opts << "{\"seed\":" << v_seed << ",\"instances\":" << v_instances
             << ",\"quick\":" << (v_quick ? "true" : "false") << "}";
        char* summary = nullptr;
        mw_status st = mw_verify(v_suite.c_str(), opts.str().c_str(), &summary);
        if (st != MW_OK && st != MW_ERR_VERIFY) return fail(st);
        if (summary) {
            std::cout << summary;
            if (!v_out.empty()) emit(summary, v_out);
            mw_string_free(summary);
        }
        if (st == MW_ERR_VERIFY) {
            std::cerr << "verification FAILED\n";
            return 3;
        }
        return 0;
    }

    if (bench->parsed()) {
        std::ifstream f(b_manifest);
        if (!f) {
            std::cerr << "error: cannot open manifest '" << b_manifest << "'\n";
            return 2;
        }
        std::ostringstream ss;
        ss << f.rdbuf();
        mw_status st = mw_bench(ss.str().c_str(), b_out.c_str());
        if (st != MW_OK) return fail(st);
        std::cerr << "wrote " << b_out << "\n";
        return 0;
    }
    return 2;
}
