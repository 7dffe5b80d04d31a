#include "mwelect.h"

#include <cstring>
#include <future>
#include <memory>
#include <string>

#include <json.hpp>

#include "mwelect/diagnostics.hpp"
#include "mwelect/errors.hpp"
#include "mwelect/instance_gen.hpp"
#include "mwelect/io.hpp"
#include "mwelect/scoring.hpp"
#include "mwelect/verify.hpp"

using nlohmann::json;
using namespace mwelect;

struct mw_profile {
    LoadedProfile lp;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class Fn>
mw_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const CapError& e) {
        g_last_error = e.what();
        return MW_ERR_CAP;
    } catch (const ParseError& e) {
        g_last_error = e.what();
        return MW_ERR_PARSE;
    } catch (const ArgError& e) {
        g_last_error = e.what();
        return MW_ERR_ARGUMENT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return MW_ERR_INTERNAL;
    }
}

ProfileFormat parse_format(const char* format) {
    std::string f = format ? format : "auto";
    if (f == "auto") return ProfileFormat::Auto;
    if (f == "text") return ProfileFormat::Text;
    if (f == "json") return ProfileFormat::Json;
    if (f == "preflib") return ProfileFormat::PrefLib;
    throw ArgError("unknown profile format '" + f + "'");
}

LoadedProfile generate_from_json(const json& params) {
    std::string kind = params.at("kind").get<std::string>();
    std::uint64_t seed = params.value("seed", 0ull);
    LoadedProfile lp;
    if (kind == "random") {
        lp.explicit_profile = gen_random(params.at("m").get<int>(), params.at("n").get<int>(),
                                         params.value("k", 1), seed);
    } else if (kind == "allperm") {
        lp.explicit_profile = gen_all_permutations(params.at("m").get<int>());
    } else if (kind == "spiral") {
        SpiralParams sp;
        sp.layers = params.value("layers", sp.layers);
        sp.a = params.value("a", sp.a);
        sp.resolution = params.value("resolution", sp.resolution);
        sp.rank_grid = params.value("rank_grid", sp.rank_grid);
        sp.window_margin = params.value("window_margin", sp.window_margin);
        lp.symmetric_profile = gen_spiral(sp).profile;
    } else if (kind == "monotone-gap") {
        lp.symmetric_profile = gen_monotonicity_gap(
            params.at("m").get<int>(), params.value("a", 0.377), params.value("b", 0.552));
    } else if (kind == "core-cex") {
        lp.symmetric_profile = gen_core_counterexample(params.at("m").get<int>());
    } else if (kind == "sborda-bad") {
        lp.symmetric_profile = gen_sborda_bad(params.at("m").get<int>(), params.at("k").get<int>(),
                                              params.at("s").get<int>());
    } else if (kind == "from-cover") {
        CoverInstance cover;
        if (params.contains("cover_path")) {
            cover = load_cover(params.at("cover_path").get<std::string>());
        } else {
            const json& jc = params.at("cover");
            cover.universe = jc.at("universe").get<int>();
            cover.budget = jc.at("budget").get<int>();
            for (const auto& s : jc.at("sets")) cover.sets.push_back(s.get<std::vector<int>>());
        }
        CoverGenOptions opts;
        opts.copy_cap = params.value("copy_cap", opts.copy_cap);
        lp.explicit_profile = gen_from_cover(cover, params.at("eps").get<double>(), seed, opts);
    } else {
        throw ArgError("unknown generator kind '" + kind + "'");
    }
    if (params.contains("s_default")) lp.s_default = params.at("s_default").get<int>();
    return lp;
}

json parse_options(const char* options_json) {
    if (!options_json || !*options_json) return json::object();
    try {
        return json::parse(options_json);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid options JSON: ") + e.what());
    }
}

}  // namespace

extern "C" {

const char* mw_version(void) { return "1.0.0"; }

const char* mw_last_error(void) { return g_last_error.c_str(); }

void mw_string_free(char* s) { std::free(s); }

void mw_profile_free(mw_profile* p) { delete p; }

mw_status mw_profile_load(const char* path, const char* format, mw_profile** out) {
    return guarded([&]() {
        if (!path || !out) throw ArgError("null argument");
        auto p = std::make_unique<mw_profile>();
        p->lp = load_profile(path, parse_format(format));
        *out = p.release();
        return MW_OK;
    });
}

mw_status mw_profile_parse(const char* data, const char* format, mw_profile** out) {
    return guarded([&]() {
        if (!data || !out) throw ArgError("null argument");
        auto p = std::make_unique<mw_profile>();
        p->lp = parse_profile(data, parse_format(format));
        *out = p.release();
        return MW_OK;
    });
}

mw_status mw_profile_save(const mw_profile* p, const char* path, const char* format) {
    return guarded([&]() {
        if (!p || !path) throw ArgError("null argument");
        if (p->lp.is_symmetric()) {
            save_profile(*p->lp.symmetric_profile, path, p->lp.s_default);
        } else {
            save_profile(*p->lp.explicit_profile, path, parse_format(format), p->lp.s_default);
        }
        return MW_OK;
    });
}

mw_status mw_profile_generate(const char* params_json, mw_profile** out) {
    return guarded([&]() {
        if (!params_json || !out) throw ArgError("null argument");
        json params;
        try {
            params = json::parse(params_json);
        } catch (const json::exception& e) {
            throw ParseError(std::string("invalid generator JSON: ") + e.what());
        }
        auto p = std::make_unique<mw_profile>();
        p->lp = generate_from_json(params);
        *out = p.release();
        return MW_OK;
    });
}

mw_status mw_profile_info(const mw_profile* p, int32_t* m, int64_t* voters_or_groups,
                          int32_t* is_symmetric, int32_t* s_default) {
    return guarded([&]() {
        if (!p) throw ArgError("null profile");
        if (m) *m = p->lp.m();
        if (voters_or_groups)
            *voters_or_groups = p->lp.is_symmetric() ? p->lp.symmetric_profile->num_groups()
                                                     : p->lp.explicit_profile->num_voters();
        if (is_symmetric) *is_symmetric = p->lp.is_symmetric() ? 1 : 0;
        if (s_default) *s_default = p->lp.s_default;
        return MW_OK;
    });
}

mw_status mw_score(const mw_profile* p, const int32_t* members, int32_t len, int32_t s,
                   char** score_out) {
    return guarded([&]() {
        if (!p || !members || !score_out) throw ArgError("null argument");
        Committee c = Committee::of(std::vector<CandidateId>(members, members + len));
        Rational sc = p->lp.is_symmetric()
                          ? committee_score_symmetric(*p->lp.symmetric_profile, c, s)
                          : score_s_borda(*p->lp.explicit_profile, c, s);
        *score_out = dup_string(sc.str());
        return MW_OK;
    });
}

mw_status mw_solve(const mw_profile* p, const char* rule, int32_t k, int32_t s, uint64_t seed,
                   const char* options_json, char** report_json_out) {
    return guarded([&]() {
        if (!p || !rule || !report_json_out) throw ArgError("null argument");
        json opts_json = parse_options(options_json);
        ReportOptions opts;
        opts.seed = seed;
        opts.trials = opts_json.value("trials", opts.trials);
        opts.opt_cap = opts_json.value("opt_cap", opts.opt_cap);
        opts.attach_opt = opts_json.value("attach_opt", true);
        opts.with_traces = opts_json.value("with_trace", true);
        opts.exact = opts_json.value("exact", p->lp.m() <= 2000);
        RunReport rep = run_report(p->lp, {std::string(rule)}, k, s, opts);
        *report_json_out = dup_string(report_to_json(rep));
        return MW_OK;
    });
}

mw_status mw_verify(const char* suite, const char* options_json, char** summary_json_out) {
    return guarded([&]() {
        if (!suite) throw ArgError("null suite");
        json opts_json = parse_options(options_json);
        VerifyOptions opts;
        opts.seed = opts_json.value("seed", opts.seed);
        opts.sweep_instances = opts_json.value("instances", opts.sweep_instances);
        opts.quick = opts_json.value("quick", false);

        std::vector<std::string> names;
        if (std::string(suite) == "all") {
            names = verify_suite_names();
        } else {
            names.push_back(suite);
        }
        json out;
        out["suites"] = json::array();
        bool pass = true;
        for (const auto& name : names) {
            SuiteResult res = verify_suite(name, opts);
            pass = pass && res.pass;
            json js;
            js["suite"] = res.suite;
            js["pass"] = res.pass;
            js["checks"] = json::array();
            for (const auto& line : res.lines) {
                json jl;
                jl["label"] = line.label;
                jl["pass"] = line.pass;
                jl["detail"] = line.detail;
                js["checks"].push_back(std::move(jl));
            }
            out["suites"].push_back(std::move(js));
        }
        out["pass"] = pass;
        if (summary_json_out) *summary_json_out = dup_string(out.dump(2) + "\n");
        if (!pass) {
            g_last_error = "verification failed";
            return MW_ERR_VERIFY;
        }
        return MW_OK;
    });
}

mw_status mw_bench(const char* manifest_json, const char* out_csv_path) {
    return guarded([&]() {
        if (!manifest_json || !out_csv_path) throw ArgError("null argument");
        json manifest;
        try {
            manifest = json::parse(manifest_json);
        } catch (const json::exception& e) {
            throw ParseError(std::string("invalid manifest JSON: ") + e.what());
        }
        if (manifest.value("schema", 0) != 1) throw ParseError("manifest schema must be 1");

        struct Entry {
            std::string id;
            json instance;
            std::vector<std::string> rules;
            std::vector<int> ks;
            int s = 1;
            std::vector<std::uint64_t> seeds;
            int trials = 1000;
        };
        std::vector<Entry> entries;
        for (const auto& je : manifest.at("entries")) {
            Entry e;
            e.id = je.value("id", "entry" + std::to_string(entries.size()));
            e.instance = je.at("instance");
            for (const auto& r : je.at("rules")) e.rules.push_back(r.get<std::string>());
            if (je.at("k").is_array()) {
                int lo = je.at("k")[0].get<int>(), hi = je.at("k")[1].get<int>();
                for (int k = lo; k <= hi; ++k) e.ks.push_back(k);
            } else {
                e.ks.push_back(je.at("k").get<int>());
            }
            e.s = je.value("s", 1);
            if (je.contains("seeds"))
                for (const auto& sd : je.at("seeds")) e.seeds.push_back(sd.get<std::uint64_t>());
            else
                e.seeds.push_back(0);
            e.trials = je.value("trials", 1000);
            entries.push_back(std::move(e));
        }

        auto run_entry = [](const Entry& e) {
            LoadedProfile lp;
            if (e.instance.contains("path")) {
                lp = load_profile(e.instance.at("path").get<std::string>());
            } else {
                lp = generate_from_json(e.instance);
            }
            std::string rows;
            for (int k : e.ks) {
                for (std::uint64_t seed : e.seeds) {
                    ReportOptions opts;
                    opts.seed = seed;
                    opts.trials = e.trials;
                    opts.with_traces = false;
                    RunReport rep = run_report(lp, e.rules, k, e.s, opts);
                    rep.instance_id = e.id;
                    rep.seed = seed;
                    rows += report_to_csv_rows(rep);
                }
            }
            return rows;
        };

        // Entries are independent; run them in a worker pool and emit rows in
        // manifest order.
        std::vector<std::future<std::string>> futures;
        for (const auto& e : entries)
            futures.push_back(std::async(std::launch::async, run_entry, std::cref(e)));
        std::string csv = report_csv_header() + "\n";
        for (auto& f : futures) csv += f.get();
        write_file_atomic(out_csv_path, csv);
        return MW_OK;
    });
}

mw_status mw_eval_monotonicity_bound(double a, double b, double* bound_out, char* label_out) {
    return guarded([&]() {
        MonotonicityBound mb = eval_monotonicity_bound(a, b);
        if (bound_out) *bound_out = mb.bound;
        if (label_out) {
            std::strncpy(label_out, mb.argmin_branch.c_str(), 3);
            label_out[3] = '\0';
        }
        return MW_OK;
    });
}

}  // extern "C"
