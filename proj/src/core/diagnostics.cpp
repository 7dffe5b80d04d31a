#include "mwelect/diagnostics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "mwelect/errors.hpp"
#include "mwelect/order_stats.hpp"
#include "mwelect/rounding.hpp"
#include "mwelect/scoring.hpp"

namespace mwelect {

using nlohmann::json;

CoreReport core_blocking(const PreferenceProfile& profile, const Committee& committee,
                         const Rational& alpha) {
    profile.validate();
    committee.validate(profile.m);
    if (alpha.sign() <= 0) throw ArgError("alpha must be positive");
    const int m = profile.m, n = profile.num_voters();
    const int k = committee.k();
    Rational total = profile.total_weight();
    Rational threshold = alpha / Rational(k);  // fraction of total weight

    CoreReport rep;
    rep.alpha = alpha;
    // Per candidate, the weight of voters ranking it above every member.
    std::vector<Rational> support(m);
    for (int v = 0; v < n; ++v) {
        const Ranking& r = profile.voters[v];
        RankValue best = r.rank_of(committee.members[0]);
        for (std::size_t i = 1; i < committee.members.size(); ++i)
            best = std::min(best, r.rank_of(committee.members[i]));
        Rational w = profile.weight_of(v);
        for (RankValue t = 1; t < best; ++t) support[r.candidate_at(t)] += w;
    }
    for (CandidateId c = 0; c < m; ++c) {
        if (committee.contains(c)) continue;
        Rational frac = support[c] / total;
        if (frac >= threshold) rep.blocking.push_back({c, frac});
    }
    rep.in_core = rep.blocking.empty();
    return rep;
}

CoreReport core_blocking(const SymmetricProfile& sp, const Committee& committee,
                         const Rational& alpha) {
    sp.validate();
    committee.validate(sp.m);
    if (alpha.sign() <= 0) throw ArgError("alpha must be positive");
    if (sp.num_blocks() != 1)
        throw ArgError("core blocking on symmetric profiles supports a single dummy block");
    const int k = committee.k();
    Rational threshold = alpha / Rational(k);

    std::vector<CandidateId> crit_members;
    long long d = 0;
    for (CandidateId c : committee.members) {
        if (sp.critical_index(c) >= 0)
            crit_members.push_back(c);
        else
            ++d;
    }

    CoreReport rep;
    rep.alpha = alpha;
    const long long P = sp.num_free();
    BigInt denom = binomial(P, d);
    BigInt denom_unchosen = binomial(P - 1, d);  // placements of d chosen dummies given one more

    // Support of each unchosen critical: weight of groups/permutations where
    // its rank beats every committee member.
    for (int i = 0; i < sp.num_critical(); ++i) {
        CandidateId c = sp.critical[i];
        if (committee.contains(c)) continue;
        Rational frac;
        for (int g = 0; g < sp.num_groups(); ++g) {
            RankValue r = sp.groups[g].placed[i];
            RankValue fmin = 0;
            for (CandidateId cm : crit_members) {
                RankValue rr = sp.groups[g].placed[sp.critical_index(cm)];
                if (fmin == 0 || rr < fmin) fmin = rr;
            }
            if (fmin != 0 && r >= fmin) continue;
            RankSet pool = sp.free_ranks(g);
            BigInt surv = binomial(P - pool.count_leq(r), d);
            frac += sp.groups[g].weight * Rational(surv, denom);
        }
        if (frac >= threshold) rep.blocking.push_back({c, frac});
    }
    // A representative unchosen dummy (all are exchangeable).
    if (d + 1 <= P && d < static_cast<long long>(sp.block_ids(0).size())) {
        Rational frac;
        for (int g = 0; g < sp.num_groups(); ++g) {
            RankValue fmin = 0;
            for (CandidateId cm : crit_members) {
                RankValue rr = sp.groups[g].placed[sp.critical_index(cm)];
                if (fmin == 0 || rr < fmin) fmin = rr;
            }
            RankSet pool = sp.free_ranks(g);
            RankValue stop = fmin != 0 ? fmin : static_cast<RankValue>(pool.runs().back().hi + 1);
            // Pr[this dummy lands below stop and below the d chosen dummies]
            BigInt num = 0;
            for (const auto& run : pool.runs()) {
                if (run.lo >= stop) break;
                RankValue hi = std::min<RankValue>(run.hi, stop - 1);
                for (RankValue p = run.lo; p <= hi; ++p)
                    num += binomial(P - pool.count_leq(p), d);
            }
            frac += sp.groups[g].weight * Rational(num, BigInt(P) * denom_unchosen);
        }
        CandidateId rep_id = -1;
        for (CandidateId c : sp.block_ids(0)) {
            if (!committee.contains(c)) {
                rep_id = c;
                break;
            }
        }
        if (rep_id >= 0 && frac >= threshold) rep.blocking.push_back({rep_id, frac});
    }
    std::sort(rep.blocking.begin(), rep.blocking.end(),
              [](const BlockingEntry& a, const BlockingEntry& b) { return a.candidate < b.candidate; });
    rep.in_core = rep.blocking.empty();
    return rep;
}

bool verify_core_score_bound(const PreferenceProfile& profile, const Committee& committee,
                             const Rational& alpha) {
    if (alpha < Rational(1))
        throw ArgError("the core score bound is stated for alpha >= 1");
    CoreReport rep = core_blocking(profile, committee, alpha);
    if (!rep.in_core) throw ArgError("committee is not in the alpha-approximate core");
    const int m = profile.m, k = committee.k();
    Rational bound = alpha * Rational(k + 1, k) * Rational(m + 1, k + 1);
    return score_s_borda(profile, committee, 1) <= bound;
}

namespace {

template <class ProfileT>
MonotoneChainResult check_chain(Rule rule, const ProfileT& profile, int k_max, int s) {
    MonotoneChainResult res;
    std::vector<CandidateId> prev;
    for (int k = std::max(1, s); k <= k_max; ++k) {
        SelectionResult r = rule == Rule::Greedy ? greedy(profile, k, s) : banzhaf(profile, k, s);
        if (!prev.empty()) {
            bool contained = std::includes(r.committee.members.begin(), r.committee.members.end(),
                                           prev.begin(), prev.end());
            if (!contained) {
                res.is_monotone = false;
                res.first_violation = k;
                return res;
            }
        }
        prev = r.committee.members;
    }
    return res;
}

}  // namespace

MonotoneChainResult check_monotone_chain(Rule rule, const PreferenceProfile& profile, int k_max,
                                         int s) {
    if (k_max > profile.m) throw ArgError("k_max exceeds m");
    return check_chain(rule, profile, k_max, s);
}

MonotoneChainResult check_monotone_chain(Rule rule, const SymmetricProfile& sp, int k_max, int s) {
    if (k_max > sp.m) throw ArgError("k_max exceeds m");
    return check_chain(rule, sp, k_max, s);
}

MonotonicityBound eval_monotonicity_bound(double a, double b) {
    if (!(0 < a && a < b && b < 1)) throw ArgError("need 0 < a < b < 1");
    double p_low = a / (1.0 - (b - a));        // P[a Y-candidate sits below the band]
    double p_high = (1.0 - b) / (1.0 - (b - a));
    double r_y = (a / 2.0) * p_low + ((1.0 + b) / 2.0) * p_high;
    double r_xx = (2.0 * a + b) / 3.0;
    double r_xy = (a / 2.0) * p_low + ((a + b) / 2.0) * p_high;

    MonotonicityBound out;
    out.y_branch = 2.0 * r_y;
    out.xx_branch = 3.0 * r_xx;
    out.xy_branch = 3.0 * r_xy;
    out.bound = out.y_branch;
    out.argmin_branch = "Y";
    if (out.xx_branch < out.bound) {
        out.bound = out.xx_branch;
        out.argmin_branch = "XX";
    }
    if (out.xy_branch < out.bound) {
        out.bound = out.xy_branch;
        out.argmin_branch = "XY";
    }
    return out;
}

// --------------------------------------------------------------------------
// Run reports
// --------------------------------------------------------------------------

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

RunReport run_report(const LoadedProfile& instance, const std::vector<std::string>& rules, int k,
                     int s, const ReportOptions& opts) {
    RunReport rep;
    rep.seed = opts.seed;
    rep.m = instance.m();
    rep.k = k;
    rep.s = s;
    rep.symmetric = instance.is_symmetric();
    rep.voters = instance.is_symmetric()
                     ? instance.symmetric_profile->num_groups()
                     : instance.explicit_profile->num_voters();
    rep.rand_value = rand_benchmark(rep.m, k, s);

    bool want_opt = opts.attach_opt;
    for (const auto& r : rules) want_opt = want_opt || r == "opt";
    if (want_opt) {
        try {
            BruteForceResult bf = instance.is_symmetric()
                                      ? brute_force_opt(*instance.symmetric_profile, k, s, opts.opt_cap)
                                      : brute_force_opt(*instance.explicit_profile, k, s, opts.opt_cap);
            rep.opt_score = bf.score;
        } catch (const CapError&) {
            bool explicit_request =
                std::find(rules.begin(), rules.end(), std::string("opt")) != rules.end();
            if (explicit_request) throw;
        }
    }

    for (const auto& rule : rules) {
        RuleOutcome out;
        out.rule = rule;
        auto t0 = std::chrono::steady_clock::now();
        if (rule == "greedy" || rule == "banzhaf") {
            SelectionResult r;
            if (instance.is_symmetric())
                r = rule == "greedy" ? greedy(*instance.symmetric_profile, k, s)
                                     : banzhaf(*instance.symmetric_profile, k, s);
            else if (rule == "greedy" && !opts.exact)
                r = greedy_float(*instance.explicit_profile, k, s);
            else
                r = rule == "greedy" ? greedy(*instance.explicit_profile, k, s)
                                     : banzhaf(*instance.explicit_profile, k, s);
            out.score = r.score;
            out.committee = r.committee;
            if (opts.with_traces) out.trace = r.trace;
        } else if (rule == "opt") {
            out.score = *rep.opt_score;
        } else if (rule == "random") {
            RandomCommitteeResult r =
                instance.is_symmetric()
                    ? random_committee(*instance.symmetric_profile, k, s, opts.seed, opts.trials)
                    : random_committee(*instance.explicit_profile, k, s, opts.seed, opts.trials);
            out.score = r.best_score;
            out.committee = r.best;
            out.random_mean = r.mean;
            out.random_stddev = r.stddev;
        } else if (rule == "lp-round") {
            LpRoundResult r = instance.is_symmetric()
                                  ? lp_round_select(*instance.symmetric_profile, k, s, opts.seed)
                                  : lp_round_select(*instance.explicit_profile, k, s, opts.seed);
            out.score = r.score;
            out.committee = r.committee;
        } else {
            throw ArgError("unknown rule '" + rule + "'");
        }
        out.wall_ms = ms_since(t0);
        out.ratio_vs_rand = out.score / rep.rand_value;
        if (rep.opt_score && rep.opt_score->sign() > 0) out.ratio_vs_opt = out.score / *rep.opt_score;
        rep.rules.push_back(std::move(out));
    }
    return rep;
}

std::string report_to_json(const RunReport& rep) {
    json j;
    j["instance_id"] = rep.instance_id;
    j["m"] = rep.m;
    j["voters"] = rep.voters;
    j["k"] = rep.k;
    j["s"] = rep.s;
    j["symmetric"] = rep.symmetric;
    j["rand_benchmark"] = rep.rand_value.str();
    if (rep.opt_score) j["opt"] = rep.opt_score->str();
    json rules = json::array();
    for (const auto& r : rep.rules) {
        json jr;
        jr["rule"] = r.rule;
        jr["score"] = r.score.str();
        jr["score_float"] = r.score.to_double();
        jr["wall_ms"] = r.wall_ms;
        if (r.ratio_vs_rand) {
            jr["ratio_vs_rand"] = r.ratio_vs_rand->to_double();
            jr["ratio_vs_rand_exact"] = r.ratio_vs_rand->str();
        }
        if (r.ratio_vs_opt) jr["ratio_vs_opt"] = r.ratio_vs_opt->to_double();
        if (r.committee) jr["committee"] = r.committee->members;
        if (r.random_mean) {
            jr["mean"] = *r.random_mean;
            jr["stddev"] = *r.random_stddev;
        }
        if (r.trace) jr["trace"] = json::parse(trace_to_json(*r.trace));
        rules.push_back(std::move(jr));
    }
    j["rules"] = std::move(rules);
    return j.dump(2) + "\n";
}

std::string report_csv_header() {
    return "instance,m,n,k,s,seed,rule,score,score_num,score_den,ratio_vs_rand,ratio_vs_opt,"
           "wall_ms";
}

std::string report_to_csv_rows(const RunReport& rep) {
    std::ostringstream os;
    os.precision(12);
    for (const auto& r : rep.rules) {
        os << rep.instance_id << "," << rep.m << "," << rep.voters << "," << rep.k << "," << rep.s
           << "," << rep.seed << "," << r.rule << "," << r.score.to_double() << ","
           << r.score.num().str() << "," << r.score.den().str() << ",";
        if (r.ratio_vs_rand) os << r.ratio_vs_rand->to_double();
        os << ",";
        if (r.ratio_vs_opt) os << r.ratio_vs_opt->to_double();
        os << "," << r.wall_ms << "\n";
    }
    return os.str();
}

}  // namespace mwelect
