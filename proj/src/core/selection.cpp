#include "mwelect/selection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>

#include "mwelect/errors.hpp"
#include "mwelect/order_stats.hpp"
#include "mwelect/rng.hpp"
#include "mwelect/scoring.hpp"

namespace mwelect {

namespace {

void check_ks(int m, int k, int s) {
    if (k < 1 || k > m) throw ArgError("k must satisfy 1 <= k <= m");
    if (s < 1 || s > k) throw ArgError("s must satisfy 1 <= s <= k");
}

// Fast exact committee scorer; int64 accumulation when weights are unit.
struct FastScorer {
    const PreferenceProfile& profile;
    CommonWeights cw;
    bool unit;
    std::vector<RankValue> scratch;

    explicit FastScorer(const PreferenceProfile& p)
        : profile(p), cw(common_weights(p)), unit(!p.weighted()) {}

    // numerator of the score over denominator cw.total
    BigInt score_num(const std::vector<CandidateId>& members, int s) {
        const int n = profile.num_voters();
        scratch.resize(members.size());
        if (unit) {
            long long acc = 0;
            bool overflow = false;
            for (int v = 0; v < n; ++v) {
                const Ranking& r = profile.voters[v];
                long long sum = voter_sum(r, members, s);
                if (acc > (1LL << 61)) {
                    overflow = true;
                    break;
                }
                acc += sum;
            }
            if (!overflow) return BigInt(acc);
        }
        BigInt acc = 0;
        for (int v = 0; v < n; ++v)
            acc += cw.numerators[v] * voter_sum(profile.voters[v], members, s);
        return acc;
    }

    long long voter_sum(const Ranking& r, const std::vector<CandidateId>& members, int s) {
        if (s == 1) {
            RankValue best = r.rank_of(members[0]);
            for (std::size_t i = 1; i < members.size(); ++i)
                best = std::min(best, r.rank_of(members[i]));
            return best;
        }
        for (std::size_t i = 0; i < members.size(); ++i) scratch[i] = r.rank_of(members[i]);
        std::nth_element(scratch.begin(), scratch.begin() + (s - 1), scratch.end());
        long long sum = 0;
        for (int i = 0; i < s; ++i) sum += scratch[i];
        return sum;
    }
};

}  // namespace

// --------------------------------------------------------------------------
// Greedy, explicit profiles
// --------------------------------------------------------------------------

SelectionResult greedy(const PreferenceProfile& profile, int k, int s) {
    profile.validate();
    check_ks(profile.m, k, s);
    const int m = profile.m, n = profile.num_voters();
    CommonWeights cw = common_weights(profile);

    std::vector<std::vector<RankValue>> chosen(n);  // sorted chosen ranks per voter
    std::vector<bool> in_committee(m, false);
    SelectionResult res;
    res.trace.rule = "greedy";
    res.trace.k = k;
    res.trace.s = s;
    BigInt score_num = 0;

    for (int j = 1; j <= k; ++j) {
        const bool counting_all = j <= s;  // objective still sums every chosen rank
        CandidateId best = -1;
        BigInt best_delta;
        for (CandidateId c = 0; c < m; ++c) {
            if (in_committee[c]) continue;
            BigInt delta = 0;
            for (int v = 0; v < n; ++v) {
                RankValue r = profile.voters[v].rank_of(c);
                if (counting_all) {
                    delta += cw.numerators[v] * r;
                } else {
                    RankValue rho = chosen[v][s - 1];
                    if (r < rho) delta -= cw.numerators[v] * (rho - r);
                }
            }
            if (best < 0 || delta < best_delta) {
                best = c;
                best_delta = delta;
            }
        }
        in_committee[best] = true;
        score_num += best_delta;
        for (int v = 0; v < n; ++v) {
            RankValue r = profile.voters[v].rank_of(best);
            auto& vec = chosen[v];
            vec.insert(std::upper_bound(vec.begin(), vec.end(), r), r);
        }
        TracePick p;
        p.candidate = best;
        p.score = Rational(score_num, cw.total);
        p.marginal = Rational(-best_delta, cw.total);
        res.trace.picks.push_back(std::move(p));
        res.committee.members.push_back(best);
    }
    std::sort(res.committee.members.begin(), res.committee.members.end());
    res.score = res.trace.picks.back().score;
    return res;
}

SelectionResult greedy_float(const PreferenceProfile& profile, int k, int s) {
    profile.validate();
    check_ks(profile.m, k, s);
    const int m = profile.m, n = profile.num_voters();
    std::vector<double> w(n, 1.0);
    double wtot = n;
    if (profile.weighted()) {
        wtot = 0;
        for (int v = 0; v < n; ++v) {
            w[v] = profile.weights[v].to_double();
            wtot += w[v];
        }
    }

    std::vector<std::vector<RankValue>> chosen(n);
    std::vector<bool> in_committee(m, false);
    SelectionResult res;
    res.trace.rule = "greedy";
    res.trace.k = k;
    res.trace.s = s;
    double score = 0;

    for (int j = 1; j <= k; ++j) {
        const bool counting_all = j <= s;
        CandidateId best = -1;
        double best_delta = 0;
        for (CandidateId c = 0; c < m; ++c) {
            if (in_committee[c]) continue;
            double delta = 0;
            for (int v = 0; v < n; ++v) {
                RankValue r = profile.voters[v].rank_of(c);
                if (counting_all) {
                    delta += w[v] * r;
                } else {
                    RankValue rho = chosen[v][s - 1];
                    if (r < rho) delta -= w[v] * (rho - r);
                }
            }
            // 1e-9 comparison tolerance; ties keep the lowest id
            if (best < 0 || delta < best_delta - 1e-9 * std::max(1.0, std::abs(best_delta))) {
                best = c;
                best_delta = delta;
            }
        }
        in_committee[best] = true;
        score += best_delta / wtot;
        for (int v = 0; v < n; ++v) {
            RankValue r = profile.voters[v].rank_of(best);
            auto& vec = chosen[v];
            vec.insert(std::upper_bound(vec.begin(), vec.end(), r), r);
        }
        TracePick p;
        p.candidate = best;
        p.score = Rational(std::llround(score * 1e9), 1000000000);  // approximate view
        res.trace.picks.push_back(std::move(p));
        res.committee.members.push_back(best);
    }
    std::sort(res.committee.members.begin(), res.committee.members.end());
    res.score = score_s_borda(profile, res.committee, s);
    return res;
}

// --------------------------------------------------------------------------
// Greedy, symmetric profiles
// --------------------------------------------------------------------------

namespace {

struct SymCommitteeState {
    std::vector<int> chosen_crit_idx;                 // indices into sp.critical
    std::vector<long long> dummies_per_block;         // chosen dummy counts
    std::vector<std::vector<CandidateId>> block_ids;  // sorted ids per block
    std::vector<std::size_t> next_dummy;              // materialization cursor
    std::vector<CandidateId> committee;

    explicit SymCommitteeState(const SymmetricProfile& sp)
        : dummies_per_block(sp.num_blocks(), 0), next_dummy(sp.num_blocks(), 0) {
        for (int b = 0; b < sp.num_blocks(); ++b) block_ids.push_back(sp.block_ids(b));
    }

    CandidateId materialize_dummy(int b) {
        CandidateId id = block_ids[b][next_dummy[b]];
        ++next_dummy[b];
        ++dummies_per_block[b];
        committee.push_back(id);
        return id;
    }
};

// Group weights as integer numerators over a common denominator.
struct GroupWeights {
    std::vector<BigInt> num;
    BigInt den;
};

GroupWeights group_weights(const SymmetricProfile& sp) {
    GroupWeights gw;
    BigInt lcm = 1;
    for (const auto& g : sp.groups) lcm = boost::multiprecision::lcm(lcm, g.weight.den());
    gw.den = lcm;
    for (const auto& g : sp.groups) gw.num.push_back(g.weight.num() * (lcm / g.weight.den()));
    return gw;
}

// General engine: per-step completion sweeps per group. Handles any s and the
// single-block case; multi-block profiles evaluate candidates directly.
SelectionResult greedy_symmetric_general(const SymmetricProfile& sp, int k, int s) {
    const int K = sp.num_critical();
    const int G = sp.num_groups();
    const int nb = sp.num_blocks();
    GroupWeights gw = group_weights(sp);

    SymCommitteeState st(sp);
    std::vector<std::vector<RankValue>> fixed(G);  // sorted placed ranks of chosen criticals
    std::vector<RankSet> free_pool(G);
    for (int g = 0; g < G; ++g) free_pool[g] = sp.free_ranks(g);

    SelectionResult res;
    res.trace.rule = "greedy";
    res.trace.k = k;
    res.trace.s = s;
    Rational prev_score = 0;

    for (int j = 1; j <= k; ++j) {
        const int s_eff = std::min(j, s);
        Rational best_val;
        int best_crit = -1;  // critical index, or
        int best_block = -1;  // block of a dummy pick
        CandidateId best_id = -1;

        if (nb == 1) {
            long long d = st.dummies_per_block[0];
            std::vector<CompletionSweep> sweeps;
            sweeps.reserve(G);
            for (int g = 0; g < G; ++g)
                sweeps.emplace_back(fixed[g], free_pool[g], d, s_eff, false,
                                    static_cast<RankValue>(sp.m));
            const BigInt& D1 = sweeps[0].denominator();
            // criticals
            BigInt best_num;
            for (int i = 0; i < K; ++i) {
                if (std::binary_search(st.chosen_crit_idx.begin(), st.chosen_crit_idx.end(), i))
                    continue;
                BigInt num = 0;
                for (int g = 0; g < G; ++g)
                    num += gw.num[g] * sweeps[g].value_with(sp.groups[g].placed[i]);
                if (best_crit < 0 || num < best_num) {
                    best_crit = i;
                    best_num = num;
                }
            }
            if (best_crit >= 0) {
                best_val = Rational(best_num, gw.den * D1);
                best_id = sp.critical[best_crit];
            }
            // dummy representative
            long long nd_left = static_cast<long long>(st.block_ids[0].size()) - d;
            if (nd_left > 0 && d + 1 <= free_pool[0].count()) {
                BigInt num = 0;
                std::vector<CompletionSweep> dsweeps;
                dsweeps.reserve(G);
                for (int g = 0; g < G; ++g)
                    dsweeps.emplace_back(fixed[g], free_pool[g], d + 1, s_eff, false,
                                         static_cast<RankValue>(sp.m));
                for (int g = 0; g < G; ++g) num += gw.num[g] * dsweeps[g].base_value();
                Rational val(num, gw.den * dsweeps[0].denominator());
                CandidateId id = st.block_ids[0][st.next_dummy[0]];
                if (best_crit < 0 || val < best_val || (val == best_val && id < best_id)) {
                    best_crit = -1;
                    best_block = 0;
                    best_val = val;
                    best_id = id;
                }
            }
        } else {
            // multi-block: evaluate candidates via the multi-pool kernel
            std::vector<CandidateId> chosen_crit_ids;
            for (int i : st.chosen_crit_idx) chosen_crit_ids.push_back(sp.critical[i]);
            auto eval = [&](int crit_idx, int block) {
                std::vector<CandidateId> crit = chosen_crit_ids;
                std::vector<long long> draws = st.dummies_per_block;
                if (crit_idx >= 0) crit.push_back(sp.critical[crit_idx]);
                if (block >= 0) ++draws[block];
                return expected_score_symmetric_blocks(sp, crit, draws, s_eff);
            };
            for (int i = 0; i < K; ++i) {
                if (std::binary_search(st.chosen_crit_idx.begin(), st.chosen_crit_idx.end(), i))
                    continue;
                Rational val = eval(i, -1);
                CandidateId id = sp.critical[i];
                if (best_id < 0 || val < best_val || (val == best_val && id < best_id)) {
                    best_crit = i;
                    best_block = -1;
                    best_val = val;
                    best_id = id;
                }
            }
            for (int b = 0; b < nb; ++b) {
                if (st.next_dummy[b] >= st.block_ids[b].size()) continue;
                Rational val = eval(-1, b);
                CandidateId id = st.block_ids[b][st.next_dummy[b]];
                if (best_id < 0 || val < best_val || (val == best_val && id < best_id)) {
                    best_crit = -1;
                    best_block = b;
                    best_val = val;
                    best_id = id;
                }
            }
        }

        TracePick p;
        if (best_crit >= 0) {
            st.chosen_crit_idx.insert(
                std::upper_bound(st.chosen_crit_idx.begin(), st.chosen_crit_idx.end(), best_crit),
                best_crit);
            st.committee.push_back(sp.critical[best_crit]);
            for (int g = 0; g < G; ++g) {
                RankValue r = sp.groups[g].placed[best_crit];
                auto& f = fixed[g];
                f.insert(std::upper_bound(f.begin(), f.end(), r), r);
            }
            p.candidate = sp.critical[best_crit];
        } else {
            p.candidate = st.materialize_dummy(best_block);
            p.dummy = true;
        }
        p.score = best_val;
        p.marginal = prev_score - best_val;
        prev_score = best_val;
        res.trace.picks.push_back(std::move(p));
    }
    res.committee = Committee::of(st.committee);
    res.score = res.trace.picks.back().score;
    return res;
}

// s = 1 fast engine for single-block profiles: per-group current minimum plus
// run-level survival sums; spiral-sized instances stay tractable.
SelectionResult greedy_symmetric_s1(const SymmetricProfile& sp, int k) {
    const int K = sp.num_critical();
    const int G = sp.num_groups();
    GroupWeights gw = group_weights(sp);

    SymCommitteeState st(sp);
    std::vector<RankSet> pool(G);
    std::vector<RankValue> cur(G, 0);  // 0 = no member yet
    RankValue max_pool_hi = 0;
    for (int g = 0; g < G; ++g) {
        pool[g] = sp.free_ranks(g);
        if (!pool[g].empty()) max_pool_hi = std::max(max_pool_hi, pool[g].runs().back().hi);
    }
    const long long P = pool.empty() ? 0 : pool[0].count();

    // Candidate placements sorted by rank, for early exit on marginal scans.
    std::vector<std::vector<std::pair<RankValue, int>>> entries(K);  // (rank, group)
    for (int i = 0; i < K; ++i) {
        entries[i].reserve(G);
        for (int g = 0; g < G; ++g) entries[i].push_back({sp.groups[g].placed[i], g});
        std::sort(entries[i].begin(), entries[i].end());
    }

    SelectionResult res;
    res.trace.rule = "greedy";
    res.trace.k = k;
    res.trace.s = 1;
    Rational score;

    auto hi_of = [&](int g) -> RankValue {
        return cur[g] > 0 ? cur[g] : static_cast<RankValue>(max_pool_hi + 1);
    };

    std::vector<bool> crit_chosen(K, false);
    for (int j = 1; j <= k; ++j) {
        long long d = st.dummies_per_block[0];
        BigInt D1 = binomial(P, d);
        int best_crit = -1;
        CandidateId best_id = -1;
        Rational best_val;  // post-pick score (step 1) or marginal gain (later steps)
        bool first_step = (j == 1);

        RankValue scan_max = 0;
        for (int g = 0; g < G; ++g) scan_max = std::max(scan_max, hi_of(g));

        // Criticals: on the first step compare committee values directly; on
        // later steps compare marginal gains. Numerators share gw.den * D1.
        BigInt best_raw;
        bool have_raw = false;
        for (int i = 0; i < K; ++i) {
            if (crit_chosen[i]) continue;
            BigInt acc = 0;
            if (first_step) {
                for (const auto& [r, g] : entries[i]) acc += gw.num[g] * r;  // d = 0 here
            } else {
                for (const auto& [r, g] : entries[i]) {
                    if (r >= scan_max) break;
                    RankValue hi = hi_of(g);
                    if (r < hi) acc += gw.num[g] * min_rank_survival_sum(r, hi, pool[g], d);
                }
            }
            bool better = !have_raw || (first_step ? acc < best_raw : acc > best_raw);
            if (better) {
                best_raw = acc;
                best_crit = i;
                have_raw = true;
            }
        }
        if (have_raw) {
            best_val = Rational(best_raw, gw.den * D1);
            best_id = sp.critical[best_crit];
        }

        // dummy representative
        long long nd_left = static_cast<long long>(st.block_ids[0].size()) - d;
        int pick_block = -1;
        if (nd_left > 0 && d + 1 <= P) {
            BigInt D2 = binomial(P, d + 1);
            Rational val;
            if (first_step) {
                BigInt a2 = 0;
                for (int g = 0; g < G; ++g)
                    a2 += gw.num[g] * min_rank_survival_sum(1, hi_of(g), pool[g], 1);
                val = Rational(a2, gw.den * D2) + Rational(1);
            } else {
                BigInt a1 = 0, a2 = 0;
                for (int g = 0; g < G; ++g) {
                    RankValue hi = hi_of(g);
                    a1 += gw.num[g] * min_rank_survival_sum(1, hi, pool[g], d);
                    a2 += gw.num[g] * min_rank_survival_sum(1, hi, pool[g], d + 1);
                }
                // marginal gain of one more dummy draw
                val = Rational(a1, gw.den * D1) - Rational(a2, gw.den * D2);
            }
            CandidateId id = st.block_ids[0][st.next_dummy[0]];
            bool better;
            if (best_crit < 0) {
                better = true;
            } else if (first_step) {
                better = val < best_val || (val == best_val && id < best_id);
            } else {
                better = val > best_val || (val == best_val && id < best_id);
            }
            if (better) {
                pick_block = 0;
                best_crit = -1;
                best_val = val;
                best_id = id;
            }
        }

        TracePick p;
        if (best_crit >= 0) {
            crit_chosen[best_crit] = true;
            st.chosen_crit_idx.push_back(best_crit);
            st.committee.push_back(sp.critical[best_crit]);
            if (first_step) {
                score = best_val;
            } else {
                score -= best_val;  // best_val is the marginal gain
            }
            for (const auto& [r, g] : entries[best_crit])
                if (cur[g] == 0 || r < cur[g]) cur[g] = r;
            p.candidate = sp.critical[best_crit];
        } else {
            p.candidate = st.materialize_dummy(pick_block);
            p.dummy = true;
            if (first_step) {
                score = best_val;
            } else {
                score -= best_val;
            }
        }
        p.score = score;
        p.marginal = first_step ? -score : best_val;
        res.trace.picks.push_back(std::move(p));
    }
    res.committee = Committee::of(st.committee);
    res.score = score;
    return res;
}

}  // namespace

SelectionResult greedy(const SymmetricProfile& sp, int k, int s) {
    sp.validate();
    check_ks(sp.m, k, s);
    if (k > sp.num_critical() + sp.num_free())
        throw ArgError("k exceeds the number of candidates");
    if (s == 1 && sp.num_blocks() == 1) return greedy_symmetric_s1(sp, k);
    return greedy_symmetric_general(sp, k, s);
}

// --------------------------------------------------------------------------
// Banzhaf
// --------------------------------------------------------------------------

SelectionResult banzhaf(const PreferenceProfile& profile, int k, int s) {
    profile.validate();
    check_ks(profile.m, k, s);
    const int m = profile.m, n = profile.num_voters();
    CommonWeights cw = common_weights(profile);

    std::vector<bool> in_committee(m, false);
    std::vector<std::vector<RankValue>> fixed(n);
    SelectionResult res;
    res.trace.rule = "banzhaf";
    res.trace.k = k;
    res.trace.s = s;
    Rational prev_obj = rand_benchmark(m, k, s);

    std::vector<RankValue> pool_vals;
    for (int j = 1; j <= k; ++j) {
        const long long d = k - j;
        std::vector<CompletionSweep> sweeps;
        sweeps.reserve(n);
        for (int v = 0; v < n; ++v) {
            pool_vals.clear();
            const Ranking& r = profile.voters[v];
            for (CandidateId c = 0; c < m; ++c)
                if (!in_committee[c]) pool_vals.push_back(r.rank_of(c));
            sweeps.emplace_back(fixed[v], RankSet::from_values(pool_vals), d, s, true,
                                static_cast<RankValue>(m));
        }
        const BigInt& D = sweeps[0].denominator();

        CandidateId best = -1;
        BigInt best_num;
        for (CandidateId c = 0; c < m; ++c) {
            if (in_committee[c]) continue;
            BigInt num = 0;
            for (int v = 0; v < n; ++v)
                num += cw.numerators[v] * sweeps[v].value_with(profile.voters[v].rank_of(c));
            if (best < 0 || num < best_num) {
                best = c;
                best_num = num;
            }
        }
        in_committee[best] = true;
        for (int v = 0; v < n; ++v) {
            RankValue r = profile.voters[v].rank_of(best);
            auto& f = fixed[v];
            f.insert(std::upper_bound(f.begin(), f.end(), r), r);
        }
        TracePick p;
        p.candidate = best;
        p.score = Rational(best_num, cw.total * D);
        p.marginal = prev_obj - p.score;
        prev_obj = p.score;
        res.trace.picks.push_back(std::move(p));
        res.committee.members.push_back(best);
    }
    std::sort(res.committee.members.begin(), res.committee.members.end());
    res.score = res.trace.picks.back().score;  // d = 0 at the last step
    return res;
}

SelectionResult banzhaf(const SymmetricProfile& sp, int k, int s) {
    sp.validate();
    check_ks(sp.m, k, s);
    const int K = sp.num_critical();
    const int nb = sp.num_blocks();
    if (K > 20) throw CapError("banzhaf on symmetric profiles enumerates critical subsets; " +
                               std::to_string(K) + " criticals exceed the supported 20");

    SymCommitteeState st(sp);
    std::vector<bool> crit_chosen(K, false);
    SelectionResult res;
    res.trace.rule = "banzhaf";
    res.trace.k = k;
    res.trace.s = s;
    Rational prev_obj = rand_benchmark(sp.m, k, s);

    for (int j = 1; j <= k; ++j) {
        const long long D = k - j;
        std::vector<int> rem;
        for (int i = 0; i < K; ++i)
            if (!crit_chosen[i]) rem.push_back(i);

        // Expected final score after adding `crit_idx` (or a block-b dummy),
        // completing with D uniform candidates from everything else.
        auto eval = [&](int crit_idx, int block) {
            std::vector<int> rem2;
            for (int i : rem)
                if (i != crit_idx) rem2.push_back(i);
            std::vector<long long> nd(nb);
            long long nd_total = 0;
            for (int b = 0; b < nb; ++b) {
                nd[b] = static_cast<long long>(st.block_ids[b].size()) - st.dummies_per_block[b] -
                        (b == block ? 1 : 0);
                nd_total += nd[b];
            }
            const long long q = static_cast<long long>(rem2.size());
            BigInt total_ways = binomial(q + nd_total, D);
            Rational acc;
            // subsets of remaining criticals
            for (std::uint32_t mask = 0; mask < (1u << rem2.size()); ++mask) {
                int a = __builtin_popcount(mask);
                if (a > D) continue;
                std::vector<CandidateId> crit_ids;
                for (int i = 0; i < K; ++i)
                    if (crit_chosen[i]) crit_ids.push_back(sp.critical[i]);
                if (crit_idx >= 0) crit_ids.push_back(sp.critical[crit_idx]);
                for (std::size_t t = 0; t < rem2.size(); ++t)
                    if (mask & (1u << t)) crit_ids.push_back(sp.critical[rem2[t]]);
                // compositions of D - a over blocks
                std::vector<long long> comp(nb, 0);
                long long rest = D - a;
                std::function<void(int, long long, BigInt)> rec = [&](int b, long long left,
                                                                      BigInt ways) {
                    if (b == nb - 1) {
                        if (left > nd[b]) return;
                        comp[b] = left;
                        BigInt w = ways * binomial(nd[b], left);
                        if (w == 0) return;
                        std::vector<long long> draws = st.dummies_per_block;
                        for (int bb = 0; bb < nb; ++bb) draws[bb] += comp[bb];
                        if (block >= 0) ++draws[block];
                        Rational e = expected_score_symmetric_blocks(sp, crit_ids, draws, s);
                        acc += Rational(w, total_ways) * e;
                        return;
                    }
                    for (long long x = 0; x <= std::min(left, nd[b]); ++x) {
                        comp[b] = x;
                        rec(b + 1, left - x, ways * binomial(nd[b], x));
                    }
                };
                rec(0, rest, BigInt(1));
            }
            return acc;
        };

        int best_crit = -1, best_block = -1;
        CandidateId best_id = -1;
        Rational best_val;
        for (int i : rem) {
            Rational val = eval(i, -1);
            CandidateId id = sp.critical[i];
            if (best_id < 0 || val < best_val || (val == best_val && id < best_id)) {
                best_crit = i;
                best_block = -1;
                best_val = val;
                best_id = id;
            }
        }
        for (int b = 0; b < nb; ++b) {
            if (st.next_dummy[b] >= st.block_ids[b].size()) continue;
            Rational val = eval(-1, b);
            CandidateId id = st.block_ids[b][st.next_dummy[b]];
            if (best_id < 0 || val < best_val || (val == best_val && id < best_id)) {
                best_crit = -1;
                best_block = b;
                best_val = val;
                best_id = id;
            }
        }

        TracePick p;
        if (best_crit >= 0) {
            crit_chosen[best_crit] = true;
            st.chosen_crit_idx.push_back(best_crit);
            st.committee.push_back(sp.critical[best_crit]);
            p.candidate = sp.critical[best_crit];
        } else {
            p.candidate = st.materialize_dummy(best_block);
            p.dummy = true;
        }
        p.score = best_val;
        p.marginal = prev_obj - best_val;
        prev_obj = best_val;
        res.trace.picks.push_back(std::move(p));
    }
    res.committee = Committee::of(st.committee);
    res.score = res.trace.picks.back().score;
    return res;
}

// --------------------------------------------------------------------------
// Brute force
// --------------------------------------------------------------------------

BruteForceResult brute_force_opt(const PreferenceProfile& profile, int k, int s, long long cap) {
    profile.validate();
    check_ks(profile.m, k, s);
    const int m = profile.m;
    BigInt count = binomial(m, k);
    if (count > cap)
        throw CapError("enumeration of " + count.str() + " committees exceeds the cap of " +
                           std::to_string(cap),
                       count.str());

    FastScorer scorer(profile);
    std::vector<CandidateId> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    BruteForceResult best;
    bool first = true;
    BigInt best_num;
    while (true) {
        BigInt num = scorer.score_num(idx, s);
        if (first || num < best_num) {
            first = false;
            best_num = num;
            best.committee.members = idx;
        }
        // next combination in lexicographic order
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int t = i + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
    best.score = Rational(best_num, scorer.cw.total);
    return best;
}

BruteForceResult brute_force_opt(const SymmetricProfile& sp, int k, int s, long long cap) {
    sp.validate();
    check_ks(sp.m, k, s);
    const int K = sp.num_critical();
    const int nb = sp.num_blocks();
    std::vector<std::vector<CandidateId>> block_ids;
    for (int b = 0; b < nb; ++b) block_ids.push_back(sp.block_ids(b));

    // Committee patterns: a subset of criticals plus per-block dummy counts.
    long long patterns = 0;
    for (int a = 0; a <= std::min(K, k); ++a) {
        BigInt ways = binomial(K, a);
        if (ways > cap) throw CapError("too many critical subsets", ways.str());
        patterns += ways.convert_to<long long>();
        if (patterns > cap) throw CapError("pattern enumeration exceeds cap");
    }

    BruteForceResult best;
    bool have = false;
    std::vector<int> subset;
    std::function<void(int, int)> rec_subset = [&](int start, int remaining_slots) {
        // dummy compositions for the current subset
        long long need = k - static_cast<long long>(subset.size());
        std::vector<long long> comp(nb, 0);
        std::function<void(int, long long)> rec_comp = [&](int b, long long left) {
            if (b == nb - 1) {
                if (left > static_cast<long long>(block_ids[b].size())) return;
                comp[b] = left;
                std::vector<CandidateId> crit_ids, members;
                for (int i : subset) crit_ids.push_back(sp.critical[i]);
                members = crit_ids;
                for (int bb = 0; bb < nb; ++bb)
                    for (long long t = 0; t < comp[bb]; ++t)
                        members.push_back(block_ids[bb][static_cast<std::size_t>(t)]);
                Rational sc = expected_score_symmetric_blocks(sp, crit_ids, comp, s);
                Committee cm = Committee::of(members);
                if (!have || sc < best.score ||
                    (sc == best.score && cm.members < best.committee.members)) {
                    have = true;
                    best.score = sc;
                    best.committee = cm;
                }
                return;
            }
            for (long long x = 0; x <= std::min<long long>(left, block_ids[b].size()); ++x) {
                comp[b] = x;
                rec_comp(b + 1, left - x);
            }
        };
        if (need >= 0) rec_comp(0, need);
        if (remaining_slots == 0) return;
        for (int i = start; i < K; ++i) {
            subset.push_back(i);
            rec_subset(i + 1, remaining_slots - 1);
            subset.pop_back();
        }
    };
    rec_subset(0, std::min(K, k));
    if (!have) throw ArgError("no feasible committee of size k");
    return best;
}

// --------------------------------------------------------------------------
// Random baseline
// --------------------------------------------------------------------------

namespace {

template <class ScoreFn>
RandomCommitteeResult random_committee_impl(int m, int k, std::uint64_t seed, int trials,
                                            ScoreFn&& score_of) {
    if (trials < 1) throw ArgError("trials must be >= 1");
    Rng rng(seed);
    RandomCommitteeResult out;
    double sum = 0, sumsq = 0;
    bool have_best = false;
    for (int t = 0; t < trials; ++t) {
        std::vector<int> ids = rng.sample_without_replacement(m, k);
        std::vector<CandidateId> members(ids.begin(), ids.end());
        std::sort(members.begin(), members.end());
        Rational sc = score_of(members);
        double x = sc.to_double();
        sum += x;
        sumsq += x * x;
        if (!have_best || sc < out.best_score ||
            (sc == out.best_score && members < out.best.members)) {
            have_best = true;
            out.best_score = sc;
            out.best.members = members;
        }
    }
    out.mean = sum / trials;
    double var = sumsq / trials - out.mean * out.mean;
    out.stddev = var > 0 ? std::sqrt(var) : 0.0;
    return out;
}

}  // namespace

RandomCommitteeResult random_committee(const PreferenceProfile& profile, int k, int s,
                                       std::uint64_t seed, int trials) {
    profile.validate();
    check_ks(profile.m, k, s);
    FastScorer scorer(profile);
    return random_committee_impl(profile.m, k, seed, trials,
                                 [&](const std::vector<CandidateId>& members) {
                                     return Rational(scorer.score_num(members, s), scorer.cw.total);
                                 });
}

RandomCommitteeResult random_committee(const SymmetricProfile& sp, int k, int s,
                                       std::uint64_t seed, int trials) {
    sp.validate();
    check_ks(sp.m, k, s);
    return random_committee_impl(sp.m, k, seed, trials,
                                 [&](const std::vector<CandidateId>& members) {
                                     return committee_score_symmetric(sp, Committee::of(members), s);
                                 });
}

}  // namespace mwelect
