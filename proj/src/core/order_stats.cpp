#include "mwelect/order_stats.hpp"

#include <algorithm>

#include "mwelect/errors.hpp"

namespace mwelect {

BigInt binomial(long long n, long long r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    BigInt res = 1;
    for (long long i = 1; i <= r; ++i) {
        res *= (n - r + i);
        res /= i;  // exact: res is C(n-r+i, i) * i! / i! at each step
    }
    return res;
}

Rational expected_order_stat(int m, int k, int t) {
    if (!(1 <= t && t <= k && k <= m)) throw ArgError("expected_order_stat needs 1 <= t <= k <= m");
    return Rational(BigInt(t) * (m + 1), BigInt(k + 1));
}

// --- HypergeomPmf --------------------------------------------------------

HypergeomPmf::HypergeomPmf(long long population, long long draws, int cap)
    : pop_(population), draws_(draws), marked_(0), cap_(cap) {
    if (draws_ < 0 || draws_ > pop_) throw ArgError("hypergeometric draws out of range");
    num_.assign(static_cast<std::size_t>(cap_) + 1, BigInt(0));
    denom_ = binomial(pop_, draws_);
    num_[0] = denom_;  // all mass at x = 0 while nothing is marked
}

void HypergeomPmf::advance_marked() {
    // num[x] = C(L, x) * C(P-L, d-x)  ->  C(L+1, x) * C(P-L-1, d-x)
    long long L = marked_;
    if (L >= pop_) throw ArgError("cannot mark more items than the population");
    int hi = static_cast<int>(std::min<long long>({cap_, L + 1, draws_}));
    for (int x = hi; x >= 0; --x) {
        if (x == L + 1) {
            num_[x] = binomial(pop_ - L - 1, draws_ - x);
            continue;
        }
        BigInt& v = num_[x];
        if (v == 0) continue;
        if (pop_ - L - draws_ + x <= 0) {
            v = 0;
            continue;
        }
        v *= (L + 1);
        v /= (L + 1 - x);
        v *= (pop_ - L - draws_ + x);
        v /= (pop_ - L);
    }
    marked_ = L + 1;
}

BigInt HypergeomPmf::partial_expectation(int w0) const {
    BigInt acc = 0;
    int hi = std::min(w0 - 1, cap_);
    for (int x = 0; x <= hi; ++x) {
        if (num_[x] != 0) acc += BigInt(w0 - x) * num_[x];
    }
    return acc;
}

// --- event sweep ---------------------------------------------------------

namespace {

void check_disjoint(const std::vector<RankValue>& fixed, const RankSet& pool) {
    for (std::size_t i = 0; i < fixed.size(); ++i) {
        if (fixed[i] < 1) throw ArgError("ranks must be positive");
        if (i > 0 && fixed[i] == fixed[i - 1]) throw ArgError("fixed ranks must be distinct");
        if (pool.contains(fixed[i])) throw ArgError("fixed and pool ranks must be disjoint");
    }
}

}  // namespace

Rational expected_smallest_sum(const std::vector<RankValue>& fixed, const RankSet& pool,
                               long long draws, int s) {
    std::vector<RankValue> f = fixed;
    std::sort(f.begin(), f.end());
    check_disjoint(f, pool);
    long long P = pool.count();
    if (draws < 0 || draws > P) throw ArgError("draws exceed pool size");
    if (s < 1) throw ArgError("s must be >= 1");
    if (static_cast<long long>(f.size()) + draws < s)
        throw ArgError("fewer than s candidates available");

    if (s == 1) {
        RankValue fmin = f.empty() ? 0 : f.front();
        return expected_min_rank(fmin, pool, draws);
    }

    HypergeomPmf pmf(P, draws, s - 1);
    BigInt acc = 0;
    int fcnt = 0;
    RankValue t = 0;  // segments [t, next_event) share (fcnt, marked)
    std::size_t fi = 0;
    std::size_t ri = 0;
    RankValue run_pos = 0;  // next pool rank within runs_[ri], 0 = at run start
    const auto& runs = pool.runs();
    while (fcnt < s) {
        // next event rank
        RankValue next_fixed = fi < f.size() ? f[fi] : 0;
        RankValue next_pool = 0;
        if (ri < runs.size()) next_pool = run_pos == 0 ? runs[ri].lo : run_pos;
        if (next_fixed == 0 && next_pool == 0) break;
        RankValue r;
        bool is_fixed;
        if (next_pool == 0 || (next_fixed != 0 && next_fixed < next_pool)) {
            r = next_fixed;
            is_fixed = true;
        } else {
            r = next_pool;
            is_fixed = false;
        }
        if (r > t) acc += BigInt(r - t) * pmf.partial_expectation(s - fcnt);
        if (is_fixed) {
            ++fcnt;
            ++fi;
        } else {
            pmf.advance_marked();
            run_pos = r + 1;
            if (run_pos > runs[ri].hi) {
                ++ri;
                run_pos = 0;
            }
        }
        t = r;
    }
    return Rational(acc, pmf.denominator());
}

Rational expected_smallest_sum_multi(const std::vector<RankValue>& fixed,
                                     const std::vector<PoolDraw>& pools, int s) {
    if (pools.size() == 1) return expected_smallest_sum(fixed, pools[0].pool, pools[0].draws, s);
    std::vector<RankValue> f = fixed;
    std::sort(f.begin(), f.end());
    long long avail = static_cast<long long>(f.size());
    for (const auto& pd : pools) {
        check_disjoint(f, pd.pool);
        if (pd.draws < 0 || pd.draws > pd.pool.count()) throw ArgError("draws exceed pool size");
        avail += pd.draws;
    }
    if (s < 1) throw ArgError("s must be >= 1");
    if (avail < s) throw ArgError("fewer than s candidates available");

    const int nb = static_cast<int>(pools.size());
    std::vector<HypergeomPmf> pmfs;
    pmfs.reserve(nb);
    BigInt denom = 1;
    for (const auto& pd : pools) {
        pmfs.emplace_back(pd.pool.count(), pd.draws, s - 1);
        denom *= pmfs.back().denominator();
    }

    // Convolution of the truncated pmfs, refreshed whenever one advances.
    auto convolve = [&]() {
        std::vector<BigInt> conv(static_cast<std::size_t>(s), BigInt(0));
        conv[0] = 1;
        int width = 1;
        for (const auto& p : pmfs) {
            std::vector<BigInt> next(static_cast<std::size_t>(s), BigInt(0));
            for (int x = 0; x < width; ++x) {
                if (conv[x] == 0) continue;
                for (int y = 0; y + x < s && y <= s - 1; ++y) {
                    if (p.numerator(y) != 0) next[x + y] += conv[x] * p.numerator(y);
                }
            }
            conv = std::move(next);
            width = s;
        }
        return conv;
    };

    // Merge events: fixed ranks plus every pool rank.
    struct Event {
        RankValue r;
        int pool;  // -1 for fixed
    };
    std::vector<Event> events;
    for (RankValue r : f) events.push_back({r, -1});
    for (int b = 0; b < nb; ++b)
        for (const auto& run : pools[b].pool.runs())
            for (RankValue r = run.lo; r <= run.hi; ++r) events.push_back({r, b});
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.r < b.r; });

    BigInt acc = 0;
    int fcnt = 0;
    RankValue t = 0;
    std::vector<BigInt> conv = convolve();
    for (const auto& ev : events) {
        if (fcnt >= s) break;
        if (ev.r > t) {
            BigInt seg = 0;
            for (int x = 0; x < s - fcnt; ++x)
                if (conv[x] != 0) seg += BigInt(s - fcnt - x) * conv[x];
            acc += BigInt(ev.r - t) * seg;
        }
        if (ev.pool < 0) {
            ++fcnt;
        } else {
            pmfs[ev.pool].advance_marked();
            conv = convolve();
        }
        t = ev.r;
    }
    return Rational(acc, denom);
}

BigInt min_rank_survival_sum(RankValue lo, RankValue hi, const RankSet& pool, long long draws) {
    // sum_{t=lo}^{hi-1} C(P - L(t), draws), L(t) = pool.count_leq(t)
    if (hi <= lo) return 0;
    long long P = pool.count();
    BigInt acc = 0;
    RankValue t = lo;
    const auto& runs = pool.runs();
    // locate first run with hi >= lo
    std::size_t ri = 0;
    while (ri < runs.size() && runs[ri].hi < lo) ++ri;
    while (t < hi) {
        if (ri == runs.size() || t < runs[ri].lo) {
            RankValue seg_end = ri == runs.size() ? hi : std::min<RankValue>(hi, runs[ri].lo);
            long long L = pool.count_leq(t);
            acc += BigInt(seg_end - t) * binomial(P - L, draws);
            t = seg_end;
        } else {
            // inside a pool run: L increments with every step
            RankValue seg_end = std::min<RankValue>(hi, static_cast<RankValue>(runs[ri].hi + 1));
            long long L0 = pool.count_leq(t);  // counts t itself
            long long len = seg_end - t;
            // sum_{j=0}^{len-1} C(P - L0 - j, draws)
            acc += binomial(P - L0 + 1, draws + 1) - binomial(P - L0 - len + 1, draws + 1);
            t = seg_end;
            if (t > runs[ri].hi) ++ri;
        }
    }
    return acc;
}

Rational expected_min_rank(RankValue fixed_min, const RankSet& pool, long long draws) {
    long long P = pool.count();
    if (draws < 0 || draws > P) throw ArgError("draws exceed pool size");
    if (fixed_min == 0 && draws == 0) throw ArgError("no candidates to take the minimum of");
    RankValue stop;
    if (fixed_min > 0) {
        stop = fixed_min;
    } else {
        // beyond the largest pool rank the survival probability is zero
        stop = static_cast<RankValue>(pool.runs().back().hi);
    }
    BigInt acc = min_rank_survival_sum(1, stop, pool, draws);
    // segment [0,1) always survives (ranks are >= 1)
    acc += binomial(P, draws);
    return Rational(acc, binomial(P, draws));
}

// --- CompletionSweep ------------------------------------------------------

CompletionSweep::CompletionSweep(const std::vector<RankValue>& fixed, const RankSet& pool,
                                 long long draws, int s, bool exclude_added, RankValue max_rank) {
    std::vector<RankValue> f = fixed;
    std::sort(f.begin(), f.end());
    check_disjoint(f, pool);
    long long P = pool.count() - (exclude_added ? 1 : 0);
    if (draws < 0 || draws > P) throw ArgError("draws exceed pool size");
    if (s < 1) throw ArgError("s must be >= 1");

    RankValue mx = max_rank;
    if (!f.empty()) mx = std::max(mx, f.back());
    if (!pool.empty()) mx = std::max(mx, pool.runs().back().hi);

    pref_a_.assign(static_cast<std::size_t>(mx) + 2, BigInt(0));
    suf_b_.assign(static_cast<std::size_t>(mx) + 2, BigInt(0));
    std::vector<BigInt> a_t(static_cast<std::size_t>(mx) + 1, BigInt(0));
    std::vector<BigInt> b_t(static_cast<std::size_t>(mx) + 1, BigInt(0));

    HypergeomPmf pmf(P, draws, s - 1);
    // Lagged copy at marked-1, used when the added candidate is a pool member.
    HypergeomPmf pmf_prev(P, draws, s - 1);
    denom_ = pmf.denominator();
    base_ = 0;

    int fcnt = 0;
    std::size_t fi = 0;
    long long L = 0;         // pool ranks <= t
    bool a_valid = true;     // false once L exceeds the pmf population (exclude case)
    for (RankValue t = 0; t <= mx; ++t) {
        if (t >= 1) {
            // rank t joins the "<= t" side
            if (fi < f.size() && f[fi] == t) {
                ++fcnt;
                ++fi;
            } else if (pool.contains(t)) {
                // pmf_prev lags pmf by one marked item: it models the pool
                // with the added candidate removed.
                if (exclude_added && L >= 1) pmf_prev.advance_marked();
                if (L < P) {
                    pmf.advance_marked();
                } else {
                    a_valid = false;  // only reachable at the top pool rank when excluding
                }
                ++L;
            }
        }
        if (fcnt < s && a_valid) a_t[t] = pmf.partial_expectation(s - fcnt);
        if (fcnt + 1 < s) {
            const HypergeomPmf& shifted = exclude_added ? pmf_prev : pmf;
            if (!exclude_added || L >= 1) b_t[t] = shifted.partial_expectation(s - fcnt - 1);
        }
        base_ += a_t[t];
    }
    for (RankValue r = 1; r <= mx + 1; ++r) pref_a_[r] = pref_a_[r - 1] + a_t[r - 1];
    suf_b_[mx + 1] = 0;
    for (RankValue r = mx; r >= 1; --r) suf_b_[r] = suf_b_[r + 1] + b_t[r];
}

}  // namespace mwelect
