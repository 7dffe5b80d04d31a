#include "mwelect/symmetric.hpp"

#include <algorithm>
#include <numeric>

#include "mwelect/errors.hpp"

namespace mwelect {

// --- RankSet -----------------------------------------------------------

RankSet RankSet::from_intervals(std::vector<RankInterval> runs) {
    std::sort(runs.begin(), runs.end(),
              [](const RankInterval& a, const RankInterval& b) { return a.lo < b.lo; });
    RankSet s;
    for (const auto& r : runs) {
        if (r.lo > r.hi) continue;
        if (!s.runs_.empty() && r.lo <= s.runs_.back().hi)
            throw ArgError("rank intervals overlap");
        if (!s.runs_.empty() && r.lo == s.runs_.back().hi + 1) {
            s.runs_.back().hi = r.hi;
        } else {
            s.runs_.push_back(r);
        }
        s.count_ += r.hi - r.lo + 1;
    }
    return s;
}

RankSet RankSet::from_values(std::vector<RankValue> values) {
    std::sort(values.begin(), values.end());
    std::vector<RankInterval> runs;
    for (RankValue v : values) {
        if (!runs.empty() && runs.back().hi == v) throw ArgError("duplicate rank in set");
        if (!runs.empty() && runs.back().hi + 1 == v) {
            runs.back().hi = v;
        } else {
            runs.push_back({v, v});
        }
    }
    return from_intervals(std::move(runs));
}

RankSet RankSet::complement(int m, const std::vector<RankValue>& excluded) {
    std::vector<RankInterval> runs;
    RankValue next = 1;
    for (RankValue r : excluded) {
        if (r > next) runs.push_back({next, static_cast<RankValue>(r - 1)});
        next = r + 1;
    }
    if (next <= m) runs.push_back({next, static_cast<RankValue>(m)});
    return from_intervals(std::move(runs));
}

long long RankSet::count_leq(RankValue t) const {
    long long c = 0;
    for (const auto& r : runs_) {
        if (r.lo > t) break;
        c += std::min(r.hi, t) - r.lo + 1;
    }
    return c;
}

bool RankSet::contains(RankValue v) const {
    for (const auto& r : runs_) {
        if (v < r.lo) return false;
        if (v <= r.hi) return true;
    }
    return false;
}

BigInt RankSet::sum_values() const {
    BigInt s = 0;
    for (const auto& r : runs_) {
        BigInt lo = r.lo, hi = r.hi;
        s += (lo + hi) * (hi - lo + 1) / 2;
    }
    return s;
}

std::vector<RankValue> RankSet::values() const {
    std::vector<RankValue> out;
    out.reserve(static_cast<std::size_t>(count_));
    for (const auto& r : runs_)
        for (RankValue v = r.lo; v <= r.hi; ++v) out.push_back(v);
    return out;
}

// --- SymmetricProfile ---------------------------------------------------

int SymmetricProfile::critical_index(CandidateId c) const {
    auto it = std::lower_bound(critical.begin(), critical.end(), c);
    if (it == critical.end() || *it != c) return -1;
    return static_cast<int>(it - critical.begin());
}

int SymmetricProfile::block_index(CandidateId c) const {
    if (blocks.empty()) return critical_index(c) < 0 ? 0 : -1;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        if (std::binary_search(blocks[b].begin(), blocks[b].end(), c)) return static_cast<int>(b);
    return -1;
}

std::vector<CandidateId> SymmetricProfile::block_ids(int b) const {
    if (!blocks.empty()) return blocks[b];
    std::vector<CandidateId> ids;
    ids.reserve(static_cast<std::size_t>(num_free()));
    for (CandidateId c = 0; c < m; ++c)
        if (critical_index(c) < 0) ids.push_back(c);
    return ids;
}

std::vector<RankValue> SymmetricProfile::sorted_placed(int group) const {
    std::vector<RankValue> p = groups[group].placed;
    std::sort(p.begin(), p.end());
    return p;
}

RankSet SymmetricProfile::free_ranks(int group) const {
    return RankSet::complement(m, sorted_placed(group));
}

RankSet SymmetricProfile::support(int block, int group) const {
    if (!block_supports.empty()) return block_supports[block][group];
    return free_ranks(group);
}

void SymmetricProfile::validate() const {
    if (m < 1) throw ArgError("symmetric profile needs m >= 1");
    if (groups.empty()) throw ArgError("symmetric profile needs at least one group");
    if (!std::is_sorted(critical.begin(), critical.end()))
        throw ArgError("critical ids must be sorted");
    for (CandidateId c : critical)
        if (c < 0 || c >= m) throw ArgError("critical id out of range");
    for (std::size_t i = 1; i < critical.size(); ++i)
        if (critical[i] == critical[i - 1]) throw ArgError("duplicate critical id");

    Rational wsum;
    for (const auto& g : groups) {
        if (g.weight.sign() <= 0) throw ArgError("group weights must be positive");
        wsum += g.weight;
        if (g.placed.size() != critical.size())
            throw ArgError("every group must place exactly the critical candidates");
        std::vector<RankValue> p = g.placed;
        std::sort(p.begin(), p.end());
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] < 1 || p[i] > m) throw ArgError("placed rank out of range");
            if (i > 0 && p[i] == p[i - 1]) throw ArgError("placed ranks must be distinct");
        }
    }
    if (wsum != Rational(1)) throw ArgError("group weights must sum to 1");

    if (!blocks.empty()) {
        if (block_supports.size() != blocks.size())
            throw ArgError("block supports must match blocks");
        long long total = 0;
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if (!std::is_sorted(blocks[b].begin(), blocks[b].end()))
                throw ArgError("block ids must be sorted");
            total += static_cast<long long>(blocks[b].size());
            if (block_supports[b].size() != groups.size())
                throw ArgError("block support missing for some group");
            for (std::size_t g = 0; g < groups.size(); ++g) {
                if (block_supports[b][g].count() != static_cast<long long>(blocks[b].size()))
                    throw ArgError("block support size differs from block size");
            }
        }
        if (total != num_free()) throw ArgError("blocks must partition non-critical candidates");
        // Supports must partition each group's free ranks.
        for (std::size_t g = 0; g < groups.size(); ++g) {
            long long free_count = num_free();
            long long support_count = 0;
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                support_count += block_supports[b][g].count();
                for (const auto& run : block_supports[b][g].runs())
                    for (RankValue v = run.lo; v <= run.hi; ++v)
                        if (!free_ranks(static_cast<int>(g)).contains(v))
                            throw ArgError("block support overlaps placed ranks");
            }
            if (support_count != free_count)
                throw ArgError("block supports must cover all free ranks");
        }
    }
}

namespace {

long long factorial_capped(long long n, long long cap) {
    long long f = 1;
    for (long long i = 2; i <= n; ++i) {
        f *= i;
        if (f > cap) return cap + 1;
    }
    return f;
}

}  // namespace

PreferenceProfile SymmetricProfile::materialize(long long max_voters) const {
    validate();
    int nb = num_blocks();
    std::vector<std::vector<CandidateId>> ids(nb);
    long long perms = 1;
    for (int b = 0; b < nb; ++b) {
        ids[b] = block_ids(b);
        long long f = factorial_capped(static_cast<long long>(ids[b].size()), max_voters);
        if (perms > max_voters / std::max(f, 1LL) + 1) perms = max_voters + 1;
        perms *= f;
        if (perms > max_voters) break;
    }
    long long total = perms * num_groups();
    if (perms > max_voters || total > max_voters)
        throw CapError("materialization would need " + std::to_string(total) + " voters",
                       std::to_string(total));

    std::vector<std::vector<CandidateId>> orders;
    std::vector<Rational> weights;
    Rational per_perm(1, perms);
    for (int g = 0; g < num_groups(); ++g) {
        std::vector<std::vector<RankValue>> supp(nb);
        for (int b = 0; b < nb; ++b) supp[b] = support(b, g).values();
        // Iterate the product of per-block permutations.
        std::vector<std::vector<CandidateId>> perm(nb);
        for (int b = 0; b < nb; ++b) perm[b] = ids[b];
        std::vector<bool> done(1, false);
        while (true) {
            std::vector<RankValue> ranks(m, 0);
            for (std::size_t i = 0; i < critical.size(); ++i)
                ranks[critical[i]] = groups[g].placed[i];
            for (int b = 0; b < nb; ++b)
                for (std::size_t i = 0; i < perm[b].size(); ++i) ranks[perm[b][i]] = supp[b][i];
            Ranking rk = Ranking::from_ranks(ranks);
            orders.push_back(rk.order());
            weights.push_back(groups[g].weight * per_perm);
            // advance: next_permutation odometer across blocks
            int b = 0;
            while (b < nb && !std::next_permutation(perm[b].begin(), perm[b].end())) ++b;
            if (b == nb) break;
        }
    }
    return PreferenceProfile::from_orders(m, orders, std::move(weights));
}

}  // namespace mwelect
