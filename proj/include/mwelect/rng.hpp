#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mwelect/errors.hpp"

namespace mwelect {

// Seeded RNG with stable helpers. std::mt19937_64's output sequence is fixed
// by the standard, and the bounded-draw / shuffle routines below avoid
// std::uniform_int_distribution, whose mapping is implementation-defined.
// Fixed-seed runs are therefore byte-identical across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Unbiased draw from [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw ArgError("Rng::below(0)");
        std::uint64_t rem = (UINT64_MAX % n + 1) % n;  // # of values to reject
        std::uint64_t limit = UINT64_MAX - rem;
        std::uint64_t r;
        do {
            r = next();
        } while (r > limit);
        return r % n;
    }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        if (hi < lo) throw ArgError("Rng::uniform_int empty range");
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct values from {0, ..., n-1}, in random order.
    std::vector<int> sample_without_replacement(int n, int k) {
        if (k < 0 || k > n) throw ArgError("sample_without_replacement: k out of range");
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        for (int i = 0; i < k; ++i) {
            int j = i + static_cast<int>(below(static_cast<std::uint64_t>(n - i)));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        return pool;
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace mwelect
