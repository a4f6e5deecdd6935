#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace ebkit {

/// Deterministic random source.  All randomness in the library flows through
/// this wrapper so runs are reproducible across platforms: the engine is
/// std::mt19937_64 (bit-exact per the standard) and the derived draws below
/// avoid the implementation-defined standard-library distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    /// Uniform on [0, 1) using the top 53 bits of the engine output.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller; consumes exactly two uniforms per call.
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log1p(-u1)) *
               std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Unbiased integer in [0, n) by masked rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t mask = n - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        std::uint64_t r;
        do {
            r = gen_() & mask;
        } while (r >= n);
        return r;
    }

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
        }
    }

    /// k distinct indices from {0,...,n-1}, in draw order.
    std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k) {
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        std::vector<std::size_t> out;
        out.reserve(k);
        for (std::size_t j = 0; j < k && j < n; ++j) {
            const std::size_t pick = j + static_cast<std::size_t>(below(n - j));
            std::swap(pool[j], pool[pick]);
            out.push_back(pool[j]);
        }
        return out;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace ebkit
