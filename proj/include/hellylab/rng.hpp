#pragma once

#include <cstdint>
#include <vector>

namespace hellylab {

// SplitMix64 stream. Small, portable, and byte-reproducible across
// platforms, which the result files require.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53 random bits.
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0,n), unbiased via rejection.
    std::uint64_t next_below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    // Fisher-Yates prefix: after the call, v[0..k) is a uniform k-subset of v
    // in draw order.
    template <class T>
    void partial_shuffle(std::vector<T>& v, std::size_t k) {
        const std::size_t n = v.size();
        if (k > n) k = n;
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + std::size_t(next_below(n - i));
            std::swap(v[i], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

// Child stream seed from (parent seed, path component). Recursive algorithms
// derive per-branch seeds with this so parallel evaluation stays
// deterministic.
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t path) {
    Rng r(parent ^ (0x6a09e667f3bcc909ULL + path * 0x9e3779b97f4a7c15ULL));
    r.next_u64();
    return r.next_u64();
}

}  // namespace hellylab
