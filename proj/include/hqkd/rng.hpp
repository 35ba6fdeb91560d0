#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "hqkd/bits.hpp"

namespace hqkd {

// Deterministic RNG wrapper. mt19937_64 output is identical across
// platforms; std::uniform_int_distribution is not, so bounded draws use
// explicit rejection sampling to keep transcripts reproducible everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, n), unbiased.
    std::uint64_t bounded(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::bounded(0)");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do { v = eng_(); } while (v >= limit);
        return v % n;
    }

    bool bit() {
        if (bitpos_ == 0) { bitbuf_ = eng_(); bitpos_ = 64; }
        return (bitbuf_ >> --bitpos_) & 1;
    }

    double uniform01() { return double(eng_() >> 11) * 0x1.0p-53; }

    std::vector<std::uint8_t> bytes(std::size_t n) {
        std::vector<std::uint8_t> out(n);
        std::size_t i = 0;
        while (i + 8 <= n) {
            std::uint64_t v = eng_();
            for (int k = 0; k < 8; ++k) out[i + std::size_t(k)] = std::uint8_t(v >> (56 - 8 * k));
            i += 8;
        }
        if (i < n) {
            std::uint64_t v = eng_();
            for (int k = 0; k < 8 && i < n; ++k, ++i) out[i] = std::uint8_t(v >> (56 - 8 * k));
        }
        return out;
    }

    BitString bits(std::size_t n) {
        BitString s((n));
        for (std::size_t i = 0; i < n; ++i) s.set(i, bit());
        return s;
    }

    // n distinct indices from [0, N), ascending. Partial Fisher–Yates.
    std::vector<std::uint32_t> sample_without_replacement(std::uint32_t N, std::uint32_t n) {
        if (n > N) throw std::invalid_argument("sample: n > N");
        std::vector<std::uint32_t> idx(N);
        for (std::uint32_t i = 0; i < N; ++i) idx[i] = i;
        for (std::uint32_t i = 0; i < n; ++i) {
            std::uint32_t j = i + std::uint32_t(bounded(N - i));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(n);
        std::sort(idx.begin(), idx.end());
        return idx;
    }

private:
    std::mt19937_64 eng_;
    std::uint64_t bitbuf_ = 0;
    int bitpos_ = 0;
};

} // namespace hqkd
