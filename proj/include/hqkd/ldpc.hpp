#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "hqkd/bits.hpp"

namespace hqkd {

// Canonical production code parameters: rate-1/2 regular (3,6), 5000 checks
// over 10^4 remainder bits, generated from the fixed seed below and shipped
// as data/ldpc_5000x10000.txt.
inline constexpr std::size_t kLdpcRows = 5000;
inline constexpr std::size_t kLdpcCols = 10000;
inline constexpr std::size_t kLdpcRowWeight = 6;
inline constexpr std::uint64_t kLdpcArtifactSeed = 0x17d9c0de;

// Sparse parity-check code. The production instance is a seed-generated
// regular (3,6) code with 5000 checks over 10^4 bits (rate 1/2), shipped as a
// versioned text artifact so syndromes are reproducible across builds.
struct LdpcCode {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t row_weight = 0;
    std::vector<std::vector<std::uint32_t>> row_cols;  // sorted column indices per check

    // Configuration-model construction with duplicate-edge repair; row degree
    // uniform at `row_weight`, column degree uniform at rows*row_weight/cols.
    static LdpcCode generate(std::size_t rows, std::size_t cols, std::size_t row_weight,
                             std::uint64_t seed);

    // Text format: "rows cols row_weight" header line, then one line of sorted
    // column indices per check row.
    static LdpcCode load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    void validate() const;  // degree and index sanity
};

// Parity-check matrix times bits over GF(2). Throws on dimension mismatch.
BitString ldpc_syndrome(const LdpcCode& code, const BitString& bits);

// Sum-product decoding of noisy_bits toward target_syndrome on a binary
// symmetric channel with crossover qber. Returns the corrected word, or
// nullopt when no satisfying word is found within max_iters (a detectable
// failure — the session aborts).
std::optional<BitString> ldpc_decode(const LdpcCode& code, const BitString& noisy_bits,
                                     const BitString& target_syndrome, double qber,
                                     std::size_t max_iters);

} // namespace hqkd
