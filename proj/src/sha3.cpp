#include "hqkd/sha3.hpp"

#include <bit>
#include <stdexcept>

namespace hqkd {

namespace {

constexpr std::uint64_t RC[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL};

// rotation offsets, lane index x + 5y
constexpr int RHO[25] = {0,  1,  62, 28, 27, 36, 44, 6,  55, 20, 3,  10, 43,
                         25, 39, 41, 45, 15, 21, 8,  18, 2,  61, 56, 14};

void keccak_f1600(std::array<std::uint64_t, 25>& A) {
    for (int round = 0; round < 24; ++round) {
        // theta
        std::uint64_t C[5], D[5];
        for (int x = 0; x < 5; ++x)
            C[x] = A[x] ^ A[x + 5] ^ A[x + 10] ^ A[x + 15] ^ A[x + 20];
        for (int x = 0; x < 5; ++x) {
            D[x] = C[(x + 4) % 5] ^ std::rotl(C[(x + 1) % 5], 1);
            for (int y = 0; y < 5; ++y) A[x + 5 * y] ^= D[x];
        }
        // rho + pi
        std::uint64_t B[25];
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                B[y + 5 * ((2 * x + 3 * y) % 5)] = std::rotl(A[x + 5 * y], RHO[x + 5 * y]);
        // chi
        for (int y = 0; y < 5; ++y)
            for (int x = 0; x < 5; ++x)
                A[x + 5 * y] = B[x + 5 * y] ^ (~B[(x + 1) % 5 + 5 * y] & B[(x + 2) % 5 + 5 * y]);
        // iota
        A[0] ^= RC[round];
    }
}

} // namespace

void KeccakSponge::absorb(const std::uint8_t* data, std::size_t len) {
    if (finalized_) throw std::logic_error("KeccakSponge: absorb after finalize");
    for (std::size_t i = 0; i < len; ++i) {
        st_[pos_ >> 3] ^= std::uint64_t(data[i]) << (8 * (pos_ & 7));
        if (++pos_ == rate_) {
            keccak_f1600(st_);
            pos_ = 0;
        }
    }
}

void KeccakSponge::finalize() {
    if (finalized_) return;
    st_[pos_ >> 3] ^= std::uint64_t(ds_) << (8 * (pos_ & 7));
    st_[(rate_ - 1) >> 3] ^= std::uint64_t(0x80) << (8 * ((rate_ - 1) & 7));
    keccak_f1600(st_);
    pos_ = 0;
    finalized_ = true;
}

void KeccakSponge::squeeze(std::uint8_t* out, std::size_t len) {
    if (!finalized_) finalize();
    for (std::size_t i = 0; i < len; ++i) {
        if (pos_ == rate_) {
            keccak_f1600(st_);
            pos_ = 0;
        }
        out[i] = std::uint8_t(st_[pos_ >> 3] >> (8 * (pos_ & 7)));
        ++pos_;
    }
}

namespace {

std::vector<std::uint8_t> sha3(const std::vector<std::uint8_t>& msg,
                               std::size_t rate, std::size_t outlen) {
    KeccakSponge sp(rate, 0x06);
    sp.absorb(msg);
    sp.finalize();
    return sp.squeeze(outlen);
}

} // namespace

std::vector<std::uint8_t> sha3_256(const std::vector<std::uint8_t>& msg) {
    return sha3(msg, 136, 32);
}

std::vector<std::uint8_t> sha3_512(const std::vector<std::uint8_t>& msg) {
    return sha3(msg, 72, 64);
}

std::vector<std::uint8_t> shake128(const std::vector<std::uint8_t>& msg, std::size_t outlen) {
    Shake128 sp;
    sp.absorb(msg);
    sp.finalize();
    return sp.squeeze(outlen);
}

std::vector<std::uint8_t> shake256(const std::vector<std::uint8_t>& msg, std::size_t outlen) {
    Shake256 sp;
    sp.absorb(msg);
    sp.finalize();
    return sp.squeeze(outlen);
}

} // namespace hqkd
