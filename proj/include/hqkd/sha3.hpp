#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace hqkd {

// Keccak-f[1600] sponge with the FIPS 202 padding rules. The XOF classes are
// incremental because rejection sampling consumes an a-priori unknown number
// of squeezed bytes.
class KeccakSponge {
public:
    KeccakSponge(std::size_t rate_bytes, std::uint8_t domain_sep)
        : rate_(rate_bytes), ds_(domain_sep) {}

    void absorb(const std::uint8_t* data, std::size_t len);
    void absorb(const std::vector<std::uint8_t>& v) { absorb(v.data(), v.size()); }
    void finalize();  // pad + final permute; squeezing becomes legal
    void squeeze(std::uint8_t* out, std::size_t len);
    std::vector<std::uint8_t> squeeze(std::size_t len) {
        std::vector<std::uint8_t> v(len);
        squeeze(v.data(), len);
        return v;
    }

private:
    std::array<std::uint64_t, 25> st_{};
    std::size_t rate_;
    std::uint8_t ds_;
    std::size_t pos_ = 0;
    bool finalized_ = false;
};

std::vector<std::uint8_t> sha3_256(const std::vector<std::uint8_t>& msg);
std::vector<std::uint8_t> sha3_512(const std::vector<std::uint8_t>& msg);

struct Shake128 : KeccakSponge {
    Shake128() : KeccakSponge(168, 0x1f) {}
};
struct Shake256 : KeccakSponge {
    Shake256() : KeccakSponge(136, 0x1f) {}
};

std::vector<std::uint8_t> shake128(const std::vector<std::uint8_t>& msg, std::size_t outlen);
std::vector<std::uint8_t> shake256(const std::vector<std::uint8_t>& msg, std::size_t outlen);

} // namespace hqkd
