#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hqkd {

// Classical-channel frame types. Every non-ABORT frame is authenticated by an
// accompanying MAC frame computed over (type || length || payload).
enum class FrameType : std::uint8_t {
    IS_CT = 0x01,
    SAMPLE_IDX = 0x02,
    SYNDROME = 0x03,
    VERIFY = 0x04,
    PA_SEED = 0x05,
    KEM_PK = 0x06,
    KEM_CT = 0x07,
    HE_ENV = 0x08,
    MAC = 0x09,
    ABORT = 0x0a,
};

std::string to_string(FrameType t);

struct Frame {
    FrameType type = FrameType::ABORT;
    std::vector<std::uint8_t> payload;

    bool operator==(const Frame&) const = default;
};

class FrameError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// [1B type][4B BE length][payload]
std::vector<std::uint8_t> frame_encode(const Frame& f);

// Rejects unknown types, truncated buffers and trailing bytes.
Frame frame_decode(const std::vector<std::uint8_t>& bytes);

// The exact byte string a MAC frame authenticates.
std::vector<std::uint8_t> frame_mac_input(const Frame& f);

} // namespace hqkd
