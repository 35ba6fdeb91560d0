#include "hqkd/frames.hpp"

namespace hqkd {

std::string to_string(FrameType t) {
    switch (t) {
    case FrameType::IS_CT: return "IS_CT";
    case FrameType::SAMPLE_IDX: return "SAMPLE_IDX";
    case FrameType::SYNDROME: return "SYNDROME";
    case FrameType::VERIFY: return "VERIFY";
    case FrameType::PA_SEED: return "PA_SEED";
    case FrameType::KEM_PK: return "KEM_PK";
    case FrameType::KEM_CT: return "KEM_CT";
    case FrameType::HE_ENV: return "HE_ENV";
    case FrameType::MAC: return "MAC";
    case FrameType::ABORT: return "ABORT";
    }
    return "?";
}

namespace {

bool known_type(std::uint8_t t) {
    return t >= std::uint8_t(FrameType::IS_CT) && t <= std::uint8_t(FrameType::ABORT);
}

} // namespace

std::vector<std::uint8_t> frame_encode(const Frame& f) {
    std::vector<std::uint8_t> out;
    out.reserve(5 + f.payload.size());
    out.push_back(std::uint8_t(f.type));
    std::uint32_t len = std::uint32_t(f.payload.size());
    out.push_back(std::uint8_t(len >> 24));
    out.push_back(std::uint8_t(len >> 16));
    out.push_back(std::uint8_t(len >> 8));
    out.push_back(std::uint8_t(len));
    out.insert(out.end(), f.payload.begin(), f.payload.end());
    return out;
}

Frame frame_decode(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 5) throw FrameError("frame_decode: shorter than header");
    if (!known_type(bytes[0]))
        throw FrameError("frame_decode: unknown type byte " + std::to_string(bytes[0]));
    std::size_t len = (std::size_t(bytes[1]) << 24) | (std::size_t(bytes[2]) << 16) |
                      (std::size_t(bytes[3]) << 8) | std::size_t(bytes[4]);
    if (bytes.size() != 5 + len)
        throw FrameError("frame_decode: length field disagrees with buffer size");
    Frame f;
    f.type = FrameType(bytes[0]);
    f.payload.assign(bytes.begin() + 5, bytes.end());
    return f;
}

std::vector<std::uint8_t> frame_mac_input(const Frame& f) { return frame_encode(f); }

} // namespace hqkd
