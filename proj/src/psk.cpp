#include "hqkd/psk.hpp"

#include <cstring>
#include <fstream>

namespace hqkd {

namespace {

constexpr char kMagic[4] = {'P', 'S', 'K', 'L'};
constexpr std::uint32_t kVersion = 1;

void put_u64(std::ostream& os, std::uint64_t v) {
    std::uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = std::uint8_t(v >> (56 - 8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& is) {
    std::uint8_t b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | b[i];
    return v;
}

} // namespace

std::string to_string(PskPurpose p) {
    switch (p) {
    case PskPurpose::is_pad: return "is_pad";
    case PskPurpose::mac_key: return "mac_key";
    case PskPurpose::aes_key: return "aes_key";
    }
    return "?";
}

BitString PskLedger::allocate(PskPurpose purpose, std::size_t nbits, std::uint64_t cycle_id) {
    if (purpose == PskPurpose::aes_key && aes_offset_)
        throw DoubleAesAllocation("psk: fixed AES key already allocated");
    if (cursor_ + nbits > pool_.size())
        throw PoolExhausted("psk: pool exhausted (" + std::to_string(remaining()) +
                            " bits left, " + std::to_string(nbits) + " requested)");
    BitString slice = pool_.slice(cursor_, nbits);
    allocs_.push_back({purpose, std::uint64_t(cursor_), std::uint64_t(nbits), cycle_id});
    if (purpose == PskPurpose::aes_key) aes_offset_ = cursor_;
    cursor_ += nbits;
    return slice;
}

BitString PskLedger::aes_key(std::uint64_t cycle_id) {
    if (!aes_offset_) return allocate(PskPurpose::aes_key, 256, cycle_id);
    return pool_.slice(std::size_t(*aes_offset_), 256);
}

std::size_t PskLedger::consumed_in_cycle(std::uint64_t cycle_id) const {
    std::size_t total = 0;
    for (const auto& a : allocs_)
        if (a.cycle_id == cycle_id) total += std::size_t(a.nbits);
    return total;
}

void PskLedger::save(const std::filesystem::path& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("psk: cannot open " + path.string() + " for writing");
    os.write(kMagic, 4);
    put_u64(os, kVersion);
    put_u64(os, pool_.size());
    const auto& bytes = pool_.bytes();
    os.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    put_u64(os, cursor_);
    put_u64(os, aes_offset_ ? 1 : 0);
    put_u64(os, aes_offset_ ? *aes_offset_ : 0);
    put_u64(os, allocs_.size());
    for (const auto& a : allocs_) {
        os.put(char(a.purpose));
        put_u64(os, a.offset);
        put_u64(os, a.nbits);
        put_u64(os, a.cycle_id);
    }
    if (!os) throw std::runtime_error("psk: write failed for " + path.string());
}

PskLedger PskLedger::load(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("psk: cannot open " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("psk: bad ledger file magic");
    if (get_u64(is) != kVersion) throw std::runtime_error("psk: unsupported ledger version");
    std::uint64_t nbits = get_u64(is);
    std::vector<std::uint8_t> bytes((nbits + 7) / 8);
    is.read(reinterpret_cast<char*>(bytes.data()), std::streamsize(bytes.size()));
    PskLedger ledger(BitString::from_bytes(bytes, std::size_t(nbits)));
    ledger.cursor_ = std::size_t(get_u64(is));
    bool has_aes = get_u64(is) != 0;
    std::uint64_t aes_off = get_u64(is);
    if (has_aes) ledger.aes_offset_ = aes_off;
    std::uint64_t n = get_u64(is);
    for (std::uint64_t i = 0; i < n; ++i) {
        PskAllocation a;
        a.purpose = PskPurpose(is.get());
        a.offset = get_u64(is);
        a.nbits = get_u64(is);
        a.cycle_id = get_u64(is);
        ledger.allocs_.push_back(a);
    }
    if (!is) throw std::runtime_error("psk: truncated ledger file");
    return ledger;
}

} // namespace hqkd
