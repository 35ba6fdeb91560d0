#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hqkd {

// Packed bit string, MSB-first within each byte (bit 0 of the string is the
// most significant bit of byte 0). All key material, pads, seeds and hash
// inputs use this layout so that byte serialization is unambiguous.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t nbits) : bytes_((nbits + 7) / 8, 0), nbits_(nbits) {}

    static BitString from_bytes(const std::vector<std::uint8_t>& b) {
        BitString s;
        s.bytes_ = b;
        s.nbits_ = b.size() * 8;
        return s;
    }

    static BitString from_bytes(const std::uint8_t* p, std::size_t len) {
        BitString s;
        s.bytes_.assign(p, p + len);
        s.nbits_ = len * 8;
        return s;
    }

    // First `nbits` of the byte buffer (buffer must be exactly the packed size).
    static BitString from_bytes(const std::vector<std::uint8_t>& b, std::size_t nbits) {
        if (b.size() != (nbits + 7) / 8)
            throw std::invalid_argument("from_bytes: buffer size mismatch");
        BitString s;
        s.bytes_ = b;
        s.nbits_ = nbits;
        if (nbits % 8) s.bytes_.back() &= std::uint8_t(0xff << (8 - nbits % 8));
        return s;
    }

    // Lowest `nbits` of v, big-endian (bit 0 of the result is the highest of
    // the nbits).
    static BitString from_u64(std::uint64_t v, std::size_t nbits) {
        if (nbits > 64) throw std::invalid_argument("from_u64: nbits > 64");
        BitString s(nbits);
        for (std::size_t i = 0; i < nbits; ++i)
            s.set(i, (v >> (nbits - 1 - i)) & 1);
        return s;
    }

    std::size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    bool get(std::size_t i) const {
        if (i >= nbits_) throw std::out_of_range("BitString::get");
        return (bytes_[i >> 3] >> (7 - (i & 7))) & 1;
    }

    void set(std::size_t i, bool v) {
        if (i >= nbits_) throw std::out_of_range("BitString::set");
        std::uint8_t m = std::uint8_t(1u << (7 - (i & 7)));
        if (v) bytes_[i >> 3] |= m; else bytes_[i >> 3] &= std::uint8_t(~m);
    }

    void push_back(bool v) {
        if (nbits_ % 8 == 0) bytes_.push_back(0);
        ++nbits_;
        set(nbits_ - 1, v);
    }

    void append(const BitString& o) {
        for (std::size_t i = 0; i < o.size(); ++i) push_back(o.get(i));
    }

    BitString slice(std::size_t off, std::size_t len) const {
        if (off + len > nbits_) throw std::out_of_range("BitString::slice");
        BitString s(len);
        for (std::size_t i = 0; i < len; ++i) s.set(i, get(off + i));
        return s;
    }

    BitString& operator^=(const BitString& o) {
        if (o.nbits_ != nbits_) throw std::invalid_argument("BitString xor: length mismatch");
        for (std::size_t i = 0; i < bytes_.size(); ++i) bytes_[i] ^= o.bytes_[i];
        return *this;
    }

    friend BitString operator^(BitString a, const BitString& b) { a ^= b; return a; }

    bool operator==(const BitString& o) const {
        return nbits_ == o.nbits_ && bytes_ == o.bytes_;
    }
    bool operator!=(const BitString& o) const { return !(*this == o); }

    std::uint64_t to_u64() const {
        if (nbits_ > 64) throw std::invalid_argument("to_u64: too long");
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < nbits_; ++i) v = (v << 1) | (get(i) ? 1u : 0u);
        return v;
    }

    // Byte serialization; trailing partial byte is zero-padded on the right.
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

    std::size_t count_ones() const {
        std::size_t c = 0;
        for (auto b : bytes_) c += std::size_t(std::popcount(b));
        return c;
    }

    std::size_t hamming_distance(const BitString& o) const {
        if (o.nbits_ != nbits_) throw std::invalid_argument("hamming: length mismatch");
        std::size_t c = 0;
        for (std::size_t i = 0; i < bytes_.size(); ++i)
            c += std::size_t(std::popcount(std::uint8_t(bytes_[i] ^ o.bytes_[i])));
        return c;
    }

    std::string to_hex() const {
        static const char* d = "0123456789abcdef";
        std::string h;
        h.reserve(bytes_.size() * 2);
        for (auto b : bytes_) { h += d[b >> 4]; h += d[b & 15]; }
        return h;
    }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t nbits_ = 0;
};

} // namespace hqkd
