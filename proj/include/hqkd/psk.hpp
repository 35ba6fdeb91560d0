#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hqkd/bits.hpp"

namespace hqkd {

// Pre-shared-key pool with strict no-reuse accounting. Every consumer takes
// bits through allocate(); the cursor never rewinds, so no bit can serve two
// purposes. The one exception is the fixed AES key, which is allocated once
// and then referenced across cycles.

enum class PskPurpose : std::uint8_t { is_pad = 0, mac_key = 1, aes_key = 2 };

std::string to_string(PskPurpose p);

struct PskAllocation {
    PskPurpose purpose;
    std::uint64_t offset;
    std::uint64_t nbits;
    std::uint64_t cycle_id;
};

class PoolExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DoubleAesAllocation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PskLedger {
public:
    explicit PskLedger(BitString pool) : pool_(std::move(pool)) {}

    // Consumes nbits from the pool front; records the allocation journal
    // entry. aes_key may be requested at most once over the ledger lifetime.
    BitString allocate(PskPurpose purpose, std::size_t nbits, std::uint64_t cycle_id);

    // The fixed 256-bit AES key (allocated on first call, re-read afterward).
    BitString aes_key(std::uint64_t cycle_id);

    std::size_t cursor() const { return cursor_; }
    std::size_t remaining() const { return pool_.size() - cursor_; }
    const std::vector<PskAllocation>& allocations() const { return allocs_; }

    // Total bits consumed by allocations tagged with this cycle id.
    std::size_t consumed_in_cycle(std::uint64_t cycle_id) const;

    // Binary persistence: pool + cursor + journal, for audit and resumption.
    void save(const std::filesystem::path& path) const;
    static PskLedger load(const std::filesystem::path& path);

private:
    BitString pool_;
    std::size_t cursor_ = 0;
    std::vector<PskAllocation> allocs_;
    std::optional<std::uint64_t> aes_offset_;
};

} // namespace hqkd
