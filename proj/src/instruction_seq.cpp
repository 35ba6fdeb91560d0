#include "hqkd/instruction_seq.hpp"

namespace hqkd {

namespace {

constexpr unsigned kMaxNObs = 16;

// Completions of a partial word with `rem[k]` symbols of scheme k left and
// `last` the previous symbol (3 = none). The whole table is filled eagerly
// (it is tiny), which keeps lookups lock-free.
struct Counter {
    static constexpr unsigned kDim = kMaxNObs / 2 + 2;
    std::uint64_t memo[kDim][kDim][kDim][4];

    Counter() {
        for (unsigned total = 0; total <= 3 * (kDim - 1); ++total)
            for (unsigned a = 0; a < kDim; ++a)
                for (unsigned b = 0; b < kDim; ++b)
                    for (unsigned c = 0; c < kDim; ++c) {
                        if (a + b + c != total) continue;
                        for (unsigned last = 0; last < 4; ++last) {
                            if (total == 0) {
                                memo[a][b][c][last] = 1;
                                continue;
                            }
                            std::uint64_t sum = 0;
                            if (a && last != 0) sum += memo[a - 1][b][c][0];
                            if (b && last != 1) sum += memo[a][b - 1][c][1];
                            if (c && last != 2) sum += memo[a][b][c - 1][2];
                            memo[a][b][c][last] = sum;
                        }
                    }
    }

    std::uint64_t count(unsigned a, unsigned b, unsigned c, unsigned last) const {
        return memo[a][b][c][last];
    }
};

const Counter& counter() {
    static const Counter c;
    return c;
}

void check_n_obs(unsigned n_obs) {
    if (n_obs == 1) throw std::invalid_argument("instruction sequence: n_obs = 1 is excluded");
    if (n_obs > kMaxNObs)
        throw std::invalid_argument("instruction sequence: n_obs above supported maximum (" +
                                    std::to_string(kMaxNObs) + ")");
}

} // namespace

std::string to_string(Scheme s) {
    switch (s) {
    case Scheme::AES: return "AES";
    case Scheme::ASCON: return "ASCON";
    case Scheme::OTP: return "OTP";
    }
    return "?";
}

std::string InstructionSequence::tag_string() const {
    std::string out;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i) out += '>';
        out += to_string(steps[i]);
    }
    return out;
}

void InstructionSequence::validate() const {
    if (gamma != (n_obs + 1) / 2)
        throw std::runtime_error("instruction sequence: gamma must be ceil(n_obs/2)");
    if (steps.size() != std::size_t(3) * gamma)
        throw std::runtime_error("instruction sequence: length must be 3*gamma");
    unsigned counts[3] = {0, 0, 0};
    for (std::size_t i = 0; i < steps.size(); ++i) {
        counts[unsigned(steps[i])]++;
        if (i && steps[i] == steps[i - 1])
            throw std::runtime_error("instruction sequence: adjacent steps equal");
    }
    for (unsigned k = 0; k < 3; ++k)
        if (counts[k] != gamma)
            throw std::runtime_error("instruction sequence: scheme counts unbalanced");
}

std::uint64_t count_valid(unsigned n_obs) {
    check_n_obs(n_obs);
    unsigned gamma = (n_obs + 1) / 2;
    return counter().count(gamma, gamma, gamma, 3);
}

InstructionSequence unrank_is(std::uint64_t index, unsigned n_obs) {
    check_n_obs(n_obs);
    unsigned gamma = (n_obs + 1) / 2;
    std::uint64_t family = counter().count(gamma, gamma, gamma, 3);
    std::uint64_t space = n_obs >= 64 ? 0 : (std::uint64_t(1) << n_obs);
    if (family < space)
        throw CapacityError("instruction sequence: family smaller than 2^n_obs");
    if (index >= space)
        throw std::out_of_range("instruction sequence: index outside [0, 2^n_obs)");

    InstructionSequence is;
    is.n_obs = n_obs;
    is.gamma = gamma;
    unsigned rem[3] = {gamma, gamma, gamma};
    unsigned last = 3;
    for (unsigned pos = 0; pos < 3 * gamma; ++pos) {
        for (unsigned k = 0; k < 3; ++k) {
            if (!rem[k] || k == last) continue;
            --rem[k];
            std::uint64_t under = counter().count(rem[0], rem[1], rem[2], k);
            if (index < under) {
                is.steps.push_back(Scheme(k));
                last = k;
                break;
            }
            index -= under;
            ++rem[k];
        }
    }
    return is;
}

std::uint64_t rank_is(const InstructionSequence& is) {
    check_n_obs(is.n_obs);
    is.validate();
    unsigned rem[3] = {is.gamma, is.gamma, is.gamma};
    unsigned last = 3;
    std::uint64_t index = 0;
    for (auto step : is.steps) {
        for (unsigned k = 0; k < unsigned(step); ++k) {
            if (!rem[k] || k == last) continue;
            --rem[k];
            index += counter().count(rem[0], rem[1], rem[2], k);
            ++rem[k];
        }
        --rem[unsigned(step)];
        last = unsigned(step);
    }
    return index;
}

BitString encrypt_is(std::uint64_t index, const BitString& pad) {
    if (pad.size() > 64) throw std::invalid_argument("encrypt_is: pad too long");
    if (pad.size() < 64 && index >> pad.size())
        throw std::invalid_argument("encrypt_is: index does not fit in n_obs bits");
    BitString pi = BitString::from_u64(index, pad.size());
    pi ^= pad;
    return pi;
}

std::uint64_t decrypt_is(const BitString& pi, const BitString& pad) {
    BitString x = pi;
    x ^= pad;
    return x.to_u64();
}

} // namespace hqkd
