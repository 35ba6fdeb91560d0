#include "hqkd/ldpc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hqkd/rng.hpp"

namespace hqkd {

LdpcCode LdpcCode::generate(std::size_t rows, std::size_t cols, std::size_t row_weight,
                            std::uint64_t seed) {
    if (rows * row_weight % cols != 0)
        throw std::invalid_argument("ldpc: edge count must divide evenly into columns");
    std::size_t col_weight = rows * row_weight / cols;

    // Configuration model: shuffle column sockets, deal row_weight per row,
    // then repair duplicate edges within a row by swapping sockets.
    std::vector<std::uint32_t> sockets;
    sockets.reserve(rows * row_weight);
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t k = 0; k < col_weight; ++k) sockets.push_back(std::uint32_t(c));

    Rng rng(seed);
    for (std::size_t i = sockets.size(); i > 1; --i)
        std::swap(sockets[i - 1], sockets[rng.bounded(i)]);

    auto row_has_dup = [&](std::size_t r) {
        for (std::size_t a = 0; a < row_weight; ++a)
            for (std::size_t b = a + 1; b < row_weight; ++b)
                if (sockets[r * row_weight + a] == sockets[r * row_weight + b]) return true;
        return false;
    };

    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t guard = 0;
        while (row_has_dup(r)) {
            if (++guard > 100000) throw std::runtime_error("ldpc: socket repair did not settle");
            std::size_t a = r * row_weight + rng.bounded(row_weight);
            std::size_t b = rng.bounded(sockets.size());
            std::swap(sockets[a], sockets[b]);
        }
    }
    // Re-check earlier rows invalidated by repair swaps.
    bool clean = false;
    while (!clean) {
        clean = true;
        for (std::size_t r = 0; r < rows; ++r) {
            std::size_t guard = 0;
            while (row_has_dup(r)) {
                clean = false;
                if (++guard > 100000)
                    throw std::runtime_error("ldpc: socket repair did not settle");
                std::size_t a = r * row_weight + rng.bounded(row_weight);
                std::size_t b = rng.bounded(sockets.size());
                std::swap(sockets[a], sockets[b]);
            }
        }
    }

    LdpcCode code;
    code.rows = rows;
    code.cols = cols;
    code.row_weight = row_weight;
    code.row_cols.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        auto& rc = code.row_cols[r];
        rc.assign(sockets.begin() + long(r * row_weight),
                  sockets.begin() + long((r + 1) * row_weight));
        std::sort(rc.begin(), rc.end());
    }
    code.validate();
    return code;
}

void LdpcCode::validate() const {
    if (row_cols.size() != rows) throw std::runtime_error("ldpc: row count mismatch");
    if (row_weight > 64) throw std::runtime_error("ldpc: row weight above decoder limit");
    std::vector<std::size_t> col_deg(cols, 0);
    for (const auto& rc : row_cols) {
        if (rc.size() != row_weight) throw std::runtime_error("ldpc: row weight mismatch");
        for (std::size_t k = 0; k < rc.size(); ++k) {
            if (rc[k] >= cols) throw std::runtime_error("ldpc: column index out of range");
            if (k && rc[k] == rc[k - 1]) throw std::runtime_error("ldpc: duplicate edge");
            ++col_deg[rc[k]];
        }
    }
    std::size_t expect = rows * row_weight / cols;
    for (std::size_t c = 0; c < cols; ++c)
        if (col_deg[c] != expect) throw std::runtime_error("ldpc: column degree mismatch");
}

void LdpcCode::save(const std::filesystem::path& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("ldpc: cannot open " + path.string() + " for writing");
    os << rows << ' ' << cols << ' ' << row_weight << '\n';
    for (const auto& rc : row_cols) {
        for (std::size_t k = 0; k < rc.size(); ++k) os << (k ? " " : "") << rc[k];
        os << '\n';
    }
    if (!os) throw std::runtime_error("ldpc: write failed for " + path.string());
}

LdpcCode LdpcCode::load(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("ldpc: cannot open " + path.string());
    LdpcCode code;
    is >> code.rows >> code.cols >> code.row_weight;
    if (!is) throw std::runtime_error("ldpc: bad header in " + path.string());
    code.row_cols.resize(code.rows);
    for (auto& rc : code.row_cols) {
        rc.resize(code.row_weight);
        for (auto& c : rc) is >> c;
    }
    if (!is) throw std::runtime_error("ldpc: truncated matrix file " + path.string());
    code.validate();
    return code;
}

BitString ldpc_syndrome(const LdpcCode& code, const BitString& bits) {
    if (bits.size() != code.cols)
        throw std::invalid_argument("ldpc_syndrome: expected " + std::to_string(code.cols) +
                                    " bits, got " + std::to_string(bits.size()));
    BitString syn(code.rows);
    for (std::size_t r = 0; r < code.rows; ++r) {
        int parity = 0;
        for (auto c : code.row_cols[r]) parity ^= bits.get(c);
        syn.set(r, parity);
    }
    return syn;
}

std::optional<BitString> ldpc_decode(const LdpcCode& code, const BitString& noisy_bits,
                                     const BitString& target_syndrome, double qber,
                                     std::size_t max_iters) {
    if (noisy_bits.size() != code.cols)
        throw std::invalid_argument("ldpc_decode: word length mismatch");
    if (target_syndrome.size() != code.rows)
        throw std::invalid_argument("ldpc_decode: syndrome length mismatch");

    // Decode the error pattern e with H e = target ^ H(noisy); then flip.
    BitString syn = ldpc_syndrome(code, noisy_bits);
    syn ^= target_syndrome;

    bool any = false;
    for (std::size_t r = 0; r < code.rows; ++r) any = any || syn.get(r);
    if (!any) return noisy_bits;

    double p = std::clamp(qber, 1e-9, 0.5 - 1e-9);
    const double prior = std::log((1.0 - p) / p);
    const double clamp_v = 30.0;

    // Flatten the edge list.
    std::size_t n_edges = code.rows * code.row_weight;
    std::vector<std::uint32_t> edge_col(n_edges);
    for (std::size_t r = 0; r < code.rows; ++r)
        for (std::size_t k = 0; k < code.row_weight; ++k)
            edge_col[r * code.row_weight + k] = code.row_cols[r][k];

    std::vector<double> var_to_chk(n_edges, prior), chk_to_var(n_edges, 0.0);
    std::vector<double> posterior(code.cols);
    BitString err(code.cols);

    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        // Check update: tanh-product over the row, sign set by the syndrome.
        for (std::size_t r = 0; r < code.rows; ++r) {
            double tanhs[64];
            double prod = syn.get(r) ? -1.0 : 1.0;
            for (std::size_t k = 0; k < code.row_weight; ++k) {
                double t = std::tanh(0.5 * var_to_chk[r * code.row_weight + k]);
                // keep strictly inside (-1,1) so the division below is finite
                t = std::clamp(t, -0.999999999999, 0.999999999999);
                tanhs[k] = t;
                prod *= t;
            }
            for (std::size_t k = 0; k < code.row_weight; ++k) {
                double ex = prod / tanhs[k];
                ex = std::clamp(ex, -0.999999999999, 0.999999999999);
                chk_to_var[r * code.row_weight + k] =
                    std::clamp(2.0 * std::atanh(ex), -clamp_v, clamp_v);
            }
        }
        // Variable update + posterior.
        for (std::size_t v = 0; v < code.cols; ++v) posterior[v] = prior;
        for (std::size_t e = 0; e < n_edges; ++e) posterior[edge_col[e]] += chk_to_var[e];
        for (std::size_t e = 0; e < n_edges; ++e)
            var_to_chk[e] = std::clamp(posterior[edge_col[e]] - chk_to_var[e], -clamp_v, clamp_v);

        for (std::size_t v = 0; v < code.cols; ++v) err.set(v, posterior[v] < 0.0);
        if (ldpc_syndrome(code, err) == syn) {
            BitString out = noisy_bits;
            out ^= err;
            return out;
        }
    }
    return std::nullopt;
}

} // namespace hqkd
