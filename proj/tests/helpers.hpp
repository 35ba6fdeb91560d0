#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace testutil {

inline std::string data_path(const std::string& name) {
#ifdef HQKD_SOURCE_DIR
    return std::string(HQKD_SOURCE_DIR) + "/tests/data/" + name;
#else
    return "tests/data/" + name;
#endif
}

inline std::vector<nlohmann::json> load_jsonl(const std::string& name) {
    std::ifstream in(data_path(name));
    if (!in) throw std::runtime_error("cannot open " + data_path(name));
    std::vector<nlohmann::json> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(nlohmann::json::parse(line));
    }
    return rows;
}

inline std::vector<std::uint8_t> unhex(const std::string& s) {
    if (s.size() % 2) throw std::invalid_argument("unhex: odd length");
    auto nib = [](char c) -> std::uint8_t {
        if (c >= '0' && c <= '9') return std::uint8_t(c - '0');
        if (c >= 'a' && c <= 'f') return std::uint8_t(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return std::uint8_t(c - 'A' + 10);
        throw std::invalid_argument("unhex: bad digit");
    };
    std::vector<std::uint8_t> out(s.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::uint8_t(nib(s[2 * i]) << 4 | nib(s[2 * i + 1]));
    return out;
}

template <std::size_t N>
std::array<std::uint8_t, N> unhex_arr(const std::string& s) {
    auto v = unhex(s);
    if (v.size() != N) throw std::invalid_argument("unhex_arr: size mismatch");
    std::array<std::uint8_t, N> a{};
    for (std::size_t i = 0; i < N; ++i) a[i] = v[i];
    return a;
}

inline std::string hex(const std::vector<std::uint8_t>& v) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(v.size() * 2);
    for (auto b : v) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 15]);
    }
    return s;
}

} // namespace testutil
