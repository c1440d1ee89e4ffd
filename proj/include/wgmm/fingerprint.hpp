#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace wgmm {

// FNV-1a, enough to tie result files to their exact inputs.
struct Fingerprint {
    std::uint64_t state = 0xcbf29ce484222325ull;

    void add_byte(unsigned char b) {
        state ^= b;
        state *= 0x100000001b3ull;
    }
    void add(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) add_byte(static_cast<unsigned char>(v >> (8 * i)));
    }
    void add(double v) { add(std::bit_cast<std::uint64_t>(v)); }
    void add(const std::string& s) {
        for (char c : s) add_byte(static_cast<unsigned char>(c));
        add_byte(0xff); // delimiter
    }
    void add(const std::vector<double>& v) {
        for (double x : v) add(x);
        add_byte(0xfe);
    }
    std::uint64_t value() const { return state; }
    std::string hex() const;
};

} // namespace wgmm
