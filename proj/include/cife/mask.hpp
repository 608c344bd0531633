#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cife {

// One individual of the evolutionary search: a bit per pool member, 1 = the
// classifier is active in the ensemble.
struct EnsembleMask {
    std::vector<std::uint8_t> bits;

    EnsembleMask() = default;
    explicit EnsembleMask(std::size_t n) : bits(n, 0) {}

    std::size_t size() const { return bits.size(); }
    bool test(std::size_t i) const { return bits[i] != 0; }
    void set(std::size_t i, bool value = true) { bits[i] = value ? 1 : 0; }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto b : bits) n += b;
        return n;
    }

    bool any() const {
        for (auto b : bits)
            if (b) return true;
        return false;
    }

    std::vector<std::size_t> active() const {
        std::vector<std::size_t> idx;
        idx.reserve(count());
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) idx.push_back(i);
        return idx;
    }

    bool operator==(const EnsembleMask&) const = default;

    // Hex encoding: bit i lives in byte i/8 at position i%8, bytes printed
    // low-to-high, two hex digits each.
    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        const std::size_t n_bytes = (bits.size() + 7) / 8;
        std::string out(n_bytes * 2, '0');
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (!bits[i]) continue;
            const std::size_t byte = i / 8;
            // re-read the digit pair, set the bit, write back
            auto hex_val = [](char c) -> int {
                return c <= '9' ? c - '0' : c - 'a' + 10;
            };
            int value = hex_val(out[byte * 2]) * 16 + hex_val(out[byte * 2 + 1]);
            value |= 1 << (i % 8);
            out[byte * 2] = digits[value / 16];
            out[byte * 2 + 1] = digits[value % 16];
        }
        return out;
    }

    static EnsembleMask from_hex(std::string_view hex, std::size_t n) {
        EnsembleMask m(n);
        auto hex_val = [](char c) -> int {
            if (c >= '0' && c <= '9') return c - '0';
            if (c >= 'a' && c <= 'f') return c - 'a' + 10;
            if (c >= 'A' && c <= 'F') return c - 'A' + 10;
            throw std::invalid_argument("bad hex digit in mask");
        };
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t byte = i / 8;
            if (byte * 2 + 1 >= hex.size()) throw std::invalid_argument("mask hex too short");
            const int value = hex_val(hex[byte * 2]) * 16 + hex_val(hex[byte * 2 + 1]);
            m.bits[i] = (value >> (i % 8)) & 1;
        }
        return m;
    }
};

inline bool lex_less(const EnsembleMask& a, const EnsembleMask& b) {
    return a.bits < b.bits;
}

// All-zero masks are invalid individuals; activate the designated classifier
// (index 0 = best validation-1 accuracy, pools are sorted).
inline void repair_empty(EnsembleMask& mask, std::size_t fallback_index = 0) {
    if (!mask.any() && !mask.bits.empty()) mask.set(fallback_index);
}

}  // namespace cife
