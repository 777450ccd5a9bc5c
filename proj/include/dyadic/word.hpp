#pragma once
// Finite binary words with 1-based positions, plus their two on-disk forms:
// an ASCII '0'/'1' string, and bit-packed binary with an 8-byte little-endian
// length header (position k stored in byte (k-1)/8, bit (k-1)%8).

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chains.hpp"

namespace dyadic {

class Word {
public:
    Word() = default;
    explicit Word(std::size_t length, std::uint8_t fill = 0) : bits_(length, fill ? 1 : 0) {}
    explicit Word(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
        for (auto b : bits_)
            if (b > 1) throw std::invalid_argument("Word: symbols must be 0 or 1");
    }

    static Word from_string(std::string_view s) {
        std::vector<std::uint8_t> bits;
        bits.reserve(s.size());
        for (char c : s) {
            if (c == '0' || c == '1') bits.push_back(static_cast<std::uint8_t>(c - '0'));
            else throw std::invalid_argument("Word: expected only '0' and '1'");
        }
        return Word(std::move(bits));
    }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    /// Symbol at 1-based position k.
    std::uint8_t operator[](Position k) const { return bits_[k - 1]; }
    std::uint8_t at(Position k) const {
        if (k == 0 || k > bits_.size()) throw std::out_of_range("Word: position out of range");
        return bits_[k - 1];
    }
    void set(Position k, std::uint8_t v) { bits_[k - 1] = v ? 1 : 0; }
    void push_back(std::uint8_t v) { bits_.push_back(v ? 1 : 0); }

    Word prefix(std::size_t n) const {
        if (n > bits_.size()) throw std::out_of_range("Word: prefix longer than word");
        return Word(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(n)));
    }

    std::string to_string() const {
        std::string s(bits_.size(), '0');
        for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
        return s;
    }

    const std::vector<std::uint8_t>& bits() const { return bits_; }

    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// Number of ones in positions 1..n.
inline std::uint64_t count_ones(const Word& w) {
    std::uint64_t c = 0;
    for (auto b : w.bits()) c += b;
    return c;
}

/// Number of in-range pairs (k, 2k), 2k <= |w|, with w_k = w_2k = 1.
inline std::uint64_t count_pairs11(const Word& w) {
    std::uint64_t c = 0;
    const Position half = w.size() / 2;
    for (Position k = 1; k <= half; ++k) c += w[k] & w[2 * k];
    return c;
}

inline void write_binary(std::ostream& os, const Word& w) {
    const std::uint64_t n = w.size();
    unsigned char header[8];
    for (int i = 0; i < 8; ++i) header[i] = static_cast<unsigned char>((n >> (8 * i)) & 0xffu);
    os.write(reinterpret_cast<const char*>(header), 8);
    std::vector<unsigned char> packed((n + 7) / 8, 0);
    for (std::uint64_t i = 0; i < n; ++i)
        if (w.bits()[i]) packed[i / 8] |= static_cast<unsigned char>(1u << (i % 8));
    os.write(reinterpret_cast<const char*>(packed.data()), static_cast<std::streamsize>(packed.size()));
}

inline Word read_binary(std::istream& is) {
    unsigned char header[8];
    if (!is.read(reinterpret_cast<char*>(header), 8)) throw std::runtime_error("read_binary: truncated header");
    std::uint64_t n = 0;
    for (int i = 0; i < 8; ++i) n |= std::uint64_t{header[i]} << (8 * i);
    std::vector<unsigned char> packed((n + 7) / 8);
    if (!is.read(reinterpret_cast<char*>(packed.data()), static_cast<std::streamsize>(packed.size())))
        throw std::runtime_error("read_binary: truncated payload");
    std::vector<std::uint8_t> bits(n);
    for (std::uint64_t i = 0; i < n; ++i) bits[i] = (packed[i / 8] >> (i % 8)) & 1u;
    return Word(std::move(bits));
}

/// ASCII form; whitespace is ignored, and lines starting with '#' are skipped.
inline Word read_ascii(std::istream& is) {
    std::string line, all;
    while (std::getline(is, line)) {
        if (!line.empty() && line[0] == '#') continue;
        for (char c : line)
            if (c != ' ' && c != '\t' && c != '\r') all.push_back(c);
    }
    return Word::from_string(all);
}

} // namespace dyadic
