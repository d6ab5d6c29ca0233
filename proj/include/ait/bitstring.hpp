#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ait {

// A finite binary string. The empty string doubles as the undefined
// value, written "eps" in any textual surface. Strings are immutable
// value types except for push_back/pop_back, which exist for cheap
// depth-first construction.
class BitString {
public:
    BitString() = default;

    // Accepts only characters '0' and '1'; "eps" and "" both parse to
    // the empty string. Throws Error(MalformedCode) on anything else.
    static BitString parse(std::string_view text);

    static BitString zeros(std::size_t n);
    static BitString ones(std::size_t n);

    // The i-th string in canonical order: eps, 0, 1, 00, 01, 10, 11, 000, ...
    static BitString at_index(std::uint64_t i);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    int bit(std::size_t i) const { return bits_[i] == '1' ? 1 : 0; }

    void push_back(int b) { bits_.push_back(b ? '1' : '0'); }
    void pop_back() { bits_.pop_back(); }

    // x restricted to its first n bits; n beyond the end returns x whole.
    BitString take(std::size_t n) const;
    // x with its first n bits removed.
    BitString drop(std::size_t n) const;
    // x without its final bit. Throws Error(LengthMismatch) on the empty string.
    BitString parent() const;

    bool is_prefix_of(const BitString& other) const;

    BitString operator+(const BitString& rhs) const;
    BitString with(int b) const;  // copy extended by one bit

    bool operator==(const BitString& rhs) const = default;

    // The value of the bits read most significant first. Requires size() <= 63.
    std::uint64_t to_uint() const;

    // Raw character form, "" for the empty string.
    const std::string& str() const { return bits_; }
    // Display form, "eps" for the empty string.
    std::string display() const { return bits_.empty() ? "eps" : bits_; }

    // Shortlex: length first, then lexicographic. This is the canonical
    // order every table, report and cache uses.
    static bool canonical_less(const BitString& a, const BitString& b);
    // Plain lexicographic order with prefixes first; the order in which
    // extensions of a string form one contiguous block.
    static bool lex_less(const BitString& a, const BitString& b);

private:
    explicit BitString(std::string bits) : bits_(std::move(bits)) {}
    std::string bits_;
};

struct CanonicalLess {
    bool operator()(const BitString& a, const BitString& b) const {
        return BitString::canonical_less(a, b);
    }
};

struct PairCanonicalLess {
    bool operator()(const std::pair<BitString, BitString>& a,
                    const std::pair<BitString, BitString>& b) const {
        if (!(a.first == b.first))
            return BitString::canonical_less(a.first, b.first);
        return BitString::canonical_less(a.second, b.second);
    }
};

// 1^len(x) 0 x. The empty string encodes as "0".
BitString self_delimit(const BitString& x);

// Inverse of self_delimit on a stream: returns the decoded string and the
// unread remainder. Throws Error(MalformedCode) if the stream is exhausted
// before the terminator or the payload completes.
std::pair<BitString, BitString> parse_self_delimited(const BitString& stream);

// Concatenation of the two self-delimiting codes.
BitString pair_encode(const BitString& x, const BitString& y);

// Inverse of pair_encode; the stream must be consumed exactly.
std::pair<BitString, BitString> pair_decode(const BitString& stream);

// Numeric order on equal-length strings: the value comparison of the bits
// read as a binary numeral. Throws Error(LengthMismatch) on unequal lengths.
bool numeric_less(const BitString& a, const BitString& b);

// All strings of length exactly n, in canonical order.
std::vector<BitString> all_strings(int n);
// All strings of length 0..n inclusive (the empty string first).
std::vector<BitString> all_strings_upto(int n);

} // namespace ait
