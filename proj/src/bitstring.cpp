#include "ait/bitstring.hpp"

#include "ait/errors.hpp"

#include <algorithm>
#include <cassert>

namespace ait {

BitString BitString::parse(std::string_view text) {
    if (text == "eps" || text.empty())
        return BitString();
    for (char c : text)
        if (c != '0' && c != '1')
            throw Error(Error::Kind::MalformedCode,
                        "bit string may contain only 0 and 1: " + std::string(text));
    return BitString(std::string(text));
}

BitString BitString::zeros(std::size_t n) { return BitString(std::string(n, '0')); }
BitString BitString::ones(std::size_t n) { return BitString(std::string(n, '1')); }

BitString BitString::at_index(std::uint64_t i) {
    // Strings in canonical order biject with positive integers via
    // 1x  <->  the numeral one-followed-by-x; index 0 is the empty string.
    std::uint64_t v = i + 1;
    std::string out;
    while (v > 1) {
        out.push_back((v & 1) ? '1' : '0');
        v >>= 1;
    }
    std::reverse(out.begin(), out.end());
    return BitString(std::move(out));
}

BitString BitString::take(std::size_t n) const {
    return BitString(bits_.substr(0, std::min(n, bits_.size())));
}

BitString BitString::drop(std::size_t n) const {
    return BitString(n >= bits_.size() ? std::string() : bits_.substr(n));
}

BitString BitString::parent() const {
    if (bits_.empty())
        throw Error(Error::Kind::LengthMismatch, "the empty string has no parent");
    return BitString(bits_.substr(0, bits_.size() - 1));
}

bool BitString::is_prefix_of(const BitString& other) const {
    return bits_.size() <= other.bits_.size() &&
           other.bits_.compare(0, bits_.size(), bits_) == 0;
}

BitString BitString::operator+(const BitString& rhs) const {
    return BitString(bits_ + rhs.bits_);
}

BitString BitString::with(int b) const {
    BitString r(*this);
    r.push_back(b);
    return r;
}

std::uint64_t BitString::to_uint() const {
    assert(bits_.size() <= 63);
    std::uint64_t v = 0;
    for (char c : bits_)
        v = (v << 1) | (c == '1' ? 1u : 0u);
    return v;
}

bool BitString::canonical_less(const BitString& a, const BitString& b) {
    if (a.bits_.size() != b.bits_.size())
        return a.bits_.size() < b.bits_.size();
    return a.bits_ < b.bits_;
}

bool BitString::lex_less(const BitString& a, const BitString& b) {
    return a.bits_ < b.bits_;
}

BitString self_delimit(const BitString& x) {
    return BitString::ones(x.size()) + BitString::zeros(1) + x;
}

std::pair<BitString, BitString> parse_self_delimited(const BitString& stream) {
    const std::string& s = stream.str();
    std::size_t n = 0;
    while (n < s.size() && s[n] == '1') ++n;
    if (n == s.size())
        throw Error(Error::Kind::MalformedCode,
                    "self-delimiting code lacks its terminator: " + stream.display());
    std::size_t payload_end = n + 1 + n;
    if (payload_end > s.size())
        throw Error(Error::Kind::MalformedCode,
                    "self-delimiting code is truncated: " + stream.display());
    return {BitString::parse(s.substr(n + 1, n)), BitString::parse(s.substr(payload_end))};
}

BitString pair_encode(const BitString& x, const BitString& y) {
    return self_delimit(x) + self_delimit(y);
}

std::pair<BitString, BitString> pair_decode(const BitString& stream) {
    auto [x, rest] = parse_self_delimited(stream);
    auto [y, tail] = parse_self_delimited(rest);
    if (!tail.empty())
        throw Error(Error::Kind::MalformedCode,
                    "pair code has trailing bits: " + stream.display());
    return {x, y};
}

bool numeric_less(const BitString& a, const BitString& b) {
    if (a.size() != b.size())
        throw Error(Error::Kind::LengthMismatch,
                    "numeric order is defined on equal lengths only");
    // Equal lengths make bitwise lexicographic order the numeral order.
    return a.str() < b.str();
}

std::vector<BitString> all_strings(int n) {
    assert(n >= 0 && n <= 24);
    std::vector<BitString> out;
    out.reserve(std::size_t(1) << n);
    BitString cur;
    // Counting in binary over a fixed width, smallest value first.
    std::string buf(static_cast<std::size_t>(n), '0');
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << n); ++v) {
        for (int i = 0; i < n; ++i)
            buf[static_cast<std::size_t>(n - 1 - i)] = (v >> i) & 1 ? '1' : '0';
        out.push_back(BitString::parse(buf));
    }
    return out;
}

std::vector<BitString> all_strings_upto(int n) {
    std::vector<BitString> out;
    for (int len = 0; len <= n; ++len) {
        auto layer = all_strings(len);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

} // namespace ait
