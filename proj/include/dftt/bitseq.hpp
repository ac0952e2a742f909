#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dftt {

// Error for malformed external input (ASCII text, packed bytes). Carries the
// offending position so CLI callers can point at it.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Immutable sequence of bits, stored one bit per byte (values 0 or 1).
class BitSequence {
 public:
  explicit BitSequence(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) {
      throw std::invalid_argument("BitSequence: empty bit vector");
    }
    for (std::size_t k = 0; k < bits_.size(); ++k) {
      if (bits_[k] > 1) {
        throw std::invalid_argument("BitSequence: bit value not 0/1 at index " +
                                    std::to_string(k));
      }
    }
  }

  // First n bits of `raw`, most significant bit of raw[0] first.
  static BitSequence from_bytes_msb_first(std::span<const std::uint8_t> raw,
                                          std::size_t n) {
    if (n == 0) {
      throw std::invalid_argument("from_bytes_msb_first: n must be positive");
    }
    if (n > raw.size() * 8) {
      throw std::invalid_argument(
          "from_bytes_msb_first: need " + std::to_string(n) + " bits, have " +
          std::to_string(raw.size() * 8));
    }
    std::vector<std::uint8_t> bits(n);
    for (std::size_t k = 0; k < n; ++k) {
      bits[k] = (raw[k / 8] >> (7 - k % 8)) & 1u;
    }
    return BitSequence(std::move(bits));
  }

  // Text of '0'/'1' characters; ASCII whitespace is skipped, anything else is
  // a ParseError at its byte offset.
  static BitSequence from_ascii(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (std::size_t k = 0; k < text.size(); ++k) {
      const char c = text[k];
      if (c == '0' || c == '1') {
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r' ||
                 c == '\f' || c == '\v') {
        continue;
      } else {
        throw ParseError("from_ascii: invalid character '" + std::string(1, c) +
                             "' at offset " + std::to_string(k),
                         k);
      }
    }
    if (bits.empty()) {
      throw ParseError("from_ascii: no bits in input", 0);
    }
    return BitSequence(std::move(bits));
  }

  std::size_t size() const noexcept { return bits_.size(); }

  int bit(std::size_t k) const {
    if (k >= bits_.size()) {
      throw std::out_of_range("BitSequence::bit: index " + std::to_string(k) +
                              " >= " + std::to_string(bits_.size()));
    }
    return bits_[k];
  }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  // x_k = 2*bit_k - 1, the ±1 encoding fed to the transform.
  std::vector<std::int8_t> signed_values() const {
    std::vector<std::int8_t> out(bits_.size());
    for (std::size_t k = 0; k < bits_.size(); ++k) {
      out[k] = static_cast<std::int8_t>(2 * bits_[k] - 1);
    }
    return out;
  }

  std::string to_ascii() const {
    std::string out(bits_.size(), '0');
    for (std::size_t k = 0; k < bits_.size(); ++k) {
      out[k] = static_cast<char>('0' + bits_[k]);
    }
    return out;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace dftt
