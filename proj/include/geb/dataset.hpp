#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "geb/error.hpp"

namespace geb {

// One fixed-width bit string. Bits pack LSB-first: bit 0 of byte 0 is bit 0
// of the dataset; bits past `width` in the last byte stay zero.
class Dataset {
 public:
  Dataset() = default;

  explicit Dataset(std::uint32_t width)
      : width_(width), bytes_((width + 7) / 8, 0) {}

  // Takes ownership of a packed byte buffer; padding bits are masked off.
  Dataset(std::uint32_t width, std::vector<std::uint8_t> bytes)
      : width_(width), bytes_(std::move(bytes)) {
    if (bytes_.size() != byte_stride(width_)) {
      throw InvalidParameter("dataset byte buffer does not match width");
    }
    mask_padding();
  }

  static std::size_t byte_stride(std::uint32_t width) {
    return (static_cast<std::size_t>(width) + 7) / 8;
  }

  std::uint32_t width() const { return width_; }
  std::size_t byte_size() const { return bytes_.size(); }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

  bool bit(std::uint32_t i) const {
    return (bytes_[i >> 3] >> (i & 7)) & 1u;
  }

  void set_bit(std::uint32_t i, bool value) {
    const std::uint8_t mask = static_cast<std::uint8_t>(1u << (i & 7));
    if (value) {
      bytes_[i >> 3] |= mask;
    } else {
      bytes_[i >> 3] &= static_cast<std::uint8_t>(~mask);
    }
  }

  std::uint32_t popcount() const {
    std::uint32_t total = 0;
    for (std::uint8_t b : bytes_) total += std::popcount(b);
    return total;
  }

  // Pattern from a hex string: "beef" means the 16-bit value 0xbeef, dataset
  // bit j = bit j of that value. Width is 4 bits per hex digit.
  static Dataset from_hex(std::string_view hex) {
    if (hex.empty()) throw InvalidParameter("empty hex pattern");
    Dataset out(static_cast<std::uint32_t>(4 * hex.size()));
    for (std::size_t pos = 0; pos < hex.size(); ++pos) {
      const char c = hex[hex.size() - 1 - pos];
      std::uint32_t nibble;
      if (c >= '0' && c <= '9') {
        nibble = static_cast<std::uint32_t>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        nibble = static_cast<std::uint32_t>(c - 'a' + 10);
      } else if (c >= 'A' && c <= 'F') {
        nibble = static_cast<std::uint32_t>(c - 'A' + 10);
      } else {
        throw InvalidParameter(std::string("invalid hex digit '") + c + "'");
      }
      for (std::uint32_t b = 0; b < 4; ++b) {
        out.set_bit(static_cast<std::uint32_t>(4 * pos + b), (nibble >> b) & 1u);
      }
    }
    return out;
  }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  void mask_padding() {
    const std::uint32_t tail = width_ & 7u;
    if (tail != 0 && !bytes_.empty()) {
      bytes_.back() &= static_cast<std::uint8_t>((1u << tail) - 1u);
    }
  }

  std::uint32_t width_ = 0;
  std::vector<std::uint8_t> bytes_;
};

}  // namespace geb
