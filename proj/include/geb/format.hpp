#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "geb/error.hpp"

namespace geb {

// Locale-independent value formatting for the CSV outputs and the console
// summaries. Doubles use shortest round-trip formatting, except that values
// that are exactly integral print without a fractional part so counts stay
// readable (a 64-entry partition's sqrt prints as 8, not 8e+00).

inline std::string format_u64(std::uint64_t value) { return std::to_string(value); }

inline std::string format_double(double value) {
  if (std::isfinite(value) && value == std::floor(value) &&
      std::abs(value) < 1e15) {
    return std::to_string(static_cast<std::int64_t>(value));
  }
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error("failed to format floating-point value");
  return std::string(buf, ptr);
}

// Minimal CSV emitter: comma separator, LF line endings, header row first.
// Fields never need quoting here (numbers and fixed identifiers only), so a
// field containing a comma, quote, or newline is rejected as a logic error.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> columns)
      : out_(out), columns_(std::move(columns)) {
    write_row_(columns_);
  }

  void row(const std::vector<std::string>& fields) {
    if (fields.size() != columns_.size()) {
      throw Error("csv row has " + std::to_string(fields.size()) +
                  " fields, expected " + std::to_string(columns_.size()));
    }
    write_row_(fields);
  }

 private:
  void write_row_(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (fields[i].find_first_of(",\"\n") != std::string::npos) {
        throw Error("csv field needs quoting: " + fields[i]);
      }
      if (i != 0) out_ << ',';
      out_ << fields[i];
    }
    out_ << '\n';
  }

  std::ostream& out_;
  std::vector<std::string> columns_;
};

// Parses a comma-separated list of decimal u64 values ("64,256,1024").
// Used for the CLI's --n-list and --p-list flags.
inline std::vector<std::uint64_t> parse_u64_list(std::string_view text) {
  std::vector<std::uint64_t> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty()) {
      throw UsageError("invalid integer list entry: '" + std::string(item) + "'");
    }
    values.push_back(value);
    pos = comma + 1;
  }
  return values;
}

}  // namespace geb
