#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "geb/criterion.hpp"
#include "geb/dataset.hpp"
#include "geb/error.hpp"
#include "geb/splitmix64.hpp"

namespace geb {

inline constexpr std::uint32_t kMaxDatasetWidth = 4096;
inline constexpr std::uint64_t kMaxDatabaseSize = 1ull << 24;
inline constexpr std::uint64_t kDefaultProbeBudget = 1'000'000;

// An unordered collection of N fixed-width datasets plus the seed it was
// generated from. Regenerating with the same (N, d, seed) gives a
// bit-identical database.
struct Database {
  std::uint32_t width_d = 0;
  std::uint64_t seed = 0;
  std::vector<Dataset> datasets;

  std::uint64_t size() const { return datasets.size(); }

  friend bool operator==(const Database&, const Database&) = default;
};

namespace detail {

// One dataset's bytes from the stream: whole little-endian u64s, one fresh
// word boundary per dataset, padding bits masked by the Dataset constructor.
inline Dataset random_dataset(SplitMix64& rng, std::uint32_t width) {
  const std::size_t stride = Dataset::byte_stride(width);
  std::vector<std::uint8_t> bytes;
  bytes.reserve((stride + 7) / 8 * 8);
  while (bytes.size() < stride) {
    std::uint64_t word = rng.next();
    for (int b = 0; b < 8; ++b) {
      bytes.push_back(static_cast<std::uint8_t>(word & 0xFF));
      word >>= 8;
    }
  }
  bytes.resize(stride);
  return Dataset(width, std::move(bytes));
}

}  // namespace detail

inline Database generate_database(std::uint64_t count_n, std::uint32_t width_d,
                                  std::uint64_t seed) {
  if (count_n < 1 || count_n > kMaxDatabaseSize) {
    throw InvalidParameter("dataset count must be in [1, 2^24]");
  }
  if (width_d < 1 || width_d > kMaxDatasetWidth) {
    throw InvalidParameter("dataset width must be in [1, 4096]");
  }
  Database db;
  db.width_d = width_d;
  db.seed = seed;
  db.datasets.reserve(count_n);
  SplitMix64 rng(seed);
  for (std::uint64_t i = 0; i < count_n; ++i) {
    db.datasets.push_back(detail::random_dataset(rng, width_d));
  }
  return db;
}

inline std::uint64_t count_matches(const Database& db, const Criterion& criterion) {
  if (db.width_d != criterion.input_width()) {
    throw InvalidParameter("criterion width " + std::to_string(criterion.input_width()) +
                           " does not match database width " + std::to_string(db.width_d));
  }
  std::uint64_t matches = 0;
  for (const Dataset& ds : db.datasets) {
    if (evaluate(criterion, ds)) ++matches;
  }
  return matches;
}

namespace detail {

inline Dataset probe_assignment(const Criterion& criterion, std::uint32_t width,
                                bool satisfying, SplitMix64& rng, std::uint64_t budget) {
  for (std::uint64_t trial = 0; trial < budget; ++trial) {
    Dataset candidate = random_dataset(rng, width);
    if (evaluate(criterion, candidate) == satisfying) return candidate;
  }
  throw PlantError(std::string("probing budget exhausted without finding a ") +
                   (satisfying ? "satisfying" : "non-satisfying") + " assignment");
}

// First k elements of a seeded partial shuffle, returned in ascending order.
inline std::vector<std::uint64_t> pick_positions(std::vector<std::uint64_t> pool,
                                                 std::uint64_t k, SplitMix64& rng) {
  for (std::uint64_t i = 0; i < k; ++i) {
    const std::uint64_t j = i + uniform_below(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace detail

// Rewrites pseudorandomly chosen datasets until exactly `target_count` of
// them satisfy the criterion; every other dataset is left untouched.
// Replacement values come from seeded random probing, so the criterion must
// be dense enough for both polarities to be discoverable within the budget.
inline Database plant_matches(Database db, const Criterion& criterion,
                              std::uint64_t target_count, std::uint64_t seed,
                              std::uint64_t probe_budget = kDefaultProbeBudget) {
  if (db.width_d != criterion.input_width()) {
    throw InvalidParameter("criterion width does not match database width");
  }
  if (target_count > db.size()) {
    throw InvalidParameter("target match count exceeds database size");
  }

  std::vector<std::uint64_t> matching;
  std::vector<std::uint64_t> rest;
  for (std::uint64_t i = 0; i < db.size(); ++i) {
    (evaluate(criterion, db.datasets[i]) ? matching : rest).push_back(i);
  }
  if (matching.size() == target_count) return db;

  SplitMix64 rng(seed);
  const bool planting = matching.size() < target_count;
  std::vector<std::uint64_t>& pool = planting ? rest : matching;
  const std::uint64_t delta = planting ? target_count - matching.size()
                                       : matching.size() - target_count;
  for (std::uint64_t pos : detail::pick_positions(std::move(pool), delta, rng)) {
    db.datasets[pos] =
        detail::probe_assignment(criterion, db.width_d, planting, rng, probe_budget);
  }
  return db;
}

// Binary database format, little-endian throughout:
//   offset  0  magic "GDB1"
//   offset  4  u64 N
//   offset 12  u32 d
//   offset 16  u64 seed
//   offset 24  N rows of ceil(d/8) bytes, bit 0 of byte 0 = dataset bit 0,
//              padding bits zero
namespace detail {

inline void put_u32(std::ostream& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline void put_u64(std::ostream& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline bool get_exact(std::istream& in, void* buf, std::size_t len) {
  in.read(static_cast<char*>(buf), static_cast<std::streamsize>(len));
  return static_cast<std::size_t>(in.gcount()) == len;
}

inline std::uint64_t load_le(const std::uint8_t* p, std::size_t len) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < len; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

}  // namespace detail

inline void save_database(const Database& db, std::ostream& out) {
  out.write("GDB1", 4);
  detail::put_u64(out, db.size());
  detail::put_u32(out, db.width_d);
  detail::put_u64(out, db.seed);
  for (const Dataset& ds : db.datasets) {
    out.write(reinterpret_cast<const char*>(ds.bytes().data()),
              static_cast<std::streamsize>(ds.byte_size()));
  }
  if (!out) throw IoError("failed to write database stream");
}

inline void save_database(const Database& db, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  save_database(db, out);
  out.flush();
  if (!out) throw IoError("failed to write '" + path.string() + "'");
}

inline Database load_database(std::istream& in) {
  std::uint8_t header[24];
  if (!detail::get_exact(in, header, 4)) {
    throw FormatError("truncated file at offset 0: expected 4-byte magic");
  }
  if (std::string_view(reinterpret_cast<const char*>(header), 4) != "GDB1") {
    throw FormatError("bad magic at offset 0: expected \"GDB1\"");
  }
  if (!detail::get_exact(in, header, 20)) {
    throw FormatError("truncated header at offset 4: expected N, d, seed fields");
  }
  const std::uint64_t count = detail::load_le(header, 8);
  const std::uint32_t width = static_cast<std::uint32_t>(detail::load_le(header + 8, 4));
  const std::uint64_t seed = detail::load_le(header + 12, 8);
  if (count < 1 || count > kMaxDatabaseSize) {
    throw FormatError("invalid dataset count at offset 4");
  }
  if (width < 1 || width > kMaxDatasetWidth) {
    throw FormatError("invalid dataset width at offset 12");
  }

  Database db;
  db.width_d = width;
  db.seed = seed;
  db.datasets.reserve(count);
  const std::size_t stride = Dataset::byte_stride(width);
  std::vector<std::uint8_t> row(stride);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!detail::get_exact(in, row.data(), stride)) {
      throw FormatError("truncated payload at offset " + std::to_string(24 + i * stride) +
                        ": declared N exceeds stored data");
    }
    db.datasets.emplace_back(width, row);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("trailing data at offset " + std::to_string(24 + count * stride));
  }
  return db;
}

inline Database load_database(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return load_database(in);
}

}  // namespace geb
