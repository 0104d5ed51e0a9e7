#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "geb/criterion.hpp"
#include "geb/datastore.hpp"
#include "geb/error.hpp"
#include "geb/splitmix64.hpp"
#include "test_support.hpp"

using geb::Criterion;
using geb::Database;
using geb::Dataset;
using geb::Gate;
using geb::GateKind;
using geb::Ref;
using testsupport::dataset_from_u64;

namespace {

Criterion always_true(std::uint32_t width) {
  return Criterion(width, {Gate::binary(GateKind::Xnor, Ref::input(0), Ref::input(0))},
                   Ref::gate(0));
}

Criterion always_false(std::uint32_t width) {
  return Criterion(width, {Gate::binary(GateKind::Xor, Ref::input(0), Ref::input(0))},
                   Ref::gate(0));
}

}  // namespace

TEST_CASE("generate_database: minimal size and basic shape") {
  const Database db = geb::generate_database(1, 1, 99);
  CHECK(db.size() == 1);
  CHECK(db.width_d == 1);
  CHECK(db.seed == 99);
  CHECK(db.datasets[0].width() == 1);
}

TEST_CASE("generate_database is a pure function of (N, d, seed)") {
  const Database a = geb::generate_database(1024, 16, 7);
  const Database b = geb::generate_database(1024, 16, 7);
  CHECK(a == b);
  CHECK(a != geb::generate_database(1024, 16, 8));
  CHECK(a != geb::generate_database(1023, 16, 7));
}

TEST_CASE("generate_database draws one fresh word sequence per dataset") {
  // Freezes the layout: dataset i consumes ceil(stride/8) new u64s. For d=16
  // that is exactly the low 16 bits of one generator output per dataset.
  const Database db = geb::generate_database(3, 16, 5);
  geb::SplitMix64 rng(5);
  for (const Dataset& ds : db.datasets) {
    const std::uint64_t word = rng.next();
    CHECK(ds.bytes()[0] == static_cast<std::uint8_t>(word & 0xFF));
    CHECK(ds.bytes()[1] == static_cast<std::uint8_t>((word >> 8) & 0xFF));
  }
  // padding bits above d are zero
  const Database odd = geb::generate_database(4, 13, 5);
  for (const Dataset& ds : odd.datasets) {
    CHECK((ds.bytes()[1] & 0xE0) == 0);
  }
}

TEST_CASE("generated bits are balanced: popcount within 4 sigma") {
  // 64 datasets of 8 bits = 512 coin flips; sigma = sqrt(512 * 0.25).
  const Database db = geb::generate_database(64, 8, 42);
  std::uint32_t pop = 0;
  for (const Dataset& ds : db.datasets) pop += ds.popcount();
  CHECK(pop >= 211);  // 256 - 4*11.31
  CHECK(pop <= 301);  // 256 + 4*11.31
}

TEST_CASE("generate_database validates its ranges") {
  CHECK_THROWS_AS(geb::generate_database(0, 8, 1), geb::InvalidParameter);
  CHECK_THROWS_AS(geb::generate_database(8, 0, 1), geb::InvalidParameter);
  CHECK_THROWS_AS(geb::generate_database(8, 4097, 1), geb::InvalidParameter);
  CHECK_NOTHROW(geb::generate_database(8, 4096, 1));
}

TEST_CASE("count_matches counts by exhaustive evaluation") {
  const Database db = geb::generate_database(100, 6, 3);
  CHECK(geb::count_matches(db, always_true(6)) == 100);
  CHECK(geb::count_matches(db, always_false(6)) == 0);

  // cross-check against the naive oracle on a nontrivial criterion
  const Criterion eq = geb::equality_criterion(dataset_from_u64(6, 0x2a));
  std::uint64_t expect = 0;
  for (const Dataset& ds : db.datasets) expect += testsupport::naive_eval(eq, ds);
  CHECK(geb::count_matches(db, eq) == expect);

  CHECK_THROWS_AS(geb::count_matches(db, always_true(7)), geb::InvalidParameter);
}

TEST_CASE("plant_matches leaves a database alone when the count already fits") {
  const Database db = geb::generate_database(32, 8, 11);
  CHECK(geb::plant_matches(db, always_false(8), 0, 5) == db);
  CHECK(geb::plant_matches(db, always_true(8), 32, 5) == db);
}

TEST_CASE("plant_matches hits the target count exactly") {
  const Criterion eq = geb::equality_criterion(dataset_from_u64(8, 0x5d));
  const Database db = geb::generate_database(256, 8, 1);

  const Database planted = geb::plant_matches(db, eq, 3, 77);
  CHECK(geb::count_matches(planted, eq) == 3);

  // only as many rows as needed were touched, everything else is identical
  std::uint64_t changed = 0;
  for (std::uint64_t i = 0; i < db.size(); ++i) {
    if (db.datasets[i] != planted.datasets[i]) ++changed;
  }
  const std::uint64_t before = geb::count_matches(db, eq);
  CHECK(changed <= 3 + before);
  CHECK(planted.size() == db.size());
  CHECK(planted.width_d == db.width_d);
}

TEST_CASE("plant_matches can also remove surplus matches") {
  // width-1 identity criterion: about half of all datasets match
  const Criterion first_bit = Criterion(1, {}, Ref::input(0));
  const Database db = geb::generate_database(64, 1, 9);
  REQUIRE(geb::count_matches(db, first_bit) > 2);
  const Database reduced = geb::plant_matches(db, first_bit, 2, 13);
  CHECK(geb::count_matches(reduced, first_bit) == 2);
  const Database none = geb::plant_matches(db, first_bit, 0, 13);
  CHECK(geb::count_matches(none, first_bit) == 0);
}

TEST_CASE("plant_matches is deterministic in its seed") {
  const Criterion eq = geb::equality_criterion(dataset_from_u64(10, 0x111));
  const Database db = geb::generate_database(128, 10, 4);
  CHECK(geb::plant_matches(db, eq, 5, 21) == geb::plant_matches(db, eq, 5, 21));
  CHECK(geb::plant_matches(db, eq, 5, 21) != geb::plant_matches(db, eq, 5, 22));
}

TEST_CASE("plant_matches validates and reports probing exhaustion") {
  const Database db = geb::generate_database(16, 64, 2);
  const Criterion eq = geb::equality_criterion(dataset_from_u64(64, 0x1234));
  // a 1-in-2^64 criterion cannot be satisfied by random probing
  CHECK_THROWS_AS(geb::plant_matches(db, eq, 1, 3, /*probe_budget=*/500),
                  geb::PlantError);
  // ...but removing matches only needs non-satisfying rows, which are easy
  CHECK(geb::count_matches(geb::plant_matches(db, eq, 0, 3, 500), eq) == 0);

  CHECK_THROWS_AS(geb::plant_matches(db, eq, 17, 3), geb::InvalidParameter);
  const Criterion wrong_width = geb::equality_criterion(dataset_from_u64(8, 1));
  CHECK_THROWS_AS(geb::plant_matches(db, wrong_width, 1, 3), geb::InvalidParameter);
}

TEST_CASE("save then load is the identity") {
  const Database db = geb::generate_database(100, 13, 1234);

  SECTION("through a stream") {
    std::stringstream buffer;
    geb::save_database(db, buffer);
    CHECK(geb::load_database(buffer) == db);
  }
  SECTION("through a file") {
    testsupport::TempDir dir;
    const auto path = dir.file("roundtrip.gdb");
    geb::save_database(db, path);
    CHECK(geb::load_database(path) == db);
  }
}

TEST_CASE("database file layout is frozen") {
  Database db;
  db.width_d = 12;
  db.seed = 0x0102030405060708ull;
  db.datasets = {Dataset(12, std::vector<std::uint8_t>{0xEF, 0x0B})};
  std::stringstream buffer;
  geb::save_database(db, buffer);
  const std::string bytes = buffer.str();
  const std::string expect =
      std::string("GDB1") +
      std::string("\x01\x00\x00\x00\x00\x00\x00\x00", 8) +  // N = 1
      std::string("\x0c\x00\x00\x00", 4) +                  // d = 12
      std::string("\x08\x07\x06\x05\x04\x03\x02\x01", 8) +  // seed, little-endian
      std::string("\xef\x0b", 2);                           // one row, 2 bytes
  CHECK(bytes == expect);
}

TEST_CASE("load_database rejects malformed files") {
  using Catch::Matchers::ContainsSubstring;
  const Database db = geb::generate_database(4, 16, 5);
  std::stringstream good;
  geb::save_database(db, good);
  const std::string bytes = good.str();

  const auto load_fails = [](std::string data, const std::string& needle) {
    std::stringstream in(std::move(data));
    CHECK_THROWS_MATCHES(geb::load_database(in), geb::FormatError,
                         Catch::Matchers::MessageMatches(ContainsSubstring(needle)));
  };

  std::string wrong_magic = bytes;
  wrong_magic[0] = 'X';
  load_fails(wrong_magic, "offset 0");
  load_fails("", "offset 0");
  load_fails("GD", "offset 0");
  load_fails("GDB1\x01\x00", "offset 4");

  // declared N exceeds the stored payload
  std::string truncated = bytes.substr(0, bytes.size() - 3);
  load_fails(truncated, "declared N exceeds stored data");

  // trailing garbage after the last row
  load_fails(bytes + "x", "trailing data");

  // zero width / zero count are invalid
  std::string zero_n = bytes;
  for (int i = 4; i < 12; ++i) zero_n[i] = '\0';
  load_fails(zero_n, "offset 4");
  std::string zero_d = bytes;
  zero_d[12] = '\0';
  zero_d[13] = '\0';
  load_fails(zero_d, "offset 12");
}

TEST_CASE("file IO errors are reported as such") {
  CHECK_THROWS_AS(geb::load_database("/nonexistent/geb/db.gdb"), geb::IoError);
  const Database db = geb::generate_database(2, 8, 1);
  CHECK_THROWS_AS(geb::save_database(db, "/nonexistent/geb/db.gdb"), geb::IoError);
  // write failures surfacing only at flush time (buffered small writes)
  if (std::filesystem::exists("/dev/full")) {
    CHECK_THROWS_AS(geb::save_database(db, "/dev/full"), geb::IoError);
  }
}
