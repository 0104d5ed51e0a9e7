#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "geb/costmodel.hpp"
#include "geb/error.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("engine size counts processors plus the addressing tree") {
  CHECK(geb::engine_size(1024, 16, 16) == 2048.0);
  // single processor: p + N
  CHECK(geb::engine_size(1024, 1024, 100) == 1124.0);
  CHECK(geb::engine_size(1, 1, 0) == 1.0);
  // non-dividing n falls back to the real ratio
  CHECK_THAT(geb::engine_size(10, 3, 7), WithinRel(10.0 / 3.0 * 7.0 + 10.0, 1e-15));
}

TEST_CASE("equal investment makes the processor term exactly N") {
  for (std::uint64_t p : {1ull, 2ull, 31ull, 1000ull, 65536ull}) {
    for (std::uint64_t N : {65536ull, 1048576ull}) {
      const std::uint64_t n = geb::equal_investment_n(p, N);
      CAPTURE(p, N, n);
      if (p <= N) {
        // processor hardware equals addressing hardware, bit-exactly
        CHECK(geb::engine_size(N, n, p) == 2.0 * static_cast<double>(N));
      }
      CHECK(geb::engine_size(N, n, p) <= 2.0 * static_cast<double>(N) +
                                             static_cast<double>(p));
    }
  }
}

TEST_CASE("engine size validates the partition size") {
  CHECK_THROWS_AS(geb::engine_size(10, 0, 5), geb::InvalidParameter);
  CHECK_THROWS_AS(geb::engine_size(10, 11, 5), geb::InvalidParameter);
}

TEST_CASE("classical and quantum time laws") {
  CHECK(geb::classical_time(16, 5) == 80.0);
  CHECK(geb::classical_time(1, 9) == 9.0);
  CHECK(geb::classical_time(123, 0) == 0.0);

  CHECK(geb::quantum_time(16, 5) == 20.0);
  CHECK(geb::quantum_time(1, 9) == 9.0);
  CHECK(geb::quantum_time(1024, 1) == 32.0);
}

TEST_CASE("time ratio is sqrt(n) for every n and t") {
  for (std::uint64_t n : {1ull, 2ull, 31ull, 64ull, 1000ull, 65536ull}) {
    for (std::uint64_t t : {1ull, 5ull, 13ull}) {
      CHECK_THAT(geb::classical_time(n, t) / geb::quantum_time(n, t),
                 WithinAbs(std::sqrt(static_cast<double>(n)), 1e-12));
    }
  }
}

TEST_CASE("equal investment partition size is min(p, N) and needs p >= 1") {
  CHECK(geb::equal_investment_n(16, 1024) == 16);
  CHECK(geb::equal_investment_n(1ull << 30, 1024) == 1024);
  CHECK(geb::equal_investment_n(512, 512) == 512);
  CHECK_THROWS_AS(geb::equal_investment_n(0, 1024), geb::InvalidParameter);
  CHECK_THROWS_AS(geb::equal_investment_n(4, 0), geb::InvalidParameter);
}

TEST_CASE("speedup is min(sqrt(p), sqrt(N))") {
  CHECK(geb::speedup(16, 1024) == 4.0);
  CHECK(geb::speedup(1ull << 30, 1024) == 32.0);
  CHECK(geb::speedup(1, 99) == 1.0);
  for (std::uint64_t p : {1ull, 7ull, 100ull, 5000ull}) {
    for (std::uint64_t N : {1ull, 64ull, 4096ull}) {
      CHECK_THAT(geb::speedup(p, N),
                 WithinAbs(std::sqrt(static_cast<double>(geb::equal_investment_n(p, N))),
                           1e-12));
    }
  }
}

TEST_CASE("speedup is non-decreasing in p and saturates at sqrt(N)") {
  const std::uint64_t N = 4096;
  double last = 0.0;
  for (std::uint64_t p = 1; p <= 3 * N; p = p * 2 + 1) {
    const double s = geb::speedup(p, N);
    CHECK(s >= last);
    last = s;
    if (p >= N) CHECK(s == std::sqrt(static_cast<double>(N)));
  }
}

TEST_CASE("cost report assembles every model quantity") {
  const geb::CostReport r = geb::make_cost_report(65536, 64, 64, 5);
  CHECK(r.database_n == 65536);
  CHECK(r.partition_n == 64);
  CHECK(r.criterion_gates == 64);
  CHECK(r.criterion_depth == 5);
  CHECK(r.size_classical == 131072.0);
  CHECK(r.size_quantum == r.size_classical);
  CHECK(r.time_classical == 320.0);
  CHECK(r.time_quantum == 40.0);
  CHECK(r.speedup == 8.0);
  CHECK(r.equal_n == 64);

  CHECK_THROWS_AS(geb::make_cost_report(10, 0, 4, 5), geb::InvalidParameter);
  CHECK_THROWS_AS(geb::make_cost_report(10, 11, 4, 5), geb::InvalidParameter);
}

TEST_CASE("cost sweep is the ordered cross product") {
  const std::vector<std::uint64_t> ps = {4, 16};
  const std::vector<std::uint64_t> ns = {256, 64, 16};
  const auto reports = geb::cost_sweep(65536, 5, ps, ns);
  REQUIRE(reports.size() == 6);
  CHECK(reports[0].criterion_gates == 4);
  CHECK(reports[0].partition_n == 256);
  CHECK(reports[2].partition_n == 16);
  CHECK(reports[3].criterion_gates == 16);

  // fixed p, descending n: the speedup column strictly decreases
  for (std::size_t i = 1; i < 3; ++i) {
    CHECK(reports[i].speedup < reports[i - 1].speedup);
  }

  const auto single = geb::cost_sweep(100, 3, std::vector<std::uint64_t>{9},
                                      std::vector<std::uint64_t>{10});
  REQUIRE(single.size() == 1);
  CHECK(single[0].speedup == std::sqrt(10.0));

  CHECK_THROWS_AS(geb::cost_sweep(100, 3, {}, ns), geb::InvalidParameter);
  CHECK_THROWS_AS(geb::cost_sweep(100, 3, ps, {}), geb::InvalidParameter);
}

TEST_CASE("equal-investment speedups across a power ladder") {
  // N = 2^16, p in {4, 16, 64, 256, 1024} -> speedup {2, 4, 8, 16, 32}
  const std::uint64_t N = 65536;
  const std::uint64_t expected[] = {2, 4, 8, 16, 32};
  const std::uint64_t ps[] = {4, 16, 64, 256, 1024};
  for (int i = 0; i < 5; ++i) {
    const geb::CostReport r =
        geb::make_cost_report(N, geb::equal_investment_n(ps[i], N), ps[i], 5);
    CHECK(r.speedup == static_cast<double>(expected[i]));
    CHECK(r.partition_n == ps[i]);
  }
}
