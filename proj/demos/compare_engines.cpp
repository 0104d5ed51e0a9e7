// Walkthrough of the library: build a database with one planted match for an
// equality criterion, run the classical and quantum engines on the same
// partitioning, and set the observed cycle counts next to the closed-form
// cost model. Prints a small table; takes no arguments.

#include <cstdint>
#include <iostream>

#include "geb/costmodel.hpp"
#include "geb/criterion.hpp"
#include "geb/datastore.hpp"
#include "geb/engine.hpp"
#include "geb/splitmix64.hpp"

int main() {
  constexpr std::uint64_t kDatabaseN = 4096;
  constexpr std::uint32_t kWidth = 16;
  constexpr std::uint64_t kSeed = 7;

  // Match exactly the dataset 0xbeef: 31 gates, depth 5.
  const geb::Criterion criterion =
      geb::equality_criterion(geb::Dataset::from_hex("beef"));
  const std::uint64_t p = geb::gate_count(criterion);
  const std::uint64_t t = geb::depth(criterion);

  geb::Database db = geb::generate_database(kDatabaseN, kWidth, kSeed);
  db = geb::plant_matches(std::move(db), criterion, 1, geb::mix64(kSeed));

  // Equal hardware investment: as much criterion hardware as addressing
  // hardware, n = min(p, N).
  const std::uint64_t n = geb::equal_investment_n(p, kDatabaseN);
  const geb::CostReport model = geb::make_cost_report(kDatabaseN, n, p, t);

  geb::EngineConfig config;
  config.partition_size = n;

  config.mode = geb::EngineMode::Classical;
  const geb::EngineReport classical = geb::run_classical(db, criterion, config);

  config.mode = geb::EngineMode::Quantum;
  config.seed = kSeed;
  const geb::EngineReport quantum = geb::run_quantum(db, criterion, config);

  std::cout << "database: N=" << kDatabaseN << " d=" << kWidth
            << " criterion: p=" << p << " t=" << t << " partition: n=" << n
            << "\n\n";
  std::cout << "classical: found=" << classical.found
            << " index=" << (classical.found_index ? *classical.found_index : 0)
            << " cycles=" << classical.cycles << " (model n*t = "
            << model.time_classical << ")\n";
  std::cout << "quantum:   found=" << quantum.found
            << " index=" << (quantum.found_index ? *quantum.found_index : 0)
            << " cycles=" << quantum.cycles << " rounds=" << quantum.rounds_used
            << " (model sqrt(n)*t = " << model.time_quantum << ")\n\n";
  std::cout << "observed speedup: "
            << static_cast<double>(classical.cycles) /
                   static_cast<double>(quantum.cycles)
            << "  model speedup sqrt(n): " << model.speedup << "\n";
  return quantum.found && classical.found ? 0 : 1;
}
