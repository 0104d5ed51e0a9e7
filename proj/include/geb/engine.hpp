#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "geb/criterion.hpp"
#include "geb/datastore.hpp"
#include "geb/error.hpp"
#include "geb/grover.hpp"
#include "geb/parallel.hpp"
#include "geb/splitmix64.hpp"

namespace geb {

// End-to-end simulation of the search-engine architecture: one criterion
// processor per partition of n datasets under a binary addressing tree, in
// classical (parallel linear scan) or quantum (per-partition Grover) mode.
//
// Cycle accounting follows the cost model's conventions. Classical mode
// charges the worst case n*t even when a match turns up early; the actual
// first-hit cycle is kept in the per-partition data. Quantum mode charges
// (k+1)*t per round: k oracle queries plus one verification evaluation, with
// diffusion free. Processors run rounds in lockstep and the search stops at
// the end of the first round in which any processor verifies a hit.
// Propagating the winner up the tree costs ceil(log2(N/n)) switch cycles,
// reported separately and never added to the headline count.

enum class EngineMode { Classical, Quantum };

struct EngineConfig {
  std::uint64_t partition_size = 1;                     // n, 1 <= n <= N
  EngineMode mode = EngineMode::Classical;
  IterationPolicy policy = IterationPolicy::Optimal;    // quantum only
  std::uint32_t max_rounds = 20;                        // quantum retry cap
  std::uint64_t seed = 0;
};

struct PartitionOutcome {
  std::uint64_t index = 0;
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  std::uint64_t matches = 0;           // n1 of this partition
  bool found = false;                  // reported a verified hit
  std::uint64_t found_index = 0;       // global; meaningful when found
  std::uint64_t first_hit_cycles = 0;  // classical: cycle of the first match
  std::uint64_t iterations = 0;        // quantum: k
  std::uint64_t round_cycles = 0;      // quantum: (k+1)*t
  std::uint32_t rounds_run = 0;        // quantum: lockstep rounds executed
  std::uint64_t total_cycles = 0;      // this processor's cycle count

  friend bool operator==(const PartitionOutcome&, const PartitionOutcome&) = default;
};

struct EngineReport {
  EngineMode mode = EngineMode::Classical;
  std::uint64_t database_size = 0;   // N
  std::uint64_t width = 0;           // d
  std::uint64_t partition_size = 0;  // n
  std::uint64_t criterion_gates = 0; // p
  std::uint64_t criterion_depth = 0; // t
  std::uint64_t matches_total = 0;   // n1 over the whole database
  bool found = false;
  std::optional<std::uint64_t> found_index;
  std::optional<std::uint64_t> winning_partition;
  std::uint64_t cycles = 0;              // max over processors
  std::uint64_t propagation_cycles = 0;  // reported separately
  std::uint32_t rounds_used = 0;         // quantum; 0 in classical mode
  std::vector<PartitionOutcome> partitions;

  std::string to_kv() const;

  friend bool operator==(const EngineReport&, const EngineReport&) = default;
};

inline std::uint64_t partition_count(std::uint64_t database_size,
                                     std::uint64_t partition_size) {
  if (partition_size < 1 || partition_size > database_size) {
    throw InvalidParameter("partition size must satisfy 1 <= n <= N");
  }
  return (database_size + partition_size - 1) / partition_size;
}

// Half-open global index range of partition i; the last partition may be
// short. Ranges are disjoint and cover [0, N).
inline std::pair<std::uint64_t, std::uint64_t> partition_bounds(
    std::uint64_t database_size, std::uint64_t partition_size, std::uint64_t i) {
  const std::uint64_t partitions = partition_count(database_size, partition_size);
  if (i >= partitions) {
    throw InvalidParameter("partition index " + std::to_string(i) +
                           " out of range for " + std::to_string(partitions) +
                           " partitions");
  }
  const std::uint64_t begin = i * partition_size;
  return {begin, std::min(database_size, begin + partition_size)};
}

namespace detail {

inline void check_engine_inputs(const Database& db, const Criterion& criterion,
                                const EngineConfig& config, EngineMode expected) {
  if (config.mode != expected) throw InvalidParameter("engine mode mismatch");
  if (db.width_d != criterion.input_width()) {
    throw InvalidParameter("criterion width " + std::to_string(criterion.input_width()) +
                           " does not match database width " + std::to_string(db.width_d));
  }
  if (config.partition_size < 1 || config.partition_size > db.size()) {
    throw InvalidParameter("partition size must satisfy 1 <= n <= N");
  }
  if (config.max_rounds < 1) throw InvalidParameter("max_rounds must be >= 1");
}

inline std::uint64_t tree_depth_above(std::uint64_t partitions) {
  return static_cast<std::uint64_t>(std::bit_width(partitions - 1));
}

inline EngineReport init_report(const Database& db, const Criterion& criterion,
                                const EngineConfig& config) {
  EngineReport report;
  report.mode = config.mode;
  report.database_size = db.size();
  report.width = db.width_d;
  report.partition_size = config.partition_size;
  report.criterion_gates = gate_count(criterion);
  report.criterion_depth = depth(criterion);
  report.propagation_cycles =
      tree_depth_above(partition_count(db.size(), config.partition_size));
  return report;
}

}  // namespace detail

inline EngineReport run_classical(const Database& db, const Criterion& criterion,
                                  const EngineConfig& config) {
  detail::check_engine_inputs(db, criterion, config, EngineMode::Classical);
  EngineReport report = detail::init_report(db, criterion, config);
  const std::uint64_t t = report.criterion_depth;
  const std::uint64_t partitions = partition_count(db.size(), config.partition_size);
  report.partitions.resize(partitions);

  parallel_for(partitions, [&](std::size_t i) {
    auto [begin, end] = partition_bounds(db.size(), config.partition_size, i);
    PartitionOutcome& out = report.partitions[i];
    out.index = i;
    out.begin = begin;
    out.end = end;
    for (std::uint64_t g = begin; g < end; ++g) {
      if (evaluate(criterion, db.datasets[g])) {
        if (!out.found) {
          out.found = true;
          out.found_index = g;
          out.first_hit_cycles = (g - begin + 1) * t;
        }
        ++out.matches;
      }
    }
    out.total_cycles = (end - begin) * t;
  });

  for (const PartitionOutcome& out : report.partitions) {
    report.matches_total += out.matches;
    if (out.found && !report.found) {
      report.found = true;
      report.winning_partition = out.index;
      report.found_index = out.found_index;
    }
  }
  // Worst-case accounting: every processor is charged a full scan, since no
  // processor can learn early that a neighbour already finished.
  report.cycles = config.partition_size * t;
  return report;
}

inline EngineReport run_quantum(const Database& db, const Criterion& criterion,
                                const EngineConfig& config) {
  detail::check_engine_inputs(db, criterion, config, EngineMode::Quantum);
  EngineReport report = detail::init_report(db, criterion, config);
  const std::uint64_t t = report.criterion_depth;
  const std::uint64_t partitions = partition_count(db.size(), config.partition_size);
  report.partitions.resize(partitions);

  // Rounds differ only in their measurement seed, so each processor's state
  // after k iterations is computed once and measured up to max_rounds times.
  // first_success[i] is the round (1-based) whose measurement verified, or 0.
  std::vector<std::uint32_t> first_success(partitions, 0);
  std::vector<std::uint32_t> measured_local(partitions, 0);

  parallel_for(partitions, [&](std::size_t i) {
    auto [begin, end] = partition_bounds(db.size(), config.partition_size, i);
    const auto size = static_cast<std::uint32_t>(end - begin);
    PartitionOutcome& out = report.partitions[i];
    out.index = i;
    out.begin = begin;
    out.end = end;

    std::vector<std::uint32_t> marked;
    for (std::uint32_t j = 0; j < size; ++j) {
      if (evaluate(criterion, db.datasets[begin + j])) marked.push_back(j);
    }
    out.matches = marked.size();
    out.iterations =
        marked.empty() ? 0 : iterations_for(config.policy, size, marked.size());
    out.round_cycles = (out.iterations + 1) * t;

    GroverState state = uniform_state(size, std::move(marked));
    for (std::uint64_t step = 0; step < out.iterations; ++step) {
      state = grover_iterate(std::move(state));
    }

    SplitMix64 round_seeds(mix64(config.seed ^ i));
    for (std::uint32_t round = 1; round <= config.max_rounds; ++round) {
      SplitMix64 measure(round_seeds.next());
      const std::uint32_t idx = sample_index(state, measure);
      if (std::binary_search(state.marked.begin(), state.marked.end(), idx)) {
        first_success[i] = round;
        measured_local[i] = idx;
        break;
      }
    }
  });

  std::uint32_t stop_round = config.max_rounds;
  for (std::uint64_t i = 0; i < partitions; ++i) {
    if (first_success[i] != 0 && first_success[i] <= stop_round) {
      if (first_success[i] < stop_round || !report.found) {
        report.winning_partition = i;
        report.found_index = report.partitions[i].begin + measured_local[i];
      }
      report.found = true;
      stop_round = first_success[i];
    }
  }
  report.rounds_used = stop_round;

  for (PartitionOutcome& out : report.partitions) {
    report.matches_total += out.matches;
    out.rounds_run = stop_round;
    out.total_cycles = static_cast<std::uint64_t>(stop_round) * out.round_cycles;
    out.found = report.found && first_success[out.index] == stop_round;
    if (out.found) out.found_index = out.begin + measured_local[out.index];
    report.cycles = std::max(report.cycles, out.total_cycles);
  }
  return report;
}

inline EngineReport run_engine(const Database& db, const Criterion& criterion,
                               const EngineConfig& config) {
  return config.mode == EngineMode::Classical ? run_classical(db, criterion, config)
                                              : run_quantum(db, criterion, config);
}

inline const char* engine_mode_name(EngineMode mode) {
  return mode == EngineMode::Classical ? "classical" : "quantum";
}

inline std::string EngineReport::to_kv() const {
  std::ostringstream out;
  out << "mode=" << engine_mode_name(mode) << "\n"
      << "N=" << database_size << "\n"
      << "d=" << width << "\n"
      << "n=" << partition_size << "\n"
      << "p=" << criterion_gates << "\n"
      << "t=" << criterion_depth << "\n"
      << "n1_total=" << matches_total << "\n"
      << "found=" << (found ? 1 : 0) << "\n"
      << "found_index=" << (found_index ? std::to_string(*found_index) : "none") << "\n"
      << "winning_partition="
      << (winning_partition ? std::to_string(*winning_partition) : "none") << "\n"
      << "cycles=" << cycles << "\n"
      << "propagation_cycles=" << propagation_cycles << "\n"
      << "rounds_used=" << rounds_used << "\n"
      << "partitions=" << partitions.size() << "\n";
  for (const PartitionOutcome& p : partitions) {
    const std::string prefix = "partition." + std::to_string(p.index) + ".";
    out << prefix << "n1=" << p.matches << "\n"
        << prefix << "found=" << (p.found ? 1 : 0) << "\n";
    if (p.found) out << prefix << "found_index=" << p.found_index << "\n";
    if (mode == EngineMode::Classical) {
      out << prefix << "first_hit_cycles=" << p.first_hit_cycles << "\n";
    } else {
      out << prefix << "iterations=" << p.iterations << "\n"
          << prefix << "round_cycles=" << p.round_cycles << "\n"
          << prefix << "rounds_run=" << p.rounds_run << "\n";
    }
    out << prefix << "total_cycles=" << p.total_cycles << "\n";
  }
  return out.str();
}

}  // namespace geb
