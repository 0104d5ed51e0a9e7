#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "geb/error.hpp"

namespace geb {

// Closed-form size and time model for the partitioned search engines,
// independent of simulation. Sizes count gates; times count cycles of one
// gate level each. Partition sizes that do not divide the database are
// allowed; the model treats the processor count as the real ratio N/n.

namespace detail {

inline void check_partition(std::uint64_t database_n, std::uint64_t partition_n) {
  if (partition_n < 1 || partition_n > database_n) {
    throw InvalidParameter("partition size must satisfy 1 <= n <= N");
  }
}

}  // namespace detail

// Gates in the whole engine: (N/n) processors of p gates plus an addressing
// tree of about one switch per dataset. Exact integer arithmetic whenever
// N*p is divisible by n, so equal-investment sizes print as integers.
inline double engine_size(std::uint64_t database_n, std::uint64_t partition_n,
                          std::uint64_t criterion_gates) {
  detail::check_partition(database_n, partition_n);
  const auto product = static_cast<unsigned __int128>(database_n) * criterion_gates;
  double processor_term;
  if (product % partition_n == 0) {
    processor_term = static_cast<double>(static_cast<std::uint64_t>(product / partition_n));
  } else {
    processor_term = static_cast<double>(database_n) / static_cast<double>(partition_n) *
                     static_cast<double>(criterion_gates);
  }
  return processor_term + static_cast<double>(database_n);
}

// Worst-case classical search time: each processor scans its n datasets at t
// cycles per criterion evaluation.
inline double classical_time(std::uint64_t partition_n, std::uint64_t depth_t) {
  return static_cast<double>(partition_n) * static_cast<double>(depth_t);
}

// Quantum search time: about sqrt(n) Grover steps of t cycles each.
inline double quantum_time(std::uint64_t partition_n, std::uint64_t depth_t) {
  return std::sqrt(static_cast<double>(partition_n)) * static_cast<double>(depth_t);
}

// Equal investment: processor hardware equal to the addressing system gives
// n = p, capped at the database size.
inline std::uint64_t equal_investment_n(std::uint64_t criterion_gates,
                                        std::uint64_t database_n) {
  if (criterion_gates == 0) {
    throw InvalidParameter("equal investment undefined for p = 0");
  }
  if (database_n == 0) throw InvalidParameter("database size must be >= 1");
  return std::min(criterion_gates, database_n);
}

// Quantum speedup under equal investment: min(sqrt(p), sqrt(N)).
inline double speedup(std::uint64_t criterion_gates, std::uint64_t database_n) {
  return std::sqrt(static_cast<double>(equal_investment_n(criterion_gates, database_n)));
}

struct CostReport {
  std::uint64_t database_n = 0;       // N
  std::uint64_t partition_n = 0;      // n
  std::uint64_t criterion_gates = 0;  // p
  std::uint64_t criterion_depth = 0;  // t
  double size_classical = 0.0;        // S_c
  double size_quantum = 0.0;          // S_q = S_c
  double time_classical = 0.0;        // T_c = n t
  double time_quantum = 0.0;          // T_q = sqrt(n) t
  double speedup = 0.0;               // T_c / T_q = sqrt(n)
  std::uint64_t equal_n = 0;          // min(p, N)

  friend bool operator==(const CostReport&, const CostReport&) = default;
};

inline CostReport make_cost_report(std::uint64_t database_n, std::uint64_t partition_n,
                                   std::uint64_t criterion_gates,
                                   std::uint64_t criterion_depth) {
  detail::check_partition(database_n, partition_n);
  CostReport r;
  r.database_n = database_n;
  r.partition_n = partition_n;
  r.criterion_gates = criterion_gates;
  r.criterion_depth = criterion_depth;
  r.size_classical = engine_size(database_n, partition_n, criterion_gates);
  r.size_quantum = r.size_classical;
  r.time_classical = classical_time(partition_n, criterion_depth);
  r.time_quantum = quantum_time(partition_n, criterion_depth);
  r.speedup = std::sqrt(static_cast<double>(partition_n));
  r.equal_n = equal_investment_n(criterion_gates, database_n);
  return r;
}

// Cross product of cost reports, ordered as the value lists are given.
inline std::vector<CostReport> cost_sweep(std::uint64_t database_n,
                                          std::uint64_t criterion_depth,
                                          std::span<const std::uint64_t> p_values,
                                          std::span<const std::uint64_t> n_values) {
  if (p_values.empty() || n_values.empty()) {
    throw InvalidParameter("p and n value lists must be nonempty");
  }
  std::vector<CostReport> out;
  out.reserve(p_values.size() * n_values.size());
  for (std::uint64_t p : p_values) {
    for (std::uint64_t n : n_values) {
      out.push_back(make_cost_report(database_n, n, p, criterion_depth));
    }
  }
  return out;
}

}  // namespace geb
