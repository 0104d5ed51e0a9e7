#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "geb/criterion.hpp"
#include "geb/dataset.hpp"
#include "geb/error.hpp"
#include "geb/splitmix64.hpp"

namespace geb {

// Exact simulation of Grover search over a partition's index space.
//
// The state is one real amplitude per dataset in the partition; partitions
// are arbitrary-size groups, not power-of-two registers, and with a real
// initial state and a phase oracle the amplitudes stay real. One Grover step
// negates the marked amplitudes (oracle query) and then inverts every
// amplitude about the mean (diffusion). With theta = asin(sqrt(n1/n)), the
// probability that measuring after k steps yields a marked index is
// sin^2((2k+1) theta).

// The fixed floor((pi/4) sqrt(n/n1)) iteration convention ("paper" policy).
inline std::uint64_t paper_iterations(std::uint64_t n, std::uint64_t n1) {
  if (n1 == 0) throw InvalidParameter("iteration count undefined for n1 = 0");
  if (n1 > n || n == 0) throw InvalidParameter("require 1 <= n1 <= n");
  const double ratio = static_cast<double>(n) / static_cast<double>(n1);
  return static_cast<std::uint64_t>(std::floor(std::numbers::pi / 4.0 * std::sqrt(ratio)));
}

// max(0, round(pi/(4 theta) - 1/2)) with round half up; the k that maximizes
// the success probability.
inline std::uint64_t optimal_iterations(std::uint64_t n, std::uint64_t n1) {
  if (n1 == 0) throw InvalidParameter("iteration count undefined for n1 = 0");
  if (n1 > n || n == 0) throw InvalidParameter("require 1 <= n1 <= n");
  const double theta = std::asin(std::sqrt(static_cast<double>(n1) / static_cast<double>(n)));
  const double raw = std::numbers::pi / (4.0 * theta) - 0.5;
  if (raw <= 0.0) return 0;
  return static_cast<std::uint64_t>(std::floor(raw + 0.5));
}

enum class IterationPolicy { Paper, Optimal };

inline std::uint64_t iterations_for(IterationPolicy policy, std::uint64_t n,
                                    std::uint64_t n1) {
  return policy == IterationPolicy::Paper ? paper_iterations(n, n1)
                                          : optimal_iterations(n, n1);
}

// Closed-form probability that measuring after k iterations yields a marked
// index. Defined as 0 when nothing is marked.
inline double success_probability(std::uint64_t n, std::uint64_t n1, std::uint64_t k) {
  if (n == 0) throw InvalidParameter("require n >= 1");
  if (n1 > n) throw InvalidParameter("require n1 <= n");
  if (n1 == 0) return 0.0;
  const double theta = std::asin(std::sqrt(static_cast<double>(n1) / static_cast<double>(n)));
  const double s = std::sin((2.0 * static_cast<double>(k) + 1.0) * theta);
  return s * s;
}

// Real amplitude vector over a partition's index space plus the marked set
// (indices whose dataset satisfies the criterion; n1 is its size).
struct GroverState {
  std::vector<double> amplitudes;
  std::vector<std::uint32_t> marked;  // ascending, unique, < size()

  std::size_t size() const { return amplitudes.size(); }
};

inline GroverState uniform_state(std::uint32_t n, std::vector<std::uint32_t> marked) {
  if (n == 0) throw InvalidParameter("state size must be >= 1");
  GroverState s;
  s.amplitudes.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
  s.marked = std::move(marked);
  return s;
}

// One Grover step: phase-flip the marked amplitudes, then replace every
// amplitude a by 2*mean - a.
inline GroverState grover_iterate(GroverState state) {
  for (std::uint32_t m : state.marked) state.amplitudes[m] = -state.amplitudes[m];
  double sum = 0.0;
  for (double a : state.amplitudes) sum += a;
  const double twice_mean = 2.0 * sum / static_cast<double>(state.size());
  for (double& a : state.amplitudes) a = twice_mean - a;
  return state;
}

// Probability mass currently on the marked indices.
inline double marked_probability(const GroverState& state) {
  double mass = 0.0;
  for (std::uint32_t m : state.marked) mass += state.amplitudes[m] * state.amplitudes[m];
  return mass;
}

// Inverse-CDF walk over the squared amplitudes; one uniform draw per sample.
inline std::uint32_t sample_index(const GroverState& state, SplitMix64& rng) {
  const double u = to_unit_double(rng.next());
  double acc = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    acc += state.amplitudes[i] * state.amplitudes[i];
    if (u < acc) return static_cast<std::uint32_t>(i);
  }
  return static_cast<std::uint32_t>(state.size() - 1);
}

struct GroverOutcome {
  std::uint32_t measured_index = 0;
  std::uint64_t iterations_used = 0;
  bool verified = false;
  double success_probability = 0.0;  // closed form, for reporting
};

// One Grover run over a partition: mark by evaluating the criterion on every
// member (the simulator's stand-in for retrieving and testing the datasets in
// quantum parallelism), iterate per policy, measure once with the seeded
// generator, and verify the measured dataset classically. A partition with no
// matching dataset runs zero iterations and measures the uniform state.
inline GroverOutcome run_grover(std::span<const Dataset> partition,
                                const Criterion& criterion, IterationPolicy policy,
                                std::uint64_t seed) {
  if (partition.empty()) throw InvalidParameter("partition must be nonempty");
  const auto n = static_cast<std::uint32_t>(partition.size());
  std::vector<std::uint32_t> marked;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (evaluate(criterion, partition[i])) marked.push_back(i);
  }
  const std::uint64_t n1 = marked.size();
  const std::uint64_t k = n1 == 0 ? 0 : iterations_for(policy, n, n1);

  GroverState state = uniform_state(n, std::move(marked));
  for (std::uint64_t i = 0; i < k; ++i) state = grover_iterate(std::move(state));

  SplitMix64 rng(seed);
  GroverOutcome outcome;
  outcome.measured_index = sample_index(state, rng);
  outcome.iterations_used = k;
  outcome.verified = evaluate(criterion, partition[outcome.measured_index]);
  outcome.success_probability = success_probability(n, n1, k);
  return outcome;
}

}  // namespace geb
