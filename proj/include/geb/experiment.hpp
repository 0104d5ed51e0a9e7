#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "geb/costmodel.hpp"
#include "geb/criterion.hpp"
#include "geb/datastore.hpp"
#include "geb/engine.hpp"
#include "geb/error.hpp"
#include "geb/format.hpp"
#include "geb/splitmix64.hpp"

namespace geb {

// Implements the four experiment commands (generate, analyze, simulate,
// sweep) against streams, so the command-line binary stays a thin argument
// parser and the behaviour is testable in-process.
//
// Reproducibility conventions, used consistently everywhere:
//   - repetition r of a command with --seed s drives the engine with seed
//     mix64(s ^ r); the per-run CSV row records that derived seed;
//   - planting inside generate/sweep uses mix64(s) so the plant's probing
//     stream is independent of the database fill stream seeded with s.

// ---------------------------------------------------------------------------
// Criterion sources

namespace detail {

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading file: " + path);
  return buffer.str();
}

}  // namespace detail

// Parses the subset of the DIMACS CNF format needed for hand-written
// instances: optional comment lines starting with 'c', one header line
// "p cnf <variables> <clauses>", then clause lines of non-zero literals each
// terminated by 0. A clause may span lines; negative literals are negated
// variables; variables are 1-based in the file.
inline Criterion parse_dimacs_cnf(std::string_view text) {
  std::uint32_t variables = 0;
  std::size_t clauses_declared = 0;
  bool header_seen = false;
  std::vector<std::vector<Literal>> clauses;
  std::vector<Literal> current;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;
    const auto fail = [&](const std::string& what) -> void {
      throw FormatError("line " + std::to_string(line_no) + ": " + what);
    };

    std::istringstream words{std::string(line)};
    std::string word;
    if (!(words >> word)) continue;   // blank line
    if (word[0] == 'c') continue;     // comment line

    if (word == "p") {
      if (header_seen) fail("duplicate header");
      std::string kind;
      long long vars = 0, cls = 0;
      if (!(words >> kind >> vars >> cls) || kind != "cnf" || vars < 1 || cls < 0) {
        fail("malformed header, expected 'p cnf <variables> <clauses>'");
      }
      std::string extra;
      if (words >> extra) fail("trailing tokens after header");
      variables = static_cast<std::uint32_t>(vars);
      clauses_declared = static_cast<std::size_t>(cls);
      header_seen = true;
      continue;
    }

    if (!header_seen) fail("clause before 'p cnf' header");
    // Clause line: re-scan from the first word.
    std::istringstream numbers{std::string(line)};
    long long literal = 0;
    while (numbers >> literal) {
      if (literal == 0) {
        if (current.empty()) fail("empty clause");
        clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      const long long var = literal < 0 ? -literal : literal;
      if (var > variables) fail("literal " + std::to_string(literal) +
                                " exceeds declared variable count");
      current.push_back(Literal{static_cast<std::uint32_t>(var - 1), literal < 0});
    }
    if (!numbers.eof()) fail("non-integer token in clause");
  }

  if (!header_seen) throw FormatError("missing 'p cnf' header");
  if (!current.empty()) throw FormatError("last clause is not terminated by 0");
  if (clauses.size() != clauses_declared) {
    throw FormatError("header declares " + std::to_string(clauses_declared) +
                      " clauses but " + std::to_string(clauses.size()) + " found");
  }
  return cnf_criterion(clauses, variables);
}

// Resolves a --criterion / --plant-criterion argument. Accepted forms:
//   equality:<hex>  match one exact dataset, given as a hex pattern
//   cnf:<path>      satisfy the CNF formula in a DIMACS file
//   file:<path>     the criterion-circuit text format
inline Criterion parse_criterion_spec(const std::string& source) {
  const auto starts_with = [&](std::string_view prefix) {
    return source.size() > prefix.size() &&
           source.compare(0, prefix.size(), prefix) == 0;
  };
  if (starts_with("equality:")) {
    return equality_criterion(Dataset::from_hex(source.substr(9)));
  }
  if (starts_with("cnf:")) {
    return parse_dimacs_cnf(detail::read_text_file(source.substr(4)));
  }
  if (starts_with("file:")) {
    return parse_criterion(detail::read_text_file(source.substr(5)));
  }
  throw UsageError("unknown criterion source '" + source +
                   "' (expected equality:<hex>, cnf:<path>, or file:<path>)");
}

// ---------------------------------------------------------------------------
// Output helpers

namespace detail {

// Runs fn(stream) against stdout when path is "-", else against a fresh
// (truncated) file, so reruns produce byte-identical output.
template <typename Fn>
void with_output(const std::string& path, std::ostream& stdout_stream, Fn&& fn) {
  if (path == "-") {
    fn(stdout_stream);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file: " + path);
  fn(file);
  file.flush();
  if (!file) throw IoError("failed writing output file: " + path);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// generate

struct GenerateOptions {
  std::uint64_t count = 0;
  std::uint32_t width = 0;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string plant_criterion;      // empty: no planting
  std::uint64_t plant_count = 0;
};

inline void run_generate(const GenerateOptions& opt, std::ostream& console) {
  Database db = generate_database(opt.count, opt.width, opt.seed);
  std::optional<std::uint64_t> matches;
  if (!opt.plant_criterion.empty()) {
    const Criterion criterion = parse_criterion_spec(opt.plant_criterion);
    db = plant_matches(std::move(db), criterion, opt.plant_count, mix64(opt.seed));
    matches = count_matches(db, criterion);
  }
  save_database(db, opt.out_path);
  console << "N=" << db.size() << "\n"
          << "d=" << db.width_d << "\n"
          << "seed=" << db.seed << "\n";
  if (matches) console << "matches: " << *matches << "\n";
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOptions {
  std::uint64_t database_n = 0;          // N
  std::uint64_t depth_t = 0;             // t
  std::vector<std::uint64_t> p_list;
  std::vector<std::uint64_t> n_list;     // exclusive with equal_investment
  bool equal_investment = false;
  std::string out_path = "-";
};

inline const std::vector<std::string>& analyze_columns() {
  static const std::vector<std::string> columns = {
      "N", "n", "p", "t", "S_c", "S_q", "T_c", "T_q", "speedup",
      "equal_investment_n"};
  return columns;
}

inline void run_analyze(const AnalyzeOptions& opt, std::ostream& stdout_stream) {
  if (opt.p_list.empty()) throw UsageError("--p-list must not be empty");
  if (opt.equal_investment == !opt.n_list.empty()) {
    throw UsageError("exactly one of --n-list and --equal-investment is required");
  }
  detail::with_output(opt.out_path, stdout_stream, [&](std::ostream& out) {
    CsvWriter csv(out, analyze_columns());
    for (const std::uint64_t p : opt.p_list) {
      const std::uint64_t equal_n = equal_investment_n(p, opt.database_n);
      const std::vector<std::uint64_t> ns =
          opt.equal_investment ? std::vector<std::uint64_t>{equal_n} : opt.n_list;
      for (const std::uint64_t n : ns) {
        const CostReport report =
            make_cost_report(opt.database_n, n, p, opt.depth_t);
        csv.row({format_u64(report.database_n), format_u64(report.partition_n),
                 format_u64(report.criterion_gates), format_u64(report.criterion_depth),
                 format_double(report.size_classical), format_double(report.size_quantum),
                 format_double(report.time_classical), format_double(report.time_quantum),
                 format_double(report.speedup), format_u64(report.equal_n)});
      }
    }
  });
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
  std::string db_path;
  std::string criterion;
  EngineMode mode = EngineMode::Classical;
  std::uint64_t partition_n = 0;        // ignored when equal_investment
  bool equal_investment = false;
  IterationPolicy policy = IterationPolicy::Optimal;
  std::uint32_t max_rounds = 20;
  std::uint64_t seed = 0;
  std::uint64_t reps = 1;
  std::string out_path = "-";
};

inline const std::vector<std::string>& simulate_columns() {
  static const std::vector<std::string> columns = {
      "run_id", "mode", "N", "d", "n", "p", "t", "n1_total", "found",
      "found_index", "cycles", "propagation_cycles", "rounds_used",
      "model_cycles", "seed"};
  return columns;
}

namespace detail {

inline double model_cycles(EngineMode mode, std::uint64_t n, std::uint64_t t) {
  return mode == EngineMode::Classical ? classical_time(n, t) : quantum_time(n, t);
}

inline std::vector<std::string> simulate_row(std::uint64_t run_id,
                                             const EngineReport& r,
                                             std::uint64_t engine_seed) {
  return {format_u64(run_id),
          engine_mode_name(r.mode),
          format_u64(r.database_size),
          format_u64(r.width),
          format_u64(r.partition_size),
          format_u64(r.criterion_gates),
          format_u64(r.criterion_depth),
          format_u64(r.matches_total),
          r.found ? "1" : "0",
          r.found_index ? format_u64(*r.found_index) : std::string(),
          format_u64(r.cycles),
          format_u64(r.propagation_cycles),
          format_u64(r.rounds_used),
          format_double(model_cycles(r.mode, r.partition_size, r.criterion_depth)),
          format_u64(engine_seed)};
}

}  // namespace detail

inline void run_simulate(const SimulateOptions& opt, std::ostream& console) {
  if (opt.reps < 1) throw UsageError("--reps must be >= 1");
  const Database db = load_database(opt.db_path);
  const Criterion criterion = parse_criterion_spec(opt.criterion);

  EngineConfig config;
  config.mode = opt.mode;
  config.policy = opt.policy;
  config.max_rounds = opt.max_rounds;
  config.partition_size = opt.equal_investment
                              ? equal_investment_n(gate_count(criterion), db.size())
                              : opt.partition_n;

  std::uint64_t found_runs = 0;
  double cycles_sum = 0.0;
  detail::with_output(opt.out_path, console, [&](std::ostream& out) {
    CsvWriter csv(out, simulate_columns());
    for (std::uint64_t rep = 0; rep < opt.reps; ++rep) {
      config.seed = mix64(opt.seed ^ rep);
      const EngineReport report = run_engine(db, criterion, config);
      csv.row(detail::simulate_row(rep, report, config.seed));
      found_runs += report.found ? 1 : 0;
      cycles_sum += static_cast<double>(report.cycles);
    }
  });

  const double reps = static_cast<double>(opt.reps);
  const double mean_cycles = cycles_sum / reps;
  const double model =
      detail::model_cycles(opt.mode, config.partition_size, depth(criterion));
  console << "runs=" << opt.reps
          << " found_rate=" << format_double(static_cast<double>(found_runs) / reps)
          << " mean_cycles=" << format_double(mean_cycles)
          << " model_cycles=" << format_double(model)
          << " ratio=" << format_double(mean_cycles / model) << "\n";
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
  std::uint64_t database_n = 0;   // N
  std::uint32_t width = 0;        // d
  std::string criterion;
  std::vector<std::uint64_t> n_list;
  std::uint64_t plant_count = 1;
  IterationPolicy policy = IterationPolicy::Optimal;
  std::uint32_t max_rounds = 20;
  std::uint64_t seed = 0;
  std::uint64_t reps = 1;
  std::string out_path = "-";
};

inline const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> columns = {
      "kind", "mode", "N", "d", "n", "p", "t", "reps", "seed", "found_rate",
      "mean_cycles", "model_cycles", "speedup_sim", "speedup_model"};
  return columns;
}

inline void run_sweep(const SweepOptions& opt, std::ostream& stdout_stream) {
  if (opt.reps < 1) throw UsageError("--reps must be >= 1");
  if (opt.n_list.empty()) throw UsageError("--n-list must not be empty");
  const Criterion criterion = parse_criterion_spec(opt.criterion);
  Database db = generate_database(opt.database_n, opt.width, opt.seed);
  db = plant_matches(std::move(db), criterion, opt.plant_count, mix64(opt.seed));

  const std::uint64_t p = gate_count(criterion);
  const std::uint64_t t = depth(criterion);
  detail::with_output(opt.out_path, stdout_stream, [&](std::ostream& out) {
    CsvWriter csv(out, sweep_columns());
    const auto shared = [&](std::uint64_t n) {
      return std::vector<std::string>{format_u64(opt.database_n), format_u64(opt.width),
                                      format_u64(n), format_u64(p), format_u64(t)};
    };
    for (const std::uint64_t n : opt.n_list) {
      EngineConfig config;
      config.partition_size = n;
      config.policy = opt.policy;
      config.max_rounds = opt.max_rounds;

      config.mode = EngineMode::Classical;
      config.seed = 0;  // classical runs are seed-independent
      const EngineReport classical = run_engine(db, criterion, config);
      const double classical_cycles = static_cast<double>(classical.cycles);
      auto fields = shared(n);
      std::vector<std::string> row = {"sim", "classical"};
      row.insert(row.end(), fields.begin(), fields.end());
      row.insert(row.end(), {format_u64(1), format_u64(opt.seed),
                             classical.found ? "1" : "0",
                             format_double(classical_cycles),
                             format_double(classical_time(n, t)), "", ""});
      csv.row(row);

      config.mode = EngineMode::Quantum;
      std::uint64_t found_runs = 0;
      double cycles_sum = 0.0;
      for (std::uint64_t rep = 0; rep < opt.reps; ++rep) {
        config.seed = mix64(opt.seed ^ rep);
        const EngineReport quantum = run_engine(db, criterion, config);
        found_runs += quantum.found ? 1 : 0;
        cycles_sum += static_cast<double>(quantum.cycles);
      }
      const double quantum_rate =
          static_cast<double>(found_runs) / static_cast<double>(opt.reps);
      const double quantum_mean = cycles_sum / static_cast<double>(opt.reps);
      row = {"sim", "quantum"};
      row.insert(row.end(), fields.begin(), fields.end());
      row.insert(row.end(), {format_u64(opt.reps), format_u64(opt.seed),
                             format_double(quantum_rate), format_double(quantum_mean),
                             format_double(quantum_time(n, t)), "", ""});
      csv.row(row);

      row = {"compare", "both"};
      row.insert(row.end(), fields.begin(), fields.end());
      row.insert(row.end(),
                 {format_u64(opt.reps), format_u64(opt.seed),
                  format_double(quantum_rate), format_double(quantum_mean),
                  format_double(quantum_time(n, t)),
                  format_double(classical_cycles / quantum_mean),
                  format_double(std::sqrt(static_cast<double>(n)))});
      csv.row(row);
    }
  });
}

}  // namespace geb
