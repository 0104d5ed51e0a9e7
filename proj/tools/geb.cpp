#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "geb/experiment.hpp"

namespace {

geb::EngineMode parse_mode(const std::string& text) {
  if (text == "classical") return geb::EngineMode::Classical;
  if (text == "quantum") return geb::EngineMode::Quantum;
  throw geb::UsageError("--mode must be 'classical' or 'quantum', got '" + text + "'");
}

geb::IterationPolicy parse_policy(const std::string& text) {
  if (text == "paper") return geb::IterationPolicy::Paper;
  if (text == "optimal") return geb::IterationPolicy::Optimal;
  throw geb::UsageError("--policy must be 'paper' or 'optimal', got '" + text + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Partitioned search-engine laboratory: deterministic databases, "
      "boolean search criteria, classical and Grover-based engine "
      "simulation, and the analytical cost model."};
  app.require_subcommand(1);

  geb::GenerateOptions generate;
  generate.plant_count = 1;
  CLI::App* cmd_generate =
      app.add_subcommand("generate", "Generate a seeded database file");
  cmd_generate->add_option("--count", generate.count, "Number of datasets N")
      ->required();
  cmd_generate->add_option("--width", generate.width, "Dataset width d in bits")
      ->required();
  cmd_generate->add_option("--seed", generate.seed, "Generator seed");
  cmd_generate->add_option("--out", generate.out_path, "Output database path")
      ->required();
  CLI::Option* plant_criterion = cmd_generate->add_option(
      "--plant-criterion", generate.plant_criterion,
      "Criterion source (equality:<hex>, cnf:<path>, file:<path>); edits the "
      "database to contain exactly --plant-count matches");
  cmd_generate
      ->add_option("--plant-count", generate.plant_count,
                   "Exact number of matches to plant (default 1)")
      ->needs(plant_criterion);
  cmd_generate->callback([&] { geb::run_generate(generate, std::cout); });

  geb::AnalyzeOptions analyze;
  std::string analyze_p_list;
  std::string analyze_n_list;
  CLI::App* cmd_analyze =
      app.add_subcommand("analyze", "Emit the closed-form cost-model table");
  cmd_analyze->add_option("--N", analyze.database_n, "Database size N")->required();
  cmd_analyze->add_option("--t", analyze.depth_t, "Criterion depth t in cycles")
      ->required();
  cmd_analyze
      ->add_option("--p-list", analyze_p_list, "Comma-separated gate counts p")
      ->required();
  CLI::Option* analyze_ns = cmd_analyze->add_option(
      "--n-list", analyze_n_list, "Comma-separated partition sizes n");
  cmd_analyze
      ->add_flag("--equal-investment", analyze.equal_investment,
                 "Choose n = min(p, N) per row")
      ->excludes(analyze_ns);
  cmd_analyze->add_option("--out", analyze.out_path, "Output CSV path or '-'");
  cmd_analyze->callback([&] {
    analyze.p_list = geb::parse_u64_list(analyze_p_list);
    if (!analyze_n_list.empty()) analyze.n_list = geb::parse_u64_list(analyze_n_list);
    geb::run_analyze(analyze, std::cout);
  });

  geb::SimulateOptions simulate;
  std::string simulate_mode;
  std::string simulate_policy = "optimal";
  CLI::App* cmd_simulate =
      app.add_subcommand("simulate", "Run the engine on a database file");
  cmd_simulate->add_option("--db", simulate.db_path, "Database file path")
      ->required();
  cmd_simulate
      ->add_option("--criterion", simulate.criterion,
                   "Criterion source (equality:<hex>, cnf:<path>, file:<path>)")
      ->required();
  cmd_simulate->add_option("--mode", simulate_mode, "classical or quantum")
      ->required();
  CLI::Option* simulate_n =
      cmd_simulate->add_option("--n", simulate.partition_n, "Partition size n");
  cmd_simulate
      ->add_flag("--equal-investment", simulate.equal_investment,
                 "Choose n = min(p, N)")
      ->excludes(simulate_n);
  cmd_simulate->add_option("--policy", simulate_policy,
                           "Iteration count policy: paper or optimal");
  cmd_simulate->add_option("--max-rounds", simulate.max_rounds,
                           "Quantum retry cap per search");
  cmd_simulate->add_option("--seed", simulate.seed, "Experiment seed");
  cmd_simulate->add_option("--reps", simulate.reps, "Repetitions");
  cmd_simulate->add_option("--out", simulate.out_path, "Output CSV path or '-'");
  cmd_simulate->callback([&] {
    simulate.mode = parse_mode(simulate_mode);
    simulate.policy = parse_policy(simulate_policy);
    if (!simulate.equal_investment && simulate_n->count() == 0) {
      throw geb::UsageError("one of --n and --equal-investment is required");
    }
    geb::run_simulate(simulate, std::cout);
  });

  geb::SweepOptions sweep;
  std::string sweep_n_list;
  std::string sweep_policy = "optimal";
  CLI::App* cmd_sweep = app.add_subcommand(
      "sweep", "Compare simulated and model speedups across partition sizes");
  cmd_sweep->add_option("--N", sweep.database_n, "Database size N")->required();
  cmd_sweep->add_option("--d", sweep.width, "Dataset width d in bits")->required();
  cmd_sweep
      ->add_option("--criterion", sweep.criterion,
                   "Criterion source (equality:<hex>, cnf:<path>, file:<path>)")
      ->required();
  cmd_sweep->add_option("--n-list", sweep_n_list, "Comma-separated partition sizes")
      ->required();
  cmd_sweep->add_option("--plant-count", sweep.plant_count,
                        "Exact number of matches to plant (default 1)");
  cmd_sweep->add_option("--policy", sweep_policy,
                        "Iteration count policy: paper or optimal");
  cmd_sweep->add_option("--max-rounds", sweep.max_rounds,
                        "Quantum retry cap per search");
  cmd_sweep->add_option("--seed", sweep.seed, "Experiment seed");
  cmd_sweep->add_option("--reps", sweep.reps, "Quantum repetitions per n");
  cmd_sweep->add_option("--out", sweep.out_path, "Output CSV path or '-'");
  cmd_sweep->callback([&] {
    sweep.policy = parse_policy(sweep_policy);
    sweep.n_list = geb::parse_u64_list(sweep_n_list);
    geb::run_sweep(sweep, std::cout);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& help) {
    return app.exit(help);  // --help and friends exit 0
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return 2;
  } catch (const geb::UsageError& error) {
    std::cerr << "usage error: " << error.what() << "\n";
    return 2;
  } catch (const geb::InvalidParameter& error) {
    std::cerr << "usage error: " << error.what() << "\n";
    return 2;
  } catch (const geb::Error& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
