// sumopt command-line harness: run / verify / bounds / sweep

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sumopt/experiment.hpp"
#include "sumopt/identities.hpp"

namespace {

struct RunArgs {
  std::string config_path;
  std::string out_dir;
  long seeds = -1;
  long base_seed = -1;
  int jobs = -1;
};

void apply_overrides(sumopt::ExperimentConfig& config, const RunArgs& args) {
  if (const char* env = std::getenv("SUMOPT_OUT_DIR")) config.out_dir = env;
  if (!args.out_dir.empty()) config.out_dir = args.out_dir;
  if (args.seeds >= 0) config.seeds = std::size_t(args.seeds);
  if (args.base_seed >= 0) config.base_seed = std::uint64_t(args.base_seed);
  if (args.jobs >= 0) config.jobs = args.jobs;
  config.validate();
}

int do_run(const RunArgs& args, bool sweep) {
  sumopt::ExperimentConfig config = sumopt::parse_config_file(args.config_path);
  apply_overrides(config, args);
  if (sweep && config.alpha_list.empty()) {
    throw std::invalid_argument("sweep: config needs a nonempty alpha_list");
  }
  if (!sweep) config.alpha_list.clear();

  sumopt::ExperimentResult res = sumopt::run_experiment(config);
  std::printf("wrote %zu CSV files under %s\n", res.csv_files.size(), config.out_dir.c_str());
  for (const auto& vr : res.variants) {
    std::printf("%-32s", vr.variant.tag().c_str());
    if (vr.final_gap.present) std::printf("  gap %.6g", vr.final_gap.mean);
    if (vr.final_min_grad_sq.present)
      std::printf("  min||grad||^2 %.6g", vr.final_min_grad_sq.mean);
    if (vr.heldout_osc.present) std::printf("  osc %.6g", vr.heldout_osc.mean);
    if (vr.divergent > 0) std::printf("  DIVERGENT %zu/%zu", vr.divergent, vr.runs.size());
    std::printf("\n");
  }
  return 0;
}

int do_verify(std::uint64_t seed, int trials, long steps) {
  auto reports = sumopt::verify_battery(seed, trials, steps);
  bool all_ok = true;
  for (const auto& r : reports) {
    std::printf("%-16s max_abs_error %.3e  steps %-8ld tol %.0e  %s\n", r.identity_name.c_str(),
                r.max_abs_error, r.steps_checked, r.tolerance,
                r.skipped ? "SKIPPED" : (r.passed ? "PASS" : "FAIL"));
    all_ok = all_ok && r.passed;
  }
  return all_ok ? 0 : 1;
}

int do_bounds(const std::string& run_dir) {
  for (const auto& line : sumopt::bounds_report_for_run(run_dir)) {
    std::printf("%s\n", line.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic unified momentum experiment harness"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--config", run_args.config_path, "experiment config file")->required();
    cmd->add_option("--out", run_args.out_dir, "output directory (overrides config)");
    cmd->add_option("--seeds", run_args.seeds, "number of seeds (overrides config)");
    cmd->add_option("--base-seed", run_args.base_seed, "base seed (overrides config)");
    cmd->add_option("--jobs", run_args.jobs, "parallel runs (overrides config)");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "execute an experiment config");
  add_run_flags(run_cmd);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "expand the s/beta/alpha grid and run it");
  add_run_flags(sweep_cmd);

  std::uint64_t verify_seed = 1;
  int verify_trials = 50;
  long verify_steps = 300;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the algebraic identity battery");
  verify_cmd->add_option("--seed", verify_seed, "battery seed");
  verify_cmd->add_option("--trials", verify_trials, "number of random configurations");
  verify_cmd->add_option("--steps", verify_steps, "steps per trajectory");

  std::string bounds_dir;
  CLI::App* bounds_cmd = app.add_subcommand("bounds", "evaluate rate bounds for a finished run");
  bounds_cmd->add_option("--run", bounds_dir, "run directory written by `run`")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return do_run(run_args, false);
    if (sweep_cmd->parsed()) return do_run(run_args, true);
    if (verify_cmd->parsed()) return do_verify(verify_seed, verify_trials, verify_steps);
    if (bounds_cmd->parsed()) return do_bounds(bounds_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
