#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumopt/bounds.hpp"
#include "sumopt/metrics.hpp"
#include "sumopt/optimizer.hpp"
#include "sumopt/oracle.hpp"
#include "sumopt/problems.hpp"

namespace sumopt {

// One (s, beta, schedule) cell of the experiment grid.
struct VariantSpec {
  double s = 1.0;
  double beta = 0.9;
  AlphaSchedule schedule;
  std::string tag() const;  // used in file names
};

struct ExperimentConfig {
  std::string problem = "abs_loss";
  ProblemParams problem_params;

  OracleKind oracle = OracleKind::additive_gaussian;
  double noise_std = 1.0;
  std::size_t batch_size = 128;

  std::vector<double> s_list{1.0};
  std::vector<double> beta_list{0.9};
  std::vector<double> alpha_list;  // nonempty = sweep over constant step sizes
  AlphaSchedule schedule;

  long horizon = 1000;
  long record_every = 10;
  std::size_t seeds = 1;
  std::uint64_t base_seed = 1;
  std::optional<double> stoch_norm_bound;  // declared M for the (problem, oracle) pair

  std::string out_dir = "out";
  int jobs = 1;

  std::vector<VariantSpec> variants() const;
  void validate() const;  // throws before any run starts
};

// key = value text config; '#' starts a comment, lists are comma-separated.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);

struct ScalarStat {
  double mean = 0.0;
  double sem = 0.0;
  std::size_t count = 0;
  bool present = false;
};

ScalarStat scalar_stat(const std::vector<double>& values);

struct BoundsLine {
  std::string name;               // "thm1".."thm4"
  std::optional<double> value;
  std::string note;               // reason when not evaluated
};

struct VariantResult {
  VariantSpec variant;
  std::vector<RunMetrics> runs;  // one per seed, in seed order
  AggregateMetrics agg;
  ScalarStat final_f, final_gap, final_min_grad_sq, final_v, heldout_osc;
  std::size_t divergent = 0, box_violated = 0, norm_exceeded = 0;
  std::vector<BoundsLine> bounds;
};

struct ExperimentResult {
  ExperimentConfig config;
  ProblemPtr problem;
  std::optional<double> f0_gap;    // measured from the common start, when f_star known
  std::optional<double> dist0_sq;  // when the minimizer is known
  std::vector<VariantResult> variants;
  std::vector<std::string> csv_files;  // paths of CSV artifacts written
};

// Executes the full (variant x seed) battery. Seeds derive as base_seed +
// index and are shared across variants so comparisons are paired. Runs may
// execute concurrently (config.jobs) but results are assembled in
// deterministic (variant, seed) order.
ExperimentResult run_experiment(const ExperimentConfig& config, bool write_files = true);

// Rate bounds for one variant against a problem/oracle pair. Lines carry a
// note instead of a value where a constant is missing or a hypothesis fails.
std::vector<BoundsLine> evaluate_bounds(const Problem& problem, const OracleSpec& oracle,
                                        const VariantSpec& variant, long horizon,
                                        std::optional<double> mean_v_t,
                                        std::optional<double> m_override);

// Re-evaluates bounds for a finished run directory (config_used.txt +
// experiment_summary.tsv) and returns printable report lines.
std::vector<std::string> bounds_report_for_run(const std::string& run_dir);

}  // namespace sumopt
