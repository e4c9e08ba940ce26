#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sumopt/oracle.hpp"
#include "sumopt/problems.hpp"
#include "sumopt/vec.hpp"

namespace sumopt {

// One measured row. All measurement uses the exact full gradient; the
// stochastic draw never enters any recorded quantity except V_k.
struct RecordRow {
  long k = 0;
  double f_x = 0.0;
  std::optional<double> gap_avg;  // f(mean of x_0..x_k) - f_star, when f_star is known
  double grad_norm_sq = 0.0;      // ||grad f(x_k)||^2
  double min_grad_norm_sq = 0.0;  // min over measured rows so far
  double v_k = 0.0;               // sum_{j<=k} ||G_j - G_{j-1}||, with G_{-1} = 0
  std::optional<double> heldout_err;
  double alpha = 0.0;             // step size in effect at k
};

struct RunSummary {
  std::uint64_t seed = 0;
  long steps_done = 0;
  bool diverged = false;
  long diverged_at = -1;
  bool box_violated = false;        // some iterate left the declared constants box
  bool stoch_norm_exceeded = false; // some draw exceeded the declared M
  double max_stoch_norm = 0.0;
  double f0 = 0.0;
  double final_f = 0.0;
  std::optional<double> final_gap;
  double final_min_grad_sq = 0.0;
  double final_v = 0.0;
  std::optional<double> final_heldout;
  double wall_seconds = 0.0;  // never written to CSV
  ParamVector final_x;        // iterate after the last completed step
  ParamVector final_avg_x;    // averaged iterate measured by the final row
};

struct RunMetrics {
  std::vector<RecordRow> rows;
  RunSummary summary;
};

// Accumulates per-draw quantities (V, max draw norm) and produces measured
// rows. Read-only with respect to the optimizer state: recording can never
// perturb a trajectory.
class MetricsTracker {
 public:
  MetricsTracker(const Problem& problem, std::optional<double> stoch_norm_bound);

  void on_draw(const OracleDraw& d);
  RecordRow measure(const ParamVector& x, const ParamVector& avg_x, long k, double alpha);

  double v_sum() const { return v_; }
  double max_stoch_norm() const { return max_norm_; }
  bool norm_exceeded() const { return exceeded_; }

 private:
  const Problem& problem_;
  std::optional<double> f_star_;
  std::optional<double> bound_;
  ParamVector prev_g_;
  bool has_prev_ = false;
  double v_ = 0.0;
  double max_norm_ = 0.0;
  bool exceeded_ = false;
  double min_grad_sq_;
};

// Mean absolute successive difference of a series; length >= 2 required.
double oscillation_score(const std::vector<double>& series);

struct AggregateColumn {
  std::vector<double> mean;
  std::vector<double> sem;  // NaN entries when fewer than 2 runs
  bool present = false;
};

// Across-seed mean and standard error per record point. Divergent runs are
// excluded from the statistics and counted separately.
struct AggregateMetrics {
  std::vector<long> ks;
  AggregateColumn f_x, gap_avg, grad_norm_sq, min_grad_norm_sq, v_k, heldout_err, alpha;
  std::size_t seed_count = 0;
  std::size_t divergent_count = 0;
};

AggregateMetrics aggregate(const std::vector<RunMetrics>& runs);

// CSV output. Doubles are printed with %.17g so files are byte-stable for
// identical runs; absent optionals print as empty cells.
std::string format_double(double v);
void write_run_csv(std::ostream& os, const RunMetrics& m);
void write_aggregate_csv(std::ostream& os, const AggregateMetrics& agg);

extern const char* const kRunCsvHeader;
extern const char* const kAggregateCsvHeader;

}  // namespace sumopt
