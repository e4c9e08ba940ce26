#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sumopt/metrics.hpp"
#include "sumopt/oracle.hpp"
#include "sumopt/problems.hpp"
#include "sumopt/vec.hpp"

namespace sumopt {

enum class ScheduleKind { constant, theorem1, theorem3, theorem4, step_decay };

const char* to_string(ScheduleKind k);
ScheduleKind schedule_from_string(const std::string& s);

// Step-size schedule. The theorem forms resolve to a constant once the
// horizon and the problem constants are known:
//   theorem1: C / sqrt(t+1)
//   theorem3: min{ (1-beta)/(2L), C/sqrt(t+1) }
//   theorem4: min{ (1-beta)/(2L [1 + ((1-beta)s - 1)^2]), C/sqrt(t+1) }
struct AlphaSchedule {
  ScheduleKind kind = ScheduleKind::constant;
  double alpha0 = 0.1;            // constant / step_decay initial value
  double decay_factor = 0.1;      // step_decay multiplier
  std::vector<long> decay_at;     // step indices where the multiplier applies
  double C = 1.0;                 // theorem forms

  static AlphaSchedule constant(double alpha);
  static AlphaSchedule theorem1(double C);
  static AlphaSchedule theorem3(double C);
  static AlphaSchedule theorem4(double C);
  static AlphaSchedule step_decay(double alpha0, double factor, std::vector<long> decay_at);
};

// Full unified-momentum configuration. s selects the family member:
// s = 0 is heavy-ball, s = 1 is Nesterov, s = 1/(1-beta) is the plain
// gradient method with step alpha/(1-beta).
struct SumConfig {
  double beta = 0.9;  // in [0, 1)
  double s = 1.0;     // >= 0
  AlphaSchedule schedule;
  long horizon = 1;   // total step count t+1

  void validate() const;  // throws std::invalid_argument on bad parameters
};

// Schedule resolved against a problem's constants; alpha_at is then a pure
// function of k. Only step_decay varies with k.
struct ResolvedConfig {
  double beta = 0.0;
  double s = 0.0;
  long horizon = 1;
  double alpha_base = 0.0;
  double decay_factor = 1.0;
  std::vector<long> decay_at;

  double alpha_at(long k) const;
  bool constant_alpha() const { return decay_at.empty(); }
};

ResolvedConfig resolve(const SumConfig& cfg, const ProblemConstants& pc);

// Per-iteration optimizer state.
struct SumState {
  long k = 0;
  ParamVector x;        // x_k
  ParamVector ys_prev;  // y^s_k (y^s_0 = x_0)
  ParamVector avg_x;    // running mean of x_0..x_k
  ParamVector p;        // (beta/(1-beta)) (x_k - x_{k-1} + s a G_{k-1}); zero at k=0
  std::optional<OracleDraw> last_draw;  // G_{k-1}
};

SumState make_state(const ParamVector& x0);

// One unified-momentum step:
//   y_{k+1}    = x_k - a G_k
//   y^s_{k+1}  = x_k - s a G_k
//   x_{k+1}    = y_{k+1} + beta (y^s_{k+1} - y^s_k)
// Requires draw.draw_index == state.k.
SumState um_step(const SumState& state, const ResolvedConfig& cfg, const OracleDraw& draw);

// Native two-step forms, kept for cross-validation of the unified update.
// Heavy ball: x_{k+1} = x_k - a G_k + beta (x_k - x_prev), with x_{-1} = x_0.
ParamVector shb_native_step(const ParamVector& x, const ParamVector& x_prev,
                            const ResolvedConfig& cfg, const OracleDraw& draw);
// Nesterov: y_{k+1} = x_k - a G_k; x_{k+1} = y_{k+1} + beta (y_{k+1} - y_k),
// with y_0 = x_0. Returns (x_{k+1}, y_{k+1}).
std::pair<ParamVector, ParamVector> snag_native_step(const ParamVector& x, const ParamVector& y,
                                                     const ResolvedConfig& cfg,
                                                     const OracleDraw& draw);

const ParamVector& averaged_iterate(const SumState& state);

// Any iterate of norm beyond this (or non-finite) classifies the run as divergent.
inline constexpr double kDivergenceNormLimit = 1e12;

struct RunOptions {
  long record_every = 1;
  bool keep_rows = true;                    // summary is always filled
  std::optional<ParamVector> start;         // overrides problem.start_point()
  std::optional<double> stoch_norm_bound;   // declared M; draws are checked against it
};

// Executes horizon steps from the start point, measuring with the full
// gradient at record points. Rows are recorded at iterates x_k together with
// the draw G_k taken there, so the final row (k = horizon-1) carries exactly
// f(mean of x_0..x_t), min over measured ||grad f||^2 and V_t.
RunMetrics run(const Problem& problem, const OracleSpec& oracle, const SumConfig& cfg,
               const RunOptions& options = {});

}  // namespace sumopt
