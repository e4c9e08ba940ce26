#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumopt/optimizer.hpp"

namespace sumopt {

struct IdentityReport {
  std::string identity_name;
  double max_abs_error = 0.0;
  long steps_checked = 0;
  double tolerance = 1e-10;
  bool passed = false;   // max_abs_error <= tolerance (vacuously true when skipped)
  bool skipped = false;  // identity not applicable to this configuration
  std::string note;
};

// Full recorded history of a run with constant step size: iterates x_0..x_T
// and the draws G_0..G_{T-1} that produced them. All identity checks replay
// this record with independent arithmetic; none of them read optimizer state.
struct Trajectory {
  std::vector<ParamVector> xs;
  std::vector<OracleDraw> draws;
  double alpha = 0.0;
  double beta = 0.0;
  double s = 0.0;
};

Trajectory record_trajectory(const Problem& problem, const OracleSpec& oracle,
                             const SumConfig& cfg, long steps,
                             const std::optional<ParamVector>& start = std::nullopt);

// z-recursion: x_{k+1} + p_{k+1} = x_k + p_k - (a/(1-beta)) G_k, with p_k
// rebuilt from its definition (beta/(1-beta))(x_k - x_{k-1} + s a G_{k-1}).
IdentityReport check_z_recursion(const Trajectory& t);

// v-recursion v_{k+1} = beta v_k + ((1-beta)s - 1) a G_k together with the
// relation v_k = ((1-beta)/beta) p_k. Undefined at beta = 0: reported skipped.
IdentityReport check_v_recursion(const Trajectory& t);

// Closed form v_k = a((1-beta)s - 1) sum_{i<k} beta^{k-1-i} G_i, plus the
// geometric-sum identity Gamma_{k-1} = (1 - beta^k)/(1 - beta).
IdentityReport check_v_closed_form(const Trajectory& t);

// With s = 1/(1-beta) the whole update collapses to x_{k+1} = x_k -
// (a/(1-beta)) G_k; runs both loops on shared counter-addressed draws and
// reports the worst iterate discrepancy.
IdentityReport check_gd_equivalence(const Problem& problem, const OracleSpec& oracle,
                                    const SumConfig& cfg, long steps, double tolerance = 1e-9,
                                    const std::optional<ParamVector>& start = std::nullopt);

// Randomized battery over (problem, oracle, dim, beta, s, alpha) tuples;
// returns one aggregated report per identity, worst error across trials.
std::vector<IdentityReport> verify_battery(std::uint64_t seed, int trials, long steps);

}  // namespace sumopt
