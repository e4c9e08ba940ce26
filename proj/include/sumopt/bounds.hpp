#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "sumopt/problems.hpp"

namespace sumopt {

struct missing_constant_error : std::invalid_argument {
  explicit missing_constant_error(const std::string& sym)
      : std::invalid_argument("missing constant: " + sym), symbol(sym) {}
  std::string symbol;
};

// Inputs for the rate-bound evaluators. f0_gap and dist0_sq are measured
// from the actual run start, not assumed.
struct BoundInput {
  double f0_gap = 0.0;    // f(x_0) - f_star
  double dist0_sq = 0.0;  // ||x_0 - x_*||^2
  ProblemConstants constants;
  double beta = 0.0;
  double s = 0.0;
  double C = 1.0;
  double alpha = 0.0;          // step size actually used (thm2)
  long t_plus_1 = 1;           // iteration count t+1
  std::optional<double> v_t;   // measured variational sum (thm2)
};

// Convex, ||subgrad|| <= G, oracle variance <= delta^2, alpha = C/sqrt(t+1):
//   beta f0_gap / ((1-beta)(t+1))
//   + (1-beta) dist0_sq / (2C sqrt(t+1))
//   + C (1+2s beta)(G^2 + delta^2) / (2(1-beta) sqrt(t+1))
double bound_thm1(const BoundInput& in);

// Convex, ||G(x;xi)|| <= M, s beta >= 1/2, any constant alpha:
//   beta f0_gap / ((1-beta)(t+1))
//   + (1-beta) dist0_sq / (2 alpha (t+1))
//   + s alpha beta M V_t / ((1-beta)(t+1))
double bound_thm2(const BoundInput& in);

// L-smooth nonconvex, ||grad|| <= G, variance <= sigma^2,
// alpha = min{(1-beta)/(2L), C/sqrt(t+1)}:
//   2 f0_gap (1-beta)/(t+1) max{2L/(1-beta), sqrt(t+1)/C}
//   + (C/sqrt(t+1)) [L beta^2 ((1-beta)s - 1)^2 (G^2+sigma^2) + L sigma^2 (1-beta)^2] / (1-beta)^3
double bound_thm3(const BoundInput& in);

// Same setting with the per-variant step cap
// alpha = min{(1-beta)/(2L[1+((1-beta)s-1)^2]), C/sqrt(t+1)}:
//   2 f0_gap (1-beta)/(t+1) max{2L[1+((1-beta)s-1)^2]/(1-beta), sqrt(t+1)/C}
//   + (C/sqrt(t+1)) [L beta^2 (G^2+sigma^2) + L sigma^2 (1-beta)^2] / (1-beta)^3
double bound_thm4(const BoundInput& in);

enum class TheoremId { thm1 = 1, thm3 = 3, thm4 = 4 };

// The step size each theorem prescribes.
double recommend_alpha(TheoremId theorem, const ProblemConstants& constants, double beta, double s,
                       double C, long t_plus_1);

}  // namespace sumopt
