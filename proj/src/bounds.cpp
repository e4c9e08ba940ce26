#include "sumopt/bounds.hpp"

#include <cmath>

namespace sumopt {

namespace {

double require(const std::optional<double>& v, const char* symbol) {
  if (!v) throw missing_constant_error(symbol);
  return *v;
}

void require_convex(const BoundInput& in) {
  if (in.constants.convexity == ConvexityClass::smooth_nonconvex) {
    throw std::invalid_argument("bound requires a convex problem class");
  }
}

void check_common(const BoundInput& in) {
  if (!(in.beta >= 0.0 && in.beta < 1.0)) throw std::invalid_argument("bound: beta out of [0,1)");
  if (in.t_plus_1 < 1) throw std::invalid_argument("bound: t+1 must be >= 1");
  if (in.f0_gap < 0.0 || in.dist0_sq < 0.0)
    throw std::invalid_argument("bound: f0_gap and dist0_sq must be nonnegative");
}

}  // namespace

double bound_thm1(const BoundInput& in) {
  check_common(in);
  require_convex(in);
  double G = require(in.constants.G, "G");
  double d2 = require(in.constants.delta2, "delta2");
  if (!(in.C > 0.0)) throw std::invalid_argument("bound_thm1: C must be positive");

  double t1 = double(in.t_plus_1);
  double root = std::sqrt(t1);
  double omb = 1.0 - in.beta;
  return in.beta * in.f0_gap / (omb * t1) + omb * in.dist0_sq / (2.0 * in.C * root) +
         in.C * (1.0 + 2.0 * in.s * in.beta) * (G * G + d2) / (2.0 * omb * root);
}

double bound_thm2(const BoundInput& in) {
  check_common(in);
  require_convex(in);
  if (in.s * in.beta < 0.5) {
    throw std::invalid_argument("bound_thm2: requires s*beta >= 1/2");
  }
  double M = require(in.constants.M, "M");
  if (!in.v_t) throw missing_constant_error("V_t");
  if (!(in.alpha > 0.0)) throw std::invalid_argument("bound_thm2: alpha must be positive");

  double t1 = double(in.t_plus_1);
  double omb = 1.0 - in.beta;
  return in.beta * in.f0_gap / (omb * t1) + omb * in.dist0_sq / (2.0 * in.alpha * t1) +
         in.s * in.alpha * in.beta * M * *in.v_t / (omb * t1);
}

namespace {

double nonconvex_bound(const BoundInput& in, bool per_variant_cap) {
  check_common(in);
  double L = require(in.constants.L, "L");
  double G = require(in.constants.G, "G");
  double s2 = require(in.constants.delta2, "delta2");  // sigma^2
  if (!(in.C > 0.0)) throw std::invalid_argument("bound: C must be positive");

  double t1 = double(in.t_plus_1);
  double root = std::sqrt(t1);
  double omb = 1.0 - in.beta;
  double c = omb * in.s - 1.0;

  double lead, momentum_term;
  if (per_variant_cap) {
    lead = std::max(2.0 * L * (1.0 + c * c) / omb, root / in.C);
    momentum_term = L * in.beta * in.beta * (G * G + s2);
  } else {
    lead = std::max(2.0 * L / omb, root / in.C);
    momentum_term = L * in.beta * in.beta * c * c * (G * G + s2);
  }
  double first = 2.0 * in.f0_gap * omb / t1 * lead;
  double second = in.C / root * (momentum_term + L * s2 * omb * omb) / (omb * omb * omb);
  return first + second;
}

}  // namespace

double bound_thm3(const BoundInput& in) { return nonconvex_bound(in, false); }

double bound_thm4(const BoundInput& in) { return nonconvex_bound(in, true); }

double recommend_alpha(TheoremId theorem, const ProblemConstants& constants, double beta, double s,
                       double C, long t_plus_1) {
  if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("recommend_alpha: beta out of [0,1)");
  if (!(C > 0.0)) throw std::invalid_argument("recommend_alpha: C must be positive");
  if (t_plus_1 < 1) throw std::invalid_argument("recommend_alpha: t+1 must be >= 1");

  double root_term = C / std::sqrt(double(t_plus_1));
  switch (theorem) {
    case TheoremId::thm1:
      return root_term;
    case TheoremId::thm3: {
      double L = require(constants.L, "L");
      return std::min((1.0 - beta) / (2.0 * L), root_term);
    }
    case TheoremId::thm4: {
      double L = require(constants.L, "L");
      double c = (1.0 - beta) * s - 1.0;
      return std::min((1.0 - beta) / (2.0 * L * (1.0 + c * c)), root_term);
    }
  }
  throw std::logic_error("recommend_alpha: unknown theorem");
}

}  // namespace sumopt
