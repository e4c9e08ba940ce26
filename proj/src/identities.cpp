#include "sumopt/identities.hpp"

#include <cmath>
#include <stdexcept>

#include "sumopt/rng.hpp"

namespace sumopt {

namespace {

// p_k from its definition, independent of the stepper's bookkeeping
std::vector<ParamVector> rebuild_p(const Trajectory& t) {
  std::vector<ParamVector> p;
  p.reserve(t.xs.size());
  p.emplace_back(t.xs.front().dim(), 0.0);
  for (std::size_t k = 1; k < t.xs.size(); ++k) {
    ParamVector d = sub(t.xs[k], t.xs[k - 1]);
    axpy_inplace(t.s * t.alpha, t.draws[k - 1].gradient, d);
    p.push_back(scale(t.beta / (1.0 - t.beta), d));
  }
  return p;
}

void require_trajectory(const Trajectory& t) {
  if (t.xs.size() < 2 || t.draws.size() + 1 != t.xs.size()) {
    throw std::invalid_argument("identity check: malformed trajectory");
  }
}

}  // namespace

Trajectory record_trajectory(const Problem& problem, const OracleSpec& oracle,
                             const SumConfig& cfg, long steps,
                             const std::optional<ParamVector>& start) {
  cfg.validate();
  ResolvedConfig rc = resolve(cfg, problem.constants());
  if (!rc.constant_alpha()) {
    throw std::invalid_argument("record_trajectory: identities assume a constant step size");
  }

  Trajectory t;
  t.alpha = rc.alpha_base;
  t.beta = rc.beta;
  t.s = rc.s;

  SumState st = make_state(start ? *start : problem.start_point());
  t.xs.push_back(st.x);
  for (long k = 0; k < steps; ++k) {
    OracleDraw d = draw(oracle, problem, st.x, k);
    st = um_step(st, rc, d);
    t.draws.push_back(std::move(d));
    t.xs.push_back(st.x);
  }
  return t;
}

IdentityReport check_z_recursion(const Trajectory& t) {
  require_trajectory(t);
  IdentityReport rep;
  rep.identity_name = "z_recursion";
  rep.tolerance = 1e-10;

  std::vector<ParamVector> p = rebuild_p(t);
  double step = t.alpha / (1.0 - t.beta);
  for (std::size_t k = 0; k + 1 < t.xs.size(); ++k) {
    ParamVector lhs = add(t.xs[k + 1], p[k + 1]);
    ParamVector rhs = axpy(-step, t.draws[k].gradient, add(t.xs[k], p[k]));
    rep.max_abs_error = std::max(rep.max_abs_error, max_abs_diff(lhs, rhs));
    ++rep.steps_checked;
  }
  rep.passed = rep.max_abs_error <= rep.tolerance;
  return rep;
}

IdentityReport check_v_recursion(const Trajectory& t) {
  require_trajectory(t);
  IdentityReport rep;
  rep.identity_name = "v_recursion";
  rep.tolerance = 1e-10;

  if (t.beta == 0.0) {
    rep.skipped = true;
    rep.passed = true;
    rep.note = "beta=0: v = ((1-beta)/beta) p undefined";
    return rep;
  }

  std::vector<ParamVector> p = rebuild_p(t);
  double coeff = ((1.0 - t.beta) * t.s - 1.0) * t.alpha;
  ParamVector v(t.xs.front().dim(), 0.0);  // v_0 = 0
  for (std::size_t k = 0; k < t.xs.size(); ++k) {
    ParamVector v_from_p = scale((1.0 - t.beta) / t.beta, p[k]);
    rep.max_abs_error = std::max(rep.max_abs_error, max_abs_diff(v, v_from_p));
    ++rep.steps_checked;
    if (k < t.draws.size()) {
      v = axpy(coeff, t.draws[k].gradient, scale(t.beta, v));
    }
  }
  rep.passed = rep.max_abs_error <= rep.tolerance;
  return rep;
}

IdentityReport check_v_closed_form(const Trajectory& t) {
  require_trajectory(t);
  IdentityReport rep;
  rep.identity_name = "v_closed_form";
  rep.tolerance = 1e-9;

  double alpha_hat = t.alpha * ((1.0 - t.beta) * t.s - 1.0);
  double coeff = alpha_hat;  // recursion increment coefficient equals alpha_hat
  ParamVector v(t.xs.front().dim(), 0.0);
  for (std::size_t k = 0; k < t.xs.size(); ++k) {
    // explicit geometric sum v_k = alpha_hat sum_{i=0}^{k-1} beta^{k-1-i} G_i
    ParamVector v_sum(t.xs.front().dim(), 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      axpy_inplace(alpha_hat * std::pow(t.beta, double(k - 1 - i)), t.draws[i].gradient, v_sum);
    }
    rep.max_abs_error = std::max(rep.max_abs_error, max_abs_diff(v, v_sum));

    // Gamma_{k-1} = sum_{i<k} beta^i = (1 - beta^k)/(1 - beta)
    double gamma_direct = 0.0;
    for (std::size_t i = 0; i < k; ++i) gamma_direct += std::pow(t.beta, double(i));
    double gamma_closed = (1.0 - std::pow(t.beta, double(k))) / (1.0 - t.beta);
    rep.max_abs_error = std::max(rep.max_abs_error, std::abs(gamma_direct - gamma_closed));

    ++rep.steps_checked;
    if (k < t.draws.size()) v = axpy(coeff, t.draws[k].gradient, scale(t.beta, v));
  }
  rep.passed = rep.max_abs_error <= rep.tolerance;
  return rep;
}

IdentityReport check_gd_equivalence(const Problem& problem, const OracleSpec& oracle,
                                    const SumConfig& cfg, long steps, double tolerance,
                                    const std::optional<ParamVector>& start) {
  IdentityReport rep;
  rep.identity_name = "gd_equivalence";
  rep.tolerance = tolerance;

  double s_gd = 1.0 / (1.0 - cfg.beta);
  if (std::abs(cfg.s - s_gd) > 1e-12) {
    throw std::invalid_argument("check_gd_equivalence: requires s = 1/(1-beta)");
  }
  ResolvedConfig rc = resolve(cfg, problem.constants());
  if (!rc.constant_alpha()) {
    throw std::invalid_argument("check_gd_equivalence: requires constant step size");
  }

  const ParamVector& x0 = start ? *start : problem.start_point();
  SumState st = make_state(x0);
  ParamVector x_gd = x0;
  double step = rc.alpha_base / (1.0 - rc.beta);
  for (long k = 0; k < steps; ++k) {
    st = um_step(st, rc, draw(oracle, problem, st.x, k));
    x_gd = axpy(-step, draw(oracle, problem, x_gd, k).gradient, x_gd);
    rep.max_abs_error = std::max(rep.max_abs_error, max_abs_diff(st.x, x_gd));
    ++rep.steps_checked;
  }
  rep.passed = rep.max_abs_error <= rep.tolerance;
  return rep;
}

std::vector<IdentityReport> verify_battery(std::uint64_t seed, int trials, long steps) {
  IdentityReport z{"z_recursion", 0.0, 0, 1e-10, true, false, ""};
  IdentityReport v{"v_recursion", 0.0, 0, 1e-10, true, false, ""};
  IdentityReport c{"v_closed_form", 0.0, 0, 1e-9, true, false, ""};
  IdentityReport g{"gd_equivalence", 0.0, 0, 1e-9, true, false, ""};

  auto fold = [](IdentityReport& into, const IdentityReport& one) {
    if (one.skipped) return;
    into.max_abs_error = std::max(into.max_abs_error, one.max_abs_error);
    into.steps_checked += one.steps_checked;
    into.passed = into.passed && one.passed;
  };

  for (int trial = 0; trial < trials; ++trial) {
    CounterRng rng(seed, std::uint64_t(trial) + 0x1d0);

    std::size_t dim = 1 + rng.next_below(20);
    double beta;
    switch (rng.next_below(4)) {
      case 0: beta = 0.0; break;
      case 1: beta = 0.99; break;
      default: beta = 0.99 * rng.next_uniform();
    }
    double s;
    switch (rng.next_below(4)) {
      case 0: s = 0.0; break;
      case 1: s = 1.0; break;
      case 2: s = 1.0 / (1.0 - beta); break;
      default: s = 12.0 * rng.next_uniform();
    }

    // Smooth problems use the per-variant stability cap
    // (1-beta)/(2L[1+((1-beta)s-1)^2]); beyond it the momentum recursion on a
    // quadratic has a characteristic root outside the unit circle and the
    // replayed trajectories explode. abs_loss is a translation map and safely
    // runs the full alpha, beta, s ranges.
    double sc = (1.0 - beta) * s - 1.0;
    double variant_cap = (1.0 - beta) / (2.0 * (1.0 + sc * sc));  // times 1/L below
    ProblemPtr problem;
    double alpha_cap = 0.1;
    switch (rng.next_below(3)) {
      case 0: {
        double cond = 1.0 + 9.0 * rng.next_uniform();
        problem = make_quadratic(dim, cond, rng.next_u64());
        alpha_cap = std::min(alpha_cap, 0.9 * variant_cap / cond);
        break;
      }
      case 1: problem = make_abs_loss(dim); break;
      default:
        problem = make_softlog(dim);
        alpha_cap = std::min(alpha_cap, 0.9 * variant_cap / 2.0);
        break;
    }
    double alpha = alpha_cap * (0.1 + 0.9 * rng.next_uniform());

    OracleSpec oracle;
    oracle.seed = rng.next_u64();
    oracle.kind = rng.next_below(2) == 0 ? OracleKind::deterministic : OracleKind::additive_gaussian;
    oracle.noise_std = oracle.kind == OracleKind::additive_gaussian ? rng.next_uniform() : 0.0;

    SumConfig cfg;
    cfg.beta = beta;
    cfg.s = s;
    cfg.schedule = AlphaSchedule::constant(alpha);
    cfg.horizon = steps;

    Trajectory t = record_trajectory(*problem, oracle, cfg, steps);
    fold(z, check_z_recursion(t));
    fold(v, check_v_recursion(t));
    fold(c, check_v_closed_form(t));

    SumConfig gd_cfg = cfg;
    gd_cfg.s = 1.0 / (1.0 - beta);
    fold(g, check_gd_equivalence(*problem, oracle, gd_cfg, steps));
  }

  return {z, v, c, g};
}

}  // namespace sumopt
