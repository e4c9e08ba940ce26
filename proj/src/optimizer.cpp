#include "sumopt/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace sumopt {

const char* to_string(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::constant: return "constant";
    case ScheduleKind::theorem1: return "theorem1";
    case ScheduleKind::theorem3: return "theorem3";
    case ScheduleKind::theorem4: return "theorem4";
    case ScheduleKind::step_decay: return "step_decay";
  }
  return "?";
}

ScheduleKind schedule_from_string(const std::string& s) {
  if (s == "constant") return ScheduleKind::constant;
  if (s == "theorem1") return ScheduleKind::theorem1;
  if (s == "theorem3") return ScheduleKind::theorem3;
  if (s == "theorem4") return ScheduleKind::theorem4;
  if (s == "step_decay" || s == "step-decay") return ScheduleKind::step_decay;
  throw std::invalid_argument("unknown schedule: " + s);
}

AlphaSchedule AlphaSchedule::constant(double alpha) {
  AlphaSchedule a;
  a.kind = ScheduleKind::constant;
  a.alpha0 = alpha;
  return a;
}

AlphaSchedule AlphaSchedule::theorem1(double C) {
  AlphaSchedule a;
  a.kind = ScheduleKind::theorem1;
  a.C = C;
  return a;
}

AlphaSchedule AlphaSchedule::theorem3(double C) {
  AlphaSchedule a;
  a.kind = ScheduleKind::theorem3;
  a.C = C;
  return a;
}

AlphaSchedule AlphaSchedule::theorem4(double C) {
  AlphaSchedule a;
  a.kind = ScheduleKind::theorem4;
  a.C = C;
  return a;
}

AlphaSchedule AlphaSchedule::step_decay(double alpha0, double factor, std::vector<long> decay_at) {
  AlphaSchedule a;
  a.kind = ScheduleKind::step_decay;
  a.alpha0 = alpha0;
  a.decay_factor = factor;
  a.decay_at = std::move(decay_at);
  return a;
}

void SumConfig::validate() const {
  if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("SumConfig: beta must be in [0,1)");
  if (!(s >= 0.0)) throw std::invalid_argument("SumConfig: s must be >= 0");
  if (horizon < 1) throw std::invalid_argument("SumConfig: horizon must be >= 1");
  switch (schedule.kind) {
    case ScheduleKind::constant:
      if (!(schedule.alpha0 > 0.0)) throw std::invalid_argument("SumConfig: alpha0 must be > 0");
      break;
    case ScheduleKind::theorem1:
    case ScheduleKind::theorem3:
    case ScheduleKind::theorem4:
      if (!(schedule.C > 0.0)) throw std::invalid_argument("SumConfig: C must be > 0");
      break;
    case ScheduleKind::step_decay:
      if (!(schedule.alpha0 > 0.0)) throw std::invalid_argument("SumConfig: alpha0 must be > 0");
      if (!(schedule.decay_factor > 0.0))
        throw std::invalid_argument("SumConfig: decay_factor must be > 0");
      for (long d : schedule.decay_at) {
        if (d < 0) throw std::invalid_argument("SumConfig: decay steps must be nonnegative");
      }
      break;
  }
}

double ResolvedConfig::alpha_at(long k) const {
  double a = alpha_base;
  for (long d : decay_at) {
    if (k >= d) a *= decay_factor;
  }
  return a;
}

ResolvedConfig resolve(const SumConfig& cfg, const ProblemConstants& pc) {
  cfg.validate();
  ResolvedConfig rc;
  rc.beta = cfg.beta;
  rc.s = cfg.s;
  rc.horizon = cfg.horizon;

  double root = std::sqrt(double(cfg.horizon));
  switch (cfg.schedule.kind) {
    case ScheduleKind::constant:
      rc.alpha_base = cfg.schedule.alpha0;
      break;
    case ScheduleKind::theorem1:
      rc.alpha_base = cfg.schedule.C / root;
      break;
    case ScheduleKind::theorem3: {
      if (!pc.L) throw std::invalid_argument("resolve: theorem3 schedule needs constant L");
      rc.alpha_base = std::min((1.0 - cfg.beta) / (2.0 * *pc.L), cfg.schedule.C / root);
      break;
    }
    case ScheduleKind::theorem4: {
      if (!pc.L) throw std::invalid_argument("resolve: theorem4 schedule needs constant L");
      double c = (1.0 - cfg.beta) * cfg.s - 1.0;
      rc.alpha_base =
          std::min((1.0 - cfg.beta) / (2.0 * *pc.L * (1.0 + c * c)), cfg.schedule.C / root);
      break;
    }
    case ScheduleKind::step_decay:
      rc.alpha_base = cfg.schedule.alpha0;
      rc.decay_factor = cfg.schedule.decay_factor;
      rc.decay_at = cfg.schedule.decay_at;
      break;
  }
  return rc;
}

SumState make_state(const ParamVector& x0) {
  SumState st;
  st.k = 0;
  st.x = x0;
  st.ys_prev = x0;
  st.avg_x = x0;
  st.p = ParamVector(x0.dim(), 0.0);
  return st;
}

SumState um_step(const SumState& state, const ResolvedConfig& cfg, const OracleDraw& draw) {
  if (draw.draw_index != state.k) {
    throw std::invalid_argument("um_step: draw index does not match state counter");
  }
  const ParamVector& g = draw.gradient;
  if (g.dim() != state.x.dim()) throw std::invalid_argument("um_step: gradient dimension mismatch");

  double a = cfg.alpha_at(state.k);
  ParamVector y_next = axpy(-a, g, state.x);
  ParamVector ys_next = axpy(-cfg.s * a, g, state.x);

  SumState next;
  next.k = state.k + 1;
  next.x = axpy(cfg.beta, sub(ys_next, state.ys_prev), y_next);

  // p_{k+1} = (beta/(1-beta)) (x_{k+1} - x_k + s a G_k)
  ParamVector disp = sub(next.x, state.x);
  axpy_inplace(cfg.s * a, g, disp);
  next.p = scale(cfg.beta / (1.0 - cfg.beta), disp);

  next.avg_x = axpy(1.0 / double(next.k + 1), sub(next.x, state.avg_x), state.avg_x);
  next.ys_prev = std::move(ys_next);
  next.last_draw = draw;
  return next;
}

ParamVector shb_native_step(const ParamVector& x, const ParamVector& x_prev,
                            const ResolvedConfig& cfg, const OracleDraw& draw) {
  double a = cfg.alpha_at(draw.draw_index);
  ParamVector next = axpy(-a, draw.gradient, x);
  axpy_inplace(cfg.beta, sub(x, x_prev), next);
  return next;
}

std::pair<ParamVector, ParamVector> snag_native_step(const ParamVector& x, const ParamVector& y,
                                                     const ResolvedConfig& cfg,
                                                     const OracleDraw& draw) {
  double a = cfg.alpha_at(draw.draw_index);
  ParamVector y_next = axpy(-a, draw.gradient, x);
  ParamVector x_next = axpy(cfg.beta, sub(y_next, y), y_next);
  return {std::move(x_next), std::move(y_next)};
}

const ParamVector& averaged_iterate(const SumState& state) { return state.avg_x; }

RunMetrics run(const Problem& problem, const OracleSpec& oracle, const SumConfig& cfg,
               const RunOptions& options) {
  cfg.validate();
  if (options.record_every < 1) throw std::invalid_argument("run: record_every must be >= 1");
  ResolvedConfig rc = resolve(cfg, problem.constants());

  const ParamVector& x0 = options.start ? *options.start : problem.start_point();
  if (x0.dim() != problem.dim()) throw std::invalid_argument("run: start point dimension mismatch");

  RunMetrics out;
  out.summary.seed = oracle.seed;
  out.summary.f0 = problem.value(x0);

  MetricsTracker tracker(problem, options.stoch_norm_bound);
  std::optional<double> box = problem.constants().box_radius;

  auto t0 = std::chrono::steady_clock::now();
  SumState st = make_state(x0);
  if (box && norm_inf(st.x) > *box) out.summary.box_violated = true;

  for (long k = 0; k < cfg.horizon; ++k) {
    OracleDraw d = draw(oracle, problem, st.x, k);
    tracker.on_draw(d);

    bool final_step = (k == cfg.horizon - 1);
    if (final_step || k % options.record_every == 0) {
      RecordRow row = tracker.measure(st.x, st.avg_x, k, rc.alpha_at(k));
      if (options.keep_rows) out.rows.push_back(row);
      out.summary.final_f = row.f_x;
      out.summary.final_gap = row.gap_avg;
      out.summary.final_min_grad_sq = row.min_grad_norm_sq;
      out.summary.final_v = row.v_k;
      out.summary.final_heldout = row.heldout_err;
      out.summary.final_avg_x = st.avg_x;
    }

    SumState next = um_step(st, rc, d);
    out.summary.steps_done = k + 1;
    if (!next.x.all_finite() || norm2(next.x) > kDivergenceNormLimit) {
      out.summary.diverged = true;
      out.summary.diverged_at = k + 1;
      break;
    }
    if (box && norm_inf(next.x) > *box) out.summary.box_violated = true;
    st = std::move(next);
  }

  out.summary.max_stoch_norm = tracker.max_stoch_norm();
  out.summary.stoch_norm_exceeded = tracker.norm_exceeded();
  out.summary.final_x = st.x;
  out.summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace sumopt
