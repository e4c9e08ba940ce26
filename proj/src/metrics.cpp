#include "sumopt/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace sumopt {

MetricsTracker::MetricsTracker(const Problem& problem, std::optional<double> stoch_norm_bound)
    : problem_(problem), f_star_(problem.constants().f_star), bound_(stoch_norm_bound),
      min_grad_sq_(std::numeric_limits<double>::infinity()) {}

void MetricsTracker::on_draw(const OracleDraw& d) {
  double delta;
  if (has_prev_) {
    delta = norm2(sub(d.gradient, prev_g_));
  } else {
    delta = norm2(d.gradient);  // G_{-1} = 0
  }
  v_ += delta;
  double n = norm2(d.gradient);
  max_norm_ = std::max(max_norm_, n);
  if (bound_ && n > *bound_) exceeded_ = true;
  prev_g_ = d.gradient;
  has_prev_ = true;
}

RecordRow MetricsTracker::measure(const ParamVector& x, const ParamVector& avg_x, long k,
                                  double alpha) {
  RecordRow row;
  row.k = k;
  row.f_x = problem_.value(x);
  ParamVector g = problem_.gradient(x);
  row.grad_norm_sq = dot(g, g);
  min_grad_sq_ = std::min(min_grad_sq_, row.grad_norm_sq);
  row.min_grad_norm_sq = min_grad_sq_;
  if (f_star_) row.gap_avg = problem_.value(avg_x) - *f_star_;
  if (problem_.has_heldout()) row.heldout_err = problem_.heldout_error(x);
  row.v_k = v_;
  row.alpha = alpha;
  return row;
}

double oscillation_score(const std::vector<double>& series) {
  if (series.size() < 2) throw std::invalid_argument("oscillation_score: need at least 2 points");
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < series.size(); ++i) s += std::abs(series[i + 1] - series[i]);
  return s / double(series.size() - 1);
}

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct CellStats {
  double mean = kNan;
  double sem = kNan;
};

CellStats cell_stats(const std::vector<double>& vals) {
  CellStats st;
  if (vals.empty()) return st;
  double sum = 0.0;
  for (double v : vals) sum += v;
  st.mean = sum / double(vals.size());
  if (vals.size() >= 2) {
    double ss = 0.0;
    for (double v : vals) ss += (v - st.mean) * (v - st.mean);
    st.sem = std::sqrt(ss / double(vals.size() - 1)) / std::sqrt(double(vals.size()));
  }
  return st;
}

}  // namespace

AggregateMetrics aggregate(const std::vector<RunMetrics>& runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate: empty run list");

  std::vector<const RunMetrics*> ok;
  std::size_t divergent = 0;
  for (const auto& r : runs) {
    if (r.summary.diverged) {
      ++divergent;
    } else {
      ok.push_back(&r);
    }
  }

  AggregateMetrics agg;
  agg.divergent_count = divergent;
  agg.seed_count = ok.size();
  if (ok.empty()) return agg;

  const auto& grid = ok.front()->rows;
  agg.ks.reserve(grid.size());
  for (const auto& row : grid) agg.ks.push_back(row.k);
  for (const auto* r : ok) {
    if (r->rows.size() != grid.size()) throw std::invalid_argument("aggregate: record grids differ");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (r->rows[i].k != grid[i].k) throw std::invalid_argument("aggregate: record grids differ");
    }
  }

  auto fill = [&](AggregateColumn& col, auto getter, bool optional_col) {
    col.present = true;
    col.mean.resize(agg.ks.size(), kNan);
    col.sem.resize(agg.ks.size(), kNan);
    for (std::size_t i = 0; i < agg.ks.size(); ++i) {
      std::vector<double> vals;
      vals.reserve(ok.size());
      for (const auto* r : ok) {
        auto v = getter(r->rows[i]);
        if (!v) {
          if (optional_col) {
            col.present = false;
            return;
          }
          throw std::logic_error("aggregate: missing required column value");
        }
        vals.push_back(*v);
      }
      CellStats st = cell_stats(vals);
      col.mean[i] = st.mean;
      col.sem[i] = st.sem;
    }
  };

  using Row = RecordRow;
  fill(agg.f_x, [](const Row& r) { return std::optional<double>(r.f_x); }, false);
  fill(agg.gap_avg, [](const Row& r) { return r.gap_avg; }, true);
  fill(agg.grad_norm_sq, [](const Row& r) { return std::optional<double>(r.grad_norm_sq); }, false);
  fill(agg.min_grad_norm_sq, [](const Row& r) { return std::optional<double>(r.min_grad_norm_sq); },
       false);
  fill(agg.v_k, [](const Row& r) { return std::optional<double>(r.v_k); }, false);
  fill(agg.heldout_err, [](const Row& r) { return r.heldout_err; }, true);
  fill(agg.alpha, [](const Row& r) { return std::optional<double>(r.alpha); }, false);
  return agg;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string cell_nan_empty(double v) { return std::isnan(v) ? std::string() : format_double(v); }

}  // namespace

const char* const kRunCsvHeader =
    "k,f_x,gap_avg,grad_norm_sq,min_grad_norm_sq,V_k,heldout_err,alpha";

const char* const kAggregateCsvHeader =
    "k,n,f_x_mean,f_x_sem,gap_avg_mean,gap_avg_sem,grad_norm_sq_mean,grad_norm_sq_sem,"
    "min_grad_norm_sq_mean,min_grad_norm_sq_sem,V_k_mean,V_k_sem,heldout_err_mean,heldout_err_sem,"
    "alpha_mean,alpha_sem";

void write_run_csv(std::ostream& os, const RunMetrics& m) {
  os << kRunCsvHeader << '\n';
  for (const auto& r : m.rows) {
    os << r.k << ',' << format_double(r.f_x) << ',' << cell(r.gap_avg) << ','
       << format_double(r.grad_norm_sq) << ',' << format_double(r.min_grad_norm_sq) << ','
       << format_double(r.v_k) << ',' << cell(r.heldout_err) << ',' << format_double(r.alpha)
       << '\n';
  }
}

void write_aggregate_csv(std::ostream& os, const AggregateMetrics& agg) {
  os << kAggregateCsvHeader << '\n';
  auto col = [](const AggregateColumn& c, std::size_t i) -> std::string {
    if (!c.present) return ",";
    return cell_nan_empty(c.mean[i]) + "," + cell_nan_empty(c.sem[i]);
  };
  for (std::size_t i = 0; i < agg.ks.size(); ++i) {
    os << agg.ks[i] << ',' << agg.seed_count << ',' << col(agg.f_x, i) << ',' << col(agg.gap_avg, i)
       << ',' << col(agg.grad_norm_sq, i) << ',' << col(agg.min_grad_norm_sq, i) << ','
       << col(agg.v_k, i) << ',' << col(agg.heldout_err, i) << ',' << col(agg.alpha, i) << '\n';
  }
}

}  // namespace sumopt
