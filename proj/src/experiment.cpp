#include "sumopt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace sumopt {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string VariantSpec::tag() const {
  std::string sched;
  switch (schedule.kind) {
    case ScheduleKind::constant: sched = "const" + num(schedule.alpha0); break;
    case ScheduleKind::theorem1: sched = "thm1C" + num(schedule.C); break;
    case ScheduleKind::theorem3: sched = "thm3C" + num(schedule.C); break;
    case ScheduleKind::theorem4: sched = "thm4C" + num(schedule.C); break;
    case ScheduleKind::step_decay:
      sched = "decay" + num(schedule.alpha0) + "x" + num(schedule.decay_factor);
      break;
  }
  return "s" + num(s) + "_beta" + num(beta) + "_" + sched;
}

std::vector<VariantSpec> ExperimentConfig::variants() const {
  std::vector<AlphaSchedule> schedules;
  if (alpha_list.empty()) {
    schedules.push_back(schedule);
  } else {
    for (double a : alpha_list) schedules.push_back(AlphaSchedule::constant(a));
  }
  std::vector<VariantSpec> out;
  for (double b : beta_list) {
    for (double sv : s_list) {
      for (const auto& sched : schedules) out.push_back({sv, b, sched});
    }
  }
  return out;
}

void ExperimentConfig::validate() const {
  static const char* known[] = {"quadratic", "abs_loss", "softlog", "logreg", "tiny_mlp"};
  if (std::find(std::begin(known), std::end(known), problem) == std::end(known)) {
    throw std::invalid_argument("config: unknown problem: " + problem);
  }
  if (s_list.empty() || beta_list.empty()) throw std::invalid_argument("config: empty variant list");
  if (horizon < 1) throw std::invalid_argument("config: horizon must be >= 1");
  if (record_every < 1) throw std::invalid_argument("config: record_every must be >= 1");
  if (seeds < 1) throw std::invalid_argument("config: seeds must be >= 1");
  if (jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
  if (noise_std < 0.0) throw std::invalid_argument("config: noise_std must be >= 0");
  if (oracle == OracleKind::minibatch && batch_size < 1) {
    throw std::invalid_argument("config: batch_size must be >= 1");
  }
  for (const auto& v : variants()) {
    SumConfig cfg{v.beta, v.s, v.schedule, horizon};
    cfg.validate();  // throws with the offending parameter
  }
}

// ---------------------------------------------------------------------------
// config text
// ---------------------------------------------------------------------------

namespace {

class KvReader {
 public:
  explicit KvReader(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::string stripped = line;
      if (auto h = stripped.find('#'); h != std::string::npos) stripped = stripped.substr(0, h);
      stripped = trim(stripped);
      if (stripped.empty()) continue;
      auto eq = stripped.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
      }
      std::string key = trim(stripped.substr(0, eq));
      std::string val = trim(stripped.substr(eq + 1));
      if (key.empty()) throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
      kv_[key] = val;
    }
  }

  bool has(const std::string& key) {
    if (kv_.count(key)) {
      used_.insert(kv_.find(key)->first);
      return true;
    }
    return false;
  }

  std::string str(const std::string& key, const std::string& def) {
    return has(key) ? kv_[key] : def;
  }

  double real(const std::string& key, double def) {
    if (!has(key)) return def;
    return parse_real(key, kv_[key]);
  }

  long integer(const std::string& key, long def) {
    if (!has(key)) return def;
    return parse_long(key, kv_[key]);
  }

  std::uint64_t u64(const std::string& key, std::uint64_t def) {
    if (!has(key)) return def;
    long v = parse_long(key, kv_[key]);
    if (v < 0) throw std::invalid_argument("config: " + key + " must be nonnegative");
    return std::uint64_t(v);
  }

  std::vector<double> real_list(const std::string& key, std::vector<double> def) {
    if (!has(key)) return def;
    std::vector<double> out;
    for (const auto& item : split(kv_[key], ',')) {
      std::string t = trim(item);
      if (t.empty()) continue;
      out.push_back(parse_real(key, t));
    }
    return out;
  }

  std::vector<long> int_list(const std::string& key, std::vector<long> def) {
    if (!has(key)) return def;
    std::vector<long> out;
    for (const auto& item : split(kv_[key], ',')) {
      std::string t = trim(item);
      if (t.empty()) continue;
      out.push_back(parse_long(key, t));
    }
    return out;
  }

  void reject_unknown() const {
    for (const auto& [k, v] : kv_) {
      if (!used_.count(k)) throw std::invalid_argument("config: unknown key: " + k);
    }
  }

 private:
  static double parse_real(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double r;
    try {
      r = std::stod(v, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("config: " + key + ": not a number: " + v);
    }
    if (pos != v.size()) throw std::invalid_argument("config: " + key + ": not a number: " + v);
    return r;
  }

  static long parse_long(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long r;
    try {
      r = std::stol(v, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("config: " + key + ": not an integer: " + v);
    }
    if (pos != v.size()) throw std::invalid_argument("config: " + key + ": not an integer: " + v);
    return r;
  }

  std::map<std::string, std::string> kv_;
  std::set<std::string> used_;
};

OracleKind oracle_from_string(const std::string& s) {
  if (s == "deterministic") return OracleKind::deterministic;
  if (s == "additive") return OracleKind::additive_gaussian;
  if (s == "minibatch") return OracleKind::minibatch;
  throw std::invalid_argument("config: unknown oracle: " + s);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  KvReader kv(text);
  ExperimentConfig c;

  c.problem = kv.str("problem", c.problem);
  c.problem_params.dim = std::size_t(kv.integer("dim", long(c.problem_params.dim)));
  c.problem_params.condition = kv.real("condition", c.problem_params.condition);
  c.problem_params.n_samples = std::size_t(kv.integer("n_samples", long(c.problem_params.n_samples)));
  c.problem_params.hidden = std::size_t(kv.integer("hidden", long(c.problem_params.hidden)));
  c.problem_params.seed = kv.u64("problem_seed", c.problem_params.seed);
  c.problem_params.l2 = kv.real("l2", c.problem_params.l2);

  c.oracle = oracle_from_string(kv.str("oracle", "additive"));
  c.noise_std = kv.real("noise_std", c.noise_std);
  c.batch_size = std::size_t(kv.integer("batch_size", long(c.batch_size)));

  c.s_list = kv.real_list("s_list", c.s_list);
  c.beta_list = kv.real_list("beta_list", {});
  if (c.beta_list.empty()) c.beta_list = {kv.real("beta", 0.9)};
  c.alpha_list = kv.real_list("alpha_list", {});

  AlphaSchedule sched;
  sched.kind = schedule_from_string(kv.str("schedule", "theorem1"));
  sched.alpha0 = kv.real("alpha0", sched.alpha0);
  sched.C = kv.real("C", sched.C);
  sched.decay_factor = kv.real("decay_factor", sched.decay_factor);
  sched.decay_at = kv.int_list("decay_at", {});
  c.schedule = sched;

  c.horizon = kv.integer("horizon", c.horizon);
  c.record_every = kv.integer("record_every", c.record_every);
  c.seeds = std::size_t(kv.integer("seeds", long(c.seeds)));
  c.base_seed = kv.u64("base_seed", c.base_seed);
  if (kv.has("stoch_norm_bound")) c.stoch_norm_bound = kv.real("stoch_norm_bound", 0.0);
  c.out_dir = kv.str("out_dir", c.out_dir);
  c.jobs = int(kv.integer("jobs", c.jobs));

  kv.reject_unknown();
  c.validate();
  return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream os;
  auto list = [](const auto& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(double(v[i]));
    return s;
  };
  os << "problem = " << c.problem << "\n";
  os << "dim = " << c.problem_params.dim << "\n";
  os << "condition = " << num(c.problem_params.condition) << "\n";
  os << "n_samples = " << c.problem_params.n_samples << "\n";
  os << "hidden = " << c.problem_params.hidden << "\n";
  os << "problem_seed = " << c.problem_params.seed << "\n";
  os << "l2 = " << num(c.problem_params.l2) << "\n";
  os << "oracle = " << to_string(c.oracle) << "\n";
  os << "noise_std = " << num(c.noise_std) << "\n";
  os << "batch_size = " << c.batch_size << "\n";
  os << "s_list = " << list(c.s_list) << "\n";
  os << "beta_list = " << list(c.beta_list) << "\n";
  if (!c.alpha_list.empty()) os << "alpha_list = " << list(c.alpha_list) << "\n";
  os << "schedule = " << to_string(c.schedule.kind) << "\n";
  os << "alpha0 = " << num(c.schedule.alpha0) << "\n";
  os << "C = " << num(c.schedule.C) << "\n";
  os << "decay_factor = " << num(c.schedule.decay_factor) << "\n";
  if (!c.schedule.decay_at.empty()) os << "decay_at = " << list(c.schedule.decay_at) << "\n";
  os << "horizon = " << c.horizon << "\n";
  os << "record_every = " << c.record_every << "\n";
  os << "seeds = " << c.seeds << "\n";
  os << "base_seed = " << c.base_seed << "\n";
  if (c.stoch_norm_bound) os << "stoch_norm_bound = " << num(*c.stoch_norm_bound) << "\n";
  os << "out_dir = " << c.out_dir << "\n";
  os << "jobs = " << c.jobs << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// execution
// ---------------------------------------------------------------------------

ScalarStat scalar_stat(const std::vector<double>& values) {
  ScalarStat st;
  st.count = values.size();
  if (values.empty()) return st;
  st.present = true;
  double sum = 0.0;
  for (double v : values) sum += v;
  st.mean = sum / double(values.size());
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - st.mean) * (v - st.mean);
    st.sem = std::sqrt(ss / double(values.size() - 1)) / std::sqrt(double(values.size()));
  }
  return st;
}

namespace {

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  int count = int(std::min<std::size_t>(std::size_t(jobs), n));
  pool.reserve(count);
  for (int i = 0; i < count; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

OracleSpec make_oracle(const ExperimentConfig& c, std::uint64_t seed) {
  OracleSpec o;
  o.kind = c.oracle;
  o.noise_std = c.noise_std;
  o.batch_size = c.batch_size;
  o.seed = seed;
  return o;
}

std::string stat_cell(const ScalarStat& st, bool sem) {
  if (!st.present) return "";
  if (sem && st.count < 2) return "";
  return format_double(sem ? st.sem : st.mean);
}

std::string opt_cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

}  // namespace

std::vector<BoundsLine> evaluate_bounds(const Problem& problem, const OracleSpec& oracle,
                                        const VariantSpec& variant, long horizon,
                                        std::optional<double> mean_v_t,
                                        std::optional<double> m_override) {
  std::vector<BoundsLine> out;
  ProblemConstants pc = problem.constants();
  if (auto d2 = declared_variance(oracle)) pc.delta2 = *d2;
  if (m_override) {
    pc.M = *m_override;
  } else if (oracle.kind == OracleKind::deterministic && pc.G) {
    pc.M = pc.G;  // deterministic draws are bounded by the full-gradient bound
  } else {
    pc.M.reset();
  }

  BoundInput base;
  base.constants = pc;
  base.beta = variant.beta;
  base.s = variant.s;
  base.t_plus_1 = horizon;
  base.v_t = mean_v_t;

  std::string start_note;
  if (pc.f_star) {
    base.f0_gap = problem.value(problem.start_point()) - *pc.f_star;
  } else {
    start_note = "missing constant: f_star";
  }
  std::string dist_note;
  if (auto xs = problem.minimizer()) {
    ParamVector d = sub(problem.start_point(), *xs);
    base.dist0_sq = dot(d, d);
  } else {
    dist_note = "missing constant: x_star";
  }

  SumConfig cfg{variant.beta, variant.s, variant.schedule, horizon};
  std::optional<ResolvedConfig> rc;
  std::string alpha_note;
  try {
    ResolvedConfig r = resolve(cfg, pc);
    if (!r.constant_alpha()) {
      alpha_note = "step size varies over k; bound not evaluated";
    } else {
      rc = r;
    }
  } catch (const std::exception& e) {
    alpha_note = e.what();
  }

  auto eval = [&](const char* name, auto&& fn, bool needs_dist) {
    BoundsLine line;
    line.name = name;
    if (!alpha_note.empty()) {
      line.note = alpha_note;
    } else if (!start_note.empty()) {
      line.note = start_note;
    } else if (needs_dist && !dist_note.empty()) {
      line.note = dist_note;
    } else {
      try {
        line.value = fn();
      } catch (const std::exception& e) {
        line.note = e.what();
      }
    }
    out.push_back(std::move(line));
  };

  eval("thm1",
       [&] {
         BoundInput in = base;
         // any constant alpha is C/sqrt(t+1) for the implied C
         in.C = variant.schedule.kind == ScheduleKind::theorem1
                    ? variant.schedule.C
                    : rc->alpha_base * std::sqrt(double(horizon));
         return bound_thm1(in);
       },
       true);

  eval("thm2",
       [&] {
         BoundInput in = base;
         in.alpha = rc->alpha_base;
         return bound_thm2(in);
       },
       true);

  auto nonconvex = [&](bool per_variant_cap) {
    BoundInput in = base;
    if (!pc.L) throw missing_constant_error("L");
    double L = *pc.L;
    double c = (1.0 - variant.beta) * variant.s - 1.0;
    double cap = per_variant_cap ? (1.0 - variant.beta) / (2.0 * L * (1.0 + c * c))
                                 : (1.0 - variant.beta) / (2.0 * L);
    if (rc->alpha_base > cap * (1.0 + 1e-12)) {
      throw std::invalid_argument("alpha exceeds the theorem step-size cap");
    }
    in.C = rc->alpha_base * std::sqrt(double(horizon));
    if (variant.schedule.kind == ScheduleKind::theorem3 ||
        variant.schedule.kind == ScheduleKind::theorem4) {
      in.C = variant.schedule.C;
    }
    return per_variant_cap ? bound_thm4(in) : bound_thm3(in);
  };
  eval("thm3", [&] { return nonconvex(false); }, false);
  eval("thm4", [&] { return nonconvex(true); }, false);

  return out;
}

// ---------------------------------------------------------------------------

namespace {

const char* const kSummaryTsvHeader =
    "variant\ts\tbeta\tschedule\talpha_base\tn_seeds\tn_divergent\tn_box_violated\t"
    "n_norm_exceeded\tf0_gap\tdist0_sq\tfinal_f_mean\tfinal_f_sem\tgap_mean\tgap_sem\t"
    "min_grad_sq_mean\tmin_grad_sq_sem\tv_t_mean\tv_t_sem\theldout_osc_mean\theldout_osc_sem";

void write_experiment_files(ExperimentResult& res) {
  const auto& config = res.config;
  fs::path out(config.out_dir);
  fs::create_directories(out / "runs");

  {
    std::ofstream f(out / "config_used.txt");
    f << serialize_config(config);
  }

  for (std::size_t vi = 0; vi < res.variants.size(); ++vi) {
    const VariantResult& vr = res.variants[vi];
    std::string tag = config.problem + "_" + vr.variant.tag();
    for (std::size_t si = 0; si < vr.runs.size(); ++si) {
      char name[64];
      std::snprintf(name, sizeof name, "_seed%05llu.csv",
                    (unsigned long long)vr.runs[si].summary.seed);
      fs::path p = out / "runs" / (tag + name);
      std::ofstream f(p);
      write_run_csv(f, vr.runs[si]);
      res.csv_files.push_back(p.string());
    }
    fs::path p = out / (tag + "_agg.csv");
    std::ofstream f(p);
    write_aggregate_csv(f, vr.agg);
    res.csv_files.push_back(p.string());
  }

  {
    std::ofstream f(out / "experiment_summary.tsv");
    f << kSummaryTsvHeader << '\n';
    for (const auto& vr : res.variants) {
      ResolvedConfig rc;
      std::string alpha_base;
      try {
        rc = resolve({vr.variant.beta, vr.variant.s, vr.variant.schedule, config.horizon},
                     res.problem->constants());
        alpha_base = format_double(rc.alpha_base);
      } catch (const std::exception&) {
        alpha_base = "";
      }
      f << vr.variant.tag() << '\t' << num(vr.variant.s) << '\t' << num(vr.variant.beta) << '\t'
        << to_string(vr.variant.schedule.kind) << '\t' << alpha_base << '\t'
        << vr.runs.size() - vr.divergent << '\t' << vr.divergent << '\t' << vr.box_violated << '\t'
        << vr.norm_exceeded << '\t' << opt_cell(res.f0_gap) << '\t' << opt_cell(res.dist0_sq) << '\t'
        << stat_cell(vr.final_f, false) << '\t' << stat_cell(vr.final_f, true) << '\t'
        << stat_cell(vr.final_gap, false) << '\t' << stat_cell(vr.final_gap, true) << '\t'
        << stat_cell(vr.final_min_grad_sq, false) << '\t' << stat_cell(vr.final_min_grad_sq, true)
        << '\t' << stat_cell(vr.final_v, false) << '\t' << stat_cell(vr.final_v, true) << '\t'
        << stat_cell(vr.heldout_osc, false) << '\t' << stat_cell(vr.heldout_osc, true) << '\n';
    }
  }

  {
    std::ofstream f(out / "summary.txt");
    f << "experiment: problem=" << config.problem << " oracle=" << to_string(config.oracle)
      << " horizon=" << config.horizon << " seeds=" << config.seeds << "\n\n";
    for (const auto& vr : res.variants) {
      f << vr.variant.tag() << ":\n";
      double wall = 0.0;
      for (const auto& r : vr.runs) wall += r.summary.wall_seconds;
      if (vr.final_f.present)
        f << "  final f        mean " << vr.final_f.mean << "  sem " << vr.final_f.sem << "\n";
      if (vr.final_gap.present)
        f << "  final gap      mean " << vr.final_gap.mean << "  sem " << vr.final_gap.sem << "\n";
      if (vr.final_min_grad_sq.present)
        f << "  min ||grad||^2 mean " << vr.final_min_grad_sq.mean << "  sem "
          << vr.final_min_grad_sq.sem << "\n";
      if (vr.final_v.present)
        f << "  V_t            mean " << vr.final_v.mean << "  sem " << vr.final_v.sem << "\n";
      if (vr.heldout_osc.present)
        f << "  heldout osc    mean " << vr.heldout_osc.mean << "  sem " << vr.heldout_osc.sem
          << "\n";
      f << "  divergent " << vr.divergent << " / " << vr.runs.size() << ", box violations "
        << vr.box_violated << ", draw-norm bound exceeded " << vr.norm_exceeded << "\n";
      for (const auto& b : vr.bounds) {
        f << "  bound " << b.name << ": ";
        if (b.value) {
          f << *b.value << "\n";
        } else {
          f << "(" << b.note << ")\n";
        }
      }
      f << "  wall " << wall << " s\n\n";
    }
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, bool write_files) {
  config.validate();

  ExperimentResult res;
  res.config = config;
  res.problem = make_problem(config.problem, config.problem_params);
  const Problem& prob = *res.problem;

  if (prob.constants().f_star) {
    res.f0_gap = prob.value(prob.start_point()) - *prob.constants().f_star;
  }
  if (auto xs = prob.minimizer()) {
    ParamVector d = sub(prob.start_point(), *xs);
    res.dist0_sq = dot(d, d);
  }

  std::vector<VariantSpec> variants = config.variants();
  res.variants.resize(variants.size());
  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    res.variants[vi].variant = variants[vi];
    res.variants[vi].runs.resize(config.seeds);
  }

  std::size_t n_tasks = variants.size() * config.seeds;
  parallel_for(n_tasks, config.jobs, [&](std::size_t idx) {
    std::size_t vi = idx / config.seeds;
    std::size_t si = idx % config.seeds;
    OracleSpec oracle = make_oracle(config, config.base_seed + si);
    SumConfig cfg{variants[vi].beta, variants[vi].s, variants[vi].schedule, config.horizon};
    RunOptions opt;
    opt.record_every = config.record_every;
    opt.stoch_norm_bound = config.stoch_norm_bound;
    res.variants[vi].runs[si] = run(prob, oracle, cfg, opt);
  });

  for (auto& vr : res.variants) {
    vr.agg = aggregate(vr.runs);
    std::vector<double> fs, gaps, mins, vs, oscs;
    for (const auto& r : vr.runs) {
      if (r.summary.diverged) {
        ++vr.divergent;
        continue;
      }
      if (r.summary.box_violated) ++vr.box_violated;
      if (r.summary.stoch_norm_exceeded) ++vr.norm_exceeded;
      fs.push_back(r.summary.final_f);
      if (r.summary.final_gap) gaps.push_back(*r.summary.final_gap);
      mins.push_back(r.summary.final_min_grad_sq);
      vs.push_back(r.summary.final_v);
      std::vector<double> series;
      for (const auto& row : r.rows) {
        if (row.heldout_err) series.push_back(*row.heldout_err);
      }
      if (series.size() >= 2) oscs.push_back(oscillation_score(series));
    }
    vr.final_f = scalar_stat(fs);
    vr.final_gap = scalar_stat(gaps);
    vr.final_min_grad_sq = scalar_stat(mins);
    vr.final_v = scalar_stat(vs);
    vr.heldout_osc = scalar_stat(oscs);

    OracleSpec proto = make_oracle(config, config.base_seed);
    std::optional<double> mean_vt;
    if (vr.final_v.present) mean_vt = vr.final_v.mean;
    vr.bounds = evaluate_bounds(prob, proto, vr.variant, config.horizon, mean_vt,
                                config.stoch_norm_bound);
  }

  if (write_files) write_experiment_files(res);
  return res;
}

// ---------------------------------------------------------------------------
// bounds report over a finished run directory
// ---------------------------------------------------------------------------

std::vector<std::string> bounds_report_for_run(const std::string& run_dir) {
  fs::path dir(run_dir);
  if (!fs::is_directory(dir)) throw std::runtime_error("not a run directory: " + run_dir);
  fs::path cfg_path = dir / "config_used.txt";
  fs::path tsv_path = dir / "experiment_summary.tsv";
  if (!fs::exists(cfg_path) || !fs::exists(tsv_path)) {
    throw std::runtime_error("run directory is missing config_used.txt / experiment_summary.tsv");
  }

  ExperimentConfig config = parse_config_file(cfg_path.string());
  ProblemPtr problem = make_problem(config.problem, config.problem_params);

  std::ifstream tsv(tsv_path);
  std::string header;
  std::getline(tsv, header);
  std::vector<std::string> cols = split(trim(header), '\t');
  auto col_index = [&](const std::string& name) {
    auto it = std::find(cols.begin(), cols.end(), name);
    if (it == cols.end()) throw std::runtime_error("summary tsv lacks column: " + name);
    return std::size_t(it - cols.begin());
  };
  std::size_t c_tag = col_index("variant");
  std::size_t c_vt = col_index("v_t_mean");
  std::size_t c_gap = col_index("gap_mean");
  std::size_t c_min = col_index("min_grad_sq_mean");

  std::map<std::string, std::vector<std::string>> rows;
  std::string line;
  while (std::getline(tsv, line)) {
    if (trim(line).empty()) continue;
    auto fields = split(line, '\t');
    rows[fields.at(c_tag)] = fields;
  }

  auto opt_field = [](const std::vector<std::string>& f, std::size_t i) -> std::optional<double> {
    if (i >= f.size() || trim(f[i]).empty()) return std::nullopt;
    return std::stod(f[i]);
  };

  std::vector<std::string> out;
  for (const auto& variant : config.variants()) {
    auto it = rows.find(variant.tag());
    if (it == rows.end()) throw std::runtime_error("summary tsv lacks variant: " + variant.tag());
    std::optional<double> mean_vt = opt_field(it->second, c_vt);
    std::optional<double> mean_gap = opt_field(it->second, c_gap);
    std::optional<double> mean_min = opt_field(it->second, c_min);

    OracleSpec proto = make_oracle(config, config.base_seed);
    auto lines = evaluate_bounds(*problem, proto, variant, config.horizon, mean_vt,
                                 config.stoch_norm_bound);
    out.push_back(variant.tag() + ":");
    std::ostringstream measured;
    measured << "  measured:";
    if (mean_gap) measured << " mean gap " << *mean_gap;
    if (mean_min) measured << " mean min ||grad||^2 " << *mean_min;
    if (mean_vt) measured << " mean V_t " << *mean_vt;
    out.push_back(measured.str());
    for (const auto& b : lines) {
      std::ostringstream ss;
      ss << "  " << b.name << ": ";
      if (b.value) {
        ss << *b.value;
      } else {
        ss << "(" << b.note << ")";
      }
      out.push_back(ss.str());
    }
  }
  return out;
}

}  // namespace sumopt
