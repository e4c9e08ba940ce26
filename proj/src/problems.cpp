#include "sumopt/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "sumopt/rng.hpp"

namespace sumopt {

namespace {

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  double e = std::exp(t);
  return e / (1.0 + e);
}

// log(1 + exp(t)) without overflow
double softplus(double t) { return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))); }

double sqnorm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

const char* to_string(ConvexityClass c) {
  switch (c) {
    case ConvexityClass::nonsmooth_convex: return "nonsmooth-convex";
    case ConvexityClass::smooth_convex: return "smooth-convex";
    case ConvexityClass::smooth_nonconvex: return "smooth-nonconvex";
  }
  return "?";
}

ParamVector Problem::sample_gradient(const ParamVector&, std::size_t) const {
  throw std::logic_error(name() + ": not a finite-sum problem");
}

double Problem::heldout_error(const ParamVector&) const {
  throw std::logic_error(name() + ": no held-out split");
}

// ---------------------------------------------------------------------------
// blobs
// ---------------------------------------------------------------------------

BlobData make_blobs(std::size_t n, std::size_t dim, std::uint64_t seed, double separation) {
  if (n < 1 || dim < 1) throw std::invalid_argument("make_blobs: n and dim must be positive");

  BlobData data;
  data.dim = dim;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 64) {
      throw std::runtime_error("make_blobs: could not draw two-class data (n too small?)");
    }
    std::uint64_t s = seed + std::uint64_t(attempt);

    CounterRng dir_rng(s, 11);
    std::vector<double> u(dim);
    double un = 0.0;
    for (auto& v : u) v = dir_rng.next_normal();
    un = std::sqrt(sqnorm(u));
    if (un == 0.0) continue;
    for (auto& v : u) v /= un;

    CounterRng rng(s, 13);
    data.points.assign(n, std::vector<double>(dim));
    data.labels.assign(n, 0);
    bool seen_pos = false, seen_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
      int label = rng.next_uniform() < 0.5 ? 1 : -1;
      data.labels[i] = label;
      (label > 0 ? seen_pos : seen_neg) = true;
      for (std::size_t j = 0; j < dim; ++j) {
        data.points[i][j] = label * (separation / 2.0) * u[j] + rng.next_normal();
      }
    }
    if ((seen_pos && seen_neg) || n == 1) {
      if (n == 1 && attempt == 0) {
        // single sample is inherently one-class; accept but leave a trace
        std::fprintf(stderr, "make_blobs: n=1 gives single-class data\n");
      }
      data.seed_used = s;
      data.regen_count = attempt;
      if (attempt > 0) {
        std::fprintf(stderr, "make_blobs: regenerated %d time(s), seed %llu -> %llu\n", attempt,
                     (unsigned long long)seed, (unsigned long long)s);
      }
      return data;
    }
  }
}

// ---------------------------------------------------------------------------
// quadratic: f(x) = 0.5 x'Ax - b'x,  A = R' D R with R a product of
// Householder reflections, so the spectrum (and L, x_*) are exact.
// ---------------------------------------------------------------------------

namespace {

class QuadraticProblem final : public Problem {
 public:
  QuadraticProblem(std::string name, std::vector<double> eigs, ParamVector b,
                   std::vector<ParamVector> reflectors)
      : name_(std::move(name)), eigs_(std::move(eigs)), b_(std::move(b)),
        reflectors_(std::move(reflectors)), x0_(b_.dim(), 0.0) {
    for (double l : eigs_) {
      if (!(l > 0.0)) throw std::invalid_argument("quadratic: eigenvalues must be positive");
    }
    if (eigs_.size() != b_.dim()) throw std::invalid_argument("quadratic: diag/b dimension mismatch");

    ParamVector rb = rotate(b_);
    ParamVector y(dim());
    for (std::size_t i = 0; i < dim(); ++i) y[i] = rb[i] / eigs_[i];
    x_star_ = rotate_back(y);
    double f_star = -0.5 * dot(b_, x_star_);

    double L = *std::max_element(eigs_.begin(), eigs_.end());
    constants_.L = L;
    constants_.f_star = f_star;
    constants_.convexity = ConvexityClass::smooth_convex;
    constants_.box_radius = 10.0;
    // sup over the box of ||Ax - b||: crude but sound
    constants_.G = L * std::sqrt(double(dim())) * *constants_.box_radius + norm2(b_);
  }

  const std::string& name() const override { return name_; }
  std::size_t dim() const override { return b_.dim(); }

  double value(const ParamVector& x) const override {
    ParamVector ax = apply_a(x);
    return 0.5 * dot(x, ax) - dot(b_, x);
  }

  ParamVector gradient(const ParamVector& x) const override {
    ParamVector g = apply_a(x);
    axpy_inplace(-1.0, b_, g);
    return g;
  }

  const ProblemConstants& constants() const override { return constants_; }
  const ParamVector& start_point() const override { return x0_; }
  std::optional<ParamVector> minimizer() const override { return x_star_; }

 private:
  ParamVector reflect(const ParamVector& h, const ParamVector& x) const {
    return axpy(-2.0 * dot(h, x), h, x);
  }
  ParamVector rotate(const ParamVector& x) const {
    ParamVector r = x;
    for (const auto& h : reflectors_) r = reflect(h, r);
    return r;
  }
  ParamVector rotate_back(const ParamVector& x) const {
    ParamVector r = x;
    for (auto it = reflectors_.rbegin(); it != reflectors_.rend(); ++it) r = reflect(*it, r);
    return r;
  }
  ParamVector apply_a(const ParamVector& x) const {
    ParamVector r = rotate(x);
    for (std::size_t i = 0; i < dim(); ++i) r[i] *= eigs_[i];
    return rotate_back(r);
  }

  std::string name_;
  std::vector<double> eigs_;
  ParamVector b_;
  std::vector<ParamVector> reflectors_;
  ParamVector x0_;
  ParamVector x_star_;
  ProblemConstants constants_;
};

}  // namespace

ProblemPtr make_quadratic(std::size_t dim, double condition_number, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("make_quadratic: dim must be positive");
  if (condition_number < 1.0) throw std::invalid_argument("make_quadratic: condition_number must be >= 1");

  std::vector<double> eigs(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    eigs[i] = dim == 1 ? condition_number
                       : std::pow(condition_number, double(i) / double(dim - 1));
  }

  CounterRng brng(seed, 1);
  ParamVector b(dim);
  for (std::size_t i = 0; i < dim; ++i) b[i] = brng.next_normal();

  std::vector<ParamVector> reflectors;
  if (dim > 1) {
    for (int j = 0; j < 3; ++j) {
      CounterRng hrng(seed, 2 + std::uint64_t(j));
      ParamVector h(dim);
      double n = 0.0;
      do {
        for (std::size_t i = 0; i < dim; ++i) h[i] = hrng.next_normal();
        n = norm2(h);
      } while (n == 0.0);
      reflectors.push_back(scale(1.0 / n, h));
    }
  }
  return std::make_shared<QuadraticProblem>("quadratic", std::move(eigs), std::move(b),
                                            std::move(reflectors));
}

ProblemPtr make_quadratic_diag(std::vector<double> diag, ParamVector b) {
  return std::make_shared<QuadraticProblem>("quadratic_diag", std::move(diag), std::move(b),
                                            std::vector<ParamVector>{});
}

// ---------------------------------------------------------------------------
// abs_loss: f(x) = sum |x_i| / sqrt(dim)
// ---------------------------------------------------------------------------

namespace {

class AbsLossProblem final : public Problem {
 public:
  explicit AbsLossProblem(std::size_t dim)
      : name_("abs_loss"), scale_(1.0 / std::sqrt(double(dim))), x0_(dim, 1.0) {
    constants_.G = 1.0;
    constants_.f_star = 0.0;
    constants_.convexity = ConvexityClass::nonsmooth_convex;
  }

  const std::string& name() const override { return name_; }
  std::size_t dim() const override { return x0_.dim(); }

  double value(const ParamVector& x) const override {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s * scale_;
  }

  // subgradient; the tie at x_i = 0 resolves to 0 to keep the oracle deterministic
  ParamVector gradient(const ParamVector& x) const override {
    ParamVector g(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) {
      g[i] = x[i] > 0.0 ? scale_ : (x[i] < 0.0 ? -scale_ : 0.0);
    }
    return g;
  }

  const ProblemConstants& constants() const override { return constants_; }
  const ParamVector& start_point() const override { return x0_; }
  std::optional<ParamVector> minimizer() const override { return ParamVector(dim(), 0.0); }

 private:
  std::string name_;
  double scale_;
  ParamVector x0_;
  ProblemConstants constants_;
};

}  // namespace

ProblemPtr make_abs_loss(std::size_t dim) {
  if (dim < 1) throw std::invalid_argument("make_abs_loss: dim must be positive");
  return std::make_shared<AbsLossProblem>(dim);
}

// ---------------------------------------------------------------------------
// softlog: f(x) = sum log(1 + x_i^2)
// ---------------------------------------------------------------------------

namespace {

class SoftlogProblem final : public Problem {
 public:
  explicit SoftlogProblem(std::size_t dim) : name_("softlog"), x0_(dim, 1.0) {
    constants_.L = 2.0;
    constants_.G = std::sqrt(double(dim));
    constants_.f_star = 0.0;
    constants_.convexity = ConvexityClass::smooth_nonconvex;
  }

  const std::string& name() const override { return name_; }
  std::size_t dim() const override { return x0_.dim(); }

  double value(const ParamVector& x) const override {
    double s = 0.0;
    for (double v : x) s += std::log1p(v * v);
    return s;
  }

  ParamVector gradient(const ParamVector& x) const override {
    ParamVector g(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) g[i] = 2.0 * x[i] / (1.0 + x[i] * x[i]);
    return g;
  }

  const ProblemConstants& constants() const override { return constants_; }
  const ParamVector& start_point() const override { return x0_; }
  std::optional<ParamVector> minimizer() const override { return ParamVector(dim(), 0.0); }

 private:
  std::string name_;
  ParamVector x0_;
  ProblemConstants constants_;
};

}  // namespace

ProblemPtr make_softlog(std::size_t dim) {
  if (dim < 1) throw std::invalid_argument("make_softlog: dim must be positive");
  return std::make_shared<SoftlogProblem>(dim);
}

// ---------------------------------------------------------------------------
// logistic regression over blobs
// ---------------------------------------------------------------------------

namespace {

class LogRegProblem final : public Problem {
 public:
  LogRegProblem(BlobData data, double l2)
      : name_("logreg"), data_(std::move(data)), l2_(l2), x0_(data_.dim, 0.0) {
    if (l2_ < 0.0) throw std::invalid_argument("logreg: l2 must be nonnegative");
    double max_sq = 0.0;
    for (const auto& z : data_.points) max_sq = std::max(max_sq, sqnorm(z));
    constants_.L = max_sq / 4.0 + l2_;
    constants_.convexity = ConvexityClass::smooth_convex;
    constants_.box_radius = 10.0;
    constants_.G = std::sqrt(max_sq) + l2_ * std::sqrt(double(dim())) * *constants_.box_radius;
    presolve();
  }

  const std::string& name() const override { return name_; }
  std::size_t dim() const override { return data_.dim; }

  double value(const ParamVector& w) const override {
    double s = 0.0;
    for (std::size_t i = 0; i < data_.points.size(); ++i) s += softplus(-margin(w, i));
    return s / double(data_.points.size()) + 0.5 * l2_ * dot(w, w);
  }

  ParamVector gradient(const ParamVector& w) const override {
    ParamVector g(dim(), 0.0);
    for (std::size_t i = 0; i < data_.points.size(); ++i) accumulate_loss_grad(w, i, g);
    double inv_n = 1.0 / double(data_.points.size());
    for (std::size_t j = 0; j < dim(); ++j) g[j] = g[j] * inv_n + l2_ * w[j];
    return g;
  }

  std::size_t sample_count() const override { return data_.points.size(); }

  ParamVector sample_gradient(const ParamVector& w, std::size_t i) const override {
    ParamVector g(dim(), 0.0);
    accumulate_loss_grad(w, i, g);
    axpy_inplace(l2_, w, g);
    return g;
  }

  const ProblemConstants& constants() const override { return constants_; }
  const ParamVector& start_point() const override { return x0_; }
  std::optional<ParamVector> minimizer() const override { return w_star_; }

  int regen_count() const { return data_.regen_count; }

 private:
  double margin(const ParamVector& w, std::size_t i) const {
    const auto& z = data_.points[i];
    double m = 0.0;
    for (std::size_t j = 0; j < dim(); ++j) m += w[j] * z[j];
    return double(data_.labels[i]) * m;
  }

  void accumulate_loss_grad(const ParamVector& w, std::size_t i, ParamVector& g) const {
    double y = double(data_.labels[i]);
    double c = -y * sigmoid(-margin(w, i));
    const auto& z = data_.points[i];
    for (std::size_t j = 0; j < dim(); ++j) g[j] += c * z[j];
  }

  // accelerated gradient descent for the strongly convex regularized loss,
  // with function-value restarts; runs until ||grad|| <= 1e-10
  void presolve() {
    const double mu = std::max(l2_, 1e-12);
    const double L = *constants_.L;
    const double q = std::sqrt(mu / L);
    const double momentum = (1.0 - q) / (1.0 + q);

    ParamVector w = x0_, y = x0_, w_prev = x0_;
    double f_prev = value(w);
    const long max_iter = 2'000'000;
    for (long it = 0; it < max_iter; ++it) {
      ParamVector g = gradient(y);
      w_prev = w;
      w = axpy(-1.0 / L, g, y);
      y = axpy(momentum, sub(w, w_prev), w);
      if (it % 20 == 19) {
        double gn = norm2(gradient(w));
        if (gn <= 1e-10) break;
        double f_now = value(w);
        if (f_now > f_prev) y = w;  // restart momentum
        f_prev = f_now;
      }
    }
    if (norm2(gradient(w)) > 1e-10) {
      throw std::runtime_error("logreg: pre-solve did not reach gradient tolerance");
    }
    w_star_ = w;
    constants_.f_star = value(w);
  }

  std::string name_;
  BlobData data_;
  double l2_;
  ParamVector x0_;
  ParamVector w_star_;
  ProblemConstants constants_;
};

}  // namespace

ProblemPtr make_logreg(std::size_t n_samples, std::size_t dim, std::uint64_t seed, double l2) {
  return std::make_shared<LogRegProblem>(make_blobs(n_samples, dim, seed), l2);
}

// ---------------------------------------------------------------------------
// tiny MLP: dim_in -> hidden (tanh) -> 1 (logistic), cross-entropy loss
// ---------------------------------------------------------------------------

namespace {

class MlpProblem final : public Problem {
 public:
  MlpProblem(BlobData train, BlobData heldout, std::size_t hidden, std::uint64_t init_seed)
      : name_("tiny_mlp"), train_(std::move(train)), heldout_(std::move(heldout)), hidden_(hidden) {
    if (hidden_ < 1) throw std::invalid_argument("tiny_mlp: hidden must be positive");
    if (heldout_.dim != train_.dim) throw std::invalid_argument("tiny_mlp: split dim mismatch");
    din_ = train_.dim;
    dim_ = hidden_ * din_ + 2 * hidden_ + 1;

    x0_ = ParamVector(dim_, 0.0);
    CounterRng rng(init_seed, 7);
    double w1_scale = 1.0 / std::sqrt(double(din_));
    for (std::size_t i = 0; i < hidden_ * din_; ++i) x0_[i] = rng.next_normal() * w1_scale;
    double w2_scale = 1.0 / std::sqrt(double(hidden_));
    for (std::size_t i = 0; i < hidden_; ++i) x0_[w2_off() + i] = rng.next_normal() * w2_scale;

    constants_.convexity = ConvexityClass::smooth_nonconvex;  // L, G not declared
  }

  const std::string& name() const override { return name_; }
  std::size_t dim() const override { return dim_; }

  double value(const ParamVector& x) const override {
    double s = 0.0;
    std::vector<double> h(hidden_);
    for (std::size_t i = 0; i < train_.points.size(); ++i) {
      double logit = forward(x, train_.points[i], h);
      s += softplus(-double(train_.labels[i]) * logit);
    }
    return s / double(train_.points.size());
  }

  ParamVector gradient(const ParamVector& x) const override {
    ParamVector g(dim_, 0.0);
    std::vector<double> h(hidden_);
    for (std::size_t i = 0; i < train_.points.size(); ++i) backprop(x, i, g, h);
    for (std::size_t j = 0; j < dim_; ++j) g[j] /= double(train_.points.size());
    return g;
  }

  std::size_t sample_count() const override { return train_.points.size(); }

  ParamVector sample_gradient(const ParamVector& x, std::size_t i) const override {
    ParamVector g(dim_, 0.0);
    std::vector<double> h(hidden_);
    backprop(x, i, g, h);
    return g;
  }

  bool has_heldout() const override { return true; }

  double heldout_error(const ParamVector& x) const override {
    std::vector<double> h(hidden_);
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < heldout_.points.size(); ++i) {
      double logit = forward(x, heldout_.points[i], h);
      int pred = logit > 0.0 ? 1 : -1;
      if (pred != heldout_.labels[i]) ++wrong;
    }
    return double(wrong) / double(heldout_.points.size());
  }

  const ProblemConstants& constants() const override { return constants_; }
  const ParamVector& start_point() const override { return x0_; }

 private:
  std::size_t b1_off() const { return hidden_ * din_; }
  std::size_t w2_off() const { return hidden_ * din_ + hidden_; }
  std::size_t b2_off() const { return hidden_ * din_ + 2 * hidden_; }

  double forward(const ParamVector& x, const std::vector<double>& z, std::vector<double>& h) const {
    for (std::size_t j = 0; j < hidden_; ++j) {
      double a = x[b1_off() + j];
      const double* w_row = x.data() + j * din_;
      for (std::size_t l = 0; l < din_; ++l) a += w_row[l] * z[l];
      h[j] = std::tanh(a);
    }
    double logit = x[b2_off()];
    for (std::size_t j = 0; j < hidden_; ++j) logit += x[w2_off() + j] * h[j];
    return logit;
  }

  void backprop(const ParamVector& x, std::size_t i, ParamVector& g, std::vector<double>& h) const {
    const auto& z = train_.points[i];
    double y = double(train_.labels[i]);
    double logit = forward(x, z, h);
    double dlogit = -y * sigmoid(-y * logit);

    g[b2_off()] += dlogit;
    for (std::size_t j = 0; j < hidden_; ++j) {
      g[w2_off() + j] += dlogit * h[j];
      double dpre = dlogit * x[w2_off() + j] * (1.0 - h[j] * h[j]);
      g[b1_off() + j] += dpre;
      double* g_row = g.data() + j * din_;
      for (std::size_t l = 0; l < din_; ++l) g_row[l] += dpre * z[l];
    }
  }

  std::string name_;
  BlobData train_;
  BlobData heldout_;
  std::size_t hidden_, din_, dim_;
  ParamVector x0_;
  ProblemConstants constants_;
};

}  // namespace

ProblemPtr make_tiny_mlp_from(BlobData train, BlobData heldout, std::size_t hidden,
                              std::uint64_t init_seed) {
  return std::make_shared<MlpProblem>(std::move(train), std::move(heldout), hidden, init_seed);
}

ProblemPtr make_tiny_mlp(std::size_t n_samples, std::size_t dim_in, std::size_t hidden,
                         std::uint64_t seed) {
  BlobData train = make_blobs(n_samples, dim_in, seed);
  BlobData heldout = make_blobs(std::max<std::size_t>(n_samples / 4, 2), dim_in, seed + 1000);
  return make_tiny_mlp_from(std::move(train), std::move(heldout), hidden, seed);
}

// ---------------------------------------------------------------------------

ProblemPtr make_problem(const std::string& name, const ProblemParams& p) {
  if (name == "quadratic") return make_quadratic(p.dim, p.condition, p.seed);
  if (name == "abs_loss") return make_abs_loss(p.dim);
  if (name == "softlog") return make_softlog(p.dim);
  if (name == "logreg") return make_logreg(p.n_samples, p.dim, p.seed, p.l2);
  if (name == "tiny_mlp") return make_tiny_mlp(p.n_samples, p.dim, p.hidden, p.seed);
  throw std::invalid_argument("unknown problem: " + name);
}

}  // namespace sumopt
