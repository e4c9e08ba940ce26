#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sumopt/vec.hpp"

namespace sumopt {

enum class ConvexityClass { nonsmooth_convex, smooth_convex, smooth_nonconvex };

const char* to_string(ConvexityClass c);

// Analytic constants a problem declares about itself. When box_radius is
// set, G (and M) are only claimed inside the box ||x||_inf <= box_radius;
// runs check that iterates stay inside and flag themselves otherwise.
struct ProblemConstants {
  std::optional<double> L;       // gradient Lipschitz constant
  std::optional<double> G;       // (sub)gradient norm bound
  std::optional<double> M;       // stochastic gradient norm bound
  std::optional<double> delta2;  // variance bound of the stochastic oracle
  std::optional<double> f_star;  // optimal (or best known) objective value
  ConvexityClass convexity = ConvexityClass::smooth_convex;
  std::optional<double> box_radius;
};

// Deterministic objective with oracle access. Immutable after construction;
// concurrent evaluation from multiple runs is safe.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual const std::string& name() const = 0;
  virtual std::size_t dim() const = 0;
  virtual double value(const ParamVector& x) const = 0;
  // A subgradient for nonsmooth problems, the gradient otherwise.
  virtual ParamVector gradient(const ParamVector& x) const = 0;
  virtual const ProblemConstants& constants() const = 0;
  virtual const ParamVector& start_point() const = 0;

  // Known minimizer, when available in closed (or cached) form.
  virtual std::optional<ParamVector> minimizer() const { return std::nullopt; }

  // Finite-sum structure; sample_count() == 0 means not a finite sum.
  virtual std::size_t sample_count() const { return 0; }
  virtual ParamVector sample_gradient(const ParamVector& x, std::size_t i) const;

  // Held-out evaluation split, for problems that carry one.
  virtual bool has_heldout() const { return false; }
  virtual double heldout_error(const ParamVector& x) const;
};

using ProblemPtr = std::shared_ptr<const Problem>;

// Synthetic two-blob classification data with labels +-1. Blob membership is
// random, so small n can come out single-class; the generator then retries
// with the next seed and records how many regenerations happened.
struct BlobData {
  std::size_t dim = 0;
  std::vector<std::vector<double>> points;
  std::vector<int> labels;  // +1 / -1
  std::uint64_t seed_used = 0;
  int regen_count = 0;
};

BlobData make_blobs(std::size_t n, std::size_t dim, std::uint64_t seed, double separation = 2.0);

// f(x) = 0.5 x'Ax - b'x with A symmetric positive definite built from a
// seeded random rotation of a log-spaced spectrum in [1, condition_number];
// L = lambda_max exactly, f_star from the closed-form minimizer.
ProblemPtr make_quadratic(std::size_t dim, double condition_number, std::uint64_t seed);
// Same objective with an explicit diagonal A; handy for pinned instances.
ProblemPtr make_quadratic_diag(std::vector<double> diag, ParamVector b);

// f(x) = sum_i |x_i| / sqrt(dim); nonsmooth convex, G = 1, f_star = 0.
ProblemPtr make_abs_loss(std::size_t dim);

// f(x) = sum_i log(1 + x_i^2); smooth nonconvex, L = 2, G = sqrt(dim), f_star = 0.
ProblemPtr make_softlog(std::size_t dim);

// Binary logistic regression over synthetic blobs with l2 regularization.
// f_star is cached from a deterministic pre-solve on first access.
ProblemPtr make_logreg(std::size_t n_samples, std::size_t dim, std::uint64_t seed, double l2 = 0.0005);

// One-hidden-layer network (tanh hidden, logistic output, cross-entropy)
// over synthetic blobs, gradient by hand-coded reverse-mode differentiation.
// Carries a held-out split for 0/1 classification error.
ProblemPtr make_tiny_mlp(std::size_t n_samples, std::size_t dim_in, std::size_t hidden, std::uint64_t seed);
// Same network over caller-supplied data; init_seed only drives weight init.
ProblemPtr make_tiny_mlp_from(BlobData train, BlobData heldout, std::size_t hidden, std::uint64_t init_seed);

// Problem lookup used by the experiment config ("quadratic", "abs_loss", ...).
struct ProblemParams {
  std::size_t dim = 10;
  double condition = 10.0;
  std::size_t n_samples = 2000;
  std::size_t hidden = 16;
  std::uint64_t seed = 1;
  double l2 = 0.0005;
};
ProblemPtr make_problem(const std::string& name, const ProblemParams& params);

}  // namespace sumopt
