#include "sumopt/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "sumopt/rng.hpp"

namespace sumopt {

const char* to_string(OracleKind k) {
  switch (k) {
    case OracleKind::deterministic: return "deterministic";
    case OracleKind::additive_gaussian: return "additive";
    case OracleKind::minibatch: return "minibatch";
  }
  return "?";
}

ParamVector minibatch_mean_gradient(const Problem& problem, const ParamVector& x,
                                    const std::vector<std::size_t>& indices) {
  if (indices.empty()) throw std::invalid_argument("minibatch_mean_gradient: empty index set");
  ParamVector g(x.dim(), 0.0);
  for (std::size_t i : indices) axpy_inplace(1.0, problem.sample_gradient(x, i), g);
  return scale(1.0 / double(indices.size()), g);
}

OracleDraw draw(const OracleSpec& oracle, const Problem& problem, const ParamVector& x, long k) {
  if (x.dim() != problem.dim()) throw std::invalid_argument("draw: x dimension mismatch");
  if (k < 0) throw std::invalid_argument("draw: k must be nonnegative");

  switch (oracle.kind) {
    case OracleKind::deterministic:
      return {problem.gradient(x), k};

    case OracleKind::additive_gaussian: {
      ParamVector g = problem.gradient(x);
      if (oracle.noise_std > 0.0) {
        CounterRng rng(oracle.seed, std::uint64_t(k));
        double per_coord = oracle.noise_std / std::sqrt(double(g.dim()));
        for (std::size_t i = 0; i < g.dim(); ++i) g[i] += per_coord * rng.next_normal();
      }
      return {std::move(g), k};
    }

    case OracleKind::minibatch: {
      if (oracle.batch_size == 0) throw std::invalid_argument("draw: batch_size must be positive");
      std::size_t n = problem.sample_count();
      if (n == 0) throw std::invalid_argument("draw: minibatch oracle needs a finite-sum problem");
      CounterRng rng(oracle.seed, std::uint64_t(k));
      std::vector<std::size_t> idx(oracle.batch_size);
      for (auto& i : idx) i = std::size_t(rng.next_below(n));
      return {minibatch_mean_gradient(problem, x, idx), k};
    }
  }
  throw std::logic_error("draw: unknown oracle kind");
}

double variance_estimate(const OracleSpec& oracle, const Problem& problem, const ParamVector& x,
                         std::size_t n_draws) {
  if (n_draws < 2) throw std::invalid_argument("variance_estimate: need at least 2 draws");

  ParamVector mean(x.dim(), 0.0);
  std::vector<ParamVector> draws;
  draws.reserve(n_draws);
  for (std::size_t j = 0; j < n_draws; ++j) {
    draws.push_back(draw(oracle, problem, x, long(j)).gradient);
    axpy_inplace(1.0, draws.back(), mean);
  }
  mean = scale(1.0 / double(n_draws), mean);

  double ss = 0.0;
  for (const auto& g : draws) {
    ParamVector d = sub(g, mean);
    ss += dot(d, d);
  }
  return ss / double(n_draws - 1);
}

std::optional<double> declared_variance(const OracleSpec& oracle) {
  switch (oracle.kind) {
    case OracleKind::deterministic: return 0.0;
    case OracleKind::additive_gaussian: return oracle.noise_std * oracle.noise_std;
    case OracleKind::minibatch: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace sumopt
