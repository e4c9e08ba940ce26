#pragma once

#include <cstdint>
#include <optional>

#include "sumopt/problems.hpp"
#include "sumopt/vec.hpp"

namespace sumopt {

enum class OracleKind { deterministic, additive_gaussian, minibatch };

const char* to_string(OracleKind k);

struct OracleSpec {
  OracleKind kind = OracleKind::deterministic;
  // additive_gaussian: total noise std across coordinates, so the variance
  // bound delta^2 = noise_std^2 is dimension-stable
  double noise_std = 0.0;
  // minibatch: samples drawn uniformly with replacement
  std::size_t batch_size = 1;
  std::uint64_t seed = 0;
};

struct OracleDraw {
  ParamVector gradient;
  long draw_index = 0;
};

// One stochastic (sub)gradient at x for iteration k. Pure in (spec.seed, k, x):
// replaying the same iteration sees the same randomness regardless of call order.
OracleDraw draw(const OracleSpec& oracle, const Problem& problem, const ParamVector& x, long k);

// Mean of per-sample gradients over an explicit index set.
ParamVector minibatch_mean_gradient(const Problem& problem, const ParamVector& x,
                                    const std::vector<std::size_t>& indices);

// Unbiased sample variance of n_draws draws at fixed x, summed over
// coordinates: (1/(n-1)) sum_j ||G_j - mean||^2.
double variance_estimate(const OracleSpec& oracle, const Problem& problem, const ParamVector& x,
                         std::size_t n_draws);

// A-priori variance bound for this oracle, when one is known: 0 for
// deterministic, noise_std^2 for additive noise, unset for minibatch.
std::optional<double> declared_variance(const OracleSpec& oracle);

}  // namespace sumopt
