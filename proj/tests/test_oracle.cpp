#include <doctest.h>

#include <cmath>

#include "sumopt/oracle.hpp"
#include "sumopt/problems.hpp"
#include "test_support.hpp"

using namespace sumopt;

TEST_CASE("deterministic oracle returns the full gradient") {
  auto p = make_softlog(4);
  OracleSpec o;
  o.kind = OracleKind::deterministic;
  ParamVector zero(4, 0.0);
  OracleDraw d = draw(o, *p, zero, 0);
  CHECK(d.gradient == ParamVector(4, 0.0));
  CHECK(d.draw_index == 0);
}

TEST_CASE("additive oracle with zero noise equals the deterministic one") {
  auto p = make_softlog(5);
  OracleSpec det{OracleKind::deterministic, 0.0, 1, 9};
  OracleSpec add{OracleKind::additive_gaussian, 0.0, 1, 9};
  ParamVector x = p->start_point();
  for (long k = 0; k < 10; ++k) {
    CHECK(draw(det, *p, x, k).gradient == draw(add, *p, x, k).gradient);
  }
}

TEST_CASE("minibatch over the full index set equals the full gradient") {
  auto p = make_logreg(25, 4, 2);
  ParamVector w = p->start_point();
  std::vector<std::size_t> all(p->sample_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  CHECK(test::rel_error(minibatch_mean_gradient(*p, w, all), p->gradient(w)) <= 1e-12);
}

TEST_CASE("draws are pure in (seed, k) and independent of call order") {
  auto p = make_softlog(6);
  OracleSpec o{OracleKind::additive_gaussian, 1.0, 1, 77};
  ParamVector x = p->start_point();
  OracleDraw d5_first = draw(o, *p, x, 5);
  OracleDraw d3 = draw(o, *p, x, 3);
  OracleDraw d5_again = draw(o, *p, x, 5);
  CHECK(d5_first.gradient == d5_again.gradient);
  CHECK_FALSE(d3.gradient == d5_first.gradient);
}

TEST_CASE("additive oracle is unbiased (Monte Carlo, CLT tolerance)") {
  auto p = make_softlog(4);
  OracleSpec o{OracleKind::additive_gaussian, 1.0, 1, 31};
  ParamVector x = p->start_point();
  ParamVector full = p->gradient(x);
  const std::size_t n = 100000;
  ParamVector mean(4, 0.0);
  for (std::size_t k = 0; k < n; ++k) axpy_inplace(1.0, draw(o, *p, x, long(k)).gradient, mean);
  mean = scale(1.0 / double(n), mean);
  double tol = 3.0 * o.noise_std / std::sqrt(double(n));
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(mean[i] - full[i]) <= tol);
}

TEST_CASE("variance estimate: deterministic gives zero") {
  auto p = make_softlog(3);
  OracleSpec o{OracleKind::deterministic, 0.0, 1, 5};
  CHECK(variance_estimate(o, *p, p->start_point(), 100) == 0.0);
}

TEST_CASE("variance estimate: additive noise has dim-independent total variance") {
  OracleSpec o{OracleKind::additive_gaussian, 0.5, 1, 11};
  for (std::size_t dim : {3, 8}) {
    auto p = make_softlog(dim);
    double est = variance_estimate(o, *p, p->start_point(), 100000);
    CHECK(std::abs(est - 0.25) <= 0.025);  // within 10%
  }
}

TEST_CASE("variance estimate: larger batches reduce variance (paired seeds)") {
  auto p = make_logreg(40, 4, 6);
  ParamVector w = p->start_point();
  OracleSpec small{OracleKind::minibatch, 0.0, 1, 101};
  OracleSpec large{OracleKind::minibatch, 0.0, 20, 101};
  CHECK(variance_estimate(large, *p, w, 2000) <= variance_estimate(small, *p, w, 2000));
}

TEST_CASE("oracle error paths") {
  auto fs = make_logreg(10, 3, 8);
  auto plain = make_softlog(3);
  OracleSpec bad{OracleKind::minibatch, 0.0, 0, 1};
  CHECK_THROWS_AS(draw(bad, *fs, fs->start_point(), 0), std::invalid_argument);
  OracleSpec mb{OracleKind::minibatch, 0.0, 4, 1};
  CHECK_THROWS_AS(draw(mb, *plain, plain->start_point(), 0), std::invalid_argument);
  OracleSpec det{OracleKind::deterministic, 0.0, 1, 1};
  CHECK_THROWS_AS(draw(det, *plain, ParamVector{1.0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(variance_estimate(det, *plain, plain->start_point(), 1), std::invalid_argument);
}

TEST_CASE("declared variance per oracle kind") {
  CHECK(*declared_variance({OracleKind::deterministic, 0.0, 1, 0}) == 0.0);
  CHECK(*declared_variance({OracleKind::additive_gaussian, 0.5, 1, 0}) == 0.25);
  CHECK_FALSE(declared_variance({OracleKind::minibatch, 0.0, 8, 0}).has_value());
}
