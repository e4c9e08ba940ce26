#include <doctest.h>

#include <cmath>

#include "sumopt/problems.hpp"
#include "sumopt/rng.hpp"
#include "test_support.hpp"

using namespace sumopt;
using test::fd_gradient;
using test::rel_error;

namespace {

ParamVector random_point(std::size_t dim, std::uint64_t seed, std::uint64_t k, double scale) {
  CounterRng rng(seed, k);
  ParamVector x(dim);
  for (std::size_t i = 0; i < dim; ++i) x[i] = scale * rng.next_normal();
  return x;
}

}  // namespace

TEST_CASE("quadratic: explicit 1-d instance") {
  auto p = make_quadratic_diag({2.0}, ParamVector{0.0});
  ParamVector x{3.0};
  CHECK(p->value(x) == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(p->gradient(x)[0] == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(*p->constants().L == 2.0);
  CHECK(*p->constants().f_star == 0.0);
}

TEST_CASE("quadratic: gradient vanishes at the closed-form minimizer") {
  auto p = make_quadratic(12, 25.0, 3);
  auto x_star = p->minimizer();
  REQUIRE(x_star.has_value());
  CHECK(norm2(p->gradient(*x_star)) < 1e-10);

  // f(x) >= f_star for random probes
  for (int i = 0; i < 100; ++i) {
    ParamVector x = random_point(12, 55, i, 3.0);
    CHECK(p->value(x) >= *p->constants().f_star - 1e-9);
  }
}

TEST_CASE("quadratic: declared L passes the sampled smoothness check") {
  auto p = make_quadratic(8, 10.0, 17);
  double L = *p->constants().L;
  CHECK(L == doctest::Approx(10.0).epsilon(1e-12));  // lambda_max equals the condition number here
  for (int i = 0; i < 200; ++i) {
    ParamVector x = random_point(8, 91, 2 * i, 2.0);
    ParamVector y = random_point(8, 91, 2 * i + 1, 2.0);
    double lhs = norm2(sub(p->gradient(y), p->gradient(x)));
    CHECK(lhs <= L * norm2(sub(y, x)) * (1.0 + 1e-10) + 1e-12);
  }
}

TEST_CASE("quadratic: reproducible from seed") {
  auto a = make_quadratic(6, 8.0, 123);
  auto b = make_quadratic(6, 8.0, 123);
  auto c = make_quadratic(6, 8.0, 124);
  ParamVector x = random_point(6, 5, 0, 1.0);
  CHECK(a->value(x) == b->value(x));
  CHECK(a->value(x) != c->value(x));
}

TEST_CASE("abs_loss basics") {
  auto p4 = make_abs_loss(4);
  ParamVector zero(4, 0.0);
  CHECK(p4->value(zero) == 0.0);
  CHECK(norm2(p4->gradient(zero)) == 0.0);

  ParamVector x{1, -1, 1, -1};
  CHECK(p4->value(x) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(p4->gradient(x) == ParamVector{0.5, -0.5, 0.5, -0.5});

  // ||subgradient|| <= G = 1 everywhere
  for (int i = 0; i < 100; ++i) {
    ParamVector probe = random_point(4, 77, i, 5.0);
    CHECK(norm2(p4->gradient(probe)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("abs_loss: sampled first-order convexity inequality") {
  auto p = make_abs_loss(6);
  for (int i = 0; i < 100; ++i) {
    ParamVector x = random_point(6, 31, 2 * i, 3.0);
    ParamVector y = random_point(6, 31, 2 * i + 1, 3.0);
    CHECK(p->value(y) >= p->value(x) + dot(p->gradient(x), sub(y, x)) - 1e-9);
  }
}

TEST_CASE("softlog basics") {
  auto p1 = make_softlog(1);
  ParamVector zero1{0.0};
  CHECK(p1->value(zero1) == 0.0);
  CHECK(p1->gradient(zero1)[0] == 0.0);

  ParamVector one{1.0};
  CHECK(p1->value(one) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(p1->gradient(one)[0] == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(*p1->constants().L == 2.0);
  CHECK(*make_softlog(10)->constants().G == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
}

TEST_CASE("softlog: grid oracle confirms L = 2 at the origin") {
  auto p = make_softlog(1);
  double max_slope = 0.0;
  const double h = 1e-5;
  for (double x = -3.0; x <= 3.0; x += 1e-3) {
    ParamVector lo{x - h}, hi{x + h};
    double slope = std::abs(p->gradient(hi)[0] - p->gradient(lo)[0]) / (2.0 * h);
    max_slope = std::max(max_slope, slope);
  }
  CHECK(max_slope == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(max_slope <= 2.0 + 1e-9);
}

TEST_CASE("softlog: declared G holds on samples") {
  auto p = make_softlog(7);
  double G = *p->constants().G;
  for (int i = 0; i < 100; ++i) {
    CHECK(norm2(p->gradient(random_point(7, 13, i, 10.0))) <= G + 1e-12);
  }
}

TEST_CASE("blobs: degenerate single-class data regenerates with the next seed") {
  bool saw_regen = false;
  for (std::uint64_t seed = 0; seed < 64 && !saw_regen; ++seed) {
    BlobData d = make_blobs(2, 3, seed);
    CHECK(d.points.size() == 2);
    if (d.regen_count > 0) {
      saw_regen = true;
      CHECK(d.seed_used > seed);
    }
  }
  CHECK(saw_regen);  // two samples agree half the time, so 64 seeds must hit it
}

TEST_CASE("logreg: zero weights give log 2 per sample") {
  auto p = make_logreg(50, 5, 21);
  CHECK(p->value(ParamVector(5, 0.0)) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("logreg: gradient matches central finite differences") {
  auto p = make_logreg(40, 4, 9);
  ParamVector w0(4, 0.0);
  CHECK(rel_error(p->gradient(w0), fd_gradient(*p, w0)) <= 1e-6);
  ParamVector w1 = random_point(4, 3, 1, 0.5);
  CHECK(rel_error(p->gradient(w1), fd_gradient(*p, w1)) <= 1e-6);
}

TEST_CASE("logreg: full gradient is the mean of per-sample gradients") {
  auto p = make_logreg(30, 4, 11);
  ParamVector w = random_point(4, 19, 0, 1.0);
  ParamVector mean(4, 0.0);
  for (std::size_t i = 0; i < p->sample_count(); ++i) {
    axpy_inplace(1.0, p->sample_gradient(w, i), mean);
  }
  mean = scale(1.0 / double(p->sample_count()), mean);
  CHECK(rel_error(p->gradient(w), mean) <= 1e-12);
}

TEST_CASE("logreg: pre-solved optimum") {
  auto p = make_logreg(60, 5, 33);
  auto w_star = p->minimizer();
  REQUIRE(w_star.has_value());
  CHECK(norm2(p->gradient(*w_star)) <= 1e-10);
  double f_star = *p->constants().f_star;
  for (int i = 0; i < 50; ++i) {
    CHECK(p->value(random_point(5, 71, i, 2.0)) >= f_star - 1e-9);
  }
}

TEST_CASE("logreg: sampled smoothness and convexity for declared constants") {
  auto p = make_logreg(40, 4, 5);
  double L = *p->constants().L;
  for (int i = 0; i < 100; ++i) {
    ParamVector x = random_point(4, 23, 2 * i, 2.0);
    ParamVector y = random_point(4, 23, 2 * i + 1, 2.0);
    CHECK(norm2(sub(p->gradient(y), p->gradient(x))) <= L * norm2(sub(y, x)) * (1.0 + 1e-10) + 1e-12);
    CHECK(p->value(y) >= p->value(x) + dot(p->gradient(x), sub(y, x)) - 1e-9);
  }
}

TEST_CASE("tiny_mlp: gradient matches central finite differences at random points") {
  auto p = make_tiny_mlp(20, 4, 3, 13);
  for (int i = 0; i < 5; ++i) {
    ParamVector x = random_point(p->dim(), 61, i, 0.7);
    CHECK(rel_error(p->gradient(x), fd_gradient(*p, x, 1e-6)) <= 1e-5);
  }
}

TEST_CASE("tiny_mlp: zero output layer gives log 2 loss") {
  auto p = make_tiny_mlp(25, 4, 3, 29);
  ParamVector x = p->start_point();
  // zero out w2 and b2: the last hidden+1 coordinates
  for (std::size_t i = p->dim() - 4; i < p->dim(); ++i) x[i] = 0.0;
  CHECK(p->value(x) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("tiny_mlp: duplicating every sample leaves loss and gradient unchanged") {
  BlobData train = make_blobs(15, 4, 41);
  BlobData doubled = train;
  for (std::size_t i = 0; i < train.points.size(); ++i) {
    doubled.points.push_back(train.points[i]);
    doubled.labels.push_back(train.labels[i]);
  }
  BlobData heldout = make_blobs(8, 4, 42);
  auto p1 = make_tiny_mlp_from(train, heldout, 3, 77);
  auto p2 = make_tiny_mlp_from(doubled, heldout, 3, 77);
  ParamVector x = p1->start_point();
  CHECK(p2->start_point() == x);
  CHECK(p1->value(x) == doctest::Approx(p2->value(x)).epsilon(1e-13));
  CHECK(rel_error(p1->gradient(x), p2->gradient(x)) <= 1e-12);
}

TEST_CASE("tiny_mlp: held-out error is a fraction") {
  auto p = make_tiny_mlp(30, 5, 4, 3);
  REQUIRE(p->has_heldout());
  double e = p->heldout_error(p->start_point());
  CHECK(e >= 0.0);
  CHECK(e <= 1.0);
}

TEST_CASE("box-scoped G bounds hold on 1000 sampled points") {
  auto quad = make_quadratic(6, 12.0, 8);
  auto lr = make_logreg(30, 4, 15);
  for (const ProblemPtr& p : {quad, lr}) {
    double G = *p->constants().G;
    double box = *p->constants().box_radius;
    for (int i = 0; i < 1000; ++i) {
      CounterRng rng(333, i);
      ParamVector x(p->dim());
      for (std::size_t j = 0; j < x.dim(); ++j) x[j] = box * (2.0 * rng.next_uniform() - 1.0);
      CHECK(norm2(p->gradient(x)) <= G + 1e-12);
    }
  }
}

TEST_CASE("make_problem dispatch") {
  ProblemParams params;
  params.dim = 3;
  CHECK(make_problem("abs_loss", params)->name() == "abs_loss");
  CHECK(make_problem("softlog", params)->name() == "softlog");
  CHECK_THROWS_AS(make_problem("nope", params), std::invalid_argument);
}
