#include <doctest.h>

#include <cmath>

#include "sumopt/bounds.hpp"

using namespace sumopt;

namespace {

BoundInput convex_input() {
  BoundInput in;
  in.f0_gap = 1.0;
  in.dist0_sq = 1.0;
  in.constants.G = 1.0;
  in.constants.delta2 = 1.0;
  in.constants.convexity = ConvexityClass::nonsmooth_convex;
  in.C = 1.0;
  in.t_plus_1 = 100;
  return in;
}

BoundInput nonconvex_input() {
  BoundInput in;
  in.f0_gap = 1.0;
  in.constants.L = 1.0;
  in.constants.G = 1.0;
  in.constants.delta2 = 1.0;
  in.constants.convexity = ConvexityClass::smooth_nonconvex;
  in.C = 1.0;
  in.t_plus_1 = 100;
  return in;
}

}  // namespace

TEST_CASE("thm1: hand value at beta = 0") {
  BoundInput in = convex_input();
  in.beta = 0.0;
  in.s = 0.0;
  // 0 + 1/(2*10) + (1+0)*2/(2*10) = 0.15
  CHECK(bound_thm1(in) == doctest::Approx(0.15).epsilon(1e-14));
}

TEST_CASE("thm1: variants differ only through the 1+2sb factor") {
  BoundInput a = convex_input();
  a.beta = 0.9;
  a.s = 0.0;
  BoundInput b = a;
  b.s = 1.0;
  // C(G^2+delta^2)/(2(1-beta)sqrt(t+1)) = 1; factors are 1 vs 1+2*0.9 = 2.8
  double third_term_unit = a.C * 2.0 / (2.0 * 0.1 * 10.0);
  CHECK(bound_thm1(b) - bound_thm1(a) == doctest::Approx(1.8 * third_term_unit).epsilon(1e-13));
}

TEST_CASE("thm2: hand value") {
  BoundInput in = convex_input();
  in.beta = 0.9;
  in.s = 1.0;
  in.alpha = 0.01;
  in.constants.M = 1.0;
  in.v_t = 50.0;
  // 0.9/(0.1*100) + 0.1/(2*0.01*100) + 1*0.01*0.9*1*50/(0.1*100) = 0.09+0.05+0.045
  CHECK(bound_thm2(in) == doctest::Approx(0.185).epsilon(1e-13));
}

TEST_CASE("thm2: zero variation kills the third term") {
  BoundInput in = convex_input();
  in.beta = 0.8;
  in.s = 1.0;
  in.alpha = 0.02;
  in.constants.M = 3.0;
  in.v_t = 0.0;
  double expect = 0.8 * 1.0 / (0.2 * 100.0) + 0.2 * 1.0 / (2.0 * 0.02 * 100.0);
  CHECK(bound_thm2(in) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("thm2: worst-case variation recovers the 1/sqrt(t) shape") {
  BoundInput in = convex_input();
  in.beta = 0.9;
  in.s = 1.0;
  in.constants.M = 2.0;
  long t1 = 10000;
  in.t_plus_1 = t1;
  in.alpha = in.C / std::sqrt(double(t1));
  double M = 2.0;
  in.v_t = 2.0 * M * double(t1);
  double direct = bound_thm2(in);
  // substitute V_t = 2M(t+1): third term simplifies to 2 s beta M^2 C / ((1-beta) sqrt(t+1))
  double simplified = in.beta * in.f0_gap / (0.1 * double(t1)) +
                      0.1 * in.dist0_sq / (2.0 * in.alpha * double(t1)) +
                      2.0 * in.s * in.beta * M * M * in.C / (0.1 * std::sqrt(double(t1)));
  CHECK(direct == doctest::Approx(simplified).epsilon(1e-12));
}

TEST_CASE("thm2: hypothesis and constants are enforced") {
  BoundInput in = convex_input();
  in.beta = 0.4;
  in.s = 1.0;  // s*beta = 0.4 < 1/2
  in.alpha = 0.01;
  in.constants.M = 1.0;
  in.v_t = 1.0;
  CHECK_THROWS_WITH_AS(bound_thm2(in), "bound_thm2: requires s*beta >= 1/2",
                       std::invalid_argument);

  in.beta = 0.9;
  in.constants.M.reset();
  CHECK_THROWS_AS(bound_thm2(in), missing_constant_error);
  try {
    bound_thm2(in);
  } catch (const missing_constant_error& e) {
    CHECK(e.symbol == "M");
  }
}

TEST_CASE("thm3: beta = 0 hand value") {
  BoundInput in = nonconvex_input();
  in.beta = 0.0;
  in.s = 0.0;
  // (2/100)*max{2, 10} + 1*1*1/10 = 0.2 + 0.1
  CHECK(bound_thm3(in) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("thm3: both gradient-method views give the same bound") {
  // view 1: beta = 0; view 2: s = 1/(1-beta) with C scaled by (1-beta)
  for (double beta : {0.1, 0.5, 0.9, 0.95}) {
    BoundInput v1 = nonconvex_input();
    v1.beta = 0.0;
    v1.s = 0.0;
    BoundInput v2 = nonconvex_input();
    v2.beta = beta;
    v2.s = 1.0 / (1.0 - beta);
    v2.C = v1.C * (1.0 - beta);
    CHECK(bound_thm3(v1) == doctest::Approx(bound_thm3(v2)).epsilon(1e-12));
  }
}

TEST_CASE("thm3: momentum coefficients are L b^2, L b^4 and 0") {
  double beta = 0.9, L = 1.0, G2pS2 = 2.0;
  BoundInput hb = nonconvex_input();
  hb.beta = beta;
  hb.s = 0.0;
  BoundInput nag = hb;
  nag.s = 1.0;
  BoundInput gd = hb;
  gd.s = 1.0 / (1.0 - beta);

  double unit = (hb.C / std::sqrt(100.0)) / std::pow(1.0 - beta, 3.0);
  double b2 = bound_thm3(hb) - bound_thm3(gd);
  CHECK(b2 == doctest::Approx(unit * L * beta * beta * G2pS2).epsilon(1e-10));
  double b4 = bound_thm3(nag) - bound_thm3(gd);
  CHECK(b4 == doctest::Approx(unit * L * std::pow(beta, 4.0) * G2pS2).epsilon(1e-10));
}

TEST_CASE("thm3/thm4: missing constants name the symbol") {
  BoundInput in = nonconvex_input();
  in.constants.L.reset();
  try {
    bound_thm3(in);
    FAIL("expected missing_constant_error");
  } catch (const missing_constant_error& e) {
    CHECK(e.symbol == "L");
  }
  BoundInput in2 = nonconvex_input();
  in2.constants.delta2.reset();
  try {
    bound_thm4(in2);
    FAIL("expected missing_constant_error");
  } catch (const missing_constant_error& e) {
    CHECK(e.symbol == "delta2");
  }
}

TEST_CASE("thm1 requires a convex problem class") {
  BoundInput in = convex_input();
  in.constants.convexity = ConvexityClass::smooth_nonconvex;
  CHECK_THROWS_AS(bound_thm1(in), std::invalid_argument);
}

TEST_CASE("recommend_alpha: prescriptions") {
  ProblemConstants pc;
  pc.L = 1.0;
  CHECK(recommend_alpha(TheoremId::thm1, pc, 0.9, 1.0, 1.0, 100) ==
        doctest::Approx(0.1).epsilon(1e-15));

  // thm3 picks the smaller of the cap and the root term
  pc.L = 100.0;
  CHECK(recommend_alpha(TheoremId::thm3, pc, 0.9, 1.0, 1.0, 100) ==
        doctest::Approx(0.1 / 200.0).epsilon(1e-12));

  // thm4 caps at beta=0.9, L=1, C effectively infinite
  pc.L = 1.0;
  double big_C = 1e30;
  CHECK(recommend_alpha(TheoremId::thm4, pc, 0.9, 0.0, big_C, 100) ==
        doctest::Approx(0.025).epsilon(1e-14));
  CHECK(recommend_alpha(TheoremId::thm4, pc, 0.9, 1.0, big_C, 100) ==
        doctest::Approx(0.1 / (2.0 * 1.81)).epsilon(1e-14));
  CHECK(recommend_alpha(TheoremId::thm4, pc, 0.9, 10.0, big_C, 100) ==
        doctest::Approx(0.05).epsilon(1e-14));

  // beta = 0 caps: s = 0 gives 1/(4L), s = 1 gives 1/(2L)
  CHECK(recommend_alpha(TheoremId::thm4, pc, 0.0, 0.0, big_C, 100) ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(recommend_alpha(TheoremId::thm4, pc, 0.0, 1.0, big_C, 100) ==
        doctest::Approx(0.5).epsilon(1e-14));

  pc.L.reset();
  CHECK_THROWS_AS(recommend_alpha(TheoremId::thm3, pc, 0.9, 1.0, 1.0, 100),
                  missing_constant_error);
}

TEST_CASE("recommend_alpha(thm4) is maximized at s = 1/(1-beta)") {
  ProblemConstants pc;
  pc.L = 2.0;
  for (double beta : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    double gd = recommend_alpha(TheoremId::thm4, pc, beta, 1.0 / (1.0 - beta), 1e30, 1000);
    CHECK(gd >= recommend_alpha(TheoremId::thm4, pc, beta, 0.0, 1e30, 1000));
    CHECK(gd >= recommend_alpha(TheoremId::thm4, pc, beta, 1.0, 1e30, 1000));
  }
}

TEST_CASE("bounds are nonincreasing in t") {
  long grid[] = {10, 30, 100, 300, 1000, 10000, 100000, 1000000};

  BoundInput c = convex_input();
  c.beta = 0.9;
  c.s = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (long t1 : grid) {
    c.t_plus_1 = t1;
    double b = bound_thm1(c);
    CHECK(b <= prev + 1e-15);
    prev = b;
  }

  BoundInput n = nonconvex_input();
  n.beta = 0.9;
  n.s = 1.0;
  prev = std::numeric_limits<double>::infinity();
  for (long t1 : grid) {
    n.t_plus_1 = t1;
    double b3 = bound_thm3(n);
    CHECK(b3 <= prev + 1e-15);
    prev = b3;
  }
  prev = std::numeric_limits<double>::infinity();
  for (long t1 : grid) {
    n.t_plus_1 = t1;
    double b4 = bound_thm4(n);
    CHECK(b4 <= prev + 1e-15);
    prev = b4;
  }
}
