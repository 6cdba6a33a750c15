#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gldp/degree.hpp"
#include "gldp/entropy.hpp"
#include "gldp/rate_up.hpp"
#include "gldp/reference.hpp"
#include "gldp/tilt.hpp"

using namespace gldp;

namespace {

template <class F>
double simpson(const F& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int k = 1; k < panels; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

const std::vector<double> kQuadVals{0.2, 0.6, 0.6, 0.8};

}  // namespace

TEST_CASE("sigmoid and logit") {
  CHECK(sigmoid(0.0) == 0.5);
  CHECK(logit(0.5) == 0.0);
  CHECK(sigmoid(logit(0.37)) == doctest::Approx(0.37).epsilon(1e-14));
  CHECK(logit(sigmoid(2.5)) == doctest::Approx(2.5).epsilon(1e-13));
  CHECK(sigmoid(800.0) == 1.0);
  CHECK(sigmoid(-800.0) == doctest::Approx(0.0).scale(1).epsilon(1e-300));
}

TEST_CASE("row log-mgf") {
  ReferenceGraphon half = ReferenceGraphon::constant(0.5);
  CHECK(log_mgf(half, 0.2, 0.0) == doctest::Approx(0.0).scale(1).epsilon(1e-14));
  CHECK(log_mgf(half, 0.2, 1.0) ==
        doctest::Approx(std::log(0.5 * std::exp(1.0) + 0.5)).epsilon(1e-13));

  // Large-|theta| asymptotes, evaluated without overflow.
  ReferenceGraphon p3 = ReferenceGraphon::constant(0.3);
  CHECK(log_mgf(p3, 0.0, 600.0) ==
        doctest::Approx(600.0 + std::log(0.3)).epsilon(1e-12));
  CHECK(log_mgf(p3, 0.0, -600.0) ==
        doctest::Approx(std::log(0.7)).epsilon(1e-12));

  // Smooth family against an independent quadrature.
  ReferenceGraphon r1 = ReferenceGraphon::rank1({0.3, 0.4});
  const double theta = 0.7, x = 0.5;
  const double oracle = simpson(
      [&](double y) {
        const double p = r1(x, y);
        return std::log(p * std::exp(theta) + 1.0 - p);
      },
      0.0, 1.0, 256);
  CHECK(log_mgf(r1, x, theta) == doctest::Approx(oracle).epsilon(1e-10));

  // Grid family: exact finite sum.
  ReferenceGraphon rg = ReferenceGraphon::grid(BlockGraphon(2, kQuadVals));
  const double g0 = 0.5 * (std::log(0.2 * std::exp(theta) + 0.8) +
                           std::log(0.6 * std::exp(theta) + 0.4));
  CHECK(log_mgf(rg, 0.25, theta) == doctest::Approx(g0).epsilon(1e-14));
}

TEST_CASE("tilt solve") {
  ReferenceGraphon half = ReferenceGraphon::constant(0.5);
  TiltedRow row = solve_tilt(half, 0.3, 0.6);
  CHECK(row.theta == doctest::Approx(std::log(1.5)).epsilon(1e-12));
  CHECK(row.beta == 0.6);
  CHECK(tilted_degree(half, 0.3, row.theta) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(row.value(half, 0.9) == doctest::Approx(0.6).epsilon(1e-12));

  // At beta = d_r(x) the tilt vanishes.
  ReferenceGraphon r1 = ReferenceGraphon::rank1({0.3, 0.4});
  TiltedRow flat = solve_tilt(r1, 0.5, degree_eval(r1, 0.5));
  CHECK(std::fabs(flat.theta) < 1e-9);

  // Monotone bracket from the declared range bounds.
  for (double beta : {0.2, 0.5, 0.9}) {
    TiltedRow t = solve_tilt(r1, 0.7, beta);
    CHECK(t.theta >= logit(beta) - logit(r1.upper()) - 1e-9);
    CHECK(t.theta <= logit(beta) - logit(r1.lower()) + 1e-9);
    CHECK(tilted_degree(r1, 0.7, t.theta) == doctest::Approx(beta).epsilon(1e-11));
  }

  CHECK_THROWS(solve_tilt(half, 0.3, 0.0));
  CHECK_THROWS(solve_tilt(half, 0.3, 1.0));
  CHECK_THROWS(solve_tilt(ReferenceGraphon::constant(0.0), 0.3, 0.5));
}

TEST_CASE("row rate J") {
  // Constant reference collapses to one relative entropy.
  ReferenceGraphon half = ReferenceGraphon::constant(0.5);
  for (double beta : {0.1, 0.4, 0.6, 0.85})
    CHECK(degree_rate(half, 0.2, beta) ==
          doctest::Approx(bernoulli_relative_entropy(beta, 0.5)).epsilon(1e-11));

  // Legendre value against the entropy integral, computed here from scratch.
  ReferenceGraphon r1 = ReferenceGraphon::rank1({0.3, 0.4});
  const double x = 0.4, beta = 0.55;
  TiltedRow row = solve_tilt(r1, x, beta);
  const double via_entropy = simpson(
      [&](double y) {
        return bernoulli_relative_entropy(row.value(r1, y), r1(x, y));
      },
      0.0, 1.0, 512);
  CHECK(degree_rate(r1, row) == doctest::Approx(via_entropy).epsilon(1e-8));
  CHECK(degree_rate_fast(r1, row) ==
        doctest::Approx(degree_rate(r1, row)).epsilon(1e-10));
  CHECK(degree_rate(r1, x, beta) == doctest::Approx(via_entropy).epsilon(1e-8));

  // J >= 0 with equality only at beta = d_r(x).
  CHECK(degree_rate(r1, x, degree_eval(r1, x)) ==
        doctest::Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(degree_rate(r1, x, 0.8) > 0.1);
}

TEST_CASE("derivatives of the row rate") {
  ReferenceGraphon half = ReferenceGraphon::constant(0.5);
  // d2J/dbeta2 = 1/(beta(1-beta)) for a constant reference.
  CHECK(tilt_derivative(half, 0.0, 0.5 + 1e-9, 2) ==
        doctest::Approx(4.0).epsilon(1e-6));
  CHECK(tilt_derivative(half, 0.0, 0.6, 2) ==
        doctest::Approx(1.0 / 0.24).epsilon(1e-10));

  ReferenceGraphon r1 = ReferenceGraphon::rank1({0.3, 0.4});
  const double x = 0.6, beta = 0.5, h = 1e-5;
  TiltedRow row = solve_tilt(r1, x, beta);
  CHECK(tilt_derivative(r1, row, 1) == row.theta);

  const double jm = degree_rate_fast(r1, solve_tilt(r1, x, beta - h));
  const double j0 = degree_rate_fast(r1, row);
  const double jp = degree_rate_fast(r1, solve_tilt(r1, x, beta + h));
  CHECK(row.theta == doctest::Approx((jp - jm) / (2 * h)).epsilon(1e-5));
  CHECK(tilt_derivative(r1, row, 2) ==
        doctest::Approx((jp - 2 * j0 + jm) / (h * h)).epsilon(1e-4));

  // At beta = d_r(x) the curvature is 1/v_r(x).
  TiltedRow at_mean = solve_tilt(r1, 1.0, degree_eval(r1, 1.0));
  CHECK(tilt_derivative(r1, at_mean, 2) ==
        doctest::Approx(1.0 / degree_variance(r1, 1.0)).epsilon(1e-9));

  CHECK_THROWS(tilt_derivative(r1, row, 3));
}

TEST_CASE("psi_hat point solves") {
  ReferenceGraphon half = ReferenceGraphon::constant(0.5);
  RatePoint p = psi_hat(half, 0.6);
  CHECK(p.value == doctest::Approx(0.020135513550688863).epsilon(1e-10));
  CHECK(p.argmin_x == 0.0);  // flat scan ties to the smallest x
  CHECK(p.theta == doctest::Approx(std::log(1.5)).epsilon(1e-10));

  // Monotone degree: the argmin sits at the right edge, value J(1, beta).
  ReferenceGraphon r1 = ReferenceGraphon::rank1({0.3, 0.4});
  RatePoint q = psi_hat(r1, 0.5);
  CHECK(q.argmin_x == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(q.value == doctest::Approx(degree_rate(r1, 1.0, 0.5)).epsilon(1e-9));

  // Exceeding every declared bound check.
  CHECK_THROWS_AS(psi_hat(half, 0.4), std::domain_error);
  CHECK_THROWS_AS(psi_hat(half, 1.0), std::domain_error);
  CHECK(psi_hat(half, 0.5).value == doctest::Approx(0.0).scale(1).epsilon(1e-10));
  CHECK(psi_hat(r1, 0.35).value == doctest::Approx(0.0).scale(1).epsilon(1e-9));

  // Grid reference: minimum over per-block rates.
  ReferenceGraphon rg = ReferenceGraphon::grid(BlockGraphon(2, kQuadVals));
  RatePoint gp = psi_hat(rg, 0.8);
  const double j0 = degree_rate(rg, 0.25, 0.8);
  const double j1 = degree_rate(rg, 0.75, 0.8);
  CHECK(gp.value == doctest::Approx(std::min(j0, j1)).epsilon(1e-10));
  CHECK(j1 < j0);  // higher-degree block pays less
  CHECK(gp.argmin_x > 0.5);
}

TEST_CASE("upward constants") {
  auto [c_half, ok_half] = c_r(ReferenceGraphon::constant(0.5));
  CHECK(c_half == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(ok_half);

  ReferenceGraphon r1 = ReferenceGraphon::rank1({0.3, 0.4});
  auto [c1, ok1] = c_r(r1);
  CHECK(c1 == doctest::Approx(0.35).epsilon(1e-13));
  CHECK(ok1);

  ReferenceGraphon rg = ReferenceGraphon::grid(BlockGraphon(2, kQuadVals));
  auto [cg, okg] = c_r(rg);
  CHECK(cg == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(okg);  // lambda_max(K) = 0.6 stays below the degree sup 0.7

  CHECK(c_r1(ReferenceGraphon::constant(0.5)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(c_r1(ReferenceGraphon::constant(0.3)) ==
        doctest::Approx(std::log(1.0 / 0.3)).epsilon(1e-12));
  const double c1_oracle =
      -std::log(0.7) -
      simpson([](double y) { return std::log(0.3 + 0.4 * y); }, 0.0, 1.0, 512);
  CHECK(c_r1(r1) == doctest::Approx(c1_oracle).epsilon(1e-8));
  CHECK_THROWS_AS(c_r1(ReferenceGraphon::constant(0.0)), std::domain_error);
}

TEST_CASE("curvature constant") {
  CHECK(curvature(ReferenceGraphon::constant(0.5)).k_hat ==
        doctest::Approx(2.0).epsilon(1e-10));
  CHECK(curvature(ReferenceGraphon::constant(0.3)).k_hat ==
        doctest::Approx(2.380952380952381).epsilon(1e-10));

  ReferenceGraphon r1 = ReferenceGraphon::rank1({0.3, 0.4});
  CurvatureResult cr = curvature(r1);
  CHECK(cr.k_hat == doctest::Approx(150.0 / 66.29).epsilon(1e-9));
  REQUIRE(!cr.argmax_set.empty());
  CHECK(cr.argmax_set.back().second == doctest::Approx(1.0).epsilon(1e-8));

  CHECK_THROWS_AS(
      curvature(ReferenceGraphon::grid(BlockGraphon(2, kQuadVals))),
      std::domain_error);
}

TEST_CASE("rate curve and quadratic scaling") {
  ReferenceGraphon half = ReferenceGraphon::constant(0.5);
  std::vector<double> betas{0.55, 0.6, 0.7, 0.8};
  RateCurve curve = psi_hat_curve(half, betas);
  REQUIRE(curve.points.size() == 4);
  REQUIRE(curve.scaling_ratio.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(curve.points[k].beta == betas[k]);
    CHECK(curve.points[k].value ==
          doctest::Approx(bernoulli_relative_entropy(betas[k], 0.5))
              .epsilon(1e-9));
    if (k) CHECK(curve.points[k].value > curve.points[k - 1].value);
    CHECK(curve.scaling_ratio[k] ==
          doctest::Approx(curve.points[k].value /
                          ((betas[k] - 0.5) * (betas[k] - 0.5)))
              .epsilon(1e-12));
  }
  CHECK(curve.constants.c_r == doctest::Approx(0.5));
  CHECK(curve.constants.c_r1 == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  REQUIRE(curve.constants.k_hat.has_value());
  CHECK(*curve.constants.k_hat == doctest::Approx(2.0).epsilon(1e-9));

  // Grid references advertise no curvature constant.
  RateCurve gcurve = psi_hat_curve(
      ReferenceGraphon::grid(BlockGraphon(2, kQuadVals)), {0.75, 0.8});
  CHECK_FALSE(gcurve.constants.k_hat.has_value());

  // The ratio approaches K_hat from near the threshold.
  const double deltas[] = {1e-2, 3e-3, 1e-3};
  double prev_err = 1e9;
  for (double d : deltas) {
    const double ratio = psi_hat(half, 0.5 + d).value / (d * d);
    const double err = std::fabs(ratio - 2.0);
    CHECK(err < prev_err + 1e-12);
    prev_err = err;
  }
  CHECK(psi_hat(half, 0.5 + 1e-3).value / 1e-6 ==
        doctest::Approx(2.0).epsilon(0.05));

  ReferenceGraphon r1 = ReferenceGraphon::rank1({0.3, 0.4});
  const double k1 = curvature(r1).k_hat;
  CHECK(psi_hat(r1, 0.35 + 1e-3).value / 1e-6 == doctest::Approx(k1).epsilon(0.08));
}
