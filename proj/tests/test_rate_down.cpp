#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gldp/degree.hpp"
#include "gldp/entropy.hpp"
#include "gldp/rate_down.hpp"
#include "gldp/reference.hpp"
#include "gldp/spectral.hpp"
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

template <class F2>
double simpson2d(const F2& f, double ax, double bx, double ay, double by,
                 int panels) {
  auto outer = [&](double x) {
    return simpson([&](double y) { return f(x, y); }, ay, by, panels);
  };
  return simpson(outer, ax, bx, panels);
}

const std::vector<double> kQuadVals{0.2, 0.6, 0.6, 0.8};
const double kRentropy45 = bernoulli_relative_entropy(0.4, 0.5);

}  // namespace

TEST_CASE("exceedance sets") {
  ExceedanceSet whole = exceedance_set(ReferenceGraphon::constant(0.5), 0.3);
  REQUIRE(whole.intervals.size() == 1);
  CHECK(whole.intervals[0].first == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(whole.intervals[0].second == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(whole.measure() == doctest::Approx(1.0).epsilon(1e-12));

  // d(x) = 0.15 + 0.2x >= 0.3 exactly on [0.75, 1].
  ReferenceGraphon r1 = ReferenceGraphon::rank1({0.3, 0.4});
  ExceedanceSet s = exceedance_set(r1, 0.3);
  REQUIRE(s.intervals.size() == 1);
  CHECK(s.intervals[0].first == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(s.intervals[0].second == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.measure() == doctest::Approx(0.25).epsilon(1e-8));

  CHECK(exceedance_set(r1, 0.4).intervals.empty());
  CHECK(exceedance_set(r1, 0.4).measure() == 0.0);

  // Step degrees cut at block boundaries.
  ExceedanceSet g =
      exceedance_set(ReferenceGraphon::grid(BlockGraphon(2, kQuadVals)), 0.5);
  REQUIRE(g.intervals.size() == 1);
  CHECK(g.intervals[0].first == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(g.measure() == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("empty-graph rate c_r0") {
  CHECK(c_r0(ReferenceGraphon::constant(0.5)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-13));
  CHECK(c_r0(ReferenceGraphon::constant(0.3)) ==
        doctest::Approx(-std::log(0.7)).epsilon(1e-13));

  const double grid_oracle = 0.25 * (std::log(1 / 0.8) + 2 * std::log(1 / 0.4) +
                                     std::log(1 / 0.2));
  CHECK(c_r0(ReferenceGraphon::grid(BlockGraphon(2, kQuadVals))) ==
        doctest::Approx(grid_oracle).epsilon(1e-13));

  ReferenceGraphon r1 = ReferenceGraphon::rank1({0.3, 0.4});
  const double smooth_oracle = simpson2d(
      [&](double x, double y) { return -std::log1p(-r1(x, y)); }, 0, 1, 0, 1,
      128);
  CHECK(c_r0(r1) == doctest::Approx(smooth_oracle).epsilon(1e-9));

  // Same number through the entropy functional at the zero graphon.
  CHECK(rate_I(BlockGraphon::zero(8), r1) ==
        doctest::Approx(c_r0(r1)).epsilon(1e-9));

  CHECK_THROWS(c_r0(ReferenceGraphon::constant(1.0)));
}

TEST_CASE("downward lower bound") {
  ReferenceGraphon half = ReferenceGraphon::constant(0.5);
  CHECK(psi_lower_bound(half, 0.4) == doctest::Approx(kRentropy45).epsilon(1e-9));
  CHECK(psi_lower_bound(half, 0.5) <= 1e-12);
  CHECK(psi_lower_bound(half, 0.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  ReferenceGraphon r1 = ReferenceGraphon::rank1({0.3, 0.4});
  const double oracle =
      simpson([&](double x) { return degree_rate(r1, x, 0.3); }, 0.75, 1.0, 64);
  CHECK(psi_lower_bound(r1, 0.3) == doctest::Approx(oracle).epsilon(1e-7));
  CHECK(psi_lower_bound(r1, 0.35) <= 1e-10);
}

TEST_CASE("candidate graphon assembly") {
  // Constant reference: the candidate is the constant beta.
  BlockGraphon cand = candidate_graphon(ReferenceGraphon::constant(0.5), 0.4, 4);
  for (double v : cand.values()) CHECK(v == doctest::Approx(0.4).epsilon(1e-12));

  // At beta = C_r nothing needs tilting.
  ReferenceGraphon r1 = ReferenceGraphon::rank1({0.3, 0.4});
  BlockGraphon at_cr = candidate_graphon(r1, 0.35, 8);
  BlockGraphon avg = block_average(r1, 8);
  for (int k = 0; k < 64; ++k)
    CHECK(at_cr.values()[k] == doctest::Approx(avg.values()[k]).epsilon(1e-12));

  // beta = 0 forces the empty graphon.
  BlockGraphon empty = candidate_graphon(r1, 0.0, 4);
  for (double v : empty.values()) CHECK(v == 0.0);

  // Grid reference, assembled here by hand.  S is the second block; its row
  // tilts down to degree 1/2, with theta = -(logit .6 + logit .8)/2.
  ReferenceGraphon rg = ReferenceGraphon::grid(BlockGraphon(2, kQuadVals));
  BlockGraphon gc = candidate_graphon(rg, 0.5, 2);
  const double l6 = std::log(0.6 / 0.4), l8 = std::log(0.8 / 0.2);
  const double t6 = 1.0 / (1.0 + std::exp(-(l6 - l8) / 2));
  const double t8 = 1.0 / (1.0 + std::exp(-(l8 - l6) / 2));
  CHECK(gc.value(0, 0) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(gc.value(0, 1) == doctest::Approx(t6).epsilon(1e-10));
  CHECK(gc.value(1, 0) == doctest::Approx(t6).epsilon(1e-10));
  CHECK(gc.value(1, 1) == doctest::Approx(t8).epsilon(1e-10));
  CHECK(gc.block_degree(1) == doctest::Approx(0.5).epsilon(1e-10));

  // Degrees stay below beta everywhere, so the norm does too.
  for (auto [r, beta] :
       std::vector<std::pair<ReferenceGraphon, double>>{{r1, 0.3},
                                                        {r1, 0.2},
                                                        {rg, 0.5}}) {
    BlockGraphon c = candidate_graphon(r, beta, 8);
    CHECK(c.n_blocks() == 8);
    for (int i = 0; i < 8; ++i) {
      CHECK(c.block_degree(i) <= beta + 1e-9);
      for (int j = 0; j < 8; ++j) {
        CHECK(c.value(i, j) == c.value(j, i));
        CHECK(c.value(i, j) >= 0.0);
        CHECK(c.value(i, j) <= 1.0);
      }
    }
    CHECK(laplacian_norm(c) <= beta + 1e-9);
  }
}

TEST_CASE("downward upper bound") {
  ReferenceGraphon half = ReferenceGraphon::constant(0.5);
  auto [ub, feasible] = psi_upper_bound(half, 0.4, 8);
  CHECK(feasible);
  CHECK(ub == doctest::Approx(kRentropy45).epsilon(1e-10));

  ReferenceGraphon r1 = ReferenceGraphon::rank1({0.3, 0.4});
  auto [ub1, f1] = psi_upper_bound(r1, 0.3, 16);
  CHECK(f1);
  CHECK(ub1 >= psi_lower_bound(r1, 0.3) - 1e-9);

  // Near the threshold the bound collapses with the discretization.
  auto [ub_cr, f_cr] = psi_upper_bound(r1, 0.35, 16);
  CHECK(f_cr);
  CHECK(ub_cr >= 0.0);
  CHECK(ub_cr < 5e-4);
}

TEST_CASE("quadratic scaling integral") {
  CHECK(scaling_integral(ReferenceGraphon::constant(0.5), 0.4) ==
        doctest::Approx(0.04).epsilon(1e-10));
  CHECK(scaling_integral(ReferenceGraphon::constant(0.5), 0.5) <= 1e-12);

  ReferenceGraphon r1 = ReferenceGraphon::rank1({0.3, 0.4});
  auto vr = [&](double x) {
    const double f = 0.3 + 0.4 * x;
    return (0.15 + 0.2 * x) - f * f * (79.0 / 300.0);
  };
  const double oracle = simpson(
      [&](double x) {
        const double dev = 0.15 + 0.2 * x - 0.3;
        return dev * dev / vr(x);
      },
      0.75, 1.0, 128);
  CHECK(scaling_integral(r1, 0.3) == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("downward solver on the constant family") {
  ReferenceGraphon half = ReferenceGraphon::constant(0.5);
  SolveOptions opts;
  opts.n_blocks = 16;
  opts.restarts = 2;
  DownwardSolution sol = solve_psi(half, 0.4, opts);

  CHECK(sol.beta == 0.4);
  CHECK(sol.value >= kRentropy45 - 1e-9);
  CHECK(sol.value <= 1.05 * kRentropy45);
  CHECK(sol.feasibility_gap <= 1e-8);
  CHECK(sol.lower_bound <= sol.value + 1e-9);
  CHECK(sol.value <= sol.upper_bound + 1e-6);
  CHECK(sol.converged);
  CHECK(sol.minimiser.n_blocks() == 16);
  CHECK(laplacian_norm(sol.minimiser) <= 0.4 + 1e-8);

  double mean = 0.0;
  for (double v : sol.minimiser.values()) mean += v;
  mean /= 256.0;
  CHECK(mean == doctest::Approx(0.4).epsilon(5e-3));

  // Re-running the same configuration reproduces the value bit for bit.
  DownwardSolution again = solve_psi(half, 0.4, opts);
  CHECK(again.value == sol.value);
}

TEST_CASE("solver analytic branches") {
  ReferenceGraphon half = ReferenceGraphon::constant(0.5);
  DownwardSolution zero = solve_psi(half, 0.0);
  CHECK(zero.value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  for (double v : zero.minimiser.values()) CHECK(v == 0.0);
  CHECK(zero.feasibility_gap == 0.0);

  DownwardSolution at_cr = solve_psi(half, 0.5);
  CHECK(at_cr.value == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(at_cr.feasibility_gap <= 1e-12);
  for (double v : at_cr.minimiser.values())
    CHECK(v == doctest::Approx(0.5).epsilon(1e-12));

  try {
    solve_psi(half, 0.6);
    FAIL("expected a domain_error above C_r");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("0.5") != std::string::npos);
  }
}

TEST_CASE("solver tracks the analytic curve downward") {
  ReferenceGraphon half = ReferenceGraphon::constant(0.5);
  SolveOptions opts;
  opts.n_blocks = 8;
  opts.restarts = 1;
  double prev = 1e9;
  for (double beta : {0.2, 0.3, 0.4}) {
    DownwardSolution s = solve_psi(half, beta, opts);
    const double exact = bernoulli_relative_entropy(beta, 0.5);
    CHECK(s.value >= exact - 1e-9);
    CHECK(s.value <= 1.05 * exact);
    CHECK(s.value < prev - 1e-6);  // strictly decreasing in beta
    prev = s.value;
  }

  // The constraint set is closed: approaching beta from below changes
  // nothing measurable.
  DownwardSolution a = solve_psi(half, 0.3, opts);
  DownwardSolution b = solve_psi(half, 0.3 * (1 - 1e-6), opts);
  CHECK(std::fabs(a.value - b.value) < 1e-5);
}

TEST_CASE("solver sandwich on the smooth family") {
  ReferenceGraphon r1 = ReferenceGraphon::rank1({0.3, 0.4});
  SolveOptions opts;
  opts.n_blocks = 12;
  opts.restarts = 2;
  DownwardSolution s = solve_psi(r1, 0.32, opts);
  CHECK(s.converged);
  CHECK(s.feasibility_gap <= 1e-8);
  CHECK(s.value >= s.lower_bound - 1e-9);
  CHECK(s.value <= s.upper_bound + 1e-6);
  CHECK(s.value > 0.0);
  CHECK(laplacian_norm(s.minimiser) <= 0.32 + 1e-8);
}
