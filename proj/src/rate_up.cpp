#include "gldp/rate_up.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gldp/degree.hpp"
#include "gldp/detail/scan.hpp"
#include "gldp/jacobi.hpp"
#include "gldp/kernels.hpp"
#include "gldp/spectral.hpp"

namespace gldp {

using detail::golden_min;
using detail::scan_grid;

namespace {

constexpr double kBetaSlack = 1e-12;

void check_beta_window(const ReferenceGraphon& r, double beta, double c) {
  if (beta < c - kBetaSlack)
    throw std::domain_error("psi_hat: beta " + std::to_string(beta) +
                            " lies below the degree threshold C_r = " +
                            std::to_string(c));
  if (!(beta < 1.0))
    throw std::domain_error("psi_hat: beta must be < 1 (the beta -> 1 limit is c_r1)");
  (void)r;
}

}  // namespace

RatePoint psi_hat(const ReferenceGraphon& r, double beta, int grid_points) {
  const double c = degree_sup(r);
  check_beta_window(r, beta, c);
  const double b = std::max(beta, std::min(c, 1.0 - kBetaSlack));

  const std::vector<double> xs = scan_grid(r, grid_points);
  const std::vector<double> js = kernels::jrate_scan(r, b, xs);

  std::size_t kmin = 0;
  for (std::size_t k = 1; k < js.size(); ++k)
    if (js[k] < js[kmin]) kmin = k;  // strict: ties keep the smallest x

  double x_star = xs[kmin];
  // Skip refinement when the scan is flat (constant rows): any x works and
  // the tie rule pins the report to the smallest grid point.
  const double spread =
      *std::max_element(js.begin(), js.end()) - js[kmin];
  if (spread > 1e-14) {
    const double lo = kmin > 0 ? xs[kmin - 1] : xs[kmin];
    const double hi = kmin + 1 < xs.size() ? xs[kmin + 1] : xs[kmin];
    if (hi > lo) {
      const double refined = golden_min(
          [&](double x) { return degree_rate_fast(r, solve_tilt(r, x, b)); },
          lo, hi);
      if (degree_rate_fast(r, solve_tilt(r, refined, b)) <= js[kmin])
        x_star = refined;
    }
  }

  const TiltedRow row = solve_tilt(r, x_star, b);
  RatePoint p;
  p.beta = beta;
  p.value = degree_rate(r, row);  // dual-route checked at the reported point
  p.argmin_x = x_star;
  p.theta = row.theta;
  p.iters = row.iters;
  return p;
}

std::pair<double, bool> c_r(const ReferenceGraphon& r) {
  const double sup = degree_sup(r);
  // Diagnostic: the degree formula for the norm threshold needs the
  // block-constant part of the spectrum to stay below the degree sup.
  const BlockGraphon g =
      r.family() == Family::Grid ? r.grid_values() : block_average(r, 256);
  const SpectralSummary s = laplacian_spectrum(g);
  const bool ok = s.reduced_eigs.back() <= sup + 1e-7;
  return {sup, ok};
}

double c_r1(const ReferenceGraphon& r) {
  if (!(r.lower() > 0.0))
    throw std::domain_error("c_r1: reference must be bounded away from 0");
  auto value = [&](double x) {
    return r.mean_dy(x, [](double v) { return -std::log(v); }, 1e-12);
  };
  const std::vector<double> xs = scan_grid(r, 257);
  std::size_t kmin = 0;
  double vmin = value(xs[0]);
  for (std::size_t k = 1; k < xs.size(); ++k) {
    const double v = value(xs[k]);
    if (v < vmin) {
      vmin = v;
      kmin = k;
    }
  }
  if (r.family() == Family::Constant || r.family() == Family::Grid) return vmin;
  const double lo = kmin > 0 ? xs[kmin - 1] : xs[kmin];
  const double hi = kmin + 1 < xs.size() ? xs[kmin + 1] : xs[kmin];
  if (hi > lo) vmin = std::min(vmin, value(golden_min(value, lo, hi)));
  return vmin;
}

CurvatureResult curvature(const ReferenceGraphon& r) {
  if (!r.continuous())
    throw std::domain_error("curvature: defined for continuous families only");
  const double sup = degree_sup(r);
  const double cutoff = sup - 1e-9;

  // Near-argmax set of d_r on a fine grid with bisected interval endpoints.
  CurvatureResult res;
  res.argmax_set = detail::indicator_intervals(
      scan_grid(r, 4097),
      [&](double x) { return degree_eval(r, x) >= cutoff; });
  if (res.argmax_set.empty())
    throw std::runtime_error("curvature: empty argmax set (scan too coarse?)");

  // K_hat = 1 / (2 * max of v_r over the argmax set).
  double vmax = 0.0;
  for (const auto& [lo, hi] : res.argmax_set) {
    const int m = 64;
    std::size_t jbest = 0;
    double best = -1.0;
    for (int j = 0; j <= m; ++j) {
      const double x = lo + (hi - lo) * j / m;
      const double v = degree_variance(r, x);
      if (v > best) {
        best = v;
        jbest = j;
      }
    }
    if (hi > lo) {
      const double a = lo + (hi - lo) * (jbest > 0 ? jbest - 1.0 : 0.0) / m;
      const double b = lo + (hi - lo) * std::min<double>(jbest + 1.0, m) / m;
      const double x =
          golden_min([&](double x2) { return -degree_variance(r, x2); }, a, b);
      best = std::max(best, degree_variance(r, x));
    }
    vmax = std::max(vmax, best);
  }
  if (vmax <= 0.0)
    throw std::runtime_error("curvature: vanishing degree variance on the argmax set");
  res.k_hat = 0.5 / vmax;
  return res;
}

RateCurve psi_hat_curve(const ReferenceGraphon& r,
                        const std::vector<double>& betas, int grid_points) {
  RateCurve curve;
  const auto [c, gap_ok] = c_r(r);
  for (double b : betas) check_beta_window(r, b, c);

  curve.constants.c_r = c;
  curve.constants.gap_ok = gap_ok;
  curve.constants.c_r1 = c_r1(r);
  if (r.continuous()) curve.constants.k_hat = curvature(r).k_hat;

  curve.points.reserve(betas.size());
  curve.scaling_ratio.reserve(betas.size());
  for (double b : betas) {
    curve.points.push_back(psi_hat(r, b, grid_points));
    const double d = b - c;
    curve.scaling_ratio.push_back(
        d > kBetaSlack ? curve.points.back().value / (d * d)
                       : std::numeric_limits<double>::quiet_NaN());
  }
  return curve;
}

}  // namespace gldp
