#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gldp/reference.hpp"
#include "gldp/tilt.hpp"

namespace gldp {

struct RatePoint {
  double beta = 0.0;
  double value = 0.0;    // psi_hat(beta)
  double argmin_x = 0.0;
  double theta = 0.0;    // tilt at the argmin
  int iters = 0;         // tilt solver iterations at the reported point
};

struct UpwardConstants {
  double c_r = 0.0;      // sup_x d_r(x): threshold where the upward rate leaves 0
  bool gap_ok = true;    // block-constant spectrum stays below the degree sup
  double c_r1 = 0.0;     // inf_x integral of log(1/r(x,y)) dy: the beta -> 1 limit
  std::optional<double> k_hat;  // curvature constant (continuous families only)
};

struct RateCurve {
  std::vector<RatePoint> points;
  UpwardConstants constants;
  // value / (beta - C_r)^2 per point; NaN where beta == C_r.
  std::vector<double> scaling_ratio;
};

// psi_hat(beta) = inf over x of J_r(x, beta), for beta in [C_r, 1).
// Grid scan over `grid_points` uniform x values (merged with family
// breakpoints and critical points), ties to the smallest x, then
// golden-section refinement to an x-tolerance of 1e-10.  The reported value
// re-solves the tilt at the argmin through the checked dual-route rate.
RatePoint psi_hat(const ReferenceGraphon& r, double beta, int grid_points = 257);

// (C_r, gap_ok).  The flag compares the block-constant spectrum (grid family:
// its own grid; otherwise a 256-block average) against the degree sup with
// 1e-7 slack; the degree formula for C_r is only valid when it holds.
std::pair<double, bool> c_r(const ReferenceGraphon& r);

// inf over x of the integral of log(1/r(x,y)) dy.
double c_r1(const ReferenceGraphon& r);

struct CurvatureResult {
  double k_hat = 0.0;
  // Intervals (possibly degenerate) where d_r is within 1e-9 of its sup.
  std::vector<std::pair<double, double>> argmax_set;
};

// K_hat = 1 / (2 * sup of v_r over the degree argmax set); continuous
// families only (grid references raise domain_error).
CurvatureResult curvature(const ReferenceGraphon& r);

// Full curve with constants and the quadratic scaling diagnostic.
RateCurve psi_hat_curve(const ReferenceGraphon& r,
                        const std::vector<double>& betas, int grid_points = 257);

}  // namespace gldp
