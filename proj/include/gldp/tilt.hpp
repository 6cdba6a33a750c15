#pragma once

#include "gldp/reference.hpp"

namespace gldp {

// Exponentially tilted kernel row: the unique theta with
//   integral over y of sigmoid(theta + logit r(x,y)) dy = beta.
struct TiltedRow {
  double x = 0.0;
  double beta = 0.0;
  double theta = 0.0;
  int iters = 0;

  // Tilted kernel value at (x, y).
  double value(const ReferenceGraphon& r, double y) const;
};

// Numerically safe sigmoid / logit.
double sigmoid(double t);
double logit(double p);

// Row log-moment-generating function
//   Lambda_r(x, theta) = integral over y of log(r e^theta + 1 - r) dy,
// evaluated stably for large |theta|; exact finite sums for constant/grid.
double log_mgf(const ReferenceGraphon& r, double x, double theta, double tol = 1e-12);

// Tilted row degree: integral over y of sigmoid(theta + logit r(x,y)) dy.
double tilted_degree(const ReferenceGraphon& r, double x, double theta,
                     double tol = 1e-12);

// Solve for theta.  Requires declared bounds strictly inside (0,1) and
// beta in (0,1).  Monotone bracket [logit beta - logit r_hi,
// logit beta - logit r_lo], bisection down to width 1e-3, then Newton;
// final residual <= 1e-12.
TiltedRow solve_tilt(const ReferenceGraphon& r, double x, double beta);

// Row rate J_r(x, beta) = theta*beta - Lambda_r(x, theta) at the solved tilt.
// Computed in Legendre form and cross-checked against the entropy integral
//   integral over y of R(tilted | r) dy
// to 1e-9; disagreement raises (it would mean a bad tilt or quadrature).
double degree_rate(const ReferenceGraphon& r, double x, double beta);
double degree_rate(const ReferenceGraphon& r, const TiltedRow& row);

// Fast path used by grid scans: Legendre value only, no cross-check.
double degree_rate_fast(const ReferenceGraphon& r, const TiltedRow& row);

// Derivatives of beta -> J_r(x, beta):
//   order 1:  theta(x, beta)
//   order 2:  1 / integral over y of vhat, with vhat = tilted*(1-tilted)
double tilt_derivative(const ReferenceGraphon& r, const TiltedRow& row, int order);
double tilt_derivative(const ReferenceGraphon& r, double x, double beta, int order);

}  // namespace gldp
