#pragma once

#include <vector>

#include "gldp/block_graphon.hpp"
#include "gldp/reference.hpp"

namespace gldp {

// R(a|b) = a log(a/b) + (1-a) log((1-a)/(1-b)), with 0 log 0 = 0.
// Returns +infinity when b is 0 or 1 but a differs; errors outside [0,1].
double bernoulli_relative_entropy(double a, double b);

// Cell means of log r and log(1-r) on a uniform n x n grid.  Exact for
// constant/grid references (finite sums), adaptive quadrature otherwise.
// Requires the reference bounds strictly inside (0,1).
struct BlockLogMeans {
  int n = 0;
  std::vector<double> log_r;
  std::vector<double> log_1mr;
};
BlockLogMeans block_log_means(const ReferenceGraphon& r, int n, double tol = 1e-11);

// I_r(h) = double integral of R(h(x,y) | r(x,y)).  For block h the integral
// decomposes exactly over cells:
//   mean_ij [ a log a + (1-a) log(1-a) - a m1_ij - (1-a) m2_ij ]
// with m1/m2 the cell means of log r and log(1-r), so the only approximation
// is in the (cached, high-accuracy) cell means themselves.
double rate_I(const BlockGraphon& h, const ReferenceGraphon& r);
double rate_I(const BlockGraphon& h, const BlockGraphon& r);

// Hot-path form for the optimizer: means precomputed once.
double rate_I_with_means(const std::vector<double>& h_values, const BlockLogMeans& m);

}  // namespace gldp
