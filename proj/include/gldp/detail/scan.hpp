#pragma once

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

#include "gldp/detail/poly.hpp"
#include "gldp/reference.hpp"

// Grid-scan helpers shared by the rate modules.

namespace gldp::detail {

// Uniform x grid merged with family breakpoints and (rank1) critical points,
// so piecewise structure and degree extrema land on grid nodes.
inline std::vector<double> scan_grid(const ReferenceGraphon& r, int grid_points) {
  std::vector<double> xs;
  xs.reserve(grid_points + 8);
  for (int k = 0; k < grid_points; ++k)
    xs.push_back(static_cast<double>(k) / (grid_points - 1));
  for (double b : r.breakpoints()) xs.push_back(b);
  if (r.family() == Family::Rank1)
    for (double c : poly_extrema_candidates01(r.coeffs())) xs.push_back(c);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// Golden-section minimization on [a, b] to an x width of 1e-10.
template <class F>
double golden_min(F&& f, double a, double b) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-10) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

// Sub-level structure: intervals of {x : inside(x)} from a grid scan, with
// boundary points refined by bisection between differing neighbours.
inline std::vector<std::pair<double, double>> indicator_intervals(
    const std::vector<double>& xs, const std::function<bool(double)>& inside) {
  std::vector<char> in(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) in[k] = inside(xs[k]) ? 1 : 0;

  auto refine = [&](double a, double b, bool entering) {
    for (int it = 0; it < 80 && b - a > 1e-14; ++it) {
      const double m = 0.5 * (a + b);
      if (inside(m) == entering) b = m;
      else a = m;
    }
    return 0.5 * (a + b);
  };

  std::vector<std::pair<double, double>> iv;
  std::size_t k = 0;
  while (k < xs.size()) {
    if (!in[k]) {
      ++k;
      continue;
    }
    std::size_t e = k;
    while (e + 1 < xs.size() && in[e + 1]) ++e;
    double lo = xs[k], hi = xs[e];
    if (k > 0) lo = refine(xs[k - 1], xs[k], true);
    if (e + 1 < xs.size()) hi = refine(xs[e], xs[e + 1], false);
    iv.emplace_back(lo, hi);
    k = e + 1;
  }
  return iv;
}

}  // namespace gldp::detail
