#include "gldp/degree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gldp/detail/poly.hpp"

namespace gldp {

namespace {

// Integral over [0,1] of f(y)^2 for polynomial f: sum c_j c_k / (j+k+1).
double poly_sq_integral01(const std::vector<double>& c) {
  double s = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j)
    for (std::size_t k = 0; k < c.size(); ++k)
      s += c[j] * c[k] / static_cast<double>(j + k + 1);
  return s;
}

}  // namespace

DegreeProfile degree_function(const BlockGraphon& g) {
  DegreeProfile p;
  const int n = g.n_blocks();
  p.grid.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double d = g.block_degree(i);
    p.grid.emplace_back((i + 0.5) / n, d);
    p.sup_norm = std::max(p.sup_norm, d);
  }
  return p;
}

double degree_eval(const ReferenceGraphon& r, double x) {
  switch (r.family()) {
    case Family::Constant:
      return r.constant_p();
    case Family::Rank1:
      return r.rank1_f(x) * detail::poly_integral01(r.coeffs());
    case Family::Grid:
      return r.grid_values().block_degree(r.grid_values().block_of(x));
    case Family::Bilinear: {
      // r(x, .) is piecewise linear in y: trapezoid per node interval is exact.
      const int cells = r.nodes_per_side() - 1;
      double s = 0.0;
      double prev = r(x, 0.0);
      for (int k = 1; k <= cells; ++k) {
        const double cur = r(x, static_cast<double>(k) / cells);
        s += 0.5 * (prev + cur);
        prev = cur;
      }
      return s / cells;
    }
  }
  return 0.0;  // unreachable
}

double degree_sup(const ReferenceGraphon& r) {
  switch (r.family()) {
    case Family::Constant:
      return r.constant_p();
    case Family::Rank1: {
      // d = (∫f) f, with f >= 0, so the sup sits at an extremum of f.
      const double f1 = detail::poly_integral01(r.coeffs());
      double fmax = 0.0;
      for (double x : detail::poly_extrema_candidates01(r.coeffs()))
        fmax = std::max(fmax, r.rank1_f(x));
      return f1 * fmax;
    }
    case Family::Grid: {
      double s = 0.0;
      const BlockGraphon& g = r.grid_values();
      for (int i = 0; i < g.n_blocks(); ++i) s = std::max(s, g.block_degree(i));
      return s;
    }
    case Family::Bilinear: {
      // d is piecewise linear in x with breaks at node lines.
      const int m = r.nodes_per_side();
      double s = 0.0;
      for (int k = 0; k < m; ++k)
        s = std::max(s, degree_eval(r, static_cast<double>(k) / (m - 1)));
      return s;
    }
  }
  return 0.0;  // unreachable
}

double degree_variance(const ReferenceGraphon& r, double x) {
  switch (r.family()) {
    case Family::Constant: {
      const double p = r.constant_p();
      return p * (1.0 - p);
    }
    case Family::Rank1: {
      const double f = r.rank1_f(x);
      return f * detail::poly_integral01(r.coeffs()) -
             f * f * poly_sq_integral01(r.coeffs());
    }
    case Family::Grid: {
      const BlockGraphon& g = r.grid_values();
      const int n = g.n_blocks();
      const int i = g.block_of(x);
      double s = 0.0;
      for (int j = 0; j < n; ++j) {
        const double v = g.value(i, j);
        s += v * (1.0 - v);
      }
      return s / n;
    }
    case Family::Bilinear: {
      // Integrand is quadratic in y inside each node interval: Simpson exact.
      const int cells = r.nodes_per_side() - 1;
      auto q = [&](double y) {
        const double v = r(x, y);
        return v * (1.0 - v);
      };
      double s = 0.0;
      for (int k = 0; k < cells; ++k) {
        const double a = static_cast<double>(k) / cells;
        const double b = static_cast<double>(k + 1) / cells;
        s += (q(a) + 4.0 * q(0.5 * (a + b)) + q(b)) / 6.0;
      }
      return s / cells;
    }
  }
  return 0.0;  // unreachable
}

DegreeProfile degree_function(const ReferenceGraphon& r, int resolution) {
  if (r.family() == Family::Grid) return degree_function(r.grid_values());
  if (resolution < 1) throw std::invalid_argument("degree_function: resolution must be >= 1");

  std::vector<double> xs;
  xs.reserve(resolution + 8);
  for (int k = 0; k <= resolution; ++k)
    xs.push_back(static_cast<double>(k) / resolution);
  for (double b : r.breakpoints()) xs.push_back(b);
  if (r.family() == Family::Rank1)
    for (double c : detail::poly_extrema_candidates01(r.coeffs())) xs.push_back(c);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  DegreeProfile p;
  p.grid.reserve(xs.size());
  for (double x : xs) {
    const double d = degree_eval(r, x);
    p.grid.emplace_back(x, d);
    p.sup_norm = std::max(p.sup_norm, d);
  }
  return p;
}

}  // namespace gldp
