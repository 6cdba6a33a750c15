#include "gldp/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gldp/detail/poly.hpp"

namespace gldp {

using detail::poly_eval;
using detail::poly_extrema_candidates01;

ReferenceGraphon ReferenceGraphon::constant(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("ReferenceGraphon: constant level must lie in [0,1]");
  ReferenceGraphon r;
  r.fam_ = Family::Constant;
  r.p_ = p;
  r.lo_ = r.hi_ = p;
  return r;
}

ReferenceGraphon ReferenceGraphon::rank1(std::vector<double> coeffs) {
  if (coeffs.empty())
    throw std::invalid_argument("ReferenceGraphon: rank1 needs polynomial coefficients");
  ReferenceGraphon r;
  r.fam_ = Family::Rank1;
  r.coeffs_ = std::move(coeffs);

  // Extrema of f on [0,1]: endpoints plus critical points, reconciled
  // against a dense scan in case a degenerate critical point slips through.
  std::vector<double> cand = poly_extrema_candidates01(r.coeffs_);
  double fmin = poly_eval(r.coeffs_, 0.0), fmax = fmin;
  for (double x : cand) {
    const double v = poly_eval(r.coeffs_, x);
    fmin = std::min(fmin, v);
    fmax = std::max(fmax, v);
  }
  for (int k = 0; k <= 4096; ++k) {
    const double v = poly_eval(r.coeffs_, static_cast<double>(k) / 4096);
    fmin = std::min(fmin, v);
    fmax = std::max(fmax, v);
  }
  if (fmin < 0.0)
    throw std::invalid_argument(
        "ReferenceGraphon: rank1 factor must be non-negative on [0,1] "
        "(negate the coefficients if f is wholly non-positive)");
  if (fmax * fmax > 1.0 + 1e-12)
    throw std::invalid_argument("ReferenceGraphon: rank1 kernel exceeds 1");
  r.lo_ = fmin * fmin;
  r.hi_ = std::min(1.0, fmax * fmax);
  return r;
}

ReferenceGraphon ReferenceGraphon::grid(BlockGraphon g) {
  ReferenceGraphon r;
  r.fam_ = Family::Grid;
  const int n = g.n_blocks();
  const auto& v = g.values();
  r.lo_ = *std::min_element(v.begin(), v.end());
  r.hi_ = *std::max_element(v.begin(), v.end());
  for (int i = 1; i < n; ++i) r.breaks_.push_back(static_cast<double>(i) / n);
  r.grid_ = std::move(g);
  return r;
}

ReferenceGraphon ReferenceGraphon::bilinear(int nodes_per_side,
                                            std::vector<double> node_values) {
  if (nodes_per_side < 2)
    throw std::invalid_argument("ReferenceGraphon: bilinear needs >= 2 nodes per side");
  const int m = nodes_per_side;
  if (node_values.size() != static_cast<std::size_t>(m) * m)
    throw std::invalid_argument("ReferenceGraphon: bilinear node matrix has wrong shape");
  ReferenceGraphon r;
  r.fam_ = Family::Bilinear;
  r.m_ = m;
  r.nodes_ = std::move(node_values);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      double& a = r.nodes_[static_cast<std::size_t>(i) * m + j];
      double& b = r.nodes_[static_cast<std::size_t>(j) * m + i];
      if (std::fabs(a - b) > 1e-12)
        throw std::invalid_argument("ReferenceGraphon: bilinear nodes must be symmetric");
      if (a < -1e-12 || a > 1.0 + 1e-12)
        throw std::invalid_argument("ReferenceGraphon: bilinear nodes must lie in [0,1]");
      a = b = std::clamp(0.5 * (a + b), 0.0, 1.0);
    }
  }
  // Interpolation stays inside the node hull.
  r.lo_ = *std::min_element(r.nodes_.begin(), r.nodes_.end());
  r.hi_ = *std::max_element(r.nodes_.begin(), r.nodes_.end());
  for (int k = 1; k < m - 1; ++k)
    r.breaks_.push_back(static_cast<double>(k) / (m - 1));
  return r;
}

double ReferenceGraphon::operator()(double x, double y) const {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
    throw std::domain_error("ReferenceGraphon: coordinates outside [0,1]");
  switch (fam_) {
    case Family::Constant:
      return p_;
    case Family::Rank1:
      return poly_eval(coeffs_, x) * poly_eval(coeffs_, y);
    case Family::Grid:
      return grid_(x, y);
    case Family::Bilinear: {
      const int cells = m_ - 1;
      const int kx = std::min(static_cast<int>(x * cells), cells - 1);
      const int ky = std::min(static_cast<int>(y * cells), cells - 1);
      const double tx = x * cells - kx;
      const double ty = y * cells - ky;
      const double v00 = nodes_[static_cast<std::size_t>(kx) * m_ + ky];
      const double v10 = nodes_[static_cast<std::size_t>(kx + 1) * m_ + ky];
      const double v01 = nodes_[static_cast<std::size_t>(kx) * m_ + ky + 1];
      const double v11 = nodes_[static_cast<std::size_t>(kx + 1) * m_ + ky + 1];
      return (1 - tx) * ((1 - ty) * v00 + ty * v01) + tx * ((1 - ty) * v10 + ty * v11);
    }
  }
  return 0.0;  // unreachable
}

double ReferenceGraphon::constant_p() const {
  if (fam_ != Family::Constant)
    throw std::logic_error("ReferenceGraphon: not a constant family");
  return p_;
}

const std::vector<double>& ReferenceGraphon::coeffs() const {
  if (fam_ != Family::Rank1)
    throw std::logic_error("ReferenceGraphon: not a rank1 family");
  return coeffs_;
}

const BlockGraphon& ReferenceGraphon::grid_values() const {
  if (fam_ != Family::Grid)
    throw std::logic_error("ReferenceGraphon: not a grid family");
  return grid_;
}

int ReferenceGraphon::nodes_per_side() const {
  if (fam_ != Family::Bilinear)
    throw std::logic_error("ReferenceGraphon: not a bilinear family");
  return m_;
}

double ReferenceGraphon::node(int i, int j) const {
  if (fam_ != Family::Bilinear)
    throw std::logic_error("ReferenceGraphon: not a bilinear family");
  return nodes_[static_cast<std::size_t>(i) * m_ + j];
}

double ReferenceGraphon::rank1_f(double x) const {
  if (fam_ != Family::Rank1)
    throw std::logic_error("ReferenceGraphon: not a rank1 family");
  return poly_eval(coeffs_, x);
}

std::vector<double> partition_overlap(int n_target, int n_source) {
  std::vector<double> w(static_cast<std::size_t>(n_target) * n_source, 0.0);
  for (int i = 0; i < n_target; ++i) {
    const double lo = static_cast<double>(i) / n_target;
    const double hi = static_cast<double>(i + 1) / n_target;
    double row = 0.0;
    for (int a = 0; a < n_source; ++a) {
      const double alo = static_cast<double>(a) / n_source;
      const double ahi = static_cast<double>(a + 1) / n_source;
      const double ov = std::max(0.0, std::min(hi, ahi) - std::max(lo, alo));
      w[static_cast<std::size_t>(i) * n_source + a] = ov;
      row += ov;
    }
    for (int a = 0; a < n_source; ++a)
      w[static_cast<std::size_t>(i) * n_source + a] /= row;
  }
  return w;
}

namespace {

// Overlap of [lo,hi) with the cells of an n-partition of [0,1].
double axis_overlap(double lo, double hi, int cell, int n) {
  const double alo = static_cast<double>(cell) / n;
  const double ahi = static_cast<double>(cell + 1) / n;
  return std::max(0.0, std::min(hi, ahi) - std::max(lo, alo));
}

}  // namespace

double rect_mean(const ReferenceGraphon& r, double xlo, double xhi, double ylo,
                 double yhi) {
  if (!(xhi > xlo && yhi > ylo))
    throw std::invalid_argument("rect_mean: empty rectangle");
  switch (r.family()) {
    case Family::Constant:
      return r.constant_p();
    case Family::Rank1: {
      // Mean of f(x)f(y) factorizes.
      const auto& c = r.coeffs();
      const double mx = (detail::poly_antiderivative_at(c, xhi) -
                         detail::poly_antiderivative_at(c, xlo)) /
                        (xhi - xlo);
      const double my = (detail::poly_antiderivative_at(c, yhi) -
                         detail::poly_antiderivative_at(c, ylo)) /
                        (yhi - ylo);
      return mx * my;
    }
    case Family::Grid: {
      const BlockGraphon& g = r.grid_values();
      const int n = g.n_blocks();
      double acc = 0.0;
      for (int a = 0; a < n; ++a) {
        const double wx = axis_overlap(xlo, xhi, a, n);
        if (wx == 0.0) continue;
        for (int b = 0; b < n; ++b) {
          const double wy = axis_overlap(ylo, yhi, b, n);
          if (wy != 0.0) acc += wx * wy * g.value(a, b);
        }
      }
      return acc / ((xhi - xlo) * (yhi - ylo));
    }
    case Family::Bilinear: {
      // Split at node lines; over each sub-rectangle the patch is affine in
      // each coordinate, so its mean is the value at the centre.
      const int cells = r.nodes_per_side() - 1;
      auto cuts = [&](double lo, double hi) {
        std::vector<double> c{lo};
        for (int k = 1; k < cells; ++k) {
          const double t = static_cast<double>(k) / cells;
          if (t > lo && t < hi) c.push_back(t);
        }
        c.push_back(hi);
        return c;
      };
      const std::vector<double> cx = cuts(xlo, xhi);
      const std::vector<double> cy = cuts(ylo, yhi);
      double acc = 0.0;
      for (std::size_t a = 0; a + 1 < cx.size(); ++a)
        for (std::size_t b = 0; b + 1 < cy.size(); ++b)
          acc += r(0.5 * (cx[a] + cx[a + 1]), 0.5 * (cy[b] + cy[b + 1])) *
                 (cx[a + 1] - cx[a]) * (cy[b + 1] - cy[b]);
      return acc / ((xhi - xlo) * (yhi - ylo));
    }
  }
  return 0.0;  // unreachable
}

BlockGraphon block_average(const ReferenceGraphon& r, int n_blocks) {
  if (n_blocks <= 0)
    throw std::invalid_argument("block_average: n_blocks must be positive");
  const int n = n_blocks;
  std::vector<double> v(static_cast<std::size_t>(n) * n);
  switch (r.family()) {
    case Family::Constant:
      return BlockGraphon::constant(n, r.constant_p());
    case Family::Rank1: {
      // Cell mean of f(x)f(y) factorizes into products of exact 1-D means.
      const auto& c = r.coeffs();
      std::vector<double> mu(n);
      for (int i = 0; i < n; ++i)
        mu[i] = n * (detail::poly_antiderivative_at(c, static_cast<double>(i + 1) / n) -
                     detail::poly_antiderivative_at(c, static_cast<double>(i) / n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(i) * n + j] = mu[i] * mu[j];
      break;
    }
    case Family::Grid: {
      const BlockGraphon& g = r.grid_values();
      const int ns = g.n_blocks();
      const std::vector<double> w = partition_overlap(n, ns);
      // v = W G W^T, done as (W G) then (. W^T).
      std::vector<double> wg(static_cast<std::size_t>(n) * ns, 0.0);
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < ns; ++a) {
          const double wia = w[static_cast<std::size_t>(i) * ns + a];
          if (wia == 0.0) continue;
          for (int b = 0; b < ns; ++b)
            wg[static_cast<std::size_t>(i) * ns + b] += wia * g.value(a, b);
        }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int b = 0; b < ns; ++b)
            s += wg[static_cast<std::size_t>(i) * ns + b] *
                 w[static_cast<std::size_t>(j) * ns + b];
          v[static_cast<std::size_t>(i) * n + j] = s;
        }
      break;
    }
    case Family::Bilinear: {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
          const double m = rect_mean(
              r, static_cast<double>(i) / n, static_cast<double>(i + 1) / n,
              static_cast<double>(j) / n, static_cast<double>(j + 1) / n);
          v[static_cast<std::size_t>(i) * n + j] = m;
          v[static_cast<std::size_t>(j) * n + i] = m;
        }
      break;
    }
  }
  return BlockGraphon(n, std::move(v));
}

}  // namespace gldp
