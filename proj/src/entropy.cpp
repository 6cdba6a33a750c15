#include "gldp/entropy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gldp/quad.hpp"

namespace gldp {

namespace {

inline double xlogx(double a) { return a > 0.0 ? a * std::log(a) : 0.0; }

void require_interior(const ReferenceGraphon& r, const char* who) {
  if (!r.strictly_inside())
    throw std::domain_error(std::string(who) +
                            ": reference values must stay strictly inside (0,1)");
}

// Mean of phi(r(x,y)) over one grid cell for the continuous families,
// splitting at breakpoints so each quadrature panel is smooth.
template <class F>
double cell_mean(const ReferenceGraphon& r, int n, int i, int j, F&& phi,
                 double tol) {
  const double xlo = static_cast<double>(i) / n, xhi = static_cast<double>(i + 1) / n;
  const double ylo = static_cast<double>(j) / n, yhi = static_cast<double>(j + 1) / n;
  auto cuts = [&](double lo, double hi) {
    std::vector<double> c{lo};
    for (double b : r.breakpoints())
      if (b > lo && b < hi) c.push_back(b);
    c.push_back(hi);
    return c;
  };
  const std::vector<double> cx = cuts(xlo, xhi);
  const std::vector<double> cy = cuts(ylo, yhi);
  double acc = 0.0;
  for (std::size_t a = 0; a + 1 < cx.size(); ++a)
    for (std::size_t b = 0; b + 1 < cy.size(); ++b)
      acc += quad::integrate2d(
          [&](double x, double y) { return phi(r(x, y)); }, cx[a], cx[a + 1],
          cy[b], cy[b + 1], tol / static_cast<double>(cx.size() * cy.size()));
  return acc * (n * static_cast<double>(n));
}

}  // namespace

double bernoulli_relative_entropy(double a, double b) {
  if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0))
    throw std::invalid_argument("bernoulli_relative_entropy: arguments must lie in [0,1]");
  if (b == 0.0) return a == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  if (b == 1.0) return a == 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
  double s = -std::log(b) * a - std::log1p(-b) * (1.0 - a);
  s += xlogx(a) + xlogx(1.0 - a);
  return std::max(s, 0.0);
}

BlockLogMeans block_log_means(const ReferenceGraphon& r, int n, double tol) {
  if (n <= 0) throw std::invalid_argument("block_log_means: n must be positive");
  require_interior(r, "block_log_means");
  BlockLogMeans m;
  m.n = n;
  m.log_r.assign(static_cast<std::size_t>(n) * n, 0.0);
  m.log_1mr.assign(static_cast<std::size_t>(n) * n, 0.0);

  switch (r.family()) {
    case Family::Constant: {
      const double p = r.constant_p();
      const double l1 = std::log(p), l2 = std::log1p(-p);
      for (std::size_t k = 0; k < m.log_r.size(); ++k) {
        m.log_r[k] = l1;
        m.log_1mr[k] = l2;
      }
      break;
    }
    case Family::Grid: {
      // log r is itself a step function: overlap-average its cell values.
      const BlockGraphon& g = r.grid_values();
      const int ns = g.n_blocks();
      const std::vector<double> w = partition_overlap(n, ns);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s1 = 0.0, s2 = 0.0;
          for (int a = 0; a < ns; ++a) {
            const double wia = w[static_cast<std::size_t>(i) * ns + a];
            if (wia == 0.0) continue;
            for (int b = 0; b < ns; ++b) {
              const double wb = wia * w[static_cast<std::size_t>(j) * ns + b];
              if (wb == 0.0) continue;
              s1 += wb * std::log(g.value(a, b));
              s2 += wb * std::log1p(-g.value(a, b));
            }
          }
          m.log_r[static_cast<std::size_t>(i) * n + j] = s1;
          m.log_1mr[static_cast<std::size_t>(i) * n + j] = s2;
        }
      break;
    }
    case Family::Rank1: {
      // log r = log f(x) + log f(y), so the log r means are sums of 1-D
      // means; log(1-r) does not factor and needs per-cell 2-D quadrature.
      std::vector<double> li(n);
      for (int i = 0; i < n; ++i)
        li[i] = n * quad::integrate(
                        [&](double x) { return std::log(r.rank1_f(x)); },
                        static_cast<double>(i) / n, static_cast<double>(i + 1) / n,
                        tol / n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
          const double m1 = li[i] + li[j];
          const double m2 = cell_mean(
              r, n, i, j, [](double v) { return std::log1p(-v); }, tol);
          m.log_r[static_cast<std::size_t>(i) * n + j] = m1;
          m.log_r[static_cast<std::size_t>(j) * n + i] = m1;
          m.log_1mr[static_cast<std::size_t>(i) * n + j] = m2;
          m.log_1mr[static_cast<std::size_t>(j) * n + i] = m2;
        }
      break;
    }
    case Family::Bilinear: {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
          const double m1 =
              cell_mean(r, n, i, j, [](double v) { return std::log(v); }, tol);
          const double m2 = cell_mean(
              r, n, i, j, [](double v) { return std::log1p(-v); }, tol);
          m.log_r[static_cast<std::size_t>(i) * n + j] = m1;
          m.log_r[static_cast<std::size_t>(j) * n + i] = m1;
          m.log_1mr[static_cast<std::size_t>(i) * n + j] = m2;
          m.log_1mr[static_cast<std::size_t>(j) * n + i] = m2;
        }
      break;
    }
  }
  return m;
}

double rate_I_with_means(const std::vector<double>& h_values, const BlockLogMeans& m) {
  const std::size_t nn = static_cast<std::size_t>(m.n) * m.n;
  if (h_values.size() != nn)
    throw std::invalid_argument("rate_I_with_means: block count mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < nn; ++k) {
    const double a = h_values[k];
    s += xlogx(a) + xlogx(1.0 - a) - a * m.log_r[k] - (1.0 - a) * m.log_1mr[k];
  }
  return std::max(s / static_cast<double>(nn), 0.0);
}

double rate_I(const BlockGraphon& h, const ReferenceGraphon& r) {
  return rate_I_with_means(h.values(), block_log_means(r, h.n_blocks()));
}

double rate_I(const BlockGraphon& h, const BlockGraphon& r) {
  return rate_I(h, ReferenceGraphon::grid(r));
}

}  // namespace gldp
