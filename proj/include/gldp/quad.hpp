#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

// Adaptive 1-D quadrature: Gauss-Kronrod 15(7) with recursive bisection.
// Header-only and allocation-free on the hot path so it can be called
// concurrently from OpenMP regions without shared state.

namespace gldp::quad {

namespace detail {

// Kronrod-15 abscissae (non-negative half) and weights; the embedded
// Gauss-7 rule uses the odd-indexed abscissae.  QUADPACK values.
inline constexpr double kXgk[8] = {
    0.9914553711208126392068547, 0.9491079123427585245261897,
    0.8648644233597690727897128, 0.7415311855993944398638648,
    0.5860872354676911302941448, 0.4058451513773971669066064,
    0.2077849550078984676006894, 0.0};
inline constexpr double kWgk[8] = {
    0.0229353220105292249637320, 0.0630920926299785532907007,
    0.1047900103222501838398763, 0.1406532597155259187451896,
    0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992};
inline constexpr double kWg[4] = {
    0.1294849661688696932706114, 0.2797053914892766679014678,
    0.3818300505051189449503698, 0.4179591836734693877551020};

template <class F>
inline void gk15(const F& f, double a, double b, double& kron, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double fsum = f(c - x) + f(c + x);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  kron = resk * h;
  err = std::fabs((resk - resg) * h);
}

template <class F>
inline double adapt(const F& f, double a, double b, double tol, int depth,
                    int* evals) {
  double v, e;
  gk15(f, a, b, v, e);
  if (evals) *evals += 15;
  if (e <= tol || depth <= 0 || b - a < 1e-14 * (1.0 + std::fabs(a))) return v;
  const double m = 0.5 * (a + b);
  return adapt(f, a, m, 0.5 * tol, depth - 1, evals) +
         adapt(f, m, b, 0.5 * tol, depth - 1, evals);
}

}  // namespace detail

// Integrate f over [a, b] to absolute tolerance tol.
template <class F>
double integrate(const F& f, double a, double b, double tol = 1e-10,
                 int max_depth = 48, int* evals = nullptr) {
  if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
  if (a == b) return 0.0;
  return detail::adapt(f, a, b, tol, max_depth, evals);
}

// Integrate over a union of disjoint intervals.
template <class F>
double integrate_intervals(const F& f,
                           const std::vector<std::pair<double, double>>& iv,
                           double tol = 1e-10) {
  if (iv.empty()) return 0.0;
  double s = 0.0;
  const double per = tol / static_cast<double>(iv.size());
  for (const auto& [a, b] : iv) s += integrate(f, a, b, per);
  return s;
}

// Iterated 2-D integral over [ax,bx] x [ay,by].  The inner integral runs a
// decade tighter than the outer request so inner noise stays below the outer
// error estimate.
template <class F2>
double integrate2d(const F2& f, double ax, double bx, double ay, double by,
                   double tol = 1e-9) {
  const double inner_tol = 0.1 * tol;
  auto outer = [&](double x) {
    return integrate([&](double y) { return f(x, y); }, ay, by, inner_tol);
  };
  return integrate(outer, ax, bx, 0.9 * tol);
}

}  // namespace gldp::quad
