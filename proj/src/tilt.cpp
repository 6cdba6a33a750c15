#include "gldp/tilt.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gldp/entropy.hpp"

namespace gldp {

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double logit(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("logit: argument must lie in (0,1)");
  return std::log(p) - std::log1p(-p);
}

namespace {

void require_tiltable(const ReferenceGraphon& r, const char* who) {
  if (!r.strictly_inside())
    throw std::domain_error(std::string(who) +
                            ": reference values must stay strictly inside (0,1)");
}

// log(r e^theta + 1 - r), stable for large |theta|.
inline double log_tilt_factor(double r, double theta) {
  if (theta > 0.0) return theta + std::log(r + (1.0 - r) * std::exp(-theta));
  return std::log(r * std::exp(theta) + (1.0 - r));
}

}  // namespace

double TiltedRow::value(const ReferenceGraphon& r, double y) const {
  return sigmoid(theta + logit(r(x, y)));
}

double log_mgf(const ReferenceGraphon& r, double x, double theta, double tol) {
  require_tiltable(r, "log_mgf");
  return r.mean_dy(x, [&](double v) { return log_tilt_factor(v, theta); }, tol);
}

double tilted_degree(const ReferenceGraphon& r, double x, double theta, double tol) {
  require_tiltable(r, "tilted_degree");
  return r.mean_dy(x, [&](double v) { return sigmoid(theta + logit(v)); }, tol);
}

TiltedRow solve_tilt(const ReferenceGraphon& r, double x, double beta) {
  require_tiltable(r, "solve_tilt");
  if (!(beta > 0.0 && beta < 1.0))
    throw std::domain_error("solve_tilt: beta must lie in (0,1)");

  TiltedRow row;
  row.x = x;
  row.beta = beta;

  // Monotone bracket: tilting every kernel value to beta needs at most the
  // shift for the extreme value on either side.
  const double lb = logit(beta);
  double lo = lb - logit(r.upper());
  double hi = lb - logit(r.lower());
  if (hi - lo <= 1e-14) {  // constant row: the bracket endpoints coincide
    row.theta = 0.5 * (lo + hi);
    row.iters = 0;
    return row;
  }

  auto resid = [&](double th) { return tilted_degree(r, x, th, 1e-13) - beta; };

  // The true root lies in [lo, hi]; nudge outward against rounding.
  lo -= 1e-9;
  hi += 1e-9;
  double flo = resid(lo);
  double fhi = resid(hi);
  int iters = 0;
  for (int guard = 0; (flo > 0.0 || fhi < 0.0) && guard < 8; ++guard) {
    // Only reachable if the declared bounds were not a true enclosure.
    const double w = hi - lo;
    if (flo > 0.0) { lo -= w; flo = resid(lo); }
    if (fhi < 0.0) { hi += w; fhi = resid(hi); }
    iters += 2;
  }
  if (flo > 0.0 || fhi < 0.0)
    throw std::runtime_error("solve_tilt: failed to bracket the tilt");

  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    const double fm = resid(mid);
    ++iters;
    if (fm < 0.0) { lo = mid; flo = fm; } else { hi = mid; fhi = fm; }
  }

  double th = 0.5 * (lo + hi);
  double f = resid(th);
  ++iters;
  const int cap = 200;
  while (std::fabs(f) > 1e-12) {
    if (iters > cap)
      throw std::runtime_error("solve_tilt: iteration cap hit before residual tolerance");
    const double slope = r.mean_dy(
        x,
        [&](double v) {
          const double s = sigmoid(th + logit(v));
          return s * (1.0 - s);
        },
        1e-13);
    double next = th - f / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // fall back to bisection
    th = next;
    f = resid(th);
    ++iters;
    if (f < 0.0) lo = th; else hi = th;
  }

  row.theta = th;
  row.iters = iters;
  return row;
}

double degree_rate_fast(const ReferenceGraphon& r, const TiltedRow& row) {
  const double v = row.theta * row.beta - log_mgf(r, row.x, row.theta);
  // Clamp the harmless negative rounding at beta == d_r(x); anything sizable
  // is reported by the checked path.
  return v < 0.0 ? 0.0 : v;
}

double degree_rate(const ReferenceGraphon& r, const TiltedRow& row) {
  const double legendre = row.theta * row.beta - log_mgf(r, row.x, row.theta);
  const double entropy = r.mean_dy(
      row.x,
      [&](double v) {
        return bernoulli_relative_entropy(sigmoid(row.theta + logit(v)), v);
      },
      1e-12);
  if (std::fabs(legendre - entropy) > 1e-9)
    throw std::runtime_error(
        "degree_rate: Legendre and entropy evaluations disagree beyond 1e-9");
  if (legendre < -1e-9)
    throw std::runtime_error("degree_rate: negative rate value");
  return legendre < 0.0 ? 0.0 : legendre;
}

double degree_rate(const ReferenceGraphon& r, double x, double beta) {
  return degree_rate(r, solve_tilt(r, x, beta));
}

double tilt_derivative(const ReferenceGraphon& r, const TiltedRow& row, int order) {
  if (order == 1) return row.theta;
  if (order != 2) throw std::invalid_argument("tilt_derivative: order must be 1 or 2");
  const double slope = r.mean_dy(
      row.x,
      [&](double v) {
        const double s = sigmoid(row.theta + logit(v));
        return s * (1.0 - s);
      },
      1e-13);
  return 1.0 / slope;
}

double tilt_derivative(const ReferenceGraphon& r, double x, double beta, int order) {
  return tilt_derivative(r, solve_tilt(r, x, beta), order);
}

}  // namespace gldp
