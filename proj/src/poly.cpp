#include "gldp/detail/poly.hpp"

namespace gldp::detail {

double poly_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
  return d;
}

double poly_antiderivative_at(const std::vector<double>& c, double x) {
  double s = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) {
    double term = c[k] / static_cast<double>(k + 1);
    for (std::size_t p = 0; p <= k; ++p) term *= x;
    s += term;
  }
  return s;
}

std::vector<double> poly_roots01(const std::vector<double>& c) {
  std::vector<double> roots;
  const int kScan = 4096;
  double x0 = 0.0, f0 = poly_eval(c, 0.0);
  for (int k = 1; k <= kScan; ++k) {
    const double x1 = static_cast<double>(k) / kScan;
    const double f1 = poly_eval(c, x1);
    if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
      double a = x0, b = x1, fa = f0;
      for (int it = 0; it < 100 && b - a > 1e-16; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = poly_eval(c, m);
        if ((fa < 0.0) == (fm < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    } else if (f1 == 0.0 && k < kScan) {
      roots.push_back(x1);
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

std::vector<double> poly_extrema_candidates01(const std::vector<double>& c) {
  std::vector<double> cand = poly_roots01(poly_derivative(c));
  cand.push_back(0.0);
  cand.push_back(1.0);
  return cand;
}

}  // namespace gldp::detail
