#pragma once

#include <vector>

// Small dense-polynomial kit for the rank1 family (coefficients ascending).

namespace gldp::detail {

double poly_eval(const std::vector<double>& c, double x);
std::vector<double> poly_derivative(const std::vector<double>& c);
double poly_antiderivative_at(const std::vector<double>& c, double x);
inline double poly_integral01(const std::vector<double>& c) {
  return poly_antiderivative_at(c, 1.0);
}
// Roots inside (0,1) via sign-change scan plus bisection.
std::vector<double> poly_roots01(const std::vector<double>& c);
// Extremum candidates of the polynomial on [0,1]: endpoints and critical points.
std::vector<double> poly_extrema_candidates01(const std::vector<double>& c);

}  // namespace gldp::detail
