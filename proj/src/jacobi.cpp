#include "gldp/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gldp {

namespace {

double offdiag_norm(const std::vector<double>& a, int n) {
  double s = 0.0;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) s += a[p * n + q] * a[p * n + q];
  return std::sqrt(2.0 * s);
}

}  // namespace

void jacobi_eigen(std::vector<double>& a, int n, std::vector<double>& eigs,
                  std::vector<double>* vecs) {
  if (n <= 0 || static_cast<int>(a.size()) != n * n)
    throw std::invalid_argument("jacobi_eigen: bad dimensions");
  if (vecs) {
    vecs->assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) (*vecs)[i * n + i] = 1.0;
  }

  double fro = 0.0;
  for (double v : a) fro += v * v;
  const double tol = 1e-12 * std::max(1.0, std::sqrt(fro));

  const int max_sweeps = 100;
  int sweep = 0;
  while (n > 1 && offdiag_norm(a, n) > tol) {
    if (++sweep > max_sweeps)
      throw std::runtime_error(
          "jacobi_eigen: eigensolver did not converge within the sweep cap");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::fabs(apq) < 1e-300) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        // Smaller-angle root of t^2 + 2*theta*t - 1 = 0; series form when
        // theta is huge to dodge overflow in theta^2.
        double t;
        if (std::fabs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        a[p * n + p] -= t * apq;
        a[q * n + q] += t * apq;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = a[i * n + p];
          const double aiq = a[i * n + q];
          a[i * n + p] = c * aip - s * aiq;
          a[i * n + q] = s * aip + c * aiq;
          a[p * n + i] = a[i * n + p];
          a[q * n + i] = a[i * n + q];
        }
        if (vecs) {
          for (int i = 0; i < n; ++i) {
            const double vip = (*vecs)[i * n + p];
            const double viq = (*vecs)[i * n + q];
            (*vecs)[i * n + p] = c * vip - s * viq;
            (*vecs)[i * n + q] = s * vip + c * viq;
          }
        }
      }
    }
  }

  eigs.resize(n);
  for (int i = 0; i < n; ++i) eigs[i] = a[i * n + i];

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return eigs[i] < eigs[j]; });
  std::vector<double> sorted(n);
  for (int k = 0; k < n; ++k) sorted[k] = eigs[order[k]];
  eigs.swap(sorted);
  if (vecs) {
    std::vector<double> pv(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) pv[i * n + k] = (*vecs)[i * n + order[k]];
    vecs->swap(pv);
  }
}

std::vector<double> sym_eigenvalues(std::vector<double> a, int n) {
  std::vector<double> eigs;
  jacobi_eigen(a, n, eigs);
  return eigs;
}

}  // namespace gldp
