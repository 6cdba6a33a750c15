#include "gldp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gldp/jacobi.hpp"
#include "gldp/rng.hpp"

namespace gldp {

AdjacencyMatrix::AdjacencyMatrix(int n_, std::vector<std::uint8_t> values)
    : n(n_), a(std::move(values)) {
  if (n <= 0 || a.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("AdjacencyMatrix: bad dimensions");
  for (int i = 0; i < n; ++i) {
    if (at(i, i) != 0)
      throw std::invalid_argument("AdjacencyMatrix: diagonal must be zero");
    for (int j = 0; j < i; ++j) {
      if (at(i, j) > 1 || at(i, j) != at(j, i))
        throw std::invalid_argument("AdjacencyMatrix: entries must be symmetric 0/1");
    }
  }
}

namespace {

std::vector<double> reduced_matrix(const BlockGraphon& g) {
  const int n = g.n_blocks();
  std::vector<double> k(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      k[static_cast<std::size_t>(i) * n + j] = -g.value(i, j) / n;
  for (int i = 0; i < n; ++i)
    k[static_cast<std::size_t>(i) * n + i] += g.block_degree(i);
  return k;
}

}  // namespace

SpectralSummary laplacian_spectrum(const BlockGraphon& g) {
  const int n = g.n_blocks();
  SpectralSummary s;
  s.degree_values = g.block_degrees();

  std::vector<double> k = reduced_matrix(g);
  s.reduced_eigs = sym_eigenvalues(std::move(k), n);

  std::vector<double> t(static_cast<std::size_t>(n) * n);
  for (std::size_t i = 0; i < t.size(); ++i)
    t[i] = g.values()[i] / n;
  const std::vector<double> te = sym_eigenvalues(std::move(t), n);
  // Mean-zero block functions are annihilated by T_g, so 0 always belongs to
  // the adjacency spectrum.
  s.adjacency_min_eig = std::min(te.front(), 0.0);
  s.adjacency_max_eig = std::max(te.back(), 0.0);

  const double dmax =
      *std::max_element(s.degree_values.begin(), s.degree_values.end());
  s.laplacian_norm = std::max(s.reduced_eigs.back(), dmax);
  return s;
}

double laplacian_norm(const BlockGraphon& g) {
  const int n = g.n_blocks();
  const std::vector<double> eigs = sym_eigenvalues(reduced_matrix(g), n);
  double dmax = 0.0;
  for (int i = 0; i < n; ++i) dmax = std::max(dmax, g.block_degree(i));
  return std::max(eigs.back(), dmax);
}

double adjacency_min_eig(const BlockGraphon& g) {
  const int n = g.n_blocks();
  std::vector<double> t(static_cast<std::size_t>(n) * n);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = g.values()[i] / n;
  return std::min(sym_eigenvalues(std::move(t), n).front(), 0.0);
}

double quadratic_form_norm(const BlockGraphon& g, int trials, std::uint64_t seed) {
  const int n = g.n_blocks();
  // A unit probe supported on block i with zero block mean gives the form
  // value d_i exactly (the T part integrates to zero).
  double best = 0.0;
  for (int i = 0; i < n; ++i) best = std::max(best, g.block_degree(i));

  // Block-constant probes: power ascent on K (shifted to keep it PSD).
  const std::vector<double> k = reduced_matrix(g);
  std::vector<double> u(n), w(n);
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = rng::substream(seed, rng::kProbeStream, t);
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) {
      u[i] = rng::normal(s, 1, i);
      nrm += u[i] * u[i];
    }
    if (nrm == 0.0) continue;
    nrm = std::sqrt(nrm);
    for (int i = 0; i < n; ++i) u[i] /= nrm;

    double ray = 0.0;
    for (int it = 0; it < 500; ++it) {
      for (int i = 0; i < n; ++i) {
        double s2 = 0.0;
        for (int j = 0; j < n; ++j) s2 += k[static_cast<std::size_t>(i) * n + j] * u[j];
        w[i] = s2;
      }
      ray = 0.0;
      for (int i = 0; i < n; ++i) ray += u[i] * w[i];
      double res = 0.0;
      for (int i = 0; i < n; ++i) res = std::max(res, std::fabs(w[i] - ray * u[i]));
      if (res <= 1e-10 * std::max(1.0, ray)) break;
      double wn = 0.0;
      for (int i = 0; i < n; ++i) {
        w[i] += u[i];  // shift by identity: keeps iteration aimed at lambda_max
        wn += w[i] * w[i];
      }
      wn = std::sqrt(wn);
      if (wn == 0.0) break;
      for (int i = 0; i < n; ++i) u[i] = w[i] / wn;
    }
    best = std::max(best, ray);
  }
  return best;
}

double matrix_laplacian_norm(const AdjacencyMatrix& adj) {
  const int n = adj.n;
  std::vector<double> l(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    int deg = 0;
    for (int j = 0; j < n; ++j) {
      deg += adj.at(i, j);
      l[static_cast<std::size_t>(i) * n + j] = -static_cast<double>(adj.at(i, j));
    }
    l[static_cast<std::size_t>(i) * n + i] = static_cast<double>(deg);
  }
  return sym_eigenvalues(std::move(l), n).back() / n;
}

BlockGraphon empirical_graphon(const AdjacencyMatrix& adj) {
  std::vector<double> v(adj.a.begin(), adj.a.end());
  return BlockGraphon(adj.n, std::move(v));
}

}  // namespace gldp
