#pragma once

#include <cstdint>
#include <vector>

#include "gldp/block_graphon.hpp"

namespace gldp {

// Symmetric 0/1 adjacency matrix with a zero diagonal.
struct AdjacencyMatrix {
  int n = 0;
  std::vector<std::uint8_t> a;  // row-major n x n

  AdjacencyMatrix() = default;
  AdjacencyMatrix(int n, std::vector<std::uint8_t> values);  // validates
  std::uint8_t at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * n + j];
  }
};

// Spectrum of the graphon Laplacian L_g = D_g - T_g for a block graphon.
// Block-constant functions reduce L_g to the n x n matrix
//   K = diag(d_i) - G/n,
// while functions averaging to zero on each block are annihilated by T_g, so
// the degree values d_i enter the spectrum directly.  The operator norm is
// max(lambda_max(K), max_i d_i); no discretization is involved.
struct SpectralSummary {
  double laplacian_norm = 0.0;
  std::vector<double> reduced_eigs;   // eig(K), ascending
  std::vector<double> degree_values;  // d_i per block
  double adjacency_min_eig = 0.0;     // edge of spectrum of T_g
  double adjacency_max_eig = 0.0;
};

SpectralSummary laplacian_spectrum(const BlockGraphon& g);
double laplacian_norm(const BlockGraphon& g);
double adjacency_min_eig(const BlockGraphon& g);

// Independent check of the variational form
//   sup_{||u||<=1} (1/2) * double integral of g(x,y) (u(x)-u(y))^2.
// Probes with zero block mean attain the degree values exactly; the
// block-constant part is explored by power ascent from `trials` seeded
// starts.  Result never exceeds the true norm beyond rounding.
double quadratic_form_norm(const BlockGraphon& g, int trials = 64,
                           std::uint64_t seed = 1);

// lambda_max(D - A)/n for a finite graph, dense eigensolve.
double matrix_laplacian_norm(const AdjacencyMatrix& adj);

// The empirical graphon of a graph: N x N blocks with the adjacency entries.
BlockGraphon empirical_graphon(const AdjacencyMatrix& adj);

}  // namespace gldp
