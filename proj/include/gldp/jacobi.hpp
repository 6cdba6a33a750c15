#pragma once

#include <vector>

namespace gldp {

// Symmetric eigensolver: cyclic Jacobi rotations.  Terminates when the
// off-diagonal Frobenius norm falls below 1e-12 relative to the matrix scale;
// a hard cap of 100 sweeps guards against stagnation and raises on overflow.
//
//   a    row-major n*n symmetric matrix, diagonalized in place
//   eigs eigenvalues, ascending
//   vecs optional; column k (vecs[i*n+k]) is the unit eigenvector for eigs[k]
void jacobi_eigen(std::vector<double>& a, int n, std::vector<double>& eigs,
                  std::vector<double>* vecs = nullptr);

// Eigenvalues only, from a copy, ascending.
std::vector<double> sym_eigenvalues(std::vector<double> a, int n);

}  // namespace gldp
