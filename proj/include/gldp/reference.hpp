#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gldp/block_graphon.hpp"
#include "gldp/quad.hpp"

namespace gldp {

enum class Family { Constant, Rank1, Grid, Bilinear };

// Reference kernel r: [0,1]^2 -> [0,1] from one of four families:
//   constant  r = p
//   rank1     r(x,y) = f(x) f(y) with f a polynomial, f >= 0 on [0,1]
//   grid      a BlockGraphon used as the reference
//   bilinear  node matrix on a uniform lattice, bilinear between nodes
// Declared range bounds lower()/upper() enclose the true range exactly
// (polynomial extrema are located by root-finding on f').
class ReferenceGraphon {
 public:
  static ReferenceGraphon constant(double p);
  static ReferenceGraphon rank1(std::vector<double> coeffs);
  static ReferenceGraphon grid(BlockGraphon g);
  static ReferenceGraphon bilinear(int nodes_per_side, std::vector<double> node_values);

  Family family() const { return fam_; }
  bool continuous() const { return fam_ != Family::Grid; }
  bool strictly_inside() const { return lo_ > 0.0 && hi_ < 1.0; }
  double lower() const { return lo_; }
  double upper() const { return hi_; }

  double operator()(double x, double y) const;

  // Family payloads (throw if queried for the wrong family).
  double constant_p() const;
  const std::vector<double>& coeffs() const;
  const BlockGraphon& grid_values() const;
  int nodes_per_side() const;
  double node(int i, int j) const;

  double rank1_f(double x) const;  // f(x), Horner

  // Interior x (or y) values where the kernel is only piecewise smooth;
  // empty for constant and rank1.  Quadratures split here.
  const std::vector<double>& breakpoints() const { return breaks_; }

  // mean_dy(x, phi, tol) = integral over y in [0,1] of phi(r(x, y)) dy.
  // Exact finite sums for constant/grid; adaptive quadrature split at
  // breakpoints otherwise.  phi must be smooth on the value range.
  template <class F>
  double mean_dy(double x, F&& phi, double tol = 1e-11) const {
    switch (fam_) {
      case Family::Constant:
        return phi(p_);
      case Family::Grid: {
        const BlockGraphon& g = grid_;
        const int n = g.n_blocks();
        const int i = g.block_of(x);
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += phi(g.value(i, j));
        return s / n;
      }
      default: {
        auto f = [&](double y) { return phi((*this)(x, y)); };
        if (breaks_.empty()) return quad::integrate(f, 0.0, 1.0, tol);
        double s = 0.0;
        double a = 0.0;
        const double per = tol / static_cast<double>(breaks_.size() + 1);
        for (double b : breaks_) {
          s += quad::integrate(f, a, b, per);
          a = b;
        }
        return s + quad::integrate(f, a, 1.0, per);
      }
    }
  }

 private:
  ReferenceGraphon() : grid_(BlockGraphon::constant(1, 0.0)) {}

  Family fam_ = Family::Constant;
  double p_ = 0.0;                // constant
  std::vector<double> coeffs_;    // rank1
  BlockGraphon grid_;             // grid
  int m_ = 0;                     // bilinear nodes per side
  std::vector<double> nodes_;     // bilinear node matrix, row-major m x m
  double lo_ = 0.0, hi_ = 0.0;
  std::vector<double> breaks_;
};

// Average of r over each cell of a uniform n x n grid.  Closed-form exact in
// every family (overlap sums, polynomial antiderivatives, patch midpoints).
BlockGraphon block_average(const ReferenceGraphon& r, int n_blocks);

// Overlap weights W[i*n_source + a] = |B_i ∩ A_a| * n_target between uniform
// partitions; each row sums to 1.
std::vector<double> partition_overlap(int n_target, int n_source);

// Exact mean of r over the rectangle [xlo,xhi] x [ylo,yhi] (closed forms:
// constant value, factorized polynomial means, cell overlaps, bilinear patch
// midpoints).
double rect_mean(const ReferenceGraphon& r, double xlo, double xhi, double ylo,
                 double yhi);

}  // namespace gldp
