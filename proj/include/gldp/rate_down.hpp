#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gldp/block_graphon.hpp"
#include "gldp/reference.hpp"

namespace gldp {

// Exceedance set S_r(beta) = {x : d_r(x) >= beta} as a union of closed
// intervals (endpoints bisected to ~1e-14).
struct ExceedanceSet {
  std::vector<std::pair<double, double>> intervals;
  double measure() const;
};
ExceedanceSet exceedance_set(const ReferenceGraphon& r, double beta);

// C_r^0 = double integral of log(1/(1-r)): the full rate of an empty graph
// and the beta -> 0 limit of the downward rate.  Needs upper() < 1.
double c_r0(const ReferenceGraphon& r, double tol = 1e-10);

// Lower bound                | integral over S_r(beta) of J_r(x, beta) dx
// Upper bound                | I_r(candidate_graphon)
// for psi_r(beta) = inf { I_r(h) : ||L_h|| <= beta }, beta in [0, C_r].
double psi_lower_bound(const ReferenceGraphon& r, double beta);

// Feasible competitor on an n x n grid: keep r off S x S and the cross
// strips, tilt rows of S down to degree beta on the strips, and take the
// smaller of the two row tilts on S x S.  Its degree function stays <= beta
// pointwise, hence the block norm does too (up to quadrature rounding).
// Grid references are handled exactly block-by-block; continuous families
// interpolate theta(x) per S-interval by Chebyshev nodes and integrate each
// cell split at S boundaries.
BlockGraphon candidate_graphon(const ReferenceGraphon& r, double beta, int n_blocks);

// (I_r(candidate), feasibility of its exact block norm <= beta + 1e-9).
std::pair<double, bool> psi_upper_bound(const ReferenceGraphon& r, double beta,
                                        int n_blocks);

// integral over S_r(beta) of (d_r(x) - beta)^2 / v_r(x) dx; the quadratic
// scaling yardstick that sandwiches psi within constant factors near C_r.
double scaling_integral(const ReferenceGraphon& r, double beta);

struct SolveOptions {
  int n_blocks = 32;
  int restarts = 4;
  int max_outer_rounds = 40;   // penalty continuation rounds
  int max_inner_iters = 300;   // gradient steps per round
  double penalty_init = 16.0;
  double penalty_factor = 2.0;
  double softmax_tau = 1e-3;   // smooth-max temperature, annealed per round
  std::uint64_t seed = 1;
};

struct DownwardSolution {
  double beta = 0.0;
  double value = 0.0;                              // I_r at the minimiser
  BlockGraphon minimiser = BlockGraphon::zero(1);  // feasible block graphon
  double feasibility_gap = 0.0;                    // max(0, ||L|| - beta), exact
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  int iterations = 0;                              // inner steps, winning restart
  bool converged = true;
};

// Penalized descent for psi_r(beta) over n x n block graphons:
// logit-parametrized entries, relative entropy objective with a smooth-max
// penalty on the block norm (power-iteration top eigenvector supplies the
// norm subgradient), penalty/temperature continuation, multi-start, and a
// final exact-norm scaling projection so the returned minimiser is feasible
// to machine accuracy.  beta = 0 and beta = C_r short-circuit analytically.
DownwardSolution solve_psi(const ReferenceGraphon& r, double beta,
                           const SolveOptions& opts = {});

}  // namespace gldp
