#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gldp/block_graphon.hpp"
#include "gldp/reference.hpp"
#include "gldp/spectral.hpp"

namespace gldp::mc {

// One inhomogeneous Bernoulli graph draw.  Edge {i,j}, i < j, is present
// when the counter-based draw keyed on (seed, i, j) falls below the kernel
// value, so regeneration with the same (kernel, n, seed) is bit-identical
// and independent of fill order.
struct GraphSample {
  int n = 0;
  AdjacencyMatrix adjacency;
  std::uint64_t seed = 0;
  BlockGraphon reference = BlockGraphon::zero(1);  // n-block kernel used
};

// r_N must have exactly n blocks, or a block count dividing n (the kernel is
// refined); anything else throws.
GraphSample sample_graph(const BlockGraphon& r_N, int n, std::uint64_t seed);

// Effective seed of sample number `index` in a multi-sample experiment.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

struct DegreeStats {
  std::vector<double> degrees;  // d_i / n
  double max_degree = 0.0;      // max_i d_i / n
  int max_vertex = 0;
};
DegreeStats degree_stats(const GraphSample& g);

// i_x: vertex holding position x in [0,1]; ceil(x*n) clamped to {1..n},
// returned zero-based.
int vertex_index(double x, int n);

// lhs = lambda_max(D), mid = lambda_max(D - A), rhs = lhs - lambda_min(A);
// the interlacing chain lhs <= mid <= rhs holds for every graph.
struct WeylCheck {
  double lhs = 0.0, mid = 0.0, rhs = 0.0;
  bool ok = false;
};
WeylCheck weyl_check(const GraphSample& g);

enum class TailEvent { MaxDegreeGE, LapNormLE, LapNormGE };

struct TailEstimate {
  double log_prob = -std::numeric_limits<double>::infinity();
  double rate_estimate = std::numeric_limits<double>::infinity();
  double ci_low = -std::numeric_limits<double>::infinity();  // 95%, log scale
  double ci_high = 0.0;
  long n_samples = 0;
  std::string method = "direct";
  double ess = 0.0;      // tilted only
  long hits = 0;         // direct only
  double std_err = 0.0;  // standard error on the probability scale
};

// Plain Monte Carlo frequency of the event at threshold beta*n, with a
// Wilson 95% interval mapped to log scale.  Upward events (max degree,
// norm >=) normalize the rate by n; the downward norm event by n(n-1)/2.
TailEstimate tail_prob_direct(const BlockGraphon& r_N, int n, TailEvent event,
                              double beta, long n_samples, std::uint64_t seed);

// Importance-sampling estimate of the upward degree tail.  The edges of the
// one vertex i_{x*} sitting at the degree-rate argmin are drawn from the
// exponentially tilted row (theta solved on the n-block kernel with the
// diagonal excluded -- no self-loops); every sample is reweighted by
// exp(C - theta * d).  single_vertex estimates P(d_{i_{x*}} >= beta n); the
// max-degree probability is sandwiched in [P1, n * P1], and max_degree
// reports the union-bound end min(1, n * P1) with the sandwich as its CI.
struct TiltedTail {
  TailEstimate single_vertex;
  TailEstimate max_degree;
  double x_star = 0.0;
  int vertex = 0;
  double theta = 0.0;  // finite-n tilt
  double ess = 0.0;
  bool reliable = false;  // ess >= 10
};
TiltedTail tail_prob_tilted(const ReferenceGraphon& r, int n, double beta,
                            long n_samples, std::uint64_t seed);

// Frequency of sup_i |d_i/n - dbar_i| >= t against the bound 2n e^{-2nt^2}
// (dbar from the kernel's block degrees); passes when the frequency stays
// below bound + 3 interval half-widths.
struct HoeffdingCheck {
  double empirical_freq = 0.0;
  double bound = 0.0;
  double ci_width = 0.0;
  bool ok = false;
};
HoeffdingCheck hoeffding_check(const BlockGraphon& r_N, int n, double t,
                               long n_samples, std::uint64_t seed);

// Positive correlation of the decreasing events {d_i <= beta n}:
// P(all) >= product of marginals, up to 3 joint interval half-widths.
struct FkgCheck {
  double lhs_est = 0.0;
  double rhs_est = 0.0;
  double slack = 0.0;
  bool ok = false;
};
FkgCheck fkg_check(const BlockGraphon& r_N, int n, double beta, long n_samples,
                   std::uint64_t seed);

// Mean |lambda_max(D - A)/n - ||L_r||| per graph size; the deviations must
// trend nonincreasing across the grid within two combined standard errors.
struct NormConvergenceRow {
  int n = 0;
  double mean_abs_dev = 0.0;
  double std_err = 0.0;
};
struct NormConvergenceTable {
  double target = 0.0;
  std::vector<NormConvergenceRow> rows;
  bool monotone_ok = false;
};
NormConvergenceTable norm_convergence_check(const ReferenceGraphon& r,
                                            const std::vector<int>& n_grid,
                                            int samples_per_n,
                                            std::uint64_t seed);

}  // namespace gldp::mc
