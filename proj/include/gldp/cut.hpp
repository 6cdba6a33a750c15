#pragma once

#include <cstdint>
#include <vector>

#include "gldp/block_graphon.hpp"

namespace gldp {

struct CutNormResult {
  double value = 0.0;
  bool exact = true;
};

// Cut distance between block graphons:
//   d_cut(g1,g2) = max over rectangles S x T of |integral of (g1-g2)|.
// Inputs on different grids are moved to their common refinement first.
// Up to 20 blocks the rectangle maximum is computed exactly (Gray-code scan
// over S; the optimal T for fixed S is the positive or negative part of the
// column sums).  Beyond that a seeded alternating-maximization heuristic with
// 32 restarts reports a lower bound and is flagged inexact.
CutNormResult cut_distance_detail(const BlockGraphon& g1, const BlockGraphon& g2);
double cut_distance(const BlockGraphon& g1, const BlockGraphon& g2);

struct CutMetricResult {
  double value = 0.0;
  bool exact = true;
  std::vector<int> relabeling;  // best block permutation applied to g2
};

// Cut metric restricted to block relabelings: min over permutations of g2's
// blocks of the cut distance.  Exhaustive up to 8 blocks; simulated annealing
// beyond that (an upper bound for the relabeling class, flagged inexact).
// Either way the result can only over-estimate the full cut metric, which
// infimizes over all measure-preserving maps.
CutMetricResult cut_metric_blocks_detail(const BlockGraphon& g1,
                                         const BlockGraphon& g2,
                                         std::uint64_t seed = 1);
double cut_metric_blocks(const BlockGraphon& g1, const BlockGraphon& g2);

enum class LpNorm { L1, L2, LInf };

// Plain L^p distance on the same grid; errors on mismatched refinements
// (use common_refinement first).
double lp_distance(const BlockGraphon& g1, const BlockGraphon& g2, LpNorm p);

}  // namespace gldp
