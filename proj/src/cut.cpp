#include "gldp/cut.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gldp/kernels.hpp"
#include "gldp/rng.hpp"

namespace gldp {

namespace {

constexpr int kExactCutCap = 20;
constexpr int kHeuristicRestarts = 32;
constexpr int kExactPermCap = 8;

std::vector<double> cell_mass(const BlockGraphon& a, const BlockGraphon& b) {
  const int n = a.n_blocks();
  std::vector<double> u(static_cast<std::size_t>(n) * n);
  const double inv = 1.0 / (static_cast<double>(n) * n);
  for (std::size_t k = 0; k < u.size(); ++k)
    u[k] = (a.values()[k] - b.values()[k]) * inv;
  return u;
}

CutNormResult cut_common(const BlockGraphon& a, const BlockGraphon& b,
                         std::uint64_t seed) {
  const std::vector<double> u = cell_mass(a, b);
  const int n = a.n_blocks();
  CutNormResult res;
  if (n <= kExactCutCap) {
    res.value = kernels::cut_scan(u, n);
    res.exact = true;
  } else {
    res.value = kernels::cut_heuristic(u, n, kHeuristicRestarts, seed);
    res.exact = false;
  }
  return res;
}

BlockGraphon permuted(const BlockGraphon& g, const std::vector<int>& perm) {
  const int n = g.n_blocks();
  std::vector<double> v(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      v[static_cast<std::size_t>(i) * n + j] = g.value(perm[i], perm[j]);
  return BlockGraphon(n, std::move(v));
}

}  // namespace

CutNormResult cut_distance_detail(const BlockGraphon& g1, const BlockGraphon& g2) {
  if (g1.n_blocks() == g2.n_blocks()) return cut_common(g1, g2, 1);
  const auto [a, b] = common_refinement(g1, g2);
  return cut_common(a, b, 1);
}

double cut_distance(const BlockGraphon& g1, const BlockGraphon& g2) {
  return cut_distance_detail(g1, g2).value;
}

CutMetricResult cut_metric_blocks_detail(const BlockGraphon& g1,
                                         const BlockGraphon& g2,
                                         std::uint64_t seed) {
  const bool same = g1.n_blocks() == g2.n_blocks();
  const BlockGraphon a = same ? g1 : common_refinement(g1, g2).first;
  const BlockGraphon b = same ? g2 : common_refinement(g1, g2).second;
  const int n = a.n_blocks();

  CutMetricResult res;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  if (n <= kExactPermCap) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_perm = perm;
    bool all_exact = true;
    do {
      const CutNormResult c = cut_common(a, permuted(b, perm), seed);
      all_exact = all_exact && c.exact;
      if (c.value < best) {
        best = c.value;
        best_perm = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    res.value = best;
    res.exact = all_exact;
    res.relabeling = best_perm;
    return res;
  }

  // Simulated annealing over relabelings; inner distances may themselves be
  // heuristic for very fine grids.  Upper bound either way.
  auto cost = [&](const std::vector<int>& p) {
    return cut_common(a, permuted(b, p), seed).value;
  };
  double cur = cost(perm);
  double best = cur;
  std::vector<int> best_perm = perm;
  const long iters = 300L * n;
  double temp = std::max(cur, 1e-3);
  const double cool = std::pow(1e-7 / temp, 1.0 / static_cast<double>(iters));
  for (long it = 0; it < iters; ++it) {
    const std::uint64_t s = rng::substream(seed, rng::kOptStream, it);
    const int i = static_cast<int>(rng::uniform01(s, 0, 0) * n);
    int j = static_cast<int>(rng::uniform01(s, 0, 1) * (n - 1));
    if (j >= i) ++j;
    std::swap(perm[i], perm[j]);
    const double nxt = cost(perm);
    const double delta = nxt - cur;
    if (delta <= 0.0 || rng::uniform01(s, 0, 2) < std::exp(-delta / temp)) {
      cur = nxt;
      if (cur < best) {
        best = cur;
        best_perm = perm;
      }
    } else {
      std::swap(perm[i], perm[j]);  // reject
    }
    temp *= cool;
  }
  res.value = best;
  res.exact = false;  // annealing never certifies the minimum
  res.relabeling = best_perm;
  return res;
}

double cut_metric_blocks(const BlockGraphon& g1, const BlockGraphon& g2) {
  return cut_metric_blocks_detail(g1, g2).value;
}

double lp_distance(const BlockGraphon& g1, const BlockGraphon& g2, LpNorm p) {
  if (g1.n_blocks() != g2.n_blocks())
    throw std::invalid_argument(
        "lp_distance: mismatched refinements (apply common_refinement first)");
  const int n = g1.n_blocks();
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  double acc = 0.0;
  for (std::size_t k = 0; k < nn; ++k) {
    const double d = std::fabs(g1.values()[k] - g2.values()[k]);
    switch (p) {
      case LpNorm::L1: acc += d; break;
      case LpNorm::L2: acc += d * d; break;
      case LpNorm::LInf: acc = std::max(acc, d); break;
    }
  }
  if (p == LpNorm::L1) return acc / static_cast<double>(nn);
  if (p == LpNorm::L2) return std::sqrt(acc / static_cast<double>(nn));
  return acc;
}

}  // namespace gldp
