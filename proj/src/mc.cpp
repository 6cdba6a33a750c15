#include "gldp/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "gldp/degree.hpp"
#include "gldp/jacobi.hpp"
#include "gldp/kernels.hpp"
#include "gldp/par.hpp"
#include "gldp/rate_up.hpp"
#include "gldp/rng.hpp"
#include "gldp/tilt.hpp"

namespace gldp::mc {

namespace {

constexpr double kZ95 = 1.959963984540054;

// n x n edge probability matrix from an n-block (or refining) kernel.
BlockGraphon expand_kernel(const BlockGraphon& r_N, int n) {
  const int nb = r_N.n_blocks();
  if (nb == n) return r_N;
  if (nb < n && n % nb == 0) return r_N.refined(n / nb);
  throw std::invalid_argument(
      "sample_graph: kernel has " + std::to_string(nb) +
      " blocks which does not match or divide n = " + std::to_string(n));
}

struct Wilson {
  double lo = 0.0, hi = 0.0, half = 0.0;
};

Wilson wilson_interval(long k, long m) {
  const double phat = static_cast<double>(k) / m;
  const double zz = kZ95 * kZ95;
  const double denom = 1.0 + zz / m;
  const double center = (phat + zz / (2.0 * m)) / denom;
  const double half =
      kZ95 * std::sqrt(phat * (1.0 - phat) / m + zz / (4.0 * m * m)) / denom;
  Wilson w;
  // At k = 0 (resp. k = m) the endpoint is exactly 0 (resp. 1); computing
  // center -/+ half leaves a 1-ulp residue that log() would turn into a
  // spurious finite bound.
  w.lo = k == 0 ? 0.0 : std::max(0.0, center - half);
  w.hi = k == m ? 1.0 : std::min(1.0, center + half);
  w.half = half;
  return w;
}

TailEstimate direct_estimate(long hits, long m, double rate_divisor) {
  TailEstimate e;
  e.n_samples = m;
  e.hits = hits;
  e.method = "direct";
  const Wilson w = wilson_interval(hits, m);
  const double phat = static_cast<double>(hits) / m;
  e.std_err = std::sqrt(phat * (1.0 - phat) / m);
  e.ci_high = std::log(w.hi);
  e.ci_low = w.lo > 0.0 ? std::log(w.lo)
                        : -std::numeric_limits<double>::infinity();
  if (hits > 0) {
    e.log_prob = std::log(phat);
    e.rate_estimate = -e.log_prob / rate_divisor;
  }
  return e;
}

// Degrees of one Bernoulli draw, probabilities prob (n x n), seed per sample.
std::vector<int> sampled_degrees(const std::vector<double>& prob, int n,
                                 std::uint64_t seed,
                                 std::vector<std::uint8_t>& scratch) {
  kernels::adjacency_fill(prob, n, seed, scratch);
  std::vector<int> deg(n, 0);
  for (int i = 0; i < n; ++i) {
    int d = 0;
    const std::uint8_t* row = scratch.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) d += row[j];
    deg[i] = d;
  }
  return deg;
}

double lap_max_eig(const std::vector<std::uint8_t>& adj, int n) {
  std::vector<double> l(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    int d = 0;
    for (int j = 0; j < n; ++j) d += adj[static_cast<std::size_t>(i) * n + j];
    for (int j = 0; j < n; ++j)
      l[static_cast<std::size_t>(i) * n + j] =
          -static_cast<double>(adj[static_cast<std::size_t>(i) * n + j]);
    l[static_cast<std::size_t>(i) * n + i] += d + adj[static_cast<std::size_t>(i) * n + i];
  }
  return sym_eigenvalues(std::move(l), n).back();
}

// log(p e^theta + 1 - p), stable on both sides.
double log_edge_mgf(double p, double theta) {
  if (theta > 0.0) return theta + std::log1p((1.0 - p) * std::expm1(-theta));
  return std::log1p(p * std::expm1(theta));
}

}  // namespace

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  return rng::substream(seed, rng::kSampleStream, index);
}

GraphSample sample_graph(const BlockGraphon& r_N, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_graph: n must be >= 1");
  GraphSample g;
  g.n = n;
  g.seed = seed;
  g.reference = expand_kernel(r_N, n);
  std::vector<std::uint8_t> bits;
  kernels::adjacency_fill(g.reference.values(), n, seed, bits);
  g.adjacency = AdjacencyMatrix(n, std::move(bits));
  return g;
}

DegreeStats degree_stats(const GraphSample& g) {
  DegreeStats s;
  const int n = g.n;
  s.degrees.resize(n);
  for (int i = 0; i < n; ++i) {
    int d = 0;
    for (int j = 0; j < n; ++j) d += g.adjacency.at(i, j);
    s.degrees[i] = static_cast<double>(d) / n;
    if (s.degrees[i] > s.max_degree) {
      s.max_degree = s.degrees[i];
      s.max_vertex = i;
    }
  }
  return s;
}

int vertex_index(double x, int n) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("vertex_index: x must lie in [0,1]");
  const int one_based =
      std::clamp(static_cast<int>(std::ceil(x * n)), 1, n);
  return one_based - 1;
}

WeylCheck weyl_check(const GraphSample& g) {
  const int n = g.n;
  WeylCheck w;
  int dmax = 0;
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    int d = 0;
    for (int j = 0; j < n; ++j) {
      const int v = g.adjacency.at(i, j);
      d += v;
      a[static_cast<std::size_t>(i) * n + j] = v;
    }
    dmax = std::max(dmax, d);
  }
  w.lhs = dmax;
  w.mid = lap_max_eig(g.adjacency.a, n);
  const double amin = sym_eigenvalues(std::move(a), n).front();
  w.rhs = w.lhs - amin;
  w.ok = w.lhs <= w.mid + 1e-10 && w.mid <= w.rhs + 1e-10;
  return w;
}

TailEstimate tail_prob_direct(const BlockGraphon& r_N, int n, TailEvent event,
                              double beta, long n_samples, std::uint64_t seed) {
  if (n_samples < 1)
    throw std::invalid_argument("tail_prob_direct: need at least one sample");
  const BlockGraphon kernel = expand_kernel(r_N, n);
  const std::vector<double>& prob = kernel.values();
  const double threshold = beta * n;

  std::vector<char> hit(n_samples, 0);
  bool failed = false;
#pragma omp parallel num_threads(par::threads())
  {
    std::vector<std::uint8_t> scratch;
#pragma omp for schedule(static)
    for (long s = 0; s < n_samples; ++s) {
      try {
        const std::uint64_t ss = sample_seed(seed, static_cast<std::uint64_t>(s));
        bool h = false;
        switch (event) {
          case TailEvent::MaxDegreeGE: {
            const std::vector<int> deg = sampled_degrees(prob, n, ss, scratch);
            const int mx = *std::max_element(deg.begin(), deg.end());
            h = mx + 1e-9 >= threshold;
            break;
          }
          case TailEvent::LapNormLE:
          case TailEvent::LapNormGE: {
            kernels::adjacency_fill(prob, n, ss, scratch);
            const double lmax = lap_max_eig(scratch, n);
            h = event == TailEvent::LapNormLE ? lmax <= threshold + 1e-9
                                              : lmax + 1e-9 >= threshold;
            break;
          }
        }
        hit[s] = h ? 1 : 0;
      } catch (...) {
#pragma omp atomic write
        failed = true;
      }
    }
  }
  if (failed) throw std::runtime_error("tail_prob_direct: a sample failed");

  long hits = 0;
  for (char h : hit) hits += h;
  const double divisor = event == TailEvent::LapNormLE
                             ? 0.5 * static_cast<double>(n) * (n - 1)
                             : static_cast<double>(n);
  return direct_estimate(hits, n_samples, divisor);
}

TiltedTail tail_prob_tilted(const ReferenceGraphon& r, int n, double beta,
                            long n_samples, std::uint64_t seed) {
  if (n_samples < 1)
    throw std::invalid_argument("tail_prob_tilted: need at least one sample");
  if (n < 2) throw std::invalid_argument("tail_prob_tilted: need n >= 2");

  const RatePoint pt = psi_hat(r, beta);  // also validates the beta window
  TiltedTail out;
  out.x_star = pt.argmin_x;
  out.vertex = vertex_index(pt.argmin_x, n);
  out.single_vertex.method = out.max_degree.method = "tilted";
  out.single_vertex.n_samples = out.max_degree.n_samples = n_samples;

  const double target = beta * n;
  if (target > n - 1 + 1e-9) {
    // A vertex has at most n-1 neighbours: the event is void.
    out.single_vertex.ci_high = out.max_degree.ci_high =
        -std::numeric_limits<double>::infinity();
    return out;
  }

  const BlockGraphon kernel = block_average(r, n);
  const int v = out.vertex;
  std::vector<double> p(n);
  for (int j = 0; j < n; ++j) p[j] = kernel.value(v, j);

  // Finite-n tilt on the row, diagonal excluded: sum_{j != v} of the tilted
  // edge probabilities equals beta * n.
  auto row_degree = [&](double th) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != v) acc += sigmoid(th + logit(p[j]));
    return acc;
  };
  double pmin = 1.0, pmax = 0.0;
  for (int j = 0; j < n; ++j)
    if (j != v) {
      pmin = std::min(pmin, p[j]);
      pmax = std::max(pmax, p[j]);
    }
  const double frac = target / (n - 1);
  double lo = logit(std::min(frac, 1.0 - 1e-12)) - logit(pmax) - 1e-9;
  double hi = logit(std::min(frac, 1.0 - 1e-12)) - logit(pmin) + 1e-9;
  for (int guard = 0; guard < 8 && row_degree(lo) > target; ++guard)
    lo -= std::max(1.0, hi - lo);
  for (int guard = 0; guard < 8 && row_degree(hi) < target; ++guard)
    hi += std::max(1.0, hi - lo);
  double theta = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double res = row_degree(theta) - target;
    if (std::fabs(res) <= 1e-12 * std::max(1.0, target)) break;
    if (res > 0.0)
      hi = theta;
    else
      lo = theta;
    double slope = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != v) {
        const double q = sigmoid(theta + logit(p[j]));
        slope += q * (1.0 - q);
      }
    double next = slope > 0.0 ? theta - res / slope : theta;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    theta = next;
  }
  out.theta = theta;

  double log_norm = 0.0;  // C = sum_j log(p_j e^theta + 1 - p_j)
  std::vector<double> q(n, 0.0);
  for (int j = 0; j < n; ++j)
    if (j != v) {
      log_norm += log_edge_mgf(p[j], theta);
      q[j] = sigmoid(theta + logit(p[j]));
    }

  std::vector<int> degrees;
  kernels::tilted_degrees(q, n_samples, seed, degrees);

  // Weights depend on the sample only through its degree count.
  const long need = static_cast<long>(std::ceil(target - 1e-9));
  double wmax_all = -std::numeric_limits<double>::infinity();
  double wmax_hit = -std::numeric_limits<double>::infinity();
  long hits = 0;
  for (long s = 0; s < n_samples; ++s) {
    const double lw = log_norm - theta * degrees[s];
    wmax_all = std::max(wmax_all, lw);
    if (degrees[s] >= need) {
      hits += 1;
      wmax_hit = std::max(wmax_hit, lw);
    }
  }
  out.single_vertex.hits = out.max_degree.hits = hits;

  double sum_all = 0.0, sum2_all = 0.0, sum_hit = 0.0, sum2_hit = 0.0;
  for (long s = 0; s < n_samples; ++s) {
    const double lw = log_norm - theta * degrees[s];
    const double wa = std::exp(lw - wmax_all);
    sum_all += wa;
    sum2_all += wa * wa;
    if (degrees[s] >= need) {
      const double wh = std::exp(lw - wmax_hit);
      sum_hit += wh;
      sum2_hit += wh * wh;
    }
  }
  out.ess = sum2_all > 0.0 ? sum_all * sum_all / sum2_all : 0.0;
  out.reliable = out.ess >= 10.0;
  out.single_vertex.ess = out.max_degree.ess = out.ess;

  if (hits == 0) return out;  // log_prob stays -inf; flagged by reliable/ess

  const double m = static_cast<double>(n_samples);
  const double p1 = std::exp(wmax_hit) * sum_hit / m;
  const double mom2 = std::exp(2.0 * wmax_hit) * sum2_hit / m;
  const double se = std::sqrt(std::max(0.0, mom2 - p1 * p1) / m);

  TailEstimate& sv = out.single_vertex;
  sv.log_prob = std::log(p1);
  sv.rate_estimate = -sv.log_prob / n;
  sv.std_err = se;
  const double lo_p = p1 - kZ95 * se;
  sv.ci_low = lo_p > 0.0 ? std::log(lo_p)
                         : -std::numeric_limits<double>::infinity();
  sv.ci_high = std::log(std::min(1.0, p1 + kZ95 * se));

  // Sandwich [P1, n P1] for the maximum-degree event; report the union end.
  TailEstimate& md = out.max_degree;
  const double logn = std::log(static_cast<double>(n));
  md.log_prob = std::min(0.0, logn + sv.log_prob);
  md.rate_estimate = -md.log_prob / n;
  md.std_err = std::min(1.0, n * se);
  md.ci_low = sv.ci_low;
  md.ci_high = std::min(0.0, logn + sv.ci_high);
  return out;
}

HoeffdingCheck hoeffding_check(const BlockGraphon& r_N, int n, double t,
                               long n_samples, std::uint64_t seed) {
  if (!(t > 0.0)) throw std::invalid_argument("hoeffding_check: t must be > 0");
  if (n_samples < 1)
    throw std::invalid_argument("hoeffding_check: need at least one sample");
  const BlockGraphon kernel = expand_kernel(r_N, n);
  const std::vector<double>& prob = kernel.values();
  const std::vector<double> dbar = kernel.block_degrees();

  std::vector<char> hit(n_samples, 0);
  bool failed = false;
#pragma omp parallel num_threads(par::threads())
  {
    std::vector<std::uint8_t> scratch;
#pragma omp for schedule(static)
    for (long s = 0; s < n_samples; ++s) {
      try {
        const std::vector<int> deg = sampled_degrees(
            prob, n, sample_seed(seed, static_cast<std::uint64_t>(s)), scratch);
        double dev = 0.0;
        for (int i = 0; i < n; ++i)
          dev = std::max(dev, std::fabs(static_cast<double>(deg[i]) / n - dbar[i]));
        hit[s] = dev >= t ? 1 : 0;
      } catch (...) {
#pragma omp atomic write
        failed = true;
      }
    }
  }
  if (failed) throw std::runtime_error("hoeffding_check: a sample failed");

  long hits = 0;
  for (char h : hit) hits += h;
  HoeffdingCheck c;
  c.empirical_freq = static_cast<double>(hits) / n_samples;
  c.bound = 2.0 * n * std::exp(-2.0 * n * t * t);
  c.ci_width = wilson_interval(hits, n_samples).half;
  c.ok = c.empirical_freq <= c.bound + 3.0 * c.ci_width;
  return c;
}

FkgCheck fkg_check(const BlockGraphon& r_N, int n, double beta, long n_samples,
                   std::uint64_t seed) {
  if (n_samples < 1)
    throw std::invalid_argument("fkg_check: need at least one sample");
  const BlockGraphon kernel = expand_kernel(r_N, n);
  const std::vector<double>& prob = kernel.values();
  const double threshold = beta * n + 1e-9;

  std::vector<std::vector<int>> degs(n_samples);
  bool failed = false;
#pragma omp parallel num_threads(par::threads())
  {
    std::vector<std::uint8_t> scratch;
#pragma omp for schedule(static)
    for (long s = 0; s < n_samples; ++s) {
      try {
        degs[s] = sampled_degrees(
            prob, n, sample_seed(seed, static_cast<std::uint64_t>(s)), scratch);
      } catch (...) {
#pragma omp atomic write
        failed = true;
      }
    }
  }
  if (failed) throw std::runtime_error("fkg_check: a sample failed");

  long joint = 0;
  std::vector<long> marg(n, 0);
  for (long s = 0; s < n_samples; ++s) {
    bool all = true;
    for (int i = 0; i < n; ++i) {
      if (degs[s][i] <= threshold)
        marg[i] += 1;
      else
        all = false;
    }
    joint += all ? 1 : 0;
  }
  FkgCheck c;
  c.lhs_est = static_cast<double>(joint) / n_samples;
  c.rhs_est = 1.0;
  for (int i = 0; i < n; ++i)
    c.rhs_est *= static_cast<double>(marg[i]) / n_samples;
  c.slack = 3.0 * wilson_interval(joint, n_samples).half;
  c.ok = c.lhs_est >= c.rhs_est - c.slack;
  return c;
}

NormConvergenceTable norm_convergence_check(const ReferenceGraphon& r,
                                            const std::vector<int>& n_grid,
                                            int samples_per_n,
                                            std::uint64_t seed) {
  if (n_grid.empty())
    throw std::invalid_argument("norm_convergence_check: empty size grid");
  if (samples_per_n < 1)
    throw std::invalid_argument("norm_convergence_check: need samples");

  NormConvergenceTable table;
  if (r.family() == Family::Grid) {
    table.target = laplacian_norm(r.grid_values());
  } else {
    table.target =
        std::max(laplacian_norm(block_average(r, 256)), degree_sup(r));
  }

  for (std::size_t row_idx = 0; row_idx < n_grid.size(); ++row_idx) {
    const int n = n_grid[row_idx];
    const BlockGraphon kernel = block_average(r, n);
    const std::vector<double>& prob = kernel.values();
    std::vector<double> devs(samples_per_n, 0.0);
    bool failed = false;
#pragma omp parallel num_threads(par::threads())
    {
      std::vector<std::uint8_t> scratch;
#pragma omp for schedule(static)
      for (int s = 0; s < samples_per_n; ++s) {
        try {
          kernels::adjacency_fill(
              prob, n, sample_seed(seed, (row_idx << 32) | static_cast<std::uint64_t>(s)),
              scratch);
          const double norm = lap_max_eig(scratch, n) / n;
          devs[s] = std::fabs(norm - table.target);
        } catch (...) {
#pragma omp atomic write
          failed = true;
        }
      }
    }
    if (failed)
      throw std::runtime_error("norm_convergence_check: a sample failed");

    double mean = 0.0;
    for (double d : devs) mean += d;
    mean /= samples_per_n;
    double var = 0.0;
    for (double d : devs) var += (d - mean) * (d - mean);
    var = samples_per_n > 1 ? var / (samples_per_n - 1) : 0.0;
    NormConvergenceRow row;
    row.n = n;
    row.mean_abs_dev = mean;
    row.std_err = std::sqrt(var / samples_per_n);
    table.rows.push_back(row);
  }

  table.monotone_ok = true;
  for (std::size_t k = 1; k < table.rows.size(); ++k) {
    const auto& a = table.rows[k - 1];
    const auto& b = table.rows[k];
    const double slack =
        2.0 * std::sqrt(a.std_err * a.std_err + b.std_err * b.std_err);
    if (b.mean_abs_dev > a.mean_abs_dev + slack) table.monotone_ok = false;
  }
  return table;
}

}  // namespace gldp::mc
