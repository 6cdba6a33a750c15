#include "gldp/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "gldp/par.hpp"
#include "gldp/rng.hpp"
#include "gldp/tilt.hpp"

namespace gldp::kernels {

namespace {

constexpr int kLowBits = 14;  // subsets enumerated per chunk: 2^14

// Max over rectangles for all subsets S = fixed_high | gray(low).
double cut_chunk(const std::vector<double>& u, int n, std::uint64_t high,
                 int low_bits) {
  std::vector<double> colsum(n, 0.0);
  for (int i = low_bits; i < n; ++i)
    if (high & (1ULL << i))
      for (int j = 0; j < n; ++j) colsum[j] += u[static_cast<std::size_t>(i) * n + j];

  auto value = [&]() {
    double pos = 0.0, neg = 0.0;
    for (int j = 0; j < n; ++j) {
      if (colsum[j] > 0.0) pos += colsum[j];
      else neg -= colsum[j];
    }
    return std::max(pos, neg);
  };

  double best = high ? value() : 0.0;  // low = empty
  std::uint64_t gray = 0;
  const std::uint64_t count = 1ULL << low_bits;
  for (std::uint64_t k = 1; k < count; ++k) {
    const std::uint64_t next = k ^ (k >> 1);
    const int bit = std::countr_zero(gray ^ next);
    const double sgn = (next >> bit) & 1ULL ? 1.0 : -1.0;
    const double* row = u.data() + static_cast<std::size_t>(bit) * n;
    for (int j = 0; j < n; ++j) colsum[j] += sgn * row[j];
    gray = next;
    best = std::max(best, value());
  }
  return best;
}

// One alternating-maximization restart; returns the best |rectangle sum|.
double alt_restart(const std::vector<double>& u, int n, std::uint64_t seed,
                   int restart) {
  std::vector<std::uint8_t> s(n);
  const std::uint64_t ss = rng::substream(seed, rng::kOptStream, restart);
  if (restart == 0) {
    std::fill(s.begin(), s.end(), 1);  // deterministic full start
  } else {
    for (int i = 0; i < n; ++i) s[i] = rng::uniform01(ss, 2, i) < 0.5 ? 0 : 1;
  }

  std::vector<double> colsum(n), rowsum(n);
  double best = 0.0;
  for (int round = 0; round < 64; ++round) {
    for (int j = 0; j < n; ++j) {
      double c = 0.0;
      for (int i = 0; i < n; ++i)
        if (s[i]) c += u[static_cast<std::size_t>(i) * n + j];
      colsum[j] = c;
    }
    double pos = 0.0, neg = 0.0;
    for (int j = 0; j < n; ++j) {
      if (colsum[j] > 0.0) pos += colsum[j];
      else neg -= colsum[j];
    }
    const bool take_pos = pos >= neg;
    const double val = std::max(pos, neg);

    // T fixed to the chosen sign class; re-pick S.
    for (int i = 0; i < n; ++i) {
      double rsum = 0.0;
      for (int j = 0; j < n; ++j) {
        const bool in_t = take_pos ? colsum[j] > 0.0 : colsum[j] < 0.0;
        if (in_t) rsum += u[static_cast<std::size_t>(i) * n + j];
      }
      rowsum[i] = take_pos ? rsum : -rsum;
    }
    double improved = 0.0;
    for (int i = 0; i < n; ++i) {
      s[i] = rowsum[i] > 0.0 ? 1 : 0;
      if (s[i]) improved += rowsum[i];
    }
    if (improved <= best + 1e-15) {
      best = std::max(best, std::max(val, improved));
      break;
    }
    best = std::max(best, std::max(val, improved));
  }
  return best;
}

}  // namespace

double cut_scan_serial(const std::vector<double>& u, int n) {
  if (n > 20) throw std::invalid_argument("cut_scan: exact scan capped at 20 blocks");
  const int low = std::min(n, kLowBits);
  const std::uint64_t chunks = 1ULL << (n - low);
  double best = 0.0;
  for (std::uint64_t c = 0; c < chunks; ++c)
    best = std::max(best, cut_chunk(u, n, c << low, low));
  return best;
}

double cut_scan_omp(const std::vector<double>& u, int n) {
  if (n > 20) throw std::invalid_argument("cut_scan: exact scan capped at 20 blocks");
  const int low = std::min(n, kLowBits);
  const std::int64_t chunks = 1LL << (n - low);
  std::vector<double> slot(chunks);
#pragma omp parallel for schedule(dynamic) num_threads(par::threads())
  for (std::int64_t c = 0; c < chunks; ++c)
    slot[c] = cut_chunk(u, n, static_cast<std::uint64_t>(c) << low, low);
  double best = 0.0;
  for (double v : slot) best = std::max(best, v);
  return best;
}

double cut_scan(const std::vector<double>& u, int n) {
  return par::threads() > 1 ? cut_scan_omp(u, n) : cut_scan_serial(u, n);
}

double cut_heuristic_serial(const std::vector<double>& u, int n, int restarts,
                            std::uint64_t seed) {
  double best = 0.0;
  for (int r = 0; r < restarts; ++r) best = std::max(best, alt_restart(u, n, seed, r));
  return best;
}

double cut_heuristic_omp(const std::vector<double>& u, int n, int restarts,
                         std::uint64_t seed) {
  std::vector<double> slot(restarts);
#pragma omp parallel for schedule(dynamic) num_threads(par::threads())
  for (int r = 0; r < restarts; ++r) slot[r] = alt_restart(u, n, seed, r);
  double best = 0.0;
  for (double v : slot) best = std::max(best, v);
  return best;
}

double cut_heuristic(const std::vector<double>& u, int n, int restarts,
                     std::uint64_t seed) {
  return par::threads() > 1 ? cut_heuristic_omp(u, n, restarts, seed)
                            : cut_heuristic_serial(u, n, restarts, seed);
}

namespace {

inline void fill_row_upper(const std::vector<double>& prob, int n,
                           std::uint64_t seed, int i,
                           std::vector<std::uint8_t>& adj) {
  for (int j = i + 1; j < n; ++j)
    adj[static_cast<std::size_t>(i) * n + j] =
        rng::edge_uniform(seed, i, j) < prob[static_cast<std::size_t>(i) * n + j] ? 1 : 0;
}

}  // namespace

void adjacency_fill_serial(const std::vector<double>& prob, int n,
                           std::uint64_t seed, std::vector<std::uint8_t>& adj) {
  adj.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) fill_row_upper(prob, n, seed, i, adj);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      adj[static_cast<std::size_t>(j) * n + i] = adj[static_cast<std::size_t>(i) * n + j];
}

void adjacency_fill_omp(const std::vector<double>& prob, int n,
                        std::uint64_t seed, std::vector<std::uint8_t>& adj) {
  adj.assign(static_cast<std::size_t>(n) * n, 0);
#pragma omp parallel for schedule(static) num_threads(par::threads())
  for (int i = 0; i < n; ++i) fill_row_upper(prob, n, seed, i, adj);
#pragma omp parallel for schedule(static) num_threads(par::threads())
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i)
      adj[static_cast<std::size_t>(j) * n + i] = adj[static_cast<std::size_t>(i) * n + j];
}

void adjacency_fill(const std::vector<double>& prob, int n, std::uint64_t seed,
                    std::vector<std::uint8_t>& adj) {
  if (par::threads() > 1) adjacency_fill_omp(prob, n, seed, adj);
  else adjacency_fill_serial(prob, n, seed, adj);
}

std::vector<double> jrate_scan_serial(const ReferenceGraphon& r, double beta,
                                      const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k)
    out[k] = degree_rate_fast(r, solve_tilt(r, xs[k], beta));
  return out;
}

std::vector<double> jrate_scan_omp(const ReferenceGraphon& r, double beta,
                                   const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  const std::int64_t m = static_cast<std::int64_t>(xs.size());
  bool failed = false;  // exceptions must not unwind through the omp region
#pragma omp parallel for schedule(dynamic) num_threads(par::threads())
  for (std::int64_t k = 0; k < m; ++k) {
    try {
      out[k] = degree_rate_fast(r, solve_tilt(r, xs[k], beta));
    } catch (...) {
#pragma omp atomic write
      failed = true;
    }
  }
  if (failed) throw std::runtime_error("jrate_scan: tilt solve failed on the grid");
  return out;
}

std::vector<double> jrate_scan(const ReferenceGraphon& r, double beta,
                               const std::vector<double>& xs) {
  return par::threads() > 1 ? jrate_scan_omp(r, beta, xs)
                            : jrate_scan_serial(r, beta, xs);
}

namespace {

inline int tilted_degree_draw(const std::vector<double>& q, std::uint64_t ss) {
  int d = 0;
  for (std::size_t j = 0; j < q.size(); ++j)
    if (rng::uniform01(ss, 0, j) < q[j]) ++d;
  return d;
}

}  // namespace

void tilted_degrees_serial(const std::vector<double>& q, long samples,
                           std::uint64_t seed, std::vector<int>& degrees) {
  degrees.resize(samples);
  for (long s = 0; s < samples; ++s)
    degrees[s] = tilted_degree_draw(q, rng::substream(seed, rng::kTiltStream, s));
}

void tilted_degrees_omp(const std::vector<double>& q, long samples,
                        std::uint64_t seed, std::vector<int>& degrees) {
  degrees.resize(samples);
#pragma omp parallel for schedule(static) num_threads(par::threads())
  for (long s = 0; s < samples; ++s)
    degrees[s] = tilted_degree_draw(q, rng::substream(seed, rng::kTiltStream, s));
}

void tilted_degrees(const std::vector<double>& q, long samples,
                    std::uint64_t seed, std::vector<int>& degrees) {
  if (par::threads() > 1) tilted_degrees_omp(q, samples, seed, degrees);
  else tilted_degrees_serial(q, samples, seed, degrees);
}

}  // namespace gldp::kernels
