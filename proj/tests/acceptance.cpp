// Acceptance gate: one line per criterion, [PASS]/[FAIL] plus a pinned
// tolerance check and a wall-clock budget.  Exits nonzero if anything fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "gldp/cut.hpp"
#include "gldp/degree.hpp"
#include "gldp/entropy.hpp"
#include "gldp/jacobi.hpp"
#include "gldp/mc.hpp"
#include "gldp/rate_down.hpp"
#include "gldp/rate_up.hpp"
#include "gldp/reference.hpp"
#include "gldp/rng.hpp"
#include "gldp/spectral.hpp"

using namespace gldp;

namespace {

int g_failures = 0;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

void report(int id, const char* name, bool ok, double budget_s, double secs,
            const std::string& detail) {
  const bool in_budget = secs <= budget_s;
  const bool pass = ok && in_budget;
  if (!pass) ++g_failures;
  std::printf("[%s] %d %s (%.1f s) %s%s\n", pass ? "PASS" : "FAIL", id, name,
              secs, detail.c_str(),
              in_budget ? "" : " [over budget]");
  std::fflush(stdout);
}

AdjacencyMatrix random_graph(int n, double p, std::uint64_t seed) {
  std::vector<std::uint8_t> a(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng::edge_uniform(seed, i, j) < p) a[i * n + j] = a[j * n + i] = 1;
  return AdjacencyMatrix(n, std::move(a));
}

AdjacencyMatrix star_graph(int n) {
  std::vector<std::uint8_t> a(static_cast<std::size_t>(n) * n, 0);
  for (int j = 1; j < n; ++j) a[j] = a[j * n] = 1;
  return AdjacencyMatrix(n, std::move(a));
}

double binom_tail(int n, double p, int kmin) {
  double s = 0.0;
  for (int k = kmin; k <= n; ++k)
    s += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                  std::lgamma(n - k + 1.0) + k * std::log(p) +
                  (n - k) * std::log1p(-p));
  return s;
}

// ---------------------------------------------------------------- criteria

// Finite Laplacian spectra match the empirical-graphon operator norm exactly.
void criterion_1() {
  const double t0 = now_seconds();
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const int n = 2 + static_cast<int>(rng::at(101, s, 0) % 11);
    const double p = 0.15 + 0.7 * rng::uniform01(101, s, 1);
    const AdjacencyMatrix g = random_graph(n, p, 5000 + s);
    const double dev = std::fabs(matrix_laplacian_norm(g) -
                                 laplacian_norm(empirical_graphon(g)));
    if (dev > worst) worst = dev;
  }
  report(1, "finite norm equals empirical-graphon norm", worst <= 1e-10, 5.0,
         now_seconds() - t0, "max dev " + num(worst) + " (tol 1e-10)");
}

// Stars: norm pinned at 1 while the cut distance to zero vanishes.
void criterion_2() {
  const double t0 = now_seconds();
  double worst_norm = 0.0, worst_cut = 0.0;
  bool monotone = true;
  double prev = 2.0;
  for (int n = 3; n <= 64; ++n) {
    const BlockGraphon h = empirical_graphon(star_graph(n));
    worst_norm = std::max(worst_norm, std::fabs(laplacian_norm(h) - 1.0));
    const double d = cut_distance(h, BlockGraphon::zero(n));
    worst_cut = std::max(worst_cut, std::fabs(d - 2.0 * (n - 1) / (n * double(n))));
    if (d >= prev) monotone = false;
    prev = d;
  }
  const bool ok = worst_norm <= 1e-12 && worst_cut <= 1e-9 && monotone;
  report(2, "star sequence: norm 1, cut distance to zero", ok, 5.0,
         now_seconds() - t0,
         "norm dev " + num(worst_norm) + ", cut dev " + num(worst_cut) +
             (monotone ? ", monotone" : ", NOT monotone"));
}

// Homogeneous upward rate collapses to the binomial relative entropy.
void criterion_3() {
  const double t0 = now_seconds();
  ReferenceGraphon half = ReferenceGraphon::constant(0.5);
  double worst = 0.0;
  for (double beta : {0.55, 0.6, 0.7, 0.8})
    worst = std::max(worst, std::fabs(psi_hat(half, beta).value -
                                      bernoulli_relative_entropy(beta, 0.5)));
  report(3, "upward rate matches relative entropy (p = 1/2)", worst <= 1e-8,
         1.0, now_seconds() - t0, "max dev " + num(worst) + " (tol 1e-8)");
}

// Quadratic growth at the threshold with the predicted curvature constant.
void criterion_4() {
  const double t0 = now_seconds();
  const double delta = 1e-3;
  bool ok = true;
  std::string detail;
  for (double p : {0.3, 0.5}) {
    const double ratio =
        psi_hat(ReferenceGraphon::constant(p), p + delta).value / (delta * delta);
    const double target = 1.0 / (2 * p * (1 - p));
    const double rel = std::fabs(ratio / target - 1.0);
    ok = ok && rel <= 0.05;
    detail += "p=" + num(p) + " rel " + num(rel) + "; ";
  }
  ReferenceGraphon r1 = ReferenceGraphon::rank1({0.3, 0.4});
  const double k_hat = curvature(r1).k_hat;
  const double k_oracle = 150.0 / 66.29;  // 1 / (2 v(1)), v(1) = 0.35 - 0.49*79/300
  ok = ok && std::fabs(k_hat / k_oracle - 1.0) <= 1e-6;
  const double r_rel =
      std::fabs(psi_hat(r1, 0.35 + delta).value / (delta * delta) / k_hat - 1.0);
  ok = ok && r_rel <= 0.08;
  detail += "rank1 rel " + num(r_rel);
  report(4, "threshold curvature K-hat", ok, 10.0, now_seconds() - t0, detail);
}

// Homogeneous downward rate: bounds collapse and the solver lands on them.
void criterion_5() {
  const double t0 = now_seconds();
  ReferenceGraphon half = ReferenceGraphon::constant(0.5);
  SolveOptions opts;
  opts.n_blocks = 32;
  opts.restarts = 2;
  bool ok = true;
  double worst_bound = 0.0, worst_rel = 0.0, worst_gap = 0.0;
  for (double beta : {0.2, 0.3, 0.4}) {
    const double exact = bernoulli_relative_entropy(beta, 0.5);
    const double lb = psi_lower_bound(half, beta);
    const double ub = psi_upper_bound(half, beta, opts.n_blocks).first;
    worst_bound = std::max({worst_bound, std::fabs(lb - exact),
                            std::fabs(ub - exact)});
    const DownwardSolution sol = solve_psi(half, beta, opts);
    worst_rel = std::max(worst_rel, std::fabs(sol.value / exact - 1.0));
    worst_gap = std::max(worst_gap, sol.feasibility_gap);
  }
  ok = worst_bound <= 1e-8 && worst_rel <= 0.05 && worst_gap <= 1e-8;
  report(5, "downward solver on the homogeneous family", ok, 120.0,
         now_seconds() - t0,
         "bound dev " + num(worst_bound) + ", solver rel " + num(worst_rel) +
             ", norm gap " + num(worst_gap));
}

// Endpoint identities of the downward rate.
void criterion_6() {
  const double t0 = now_seconds();
  ReferenceGraphon half = ReferenceGraphon::constant(0.5);
  ReferenceGraphon r1 = ReferenceGraphon::rank1({0.3, 0.4});
  const double log2 = std::log(2.0);
  const double a = std::fabs(solve_psi(half, 0.0).value - log2);
  const double b = std::fabs(psi_lower_bound(half, 0.0) - log2);
  const double c = std::fabs(solve_psi(half, 0.5).value);
  const double d = std::fabs(solve_psi(r1, 0.35).value);
  const bool ok = a <= 1e-8 && b <= 1e-8 && c <= 1e-8 && d <= 1e-8;
  report(6, "endpoints: psi(0) = C_r0, psi(C_r) = 0", ok, 5.0,
         now_seconds() - t0,
         "devs " + num(a) + ", " + num(b) + ", " + num(c) + ", " + num(d));
}

// Near-threshold sandwich: psi against the quadratic scaling integral.
void criterion_7() {
  const double t0 = now_seconds();
  ReferenceGraphon r1 = ReferenceGraphon::rank1({0.3, 0.4});
  SolveOptions opts;
  opts.n_blocks = 64;
  opts.restarts = 2;
  bool ok = true;
  std::string detail;
  for (double beta : {0.3, 0.32, 0.34}) {
    const double scaling = scaling_integral(r1, beta);
    const DownwardSolution sol = solve_psi(r1, beta, opts);
    const double ratio = sol.value / scaling;
    ok = ok && ratio >= 0.45 && ratio <= 2.2;
    detail += "beta " + num(beta) + " ratio " + num(ratio) + "; ";
  }
  report(7, "downward scaling window on the smooth family", ok, 300.0,
         now_seconds() - t0, detail + "window [0.45, 2.2]");
}

// Importance-sampled degree tail at n = 200 against the exact binomial and
// the analytic rate.
void criterion_8() {
  const double t0 = now_seconds();
  ReferenceGraphon half = ReferenceGraphon::constant(0.5);
  const int n = 200;
  const mc::TiltedTail t = mc::tail_prob_tilted(half, n, 0.6, 100000, 2024);

  const double exact = binom_tail(n - 1, 0.5, 120);
  const double phat = std::exp(t.single_vertex.log_prob);
  const double sigma = std::max(t.single_vertex.std_err, 1e-12);
  const bool sv_ok = std::fabs(phat - exact) <= 3 * sigma;

  const double psi = 0.020135513550688863;  // R(0.6 | 0.5)
  const double lo = psi - std::log(double(n)) / n - 0.01;
  const double hi = psi + 0.01;
  const double rate = t.max_degree.rate_estimate;
  const bool rate_ok = rate >= lo && rate <= hi;

  report(8, "tilted sampling hits the binomial tail and the rate", sv_ok && rate_ok && t.reliable,
         120.0, now_seconds() - t0,
         "single-vertex dev " + num(std::fabs(phat - exact)) + " vs 3 sigma " +
             num(3 * sigma) + ", max-degree rate " + num(rate) + " in [" +
             num(lo) + ", " + num(hi) + "], ess " + num(t.ess));
}

// Structural checks across many draws: interlacing, concentration, positive
// association.
void criterion_9() {
  const double t0 = now_seconds();
  ReferenceGraphon half = ReferenceGraphon::constant(0.5);
  ReferenceGraphon r1 = ReferenceGraphon::rank1({0.3, 0.4});
  ReferenceGraphon rg =
      ReferenceGraphon::grid(BlockGraphon(2, {0.2, 0.6, 0.6, 0.8}));

  long weyl_ok = 0, weyl_total = 0;
  struct Setup {
    const ReferenceGraphon* r;
    int n;
    long m;
  };
  const Setup setups[] = {{&half, 20, 400}, {&r1, 24, 300}, {&rg, 30, 300}};
  for (const Setup& s : setups) {
    const BlockGraphon kernel = block_average(*s.r, s.n);
    for (long k = 0; k < s.m; ++k, ++weyl_total)
      if (mc::weyl_check(mc::sample_graph(kernel, s.n, mc::sample_seed(13, weyl_total))).ok)
        ++weyl_ok;
  }
  const bool weyl_all = weyl_ok == weyl_total;

  const mc::HoeffdingCheck h =
      mc::hoeffding_check(block_average(half, 100), 100, 0.2, 2000, 31);
  const mc::FkgCheck f = mc::fkg_check(block_average(half, 60), 60, 0.55, 2000, 37);

  report(9, "interlacing, concentration, and association checks",
         weyl_all && h.ok && f.ok, 180.0, now_seconds() - t0,
         "weyl " + std::to_string(weyl_ok) + "/" + std::to_string(weyl_total) +
             ", hoeffding freq " + num(h.empirical_freq) + " vs bound " +
             num(h.bound) + ", fkg lhs " + num(f.lhs_est) + " rhs " +
             num(f.rhs_est));
}

// Adjacency edge of the spectrum: the mean |lambda_min(A)|/N must shrink
// along N in {50, 100, 200} and drop below 0.05 by N = 200.
void criterion_10() {
  const double t0 = now_seconds();
  const BlockGraphon half = BlockGraphon::constant(2, 0.5);
  std::vector<double> means;
  for (int n : {50, 100, 200}) {
    double acc = 0.0;
    const int m = 40;
    for (int s = 0; s < m; ++s) {
      const mc::GraphSample g =
          mc::sample_graph(half, n, mc::sample_seed(19 + n, s));
      std::vector<double> a(static_cast<std::size_t>(n) * n);
      for (std::size_t k = 0; k < a.size(); ++k) a[k] = g.adjacency.a[k];
      acc += std::fabs(sym_eigenvalues(std::move(a), n).front()) / n;
    }
    means.push_back(acc / m);
  }
  const bool decreasing = means[0] > means[1] && means[1] > means[2];
  const bool small = means[2] < 0.05;
  report(10, "adjacency floor decays and is below 0.05 by N = 200",
         decreasing && small, 300.0, now_seconds() - t0,
         "means " + num(means[0]) + ", " + num(means[1]) + ", " +
             num(means[2]) + (decreasing ? " (decreasing)" : " (NOT decreasing)") +
             (small ? "" : "; 0.05 threshold not met"));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
