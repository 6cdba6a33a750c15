#include "gldp/rate_down.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gldp/degree.hpp"
#include "gldp/detail/scan.hpp"
#include "gldp/entropy.hpp"
#include "gldp/jacobi.hpp"
#include "gldp/par.hpp"
#include "gldp/quad.hpp"
#include "gldp/rng.hpp"
#include "gldp/spectral.hpp"
#include "gldp/tilt.hpp"

namespace gldp {

double ExceedanceSet::measure() const {
  double m = 0.0;
  for (const auto& [a, b] : intervals) m += b - a;
  return m;
}

ExceedanceSet exceedance_set(const ReferenceGraphon& r, double beta) {
  ExceedanceSet s;
  s.intervals = detail::indicator_intervals(
      detail::scan_grid(r, 1025),
      [&](double x) { return degree_eval(r, x) >= beta; });
  return s;
}

double c_r0(const ReferenceGraphon& r, double tol) {
  if (!(r.upper() < 1.0))
    throw std::domain_error("c_r0: reference must be bounded away from 1");
  switch (r.family()) {
    case Family::Constant:
      return -std::log1p(-r.constant_p());
    case Family::Grid: {
      const BlockGraphon& g = r.grid_values();
      const int n = g.n_blocks();
      double acc = 0.0;
      for (const double v : g.values()) acc -= std::log1p(-v);
      return acc / (static_cast<double>(n) * n);
    }
    default: {
      auto outer = [&](double x) {
        return r.mean_dy(x, [](double v) { return -std::log1p(-v); }, 0.1 * tol);
      };
      const std::vector<double>& bp = r.breakpoints();
      if (bp.empty()) return quad::integrate(outer, 0.0, 1.0, tol);
      std::vector<std::pair<double, double>> iv;
      double a = 0.0;
      for (double b : bp) {
        iv.emplace_back(a, b);
        a = b;
      }
      iv.emplace_back(a, 1.0);
      return quad::integrate_intervals(outer, iv, tol);
    }
  }
}

namespace {

constexpr double kBetaSlack = 1e-12;

void check_downward_beta(double beta, double sup) {
  if (beta < -kBetaSlack || beta > sup + kBetaSlack)
    throw std::domain_error("downward rate: beta " + std::to_string(beta) +
                            " outside [0, C_r] with C_r = " + std::to_string(sup));
}

// Barycentric Chebyshev-Lobatto interpolant of theta(x) on one S-interval.
struct ThetaInterp {
  double lo = 0.0, hi = 0.0;
  std::vector<double> nodes;
  std::vector<double> vals;

  double operator()(double x) const {
    if (vals.size() == 1) return vals[0];
    const int m = static_cast<int>(vals.size()) - 1;
    double num = 0.0, den = 0.0;
    for (int k = 0; k <= m; ++k) {
      double w = (k == 0 || k == m) ? 0.5 : 1.0;
      if (k & 1) w = -w;
      const double diff = x - nodes[k];
      if (std::fabs(diff) < 1e-13) return vals[k];
      num += w * vals[k] / diff;
      den += w / diff;
    }
    return num / den;
  }
};

ThetaInterp build_theta(const ReferenceGraphon& r, double beta, double lo,
                        double hi) {
  ThetaInterp t;
  t.lo = lo;
  t.hi = hi;
  if (hi - lo < 1e-9) {
    t.nodes = {0.5 * (lo + hi)};
    t.vals = {solve_tilt(r, 0.5 * (lo + hi), beta).theta};
    return t;
  }
  const int m = 64;
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  t.nodes.resize(m + 1);
  t.vals.resize(m + 1);
  for (int k = 0; k <= m; ++k) {
    const double x = mid + half * std::cos(M_PI * k / m);
    t.nodes[k] = x;
    t.vals[k] = solve_tilt(r, x, beta).theta;
  }
  return t;
}

const ThetaInterp* find_interval(const std::vector<ThetaInterp>& th, double x) {
  for (const auto& t : th)
    if (x >= t.lo - 1e-13 && x <= t.hi + 1e-13) return &t;
  return nullptr;
}

// Grid-family candidate on the reference's own grid.
BlockGraphon candidate_grid_native(const ReferenceGraphon& r, double beta) {
  const BlockGraphon& g = r.grid_values();
  const int n = g.n_blocks();
  std::vector<char> in_s(n);
  std::vector<double> theta(n, 0.0);
  for (int i = 0; i < n; ++i) {
    in_s[i] = g.block_degree(i) >= beta ? 1 : 0;
    if (in_s[i]) theta[i] = solve_tilt(r, (i + 0.5) / n, beta).theta;
  }
  std::vector<double> v(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double rv = g.value(i, j);
      double hv;
      if (in_s[i] && in_s[j])
        hv = std::min(sigmoid(theta[i] + logit(rv)), sigmoid(theta[j] + logit(rv)));
      else if (in_s[i])
        hv = sigmoid(theta[i] + logit(rv));
      else if (in_s[j])
        hv = sigmoid(theta[j] + logit(rv));
      else
        hv = rv;
      v[static_cast<std::size_t>(i) * n + j] = hv;
    }
  return BlockGraphon(n, std::move(v));
}

BlockGraphon candidate_continuous(const ReferenceGraphon& r, double beta, int n,
                                  const ExceedanceSet& s) {
  std::vector<ThetaInterp> th;
  th.reserve(s.intervals.size());
  for (const auto& [lo, hi] : s.intervals) th.push_back(build_theta(r, beta, lo, hi));

  // Axis cut points inside one grid cell: S boundaries and family breaks.
  auto cell_cuts = [&](int i) {
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    std::vector<double> c{lo};
    for (const auto& [a, b] : s.intervals) {
      if (a > lo && a < hi) c.push_back(a);
      if (b > lo && b < hi) c.push_back(b);
    }
    for (double bp : r.breakpoints())
      if (bp > lo && bp < hi) c.push_back(bp);
    c.push_back(hi);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
  };

  auto in_S = [&](double x) { return find_interval(th, x) != nullptr; };

  std::vector<double> v(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const std::vector<double> cx = cell_cuts(i);
    for (int j = 0; j <= i; ++j) {
      const std::vector<double> cy = cell_cuts(j);
      double acc = 0.0;
      for (std::size_t a = 0; a + 1 < cx.size(); ++a) {
        const double xa = cx[a], xb = cx[a + 1];
        const bool sx = in_S(0.5 * (xa + xb));
        const ThetaInterp* tx = sx ? find_interval(th, 0.5 * (xa + xb)) : nullptr;
        for (std::size_t b = 0; b + 1 < cy.size(); ++b) {
          const double ya = cy[b], yb = cy[b + 1];
          const bool sy = in_S(0.5 * (ya + yb));
          const ThetaInterp* ty = sy ? find_interval(th, 0.5 * (ya + yb)) : nullptr;
          const double area = (xb - xa) * (yb - ya);
          double mean;
          if (!sx && !sy) {
            mean = rect_mean(r, xa, xb, ya, yb);
          } else {
            auto hval = [&](double x, double y) {
              const double l = logit(r(x, y));
              if (sx && sy)
                return std::min(sigmoid((*tx)(x) + l), sigmoid((*ty)(y) + l));
              if (sx) return sigmoid((*tx)(x) + l);
              return sigmoid((*ty)(y) + l);
            };
            const double tol = std::max(1e-10 * area, 1e-15);
            mean = quad::integrate2d(hval, xa, xb, ya, yb, tol) / area;
          }
          acc += mean * area;
        }
      }
      const double val = acc * (static_cast<double>(n) * n);
      v[static_cast<std::size_t>(i) * n + j] = val;
      v[static_cast<std::size_t>(j) * n + i] = val;
    }
  }
  for (double& x : v) x = std::clamp(x, 0.0, 1.0);
  return BlockGraphon(n, std::move(v));
}

}  // namespace

double psi_lower_bound(const ReferenceGraphon& r, double beta) {
  const double sup = degree_sup(r);
  check_downward_beta(beta, sup);
  if (beta <= kBetaSlack) return c_r0(r);
  const ExceedanceSet s = exceedance_set(r, beta);
  if (s.intervals.empty()) return 0.0;
  return quad::integrate_intervals(
      [&](double x) { return degree_rate_fast(r, solve_tilt(r, x, beta)); },
      s.intervals, 1e-9);
}

BlockGraphon candidate_graphon(const ReferenceGraphon& r, double beta, int n_blocks) {
  const double sup = degree_sup(r);
  check_downward_beta(beta, sup);
  if (n_blocks <= 0)
    throw std::invalid_argument("candidate_graphon: n_blocks must be positive");
  if (beta <= kBetaSlack) return BlockGraphon::zero(n_blocks);

  if (r.family() == Family::Grid) {
    const BlockGraphon native = candidate_grid_native(r, beta);
    if (native.n_blocks() == n_blocks) return native;
    return block_average(ReferenceGraphon::grid(native), n_blocks);
  }
  const ExceedanceSet s = exceedance_set(r, beta);
  if (s.intervals.empty()) return block_average(r, n_blocks);
  return candidate_continuous(r, beta, n_blocks, s);
}

std::pair<double, bool> psi_upper_bound(const ReferenceGraphon& r, double beta,
                                        int n_blocks) {
  const BlockGraphon h = candidate_graphon(r, beta, n_blocks);
  const double value = rate_I(h, r);
  const bool feasible = laplacian_norm(h) <= beta + 1e-9;
  return {value, feasible};
}

double scaling_integral(const ReferenceGraphon& r, double beta) {
  const double sup = degree_sup(r);
  check_downward_beta(beta, sup);
  const ExceedanceSet s = exceedance_set(r, beta);
  if (s.intervals.empty()) return 0.0;
  return quad::integrate_intervals(
      [&](double x) {
        const double dev = degree_eval(r, x) - beta;
        return dev * dev / degree_variance(r, x);
      },
      s.intervals, 1e-12);
}

// ---------------------------------------------------------------------------
// Penalized descent solver.

namespace {

// lambda_max of K via power iteration on K + I, warm-started from u.
double top_eig(const std::vector<double>& k, int n, std::vector<double>& u,
               std::vector<double>& w) {
  double nrm = 0.0;
  for (double x : u) nrm += x * x;
  if (nrm < 1e-300) {
    u.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
  }
  double ray = 0.0;
  for (int it = 0; it < 500; ++it) {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += k[static_cast<std::size_t>(i) * n + j] * u[j];
      w[i] = s;
    }
    ray = 0.0;
    for (int i = 0; i < n; ++i) ray += u[i] * w[i];
    double res = 0.0;
    for (int i = 0; i < n; ++i) res = std::max(res, std::fabs(w[i] - ray * u[i]));
    if (res <= 1e-10 * std::max(1.0, std::fabs(ray))) break;
    double wn = 0.0;
    for (int i = 0; i < n; ++i) {
      w[i] += u[i];
      wn += w[i] * w[i];
    }
    wn = std::sqrt(wn);
    if (wn < 1e-300) break;
    for (int i = 0; i < n; ++i) u[i] = w[i] / wn;
  }
  return ray;
}

struct OptScratch {
  int n = 0;
  std::vector<double> h, k, d, u, w;

  explicit OptScratch(int n_)
      : n(n_),
        h(static_cast<std::size_t>(n_) * n_),
        k(static_cast<std::size_t>(n_) * n_),
        d(n_),
        u(n_, 0.0),
        w(n_) {}
};

// Pair index layout: p <= q row-major upper triangle.
inline std::size_t pair_count(int n) {
  return static_cast<std::size_t>(n) * (n + 1) / 2;
}

void unpack(const std::vector<double>& z, OptScratch& s) {
  const int n = s.n;
  std::size_t t = 0;
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q, ++t) {
      const double hv = sigmoid(z[t]);
      s.h[static_cast<std::size_t>(p) * n + q] = hv;
      s.h[static_cast<std::size_t>(q) * n + p] = hv;
    }
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += s.h[static_cast<std::size_t>(i) * n + j];
    s.d[i] = acc / n;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s.k[static_cast<std::size_t>(i) * n + j] =
          (i == j ? s.d[i] : 0.0) - s.h[static_cast<std::size_t>(i) * n + j] / n;
}

// Smoothed norm surrogate: softmax_tau over (lambda_max(K), d_1..d_n).
double smooth_norm(const OptScratch& s, double lambda, double tau,
                   double* s_lambda, std::vector<double>* s_deg) {
  const int n = s.n;
  double m = lambda;
  for (int i = 0; i < n; ++i) m = std::max(m, s.d[i]);
  const double e_lambda = std::exp((lambda - m) / tau);
  double acc = e_lambda;
  std::vector<double> ed(s_deg ? n : 0);
  for (int i = 0; i < n; ++i) {
    const double e = std::exp((s.d[i] - m) / tau);
    if (s_deg) ed[i] = e;
    acc += e;
  }
  if (s_lambda) *s_lambda = e_lambda / acc;
  if (s_deg) {
    s_deg->resize(n);
    for (int i = 0; i < n; ++i) (*s_deg)[i] = ed[i] / acc;
  }
  return m + tau * std::log(acc);
}

struct EvalResult {
  double objective = 0.0;
  double rate = 0.0;
  double lambda = 0.0;
};

EvalResult eval_objective(const std::vector<double>& z, OptScratch& s,
                          const BlockLogMeans& means, double beta, double mu,
                          double tau, std::vector<double>* grad) {
  const int n = s.n;
  unpack(z, s);
  EvalResult res;
  res.rate = rate_I_with_means(s.h, means);
  res.lambda = top_eig(s.k, n, s.u, s.w);

  double s_lambda = 0.0;
  std::vector<double> s_deg;
  const double nsmooth =
      smooth_norm(s, res.lambda, tau, grad ? &s_lambda : nullptr,
                  grad ? &s_deg : nullptr);
  const double viol = nsmooth - beta;
  res.objective = res.rate + (viol > 0.0 ? mu * viol * viol : 0.0);

  if (grad) {
    grad->assign(pair_count(n), 0.0);
    const double pull = viol > 0.0 ? 2.0 * mu * viol : 0.0;
    const double inv_nn = 1.0 / (static_cast<double>(n) * n);
    std::size_t t = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p; q < n; ++q, ++t) {
        const std::size_t cell = static_cast<std::size_t>(p) * n + q;
        const double hv = s.h[cell];
        const double sigp = hv * (1.0 - hv);
        const double wpair = p == q ? 1.0 : 2.0;
        const double g_rate =
            wpair * (z[t] - means.log_r[cell] + means.log_1mr[cell]) * inv_nn;
        double g_norm = 0.0;
        if (pull > 0.0) {
          if (p == q) {
            g_norm = s_deg[p] / n;
          } else {
            const double du = s.u[p] - s.u[q];
            g_norm = (s_lambda * du * du + s_deg[p] + s_deg[q]) / n;
          }
        }
        (*grad)[t] = (g_rate + pull * g_norm) * sigp;
      }
  }
  return res;
}

double exact_norm(const OptScratch& s) {
  const int n = s.n;
  std::vector<double> k = s.k;
  const double lmax = sym_eigenvalues(std::move(k), n).back();
  double dmax = 0.0;
  for (double d : s.d) dmax = std::max(dmax, d);
  return std::max(lmax, dmax);
}

struct RestartOutcome {
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> h;
  int iters = 0;
  bool converged = false;
  double pre_gap = std::numeric_limits<double>::infinity();
  bool failed = false;
};

RestartOutcome run_restart(const BlockLogMeans& means, double beta,
                           const SolveOptions& o,
                           const std::vector<double>& init_h) {
  const int n = means.n;
  OptScratch s(n);
  std::vector<double> z(pair_count(n));
  {
    std::size_t t = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p; q < n; ++q, ++t)
        z[t] = logit(std::clamp(init_h[static_cast<std::size_t>(p) * n + q],
                                1e-7, 1.0 - 1e-7));
  }

  // Projected value of the current iterate: scale onto the feasible set by
  // the exact norm (the norm is positively homogeneous) and re-evaluate.
  auto projected = [&](double* gap_out) {
    unpack(z, s);
    const double nrm = exact_norm(s);
    if (gap_out) *gap_out = std::max(0.0, nrm - beta);
    if (nrm <= beta) return std::make_pair(rate_I_with_means(s.h, means), s.h);
    const double c = beta / nrm;
    std::vector<double> hs(s.h.size());
    for (std::size_t i = 0; i < hs.size(); ++i) hs[i] = s.h[i] * c;
    return std::make_pair(rate_I_with_means(hs, means), hs);
  };

  RestartOutcome out;
  {
    double gap0 = 0.0;
    auto [v0, h0] = projected(&gap0);
    out.value = v0;
    out.h = h0;
    out.pre_gap = gap0;
  }

  double mu = o.penalty_init;
  double tau = o.softmax_tau;
  std::vector<double> grad, ztrial;
  double prev_val = std::numeric_limits<double>::infinity();

  for (int round = 0; round < o.max_outer_rounds; ++round) {
    EvalResult cur = eval_objective(z, s, means, beta, mu, tau, &grad);
    double eta = 1.0;
    int it = 0;
    for (; it < o.max_inner_iters; ++it) {
      double gmax = 0.0, g2 = 0.0;
      for (double g : grad) {
        gmax = std::max(gmax, std::fabs(g));
        g2 += g * g;
      }
      if (gmax <= 1e-9 * std::max(1.0, std::fabs(cur.objective))) break;

      bool accepted = false;
      while (eta >= 1e-16) {
        ztrial.resize(z.size());
        for (std::size_t k2 = 0; k2 < z.size(); ++k2)
          ztrial[k2] = z[k2] - eta * grad[k2];
        const EvalResult trial =
            eval_objective(ztrial, s, means, beta, mu, tau, nullptr);
        if (trial.objective <= cur.objective - 1e-4 * eta * g2) {
          z.swap(ztrial);
          cur = eval_objective(z, s, means, beta, mu, tau, &grad);
          eta = std::min(eta * 1.5, 1e3);
          accepted = true;
          break;
        }
        eta *= 0.5;
      }
      if (!accepted) break;
    }
    out.iters += it;

    double gap = 0.0;
    auto [val, hproj] = projected(&gap);
    if (val < out.value) {
      out.value = val;
      out.h = hproj;
    }
    out.pre_gap = gap;
    const bool settled =
        std::fabs(val - prev_val) <= 1e-10 * std::max(1.0, std::fabs(val)) &&
        gap <= 1e-6;
    if (settled) {
      out.converged = true;
      break;
    }
    prev_val = val;
    mu *= o.penalty_factor;
    tau = std::max(tau / 8.0, 1e-7);
  }
  return out;
}

}  // namespace

DownwardSolution solve_psi(const ReferenceGraphon& r, double beta,
                           const SolveOptions& opts) {
  const double sup = degree_sup(r);
  check_downward_beta(beta, sup);
  const int n = opts.n_blocks;
  if (n <= 1) throw std::invalid_argument("solve_psi: n_blocks must be > 1");

  DownwardSolution sol;
  sol.beta = beta;

  if (beta <= kBetaSlack) {
    // Only the empty graphon has norm 0.
    sol.value = c_r0(r);
    sol.minimiser = BlockGraphon::zero(n);
    sol.lower_bound = sol.upper_bound = sol.value;
    return sol;
  }
  if (beta >= sup - kBetaSlack) {
    // The reference itself is feasible: the rate vanishes.  The returned
    // grid is the block representative of the continuum minimiser r.
    sol.value = 0.0;
    sol.minimiser = r.family() == Family::Grid && r.grid_values().n_blocks() == n
                        ? r.grid_values()
                        : block_average(r, n);
    const double nrm = laplacian_norm(sol.minimiser);
    sol.feasibility_gap = std::max(0.0, nrm - beta);
    sol.lower_bound = sol.upper_bound = 0.0;
    return sol;
  }

  const BlockLogMeans means = block_log_means(r, n);
  sol.lower_bound = psi_lower_bound(r, beta);
  const BlockGraphon cand = candidate_graphon(r, beta, n);
  sol.upper_bound = rate_I_with_means(cand.values(), means);

  // Restart initializations: the candidate, the flat graphon at level beta,
  // then noisy logit-space perturbations of the candidate.
  std::vector<std::vector<double>> inits;
  inits.push_back(cand.values());
  inits.push_back(std::vector<double>(cand.values().size(), beta));
  for (int rs = 2; rs < opts.restarts; ++rs) {
    std::vector<double> h = cand.values();
    const std::uint64_t ss = rng::substream(opts.seed, rng::kOptStream, rs);
    for (std::size_t k = 0; k < h.size(); ++k) {
      const double zc = logit(std::clamp(h[k], 1e-7, 1.0 - 1e-7));
      h[k] = sigmoid(zc + 0.5 * (2.0 * rng::uniform01(ss, 0, k) - 1.0));
    }
    // Keep the perturbation symmetric.
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q)
        h[static_cast<std::size_t>(q) * n + p] = h[static_cast<std::size_t>(p) * n + q];
    inits.push_back(std::move(h));
  }
  const int nrestarts = static_cast<int>(inits.size());

  std::vector<RestartOutcome> outs(nrestarts);
#pragma omp parallel for schedule(dynamic) num_threads(par::threads())
  for (int rs = 0; rs < nrestarts; ++rs) {
    try {
      outs[rs] = run_restart(means, beta, opts, inits[rs]);
    } catch (...) {
      outs[rs].failed = true;
    }
  }
  for (const auto& o : outs)
    if (o.failed) throw std::runtime_error("solve_psi: a restart failed");

  int best = 0;
  for (int rs = 1; rs < nrestarts; ++rs)
    if (outs[rs].value < outs[best].value) best = rs;

  sol.value = outs[best].value;
  sol.minimiser = BlockGraphon(n, outs[best].h);
  sol.iterations = outs[best].iters;
  sol.converged = outs[best].converged;
  sol.feasibility_gap =
      std::max(0.0, laplacian_norm(sol.minimiser) - beta);
  return sol;
}

}  // namespace gldp
