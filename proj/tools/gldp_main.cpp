// Command-line front end: spectra, rate curves, sampling, and Monte Carlo
// experiments over block/reference graphons.  Exit codes: 0 success,
// 1 input error, 2 a statistical check failed.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gldp/cut.hpp"
#include "gldp/degree.hpp"
#include "gldp/io.hpp"
#include "gldp/mc.hpp"
#include "gldp/par.hpp"
#include "gldp/rate_down.hpp"
#include "gldp/rate_up.hpp"
#include "gldp/rng.hpp"
#include "gldp/spectral.hpp"

namespace {

using gldp::BlockGraphon;
using gldp::ReferenceGraphon;
namespace io = gldp::io;
namespace mc = gldp::mc;

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_betas(const std::string& spec) {
  std::vector<double> out;
  try {
    if (spec.find(':') != std::string::npos) {
      // lo:hi:count, endpoints included
      const auto c1 = spec.find(':');
      const auto c2 = spec.find(':', c1 + 1);
      if (c2 == std::string::npos) throw std::invalid_argument("");
      const double lo = std::stod(spec.substr(0, c1));
      const double hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
      const int k = std::stoi(spec.substr(c2 + 1));
      if (k < 1) throw std::invalid_argument("");
      if (k == 1) return {lo};
      for (int i = 0; i < k; ++i)
        out.push_back(lo + (hi - lo) * i / (k - 1));
      return out;
    }
    std::size_t pos = 0;
    while (pos < spec.size()) {
      auto comma = spec.find(',', pos);
      if (comma == std::string::npos) comma = spec.size();
      out.push_back(std::stod(spec.substr(pos, comma - pos)));
      pos = comma + 1;
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("bad beta list '" + spec +
                                "' (use lo:hi:count or comma-separated)");
  }
  if (out.empty()) throw std::invalid_argument("empty beta list");
  return out;
}

std::string out_path(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- spectrum

void run_spectrum(const std::string& edges_file, const std::string& csv_file,
                  const std::string& graphon_file, int blocks,
                  const std::string& out_dir) {
  const int inputs = (!edges_file.empty()) + (!csv_file.empty()) +
                     (!graphon_file.empty());
  if (inputs != 1)
    throw std::invalid_argument(
        "spectrum: give exactly one of --edges, --csv, --graphon");

  BlockGraphon g = BlockGraphon::zero(1);
  if (!graphon_file.empty()) {
    const ReferenceGraphon r = io::reference_from_file(graphon_file);
    g = r.family() == gldp::Family::Grid ? r.grid_values()
                                         : gldp::block_average(r, blocks);
  } else {
    std::ifstream in(edges_file.empty() ? csv_file : edges_file);
    if (!in)
      throw std::runtime_error("cannot open " +
                               (edges_file.empty() ? csv_file : edges_file));
    const gldp::AdjacencyMatrix adj = edges_file.empty()
                                          ? io::read_dense_csv(in)
                                          : io::read_edge_list(in);
    g = gldp::empirical_graphon(adj);
  }

  const gldp::SpectralSummary s = gldp::laplacian_spectrum(g);
  io::write_text(out_path(out_dir, "spectrum.json"), dump_json(io::to_json(s)));
  std::string csv = "index,eigenvalue\n";
  for (std::size_t i = 0; i < s.reduced_eigs.size(); ++i)
    csv += std::to_string(i) + "," + io::format_double(s.reduced_eigs[i]) + "\n";
  io::write_text(out_path(out_dir, "eigenvalues.csv"), csv);
  std::cout << "laplacian_norm " << io::format_double(s.laplacian_norm) << "\n";
}

// ----------------------------------------------------------------- rate-up

void run_rate_up(const std::string& graphon_file, const std::string& betas_spec,
                 int grid_points, const std::string& out_dir) {
  const ReferenceGraphon r = io::reference_from_file(graphon_file);
  const std::vector<double> betas = parse_betas(betas_spec);
  const gldp::RateCurve curve = gldp::psi_hat_curve(r, betas, grid_points);
  io::write_text(out_path(out_dir, "rate_up.csv"), io::rate_curve_csv(curve));
  io::write_text(out_path(out_dir, "scaling_ratio.csv"),
                 io::scaling_ratio_csv(curve));
  nlohmann::json constants = io::to_json(curve.constants);
  if (r.upper() < 1.0) constants["C_r0"] = gldp::c_r0(r);
  io::write_text(out_path(out_dir, "constants.json"), dump_json(constants));
  std::cout << "C_r " << io::format_double(curve.constants.c_r) << "\n";
  for (const auto& p : curve.points)
    std::cout << "psi_hat(" << io::format_double(p.beta) << ") "
              << io::format_double(p.value) << "\n";
}

// --------------------------------------------------------------- rate-down

void run_rate_down(const std::string& graphon_file,
                   const std::string& betas_spec, gldp::SolveOptions opts,
                   const std::string& out_dir) {
  const ReferenceGraphon r = io::reference_from_file(graphon_file);
  const std::vector<double> betas = parse_betas(betas_spec);
  std::vector<io::DownRow> rows;
  int idx = 0;
  for (const double beta : betas) {
    const gldp::DownwardSolution sol = gldp::solve_psi(r, beta, opts);
    io::DownRow row;
    row.beta = beta;
    row.lower = sol.lower_bound;
    row.solver = sol.value;
    row.upper = sol.upper_bound;
    row.scaling = gldp::scaling_integral(r, beta);
    row.feasibility_gap = sol.feasibility_gap;
    row.candidate_feasible =
        gldp::psi_upper_bound(r, beta, opts.n_blocks).second;
    row.iters = sol.iterations;
    rows.push_back(row);

    char name[48];
    std::snprintf(name, sizeof(name), "minimiser_%03d.json", idx++);
    io::write_text(out_path(out_dir, name),
                   dump_json(io::to_json(sol.minimiser)));
    std::cout << "psi(" << io::format_double(beta) << ") "
              << io::format_double(sol.value) << " in ["
              << io::format_double(sol.lower_bound) << ", "
              << io::format_double(sol.upper_bound) << "]\n";
  }
  io::write_text(out_path(out_dir, "rate_down.csv"), io::down_curve_csv(rows));
}

// ------------------------------------------------------------------ sample

void run_sample(const std::string& graphon_file, int n, std::uint64_t seed,
                const std::string& out_dir) {
  if (n < 1) throw std::invalid_argument("sample: need --n >= 1");
  const ReferenceGraphon r = io::reference_from_file(graphon_file);
  const mc::GraphSample smp =
      mc::sample_graph(gldp::block_average(r, n), n, seed);

  std::string edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (smp.adjacency.at(i, j))
        edges += std::to_string(i) + " " + std::to_string(j) + "\n";
  io::write_text(out_path(out_dir, "edges.txt"), edges);

  const mc::DegreeStats stats = mc::degree_stats(smp);
  std::string csv = "vertex,degree\n";
  for (int i = 0; i < n; ++i)
    csv += std::to_string(i) + "," +
           std::to_string(static_cast<long>(std::lround(stats.degrees[i] * n))) +
           "\n";
  io::write_text(out_path(out_dir, "degrees.csv"), csv);

  const mc::WeylCheck w = mc::weyl_check(smp);
  const nlohmann::json j = {{"n", n},
                            {"seed", seed},
                            {"max_degree", stats.max_degree},
                            {"laplacian_norm", w.mid / n},
                            {"weyl_ok", w.ok}};
  io::write_text(out_path(out_dir, "sample.json"), dump_json(j));
  std::cout << "max_degree " << io::format_double(stats.max_degree) << "\n";
}

// --------------------------------------------------------------------- mc

mc::TailEvent parse_event(const std::string& s) {
  if (s == "max_deg_ge") return mc::TailEvent::MaxDegreeGE;
  if (s == "lap_norm_le") return mc::TailEvent::LapNormLE;
  if (s == "lap_norm_ge") return mc::TailEvent::LapNormGE;
  throw std::invalid_argument("unknown tail event: " + s);
}

void run_mc(const std::string& config_file, const std::string& out_dir) {
  const nlohmann::json cfg = nlohmann::json::parse(io::read_text(config_file));
  std::vector<nlohmann::json> experiments;
  if (cfg.contains("experiments"))
    for (const auto& e : cfg.at("experiments")) experiments.push_back(e);
  else
    experiments.push_back(cfg);

  std::string jsonl, summary = io::mc_summary_header();
  std::vector<std::string> failures;

  for (const auto& exp : experiments) {
    const std::string event = exp.at("event").get<std::string>();
    const long samples = exp.at("samples").get<long>();
    if (samples < 1)
      throw std::invalid_argument("mc: samples must be >= 1");
    const std::uint64_t seed = exp.value("seed", 1ULL);
    const ReferenceGraphon r = io::reference_from_json(exp.at("reference"));
    nlohmann::json result = {{"config", exp}};

    if (event == "weyl") {
      const int n = exp.at("n").get<int>();
      const BlockGraphon r_N = gldp::block_average(r, n);
      long ok = 0;
      for (long s = 0; s < samples; ++s)
        if (mc::weyl_check(mc::sample_graph(r_N, n, mc::sample_seed(seed, s))).ok)
          ++ok;
      result["result"] = {{"ok_fraction", static_cast<double>(ok) / samples}};
      if (ok != samples) failures.push_back("weyl");
    } else if (event == "hoeffding") {
      const int n = exp.at("n").get<int>();
      const double t = exp.at("t").get<double>();
      const mc::HoeffdingCheck c =
          mc::hoeffding_check(gldp::block_average(r, n), n, t, samples, seed);
      result["result"] = {{"empirical_freq", c.empirical_freq},
                          {"bound", c.bound},
                          {"ci_width", c.ci_width},
                          {"ok", c.ok}};
      if (!c.ok) failures.push_back("hoeffding");
    } else if (event == "fkg") {
      const int n = exp.at("n").get<int>();
      const double beta = exp.at("beta").get<double>();
      const mc::FkgCheck c =
          mc::fkg_check(gldp::block_average(r, n), n, beta, samples, seed);
      result["result"] = {{"lhs", c.lhs_est},
                          {"rhs", c.rhs_est},
                          {"slack", c.slack},
                          {"ok", c.ok}};
      if (!c.ok) failures.push_back("fkg");
    } else if (event == "norm_convergence") {
      const std::vector<int> grid = exp.at("n_grid").get<std::vector<int>>();
      const mc::NormConvergenceTable t = mc::norm_convergence_check(
          r, grid, static_cast<int>(samples), seed);
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& row : t.rows)
        rows.push_back({{"n", row.n},
                        {"mean_abs_dev", row.mean_abs_dev},
                        {"std_err", row.std_err}});
      result["result"] = {{"target", t.target},
                          {"rows", rows},
                          {"monotone_ok", t.monotone_ok}};
      if (!t.monotone_ok) failures.push_back("norm_convergence");
    } else if (event == "tilted") {
      const int n = exp.at("n").get<int>();
      const double beta = exp.at("beta").get<double>();
      const mc::TiltedTail t = mc::tail_prob_tilted(r, n, beta, samples, seed);
      result["result"] = {{"single_vertex", io::to_json(t.single_vertex)},
                          {"max_degree", io::to_json(t.max_degree)},
                          {"x_star", t.x_star},
                          {"vertex", t.vertex},
                          {"theta", t.theta},
                          {"ess", t.ess},
                          {"reliable", t.reliable}};
      summary += io::mc_summary_row(n, beta, t.max_degree);
    } else {
      const int n = exp.at("n").get<int>();
      const double beta = exp.at("beta").get<double>();
      const mc::TailEstimate e = mc::tail_prob_direct(
          gldp::block_average(r, n), n, parse_event(event), beta, samples, seed);
      result["result"] = io::to_json(e);
      summary += io::mc_summary_row(n, beta, e);
    }
    jsonl += result.dump() + "\n";
  }

  io::write_text(out_path(out_dir, "results.jsonl"), jsonl);
  io::write_text(out_path(out_dir, "summary.csv"), summary);
  if (!failures.empty()) {
    std::string msg = "check failed:";
    for (const auto& f : failures) msg += " " + f;
    throw CheckFailure(msg);
  }
  std::cout << "all checks passed (" << experiments.size() << " experiments)\n";
}

// ---------------------------------------------------------------- scaling

void run_scaling(const std::string& graphon_file, const std::string& betas_spec,
                 int blocks, const std::string& out_dir) {
  const ReferenceGraphon r = io::reference_from_file(graphon_file);
  const std::vector<double> betas = parse_betas(betas_spec);
  std::string csv =
      "beta,scaling_integral,psi_lower,psi_upper,ratio_lower,ratio_upper\n";
  for (const double beta : betas) {
    const double s = gldp::scaling_integral(r, beta);
    const double lo = gldp::psi_lower_bound(r, beta);
    const double up = gldp::psi_upper_bound(r, beta, blocks).first;
    const double rl = s > 0 ? lo / s : 0.0;
    const double ru = s > 0 ? up / s : 0.0;
    csv += io::format_double(beta) + "," + io::format_double(s) + "," +
           io::format_double(lo) + "," + io::format_double(up) + "," +
           io::format_double(rl) + "," + io::format_double(ru) + "\n";
    std::cout << "beta " << io::format_double(beta) << " ratio ["
              << io::format_double(rl) << ", " << io::format_double(ru)
              << "]\n";
  }
  io::write_text(out_path(out_dir, "scaling.csv"), csv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"largest-eigenvalue deviation toolkit for inhomogeneous "
               "random graphs"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (overrides GRAPHON_LDP_THREADS; 0 = auto)");

  std::string edges_file, csv_file, graphon_file, out_dir = ".";
  std::string betas_spec, config_file;
  int blocks = 256, grid_points = 257, n = 0;
  std::uint64_t seed = 1;
  gldp::SolveOptions sopts;

  CLI::App* sp = app.add_subcommand("spectrum",
                                    "Laplacian spectrum of a graph or graphon");
  sp->add_option("--edges", edges_file, "edge list file (u v per line)");
  sp->add_option("--csv", csv_file, "dense 0/1 adjacency CSV");
  sp->add_option("--graphon", graphon_file, "graphon JSON");
  sp->add_option("--blocks", blocks, "resolution for continuous graphons");
  sp->add_option("--out", out_dir, "output directory");

  CLI::App* ru = app.add_subcommand("rate-up", "upward rate curve psi-hat");
  ru->add_option("--graphon", graphon_file, "reference graphon JSON")
      ->required();
  ru->add_option("--betas", betas_spec, "lo:hi:count or comma list")
      ->required();
  ru->add_option("--grid-points", grid_points, "x-scan resolution");
  ru->add_option("--out", out_dir, "output directory");

  CLI::App* rd = app.add_subcommand("rate-down", "downward rate psi with bounds");
  rd->add_option("--graphon", graphon_file, "reference graphon JSON")
      ->required();
  rd->add_option("--betas", betas_spec, "lo:hi:count or comma list")
      ->required();
  rd->add_option("--blocks", sopts.n_blocks, "solver grid size");
  rd->add_option("--restarts", sopts.restarts, "solver restarts");
  rd->add_option("--seed", sopts.seed, "solver seed");
  rd->add_option("--out", out_dir, "output directory");

  CLI::App* sm = app.add_subcommand("sample", "draw one random graph");
  sm->add_option("--graphon", graphon_file, "reference graphon JSON")
      ->required();
  sm->add_option("--n", n, "vertex count")->required();
  sm->add_option("--seed", seed, "sample seed");
  sm->add_option("--out", out_dir, "output directory");

  CLI::App* mcc = app.add_subcommand("mc", "Monte Carlo experiments from JSON");
  mcc->add_option("--config", config_file, "experiment config JSON")
      ->required();
  mcc->add_option("--out", out_dir, "output directory");

  CLI::App* sc = app.add_subcommand("scaling", "downward scaling diagnostics");
  sc->add_option("--graphon", graphon_file, "reference graphon JSON")
      ->required();
  sc->add_option("--betas", betas_spec, "lo:hi:count or comma list")
      ->required();
  sc->add_option("--blocks", blocks, "candidate grid size");
  sc->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (threads > 0) gldp::par::set_threads(threads);

  try {
    if (sp->parsed())
      run_spectrum(edges_file, csv_file, graphon_file, blocks, out_dir);
    else if (ru->parsed())
      run_rate_up(graphon_file, betas_spec, grid_points, out_dir);
    else if (rd->parsed())
      run_rate_down(graphon_file, betas_spec, sopts, out_dir);
    else if (sm->parsed())
      run_sample(graphon_file, n, seed, out_dir);
    else if (mcc->parsed())
      run_mc(config_file, out_dir);
    else if (sc->parsed())
      run_scaling(graphon_file, betas_spec, blocks, out_dir);
  } catch (const CheckFailure& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
