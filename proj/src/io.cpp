#include "gldp/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gldp::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

nlohmann::json to_json(const BlockGraphon& g) {
  const int n = g.n_blocks();
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < n; ++j) row.push_back(g.value(i, j));
    rows.push_back(std::move(row));
  }
  return {{"n", n}, {"values", std::move(rows)}};
}

BlockGraphon block_graphon_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  const auto& rows = j.at("values");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw std::invalid_argument("block graphon JSON: values must hold n rows");
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw std::invalid_argument("block graphon JSON: ragged row");
    for (const auto& x : row) v.push_back(x.get<double>());
  }
  return BlockGraphon(n, std::move(v));
}

nlohmann::json to_json(const ReferenceGraphon& r) {
  switch (r.family()) {
    case Family::Constant:
      return {{"family", "constant"}, {"p", r.constant_p()}};
    case Family::Rank1:
      return {{"family", "rank1"}, {"coeffs", r.coeffs()}};
    case Family::Grid: {
      nlohmann::json j = to_json(r.grid_values());
      j["family"] = "grid";
      return j;
    }
    case Family::Bilinear: {
      const int m = r.nodes_per_side();
      nlohmann::json rows = nlohmann::json::array();
      for (int i = 0; i < m; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j2 = 0; j2 < m; ++j2) row.push_back(r.node(i, j2));
        rows.push_back(std::move(row));
      }
      return {{"family", "bilinear"}, {"values", std::move(rows)}};
    }
  }
  throw std::logic_error("unreachable family");
}

ReferenceGraphon reference_from_json(const nlohmann::json& j) {
  const std::string fam = j.at("family").get<std::string>();
  if (fam == "constant")
    return ReferenceGraphon::constant(j.at("p").get<double>());
  if (fam == "rank1")
    return ReferenceGraphon::rank1(j.at("coeffs").get<std::vector<double>>());
  if (fam == "grid") return ReferenceGraphon::grid(block_graphon_from_json(j));
  if (fam == "bilinear") {
    const auto& rows = j.at("values");
    const int m = static_cast<int>(rows.size());
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(m) * m);
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != m)
        throw std::invalid_argument("bilinear JSON: node matrix must be square");
      for (const auto& x : row) v.push_back(x.get<double>());
    }
    return ReferenceGraphon::bilinear(m, std::move(v));
  }
  throw std::invalid_argument("unknown graphon family: " + fam);
}

nlohmann::json to_json(const SpectralSummary& s) {
  return {{"laplacian_norm", s.laplacian_norm},
          {"reduced_eigs", s.reduced_eigs},
          {"degree_values", s.degree_values},
          {"adjacency_min_eig", s.adjacency_min_eig},
          {"adjacency_max_eig", s.adjacency_max_eig}};
}

nlohmann::json to_json(const UpwardConstants& c) {
  nlohmann::json j = {{"C_r", c.c_r}, {"C_r1", c.c_r1}, {"gap_ok", c.gap_ok}};
  if (c.k_hat)
    j["K_hat"] = *c.k_hat;
  else
    j["K_hat"] = nullptr;
  return j;
}

namespace {
nlohmann::json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);  // JSON has no inf literal
}
}  // namespace

nlohmann::json to_json(const mc::TailEstimate& e) {
  return {{"log_prob", finite_or_string(e.log_prob)},
          {"rate_estimate", finite_or_string(e.rate_estimate)},
          {"ci_low", finite_or_string(e.ci_low)},
          {"ci_high", finite_or_string(e.ci_high)},
          {"n_samples", e.n_samples},
          {"method", e.method},
          {"ess", e.ess},
          {"hits", e.hits},
          {"std_err", e.std_err}};
}

ReferenceGraphon reference_from_file(const std::string& path) {
  const nlohmann::json j = nlohmann::json::parse(read_text(path));
  if (j.contains("family")) return reference_from_json(j);
  return ReferenceGraphon::grid(block_graphon_from_json(j));
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string degree_csv(const DegreeProfile& p) {
  std::string s = "x,d\n";
  for (const auto& [x, d] : p.grid)
    s += format_double(x) + "," + format_double(d) + "\n";
  return s;
}

std::string rate_curve_csv(const RateCurve& c) {
  std::string s = "beta,psi_hat,argmin_x,theta,iters\n";
  for (const RatePoint& p : c.points) {
    s += format_double(p.beta) + "," + format_double(p.value) + "," +
         format_double(p.argmin_x) + "," + format_double(p.theta) + "," +
         std::to_string(p.iters) + "\n";
  }
  return s;
}

std::string scaling_ratio_csv(const RateCurve& c) {
  std::string s = "beta,scaling_ratio\n";
  for (std::size_t k = 0; k < c.points.size(); ++k)
    s += format_double(c.points[k].beta) + "," +
         format_double(c.scaling_ratio[k]) + "\n";
  return s;
}

std::string down_curve_csv(const std::vector<DownRow>& rows) {
  std::string s =
      "beta,psi_lower,psi_solver,psi_upper,scaling_integral,feasibility_gap,"
      "candidate_feasible,iters\n";
  for (const DownRow& r : rows) {
    s += format_double(r.beta) + "," + format_double(r.lower) + "," +
         format_double(r.solver) + "," + format_double(r.upper) + "," +
         format_double(r.scaling) + "," + format_double(r.feasibility_gap) +
         "," + (r.candidate_feasible ? "1" : "0") + "," +
         std::to_string(r.iters) + "\n";
  }
  return s;
}

std::string mc_summary_header() {
  return "n,beta,method,log_prob,rate_estimate,ci_low,ci_high,ess\n";
}

std::string mc_summary_row(int n, double beta, const mc::TailEstimate& e) {
  return std::to_string(n) + "," + format_double(beta) + "," + e.method + "," +
         format_double(e.log_prob) + "," + format_double(e.rate_estimate) +
         "," + format_double(e.ci_low) + "," + format_double(e.ci_high) + "," +
         format_double(e.ess) + "\n";
}

AdjacencyMatrix read_edge_list(std::istream& in) {
  std::vector<std::pair<long, long>> edges;
  long max_vertex = -1;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long u = 0, v = 0;
    if (!(ls >> u >> v) || u < 0 || v < 0)
      throw std::invalid_argument("edge list: bad line " +
                                  std::to_string(lineno));
    edges.emplace_back(u, v);
    max_vertex = std::max({max_vertex, u, v});
  }
  // No edges at all: a single isolated vertex (norm 0).
  const int n = static_cast<int>(std::max<long>(max_vertex + 1, 1));
  std::vector<std::uint8_t> a(static_cast<std::size_t>(n) * n, 0);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;  // ignore self-loops
    a[static_cast<std::size_t>(u) * n + v] = 1;
    a[static_cast<std::size_t>(v) * n + u] = 1;
  }
  return AdjacencyMatrix(n, std::move(a));
}

AdjacencyMatrix read_dense_csv(std::istream& in) {
  std::vector<std::vector<int>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
    std::vector<int> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      const auto pos = cell.find_first_not_of(" \t\r");
      if (pos == std::string::npos) continue;
      const char c = cell[pos];
      if (c != '0' && c != '1')
        throw std::invalid_argument("dense matrix: entries must be 0 or 1");
      row.push_back(c - '0');
    }
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw std::invalid_argument("dense matrix: file holds no rows");
  std::vector<std::uint8_t> a(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw std::invalid_argument("dense matrix: must be square");
    for (int j = 0; j < n; ++j)
      a[static_cast<std::size_t>(i) * n + j] =
          static_cast<std::uint8_t>(rows[i][j]);
  }
  return AdjacencyMatrix(n, std::move(a));
}

}  // namespace gldp::io
