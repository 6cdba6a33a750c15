#pragma once

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gldp/block_graphon.hpp"
#include "gldp/degree.hpp"
#include "gldp/mc.hpp"
#include "gldp/rate_up.hpp"
#include "gldp/reference.hpp"
#include "gldp/spectral.hpp"

namespace gldp::io {

// Shortest round-trip decimal form, locale-independent ('.' separator).
std::string format_double(double v);

// Block graphons serialize as {"n": …, "values": [[row0], [row1], …]};
// references as {"family": "constant"|"rank1"|"grid"|"bilinear", …} with
// payload keys "p", "coeffs", or "values".
nlohmann::json to_json(const BlockGraphon& g);
BlockGraphon block_graphon_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ReferenceGraphon& r);
ReferenceGraphon reference_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SpectralSummary& s);
nlohmann::json to_json(const UpwardConstants& c);
nlohmann::json to_json(const mc::TailEstimate& e);

// A graphon file holds either a reference (has "family") or a bare block
// graphon object, which loads as the grid family.
ReferenceGraphon reference_from_file(const std::string& path);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& content);

// CSV layouts (header line included, LF endings).
std::string degree_csv(const DegreeProfile& p);                 // x,d
std::string rate_curve_csv(const RateCurve& c);                 // upward points
std::string scaling_ratio_csv(const RateCurve& c);              // beta,ratio

struct DownRow {
  double beta = 0.0;
  double lower = 0.0;
  double solver = 0.0;
  double upper = 0.0;
  double scaling = 0.0;
  double feasibility_gap = 0.0;
  bool candidate_feasible = true;
  int iters = 0;
};
std::string down_curve_csv(const std::vector<DownRow>& rows);

std::string mc_summary_header();  // n,beta,method,log_prob,...
std::string mc_summary_row(int n, double beta, const mc::TailEstimate& e);

// Graph inputs: whitespace-separated "u v" pairs per line (0-based, blank
// lines and '#' comments skipped, vertex count = max index + 1), or a dense
// 0/1 matrix with comma-separated rows.
AdjacencyMatrix read_edge_list(std::istream& in);
AdjacencyMatrix read_dense_csv(std::istream& in);

}  // namespace gldp::io
