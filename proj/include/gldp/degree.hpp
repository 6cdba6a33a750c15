#pragma once

#include <utility>
#include <vector>

#include "gldp/block_graphon.hpp"
#include "gldp/reference.hpp"

namespace gldp {

// Degree function d(x) = integral over y of the kernel at (x, y).
struct DegreeProfile {
  std::vector<std::pair<double, double>> grid;  // (x, d(x)), x ascending
  double sup_norm = 0.0;                        // == max over grid
};

// Block graphon: one exact value per block, x at block midpoints.
DegreeProfile degree_function(const BlockGraphon& g);

// Reference families: closed-form d(x) on resolution+1 uniform points merged
// with family breakpoints and polynomial critical points, so the grid max is
// the true sup norm.  Grid references ignore the resolution (per-block exact).
DegreeProfile degree_function(const ReferenceGraphon& r, int resolution = 1024);

double degree_eval(const ReferenceGraphon& r, double x);  // d_r(x), closed form
double degree_sup(const ReferenceGraphon& r);             // sup_x d_r(x), exact

// v_r(x) = integral over y of r(1-r); closed form in every family.
double degree_variance(const ReferenceGraphon& r, double x);

}  // namespace gldp
