#pragma once

#include <utility>
#include <vector>

namespace gldp {

// Symmetric step kernel W: [0,1]^2 -> [0,1], constant on an n x n uniform
// block grid.  Block lookup is index = min(floor(x*n), n-1): cells are
// right-open except the last, so x = 1 falls in the final block.
class BlockGraphon {
 public:
  // Validates square shape, symmetry, and range [0,1]; tiny (<= 1e-12)
  // asymmetry or range spill from serialization round-trips is repaired,
  // anything larger is an error.
  BlockGraphon(int n_blocks, std::vector<double> values);

  static BlockGraphon constant(int n_blocks, double p);
  static BlockGraphon zero(int n_blocks) { return constant(n_blocks, 0.0); }

  int n_blocks() const { return n_; }
  double value(int i, int j) const { return v_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<double>& values() const { return v_; }

  double operator()(double x, double y) const;
  int block_of(double x) const;  // throws outside [0,1]

  double block_degree(int i) const;  // (1/n) sum_j value(i, j)
  std::vector<double> block_degrees() const;

  // Same function on a grid `factor` times finer.
  BlockGraphon refined(int factor) const;

 private:
  int n_;
  std::vector<double> v_;
};

inline double evaluate(const BlockGraphon& g, double x, double y) {
  return g(x, y);
}

// Re-express both graphons on their least common grid (values unchanged as
// functions).  Errors if the common grid would be absurdly fine (> 4096).
std::pair<BlockGraphon, BlockGraphon> common_refinement(const BlockGraphon& a,
                                                        const BlockGraphon& b);

}  // namespace gldp
