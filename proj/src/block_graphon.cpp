#include "gldp/block_graphon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gldp {

BlockGraphon::BlockGraphon(int n_blocks, std::vector<double> values)
    : n_(n_blocks), v_(std::move(values)) {
  if (n_ <= 0) throw std::invalid_argument("BlockGraphon: n_blocks must be positive");
  if (v_.size() != static_cast<std::size_t>(n_) * n_)
    throw std::invalid_argument("BlockGraphon: expected " + std::to_string(n_) + "x" +
                                std::to_string(n_) + " values");
  constexpr double kRepair = 1e-12;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j <= i; ++j) {
      double& a = v_[static_cast<std::size_t>(i) * n_ + j];
      double& b = v_[static_cast<std::size_t>(j) * n_ + i];
      if (std::fabs(a - b) > kRepair)
        throw std::invalid_argument("BlockGraphon: values must be symmetric");
      const double m = 0.5 * (a + b);
      if (m < -kRepair || m > 1.0 + kRepair)
        throw std::invalid_argument("BlockGraphon: values must lie in [0,1]");
      a = b = std::clamp(m, 0.0, 1.0);
    }
  }
}

BlockGraphon BlockGraphon::constant(int n_blocks, double p) {
  if (n_blocks <= 0) throw std::invalid_argument("BlockGraphon: n_blocks must be positive");
  return BlockGraphon(n_blocks,
                      std::vector<double>(static_cast<std::size_t>(n_blocks) * n_blocks, p));
}

int BlockGraphon::block_of(double x) const {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("BlockGraphon: coordinate outside [0,1]");
  return std::min(static_cast<int>(x * n_), n_ - 1);
}

double BlockGraphon::operator()(double x, double y) const {
  return value(block_of(x), block_of(y));
}

double BlockGraphon::block_degree(int i) const {
  const double* row = v_.data() + static_cast<std::size_t>(i) * n_;
  return std::accumulate(row, row + n_, 0.0) / n_;
}

std::vector<double> BlockGraphon::block_degrees() const {
  std::vector<double> d(n_);
  for (int i = 0; i < n_; ++i) d[i] = block_degree(i);
  return d;
}

BlockGraphon BlockGraphon::refined(int factor) const {
  if (factor <= 0) throw std::invalid_argument("BlockGraphon: refinement factor must be positive");
  const int m = n_ * factor;
  std::vector<double> w(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      w[static_cast<std::size_t>(i) * m + j] = value(i / factor, j / factor);
  return BlockGraphon(m, std::move(w));
}

std::pair<BlockGraphon, BlockGraphon> common_refinement(const BlockGraphon& a,
                                                        const BlockGraphon& b) {
  const long long l = std::lcm(static_cast<long long>(a.n_blocks()),
                               static_cast<long long>(b.n_blocks()));
  if (l > 4096)
    throw std::invalid_argument("common_refinement: common grid exceeds 4096 blocks");
  const int m = static_cast<int>(l);
  return {a.refined(m / a.n_blocks()), b.refined(m / b.n_blocks())};
}

}  // namespace gldp
