#pragma once

#include <Eigen/Dense>
#include <vector>

namespace parawave {

// Chebyshev-Gauss-Lobatto collocation on the vertical interval [-1, 0].
// With nz segments there are nz+1 nodes ordered surface first:
// z_0 = 0 > z_1 > ... > z_nz = -1, z_j = (cos(j pi / nz) - 1) / 2.
// d1/d2 are the nodal spectral differentiation matrices for d/dz, d2/dz2.
class ChebGrid {
 public:
  explicit ChebGrid(int segments);

  int segments() const { return nz_; }
  int count() const { return nz_ + 1; }
  double node(int j) const { return nodes_[j]; }
  const std::vector<double>& nodes() const { return nodes_; }
  const Eigen::MatrixXd& d1() const { return d1_; }
  const Eigen::MatrixXd& d2() const { return d2_; }

 private:
  int nz_;
  std::vector<double> nodes_;
  Eigen::MatrixXd d1_;
  Eigen::MatrixXd d2_;
};

}  // namespace parawave
