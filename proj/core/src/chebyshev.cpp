#include "parawave/chebyshev.hpp"

#include <cmath>

#include "parawave/errors.hpp"

namespace parawave {

ChebGrid::ChebGrid(int segments) : nz_(segments) {
  if (segments < 4 || segments > 4096) {
    throw Error("ChebGrid: segments must be in [4, 4096]");
  }
  const int n = nz_;
  std::vector<double> x(n + 1);  // standard nodes on [-1, 1], descending
  for (int j = 0; j <= n; ++j) x[j] = std::cos(j * M_PI / n);
  x[0] = 1.0;
  x[n] = -1.0;
  nodes_.resize(n + 1);
  for (int j = 0; j <= n; ++j) nodes_[j] = 0.5 * (x[j] - 1.0);

  // Off-diagonal entries of the collocation derivative, then the diagonal
  // by the negative-sum trick; the factor 2 maps [-1, 1] onto [-1, 0].
  Eigen::MatrixXd d(n + 1, n + 1);
  auto c = [n](int i) { return (i == 0 || i == n) ? 2.0 : 1.0; };
  for (int i = 0; i <= n; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      d(i, j) = (c(i) / c(j)) * sign / (x[i] - x[j]);
      rowsum += d(i, j);
    }
    d(i, i) = -rowsum;
  }
  d1_ = 2.0 * d;
  d2_ = d1_ * d1_;
}

}  // namespace parawave
