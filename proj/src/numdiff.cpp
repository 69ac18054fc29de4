#include "bhlab/numdiff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bhlab {

std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> nodes,
                                            int max_order) {
  if (nodes.empty() || max_order < 0) {
    throw std::invalid_argument("fd_weights: need at least one node and max_order >= 0");
  }
  const std::size_t n = nodes.size();
  std::vector<std::vector<double>> c(max_order + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = std::min(static_cast<int>(i), max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      if (c3 == 0.0) throw std::invalid_argument("fd_weights: repeated node");
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      }
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

double central_step(int order, double t) {
  // Balances truncation h^4 (after Richardson) against round-off eps / h^order.
  static constexpr double kBase[] = {0.0, 1e-4, 2e-3, 5e-3};
  if (order < 1 || order > 3) throw std::invalid_argument("central_step: order must be 1..3");
  return kBase[order] * std::max(1.0, std::abs(t));
}

}  // namespace bhlab
