#pragma once

#include <span>
#include <vector>

namespace bhlab {

/// Finite-difference weights on arbitrary nodes (Fornberg's recursion).
/// Returns w with w[k][j] the weight of f(nodes[j]) in the k-th derivative at x0,
/// for k = 0..max_order.
std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> nodes,
                                            int max_order);

/// Central-difference step for derivative order k (1..3) at abscissa t, scaled by
/// max(1, |t|). Each is paired with one Richardson level by the callers.
double central_step(int order, double t);

}  // namespace bhlab
