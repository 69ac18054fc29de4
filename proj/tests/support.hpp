#pragma once

#include "bhlab/spaces.hpp"

#include <random>
#include <vector>

namespace bhlab::test {

inline std::vector<SymmetricSpace> all_models() {
  return {SymmetricSpace::sphere(3), SymmetricSpace::complex_projective(3),
          SymmetricSpace::quaternion_projective(2), SymmetricSpace::euclidean(3)};
}

/// Truncated Taylor series sum_k X^k / k!, with enough terms for ||X|| <= 4.
inline Matrix series_exp(const Matrix& x, int terms = 60) {
  Matrix out = Matrix::Identity(x.rows(), x.cols());
  Matrix term = out;
  for (int k = 1; k < terms; ++k) {
    term = term * x / static_cast<double>(k);
    out += term;
  }
  return out;
}

inline double uniform(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace bhlab::test
