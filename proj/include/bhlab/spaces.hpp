#pragma once

#include "bhlab/liealg.hpp"

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace bhlab {

enum class SpaceKind { Sphere, ComplexProjective, QuaternionProjective, EuclideanType };

std::string_view to_string(SpaceKind kind);

/// A point of G/K given by a representative of g.o.
///
/// Sphere: unit vector in R^{n+1}. ComplexProjective: unit vector in C^{n+1} up to a unit
/// complex scalar. QuaternionProjective: the complex 2(n+1)-vector (z, w) of the quaternion
/// column q_m = z_m + w_m j, up to left multiplication by a unit quaternion. EuclideanType:
/// affine point in R^n.
struct HomogeneousPoint {
  SpaceKind kind;
  ComplexVector coords;

  /// Quaternionic coordinate m (QuaternionProjective only).
  Quaternion quaternion(Eigen::Index m) const;
};

/// Canonical representative: the first coordinate with magnitude above 1e-12 is made
/// real-positive by a unit complex (CP^n) or unit quaternion (HP^n) scalar.
HomogeneousPoint align_gauge(const HomogeneousPoint& p);

/// Gauge-invariant distance. Sphere/Euclidean: Euclidean norm. Projective: Frobenius
/// distance between the orthogonal projectors onto the complex lines (CP^n) or the
/// complex 2-planes spanned by v and its quaternionic j-image (HP^n).
double point_distance(const HomogeneousPoint& p, const HomogeneousPoint& q);

/// Real columns for tabular output, with matching names.
std::vector<double> point_columns(const HomogeneousPoint& p);
std::vector<std::string> point_column_names(SpaceKind kind, int n);

/// Concrete (G, K, g = k + m) model of one of the four symmetric-space families.
class SymmetricSpace {
 public:
  static SymmetricSpace sphere(int n);
  static SymmetricSpace complex_projective(int n);
  static SymmetricSpace quaternion_projective(int n);
  static SymmetricSpace euclidean(int n);

  SpaceKind kind() const { return kind_; }
  int n() const { return n_; }
  /// Ambient matrix size N.
  Eigen::Index dim() const { return dim_; }
  GroupKind group_kind() const;
  std::string name() const;

  /// Number of complex chart coordinates (real charts use zero imaginary parts).
  Eigen::Index chart_size() const;
  bool real_chart() const {
    return kind_ == SpaceKind::Sphere || kind_ == SpaceKind::EuclideanType;
  }

  /// Norm of the violation of the algebra's defining linear constraints.
  double algebra_residual(const Matrix& x) const;

  Matrix proj_k(const Matrix& x) const;
  Matrix proj_m(const Matrix& x) const;

  /// (X_k, X_m). Throws ConstraintViolation if X is not in the algebra (tolerance 1e-10).
  std::pair<Matrix, Matrix> project(const Matrix& x) const;

  Matrix m_from_coords(const ComplexVector& coords) const;
  ComplexVector m_coords(const Matrix& xm) const;

  HomogeneousPoint base_point() const;

  /// g.o. Throws ConstraintViolation if drift(g) exceeds `tolerance`.
  HomogeneousPoint project_point(const GroupElement& g, double tolerance = 1e-8) const;

  /// Applies a group matrix to a point representative (x . v).
  HomogeneousPoint act(const Matrix& g, const HomogeneousPoint& p) const;

  Matrix random_algebra(std::mt19937_64& rng, double scale = 1.0) const;
  Matrix random_k(std::mt19937_64& rng, double scale = 1.0) const;
  Matrix random_m(std::mt19937_64& rng, double scale = 1.0) const;
  GroupElement random_group(std::mt19937_64& rng, double scale = 1.0) const;
  GroupElement random_isotropy(std::mt19937_64& rng, double scale = 1.0) const;

  friend bool operator==(const SymmetricSpace&, const SymmetricSpace&) = default;

 private:
  SymmetricSpace(SpaceKind kind, int n, Eigen::Index dim) : kind_(kind), n_(n), dim_(dim) {}

  bool in_k_block(Eigen::Index r, Eigen::Index c) const;

  SpaceKind kind_;
  int n_;
  Eigen::Index dim_;
};

/// Sphere m-element A(u) = [[0, -u^T], [u, 0]].
Matrix sphere_m(const RealVector& u);

/// exp(A(u)) via the rank-one rotation formula
/// I + sin|u|/|u| A(u) + (1 - cos|u|)/|u|^2 A(u)^2.
Matrix sphere_m_exp(const RealVector& u);

}  // namespace bhlab
