#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bhlab {

using Complex = std::complex<double>;

/// Dense complex matrix. Real algebras (so, se) are stored with zero imaginary part.
using Matrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonFiniteEntry : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws NonFiniteEntry if any entry of `m` is NaN or infinite.
void require_finite(const Matrix& m, std::string_view what);

void require_same_shape(const Matrix& x, const Matrix& y, std::string_view what);

/// Commutator XY - YX.
Matrix bracket(const Matrix& x, const Matrix& y);

/// Frobenius norm. Used for every residual and drift magnitude.
inline double norm(const Matrix& m) { return m.norm(); }

/// Matrix exponential by scaling and squaring with a degree-13 Pade approximant.
Matrix expm(const Matrix& x);

/// Which defining constraint a group element is expected to satisfy.
enum class GroupKind {
  Orthogonal,         // SO(N): real, g^T g = I
  SpecialUnitary,     // SU(N): g^H g = I, det g = 1
  SymplecticUnitary,  // Sp(n+1) inside U(2n+2): g^T J g = J
  AffineEuclidean,    // [[R, v], [0, 1]] with R orthogonal
};

std::string_view to_string(GroupKind kind);

class ConstraintViolation : public std::domain_error {
 public:
  ConstraintViolation(const std::string& what, double residual)
      : std::domain_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct GroupElement {
  Matrix matrix;
  GroupKind kind;
};

/// Frobenius norm of the defining-constraint residual of `g`.
///
///   Orthogonal         ||g^T g - I|| + ||Im g||
///   SpecialUnitary     ||g^H g - I|| + |det g - 1|
///   SymplecticUnitary  ||g^T J g - J|| + ||g^H g - I||
///   AffineEuclidean    ||bottom row - e_N|| + ||R^T R - I|| + ||Im g||
double drift(const GroupElement& g);

/// J = [[0, I], [-I, 0]] of size 2m.
Matrix symplectic_form(Eigen::Index m);

/// Group element from an algebra element; the constraint tag is supplied by the caller's model.
GroupElement exp_group(const Matrix& x, GroupKind kind);

/// Multiplies two elements of the same group.
GroupElement operator*(const GroupElement& a, const GroupElement& b);

GroupElement identity_element(Eigen::Index n, GroupKind kind);

/// Nearest group element by polar decomposition (SVD). For SpecialUnitary the determinant
/// phase is removed as well. Only used behind the integrator's repair flag.
GroupElement polar_repair(const GroupElement& g);

struct Quaternion {
  double w = 0.0;  // real part
  double x = 0.0;  // i
  double y = 0.0;  // j
  double z = 0.0;  // k

  static Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
  static Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
  static Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
  static Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

  /// q = c + d j with c, d complex.
  static Quaternion from_complex_pair(Complex c, Complex d) {
    return {c.real(), c.imag(), d.real(), d.imag()};
  }
  Complex complex_part() const { return {w, x}; }
  Complex j_part() const { return {y, z}; }

  Quaternion conj() const { return {w, -x, -y, -z}; }
  double norm() const;

  friend Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
  }
  friend Quaternion operator+(const Quaternion& p, const Quaternion& q) {
    return {p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z};
  }
  friend Quaternion operator-(const Quaternion& p, const Quaternion& q) {
    return {p.w - q.w, p.x - q.x, p.y - q.y, p.z - q.z};
  }
  friend Quaternion operator*(double s, const Quaternion& q) {
    return {s * q.w, s * q.x, s * q.y, s * q.z};
  }
};

/// z + w j  ->  [[z, w], [-conj(w), conj(z)]]. A multiplicative homomorphism H -> M_2(C).
Matrix quat_embed(const Quaternion& q);

}  // namespace bhlab
