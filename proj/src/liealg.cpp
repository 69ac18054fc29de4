#include "bhlab/liealg.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace bhlab {

void require_finite(const Matrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw NonFiniteEntry(std::string(what) + ": matrix has non-finite entries");
  }
}

void require_same_shape(const Matrix& x, const Matrix& y, std::string_view what) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << x.rows() << "x" << x.cols() << " vs " << y.rows()
       << "x" << y.cols() << ")";
    throw DimensionMismatch(os.str());
  }
}

Matrix bracket(const Matrix& x, const Matrix& y) {
  require_same_shape(x, y, "bracket");
  if (x.rows() != x.cols()) {
    throw DimensionMismatch("bracket: operands must be square");
  }
  return x * y - y * x;
}

namespace {

// Higham (2005) degree-13 Pade coefficients.
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

Matrix expm(const Matrix& x) {
  if (x.rows() != x.cols()) {
    throw DimensionMismatch("expm: matrix must be square");
  }
  require_finite(x, "expm");
  const Eigen::Index n = x.rows();
  if (n == 0) {
    return x;
  }

  const double norm1 = x.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 == 0.0) {
    return Matrix::Identity(n, n);
  }
  int squarings = 0;
  if (norm1 > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
  }
  const Matrix a = x / std::ldexp(1.0, squarings);

  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const auto& b = kPade13;

  const Matrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                         b[3] * a2 + b[1] * id;
  const Matrix u = a * u_inner;
  const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                   b[2] * a2 + b[0] * id;

  Matrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) {
    r = r * r;
  }
  return r;
}

std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Orthogonal:
      return "orthogonal";
    case GroupKind::SpecialUnitary:
      return "special-unitary";
    case GroupKind::SymplecticUnitary:
      return "symplectic-unitary";
    case GroupKind::AffineEuclidean:
      return "affine-euclidean";
  }
  return "unknown";
}

Matrix symplectic_form(Eigen::Index m) {
  Matrix j = Matrix::Zero(2 * m, 2 * m);
  j.topRightCorner(m, m).setIdentity();
  j.bottomLeftCorner(m, m) = -Matrix::Identity(m, m);
  return j;
}

double drift(const GroupElement& g) {
  const Matrix& m = g.matrix;
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("drift: matrix must be square");
  }
  const Eigen::Index n = m.rows();
  const Matrix id = Matrix::Identity(n, n);
  switch (g.kind) {
    case GroupKind::Orthogonal:
      return norm(m.transpose() * m - id) + m.imag().norm();
    case GroupKind::SpecialUnitary:
      return norm(m.adjoint() * m - id) + std::abs(m.determinant() - Complex(1.0, 0.0));
    case GroupKind::SymplecticUnitary: {
      if (n % 2 != 0) {
        throw DimensionMismatch("drift: symplectic matrix must have even size");
      }
      const Matrix j = symplectic_form(n / 2);
      return norm(m.transpose() * j * m - j) + norm(m.adjoint() * m - id);
    }
    case GroupKind::AffineEuclidean: {
      const Eigen::Index k = n - 1;
      Eigen::RowVectorXcd last = Eigen::RowVectorXcd::Zero(n);
      last(k) = 1.0;
      const Matrix r = m.topLeftCorner(k, k);
      return (m.row(k) - last).norm() + norm(r.transpose() * r - Matrix::Identity(k, k)) +
             m.imag().norm();
    }
  }
  return 0.0;
}

GroupElement exp_group(const Matrix& x, GroupKind kind) { return {expm(x), kind}; }

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  if (a.kind != b.kind) {
    throw std::invalid_argument("group product: elements belong to different groups");
  }
  require_same_shape(a.matrix, b.matrix, "group product");
  return {a.matrix * b.matrix, a.kind};
}

GroupElement identity_element(Eigen::Index n, GroupKind kind) {
  return {Matrix::Identity(n, n), kind};
}

GroupElement polar_repair(const GroupElement& g) {
  auto unitary_factor = [](const Matrix& m) -> Matrix {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
  };
  const Eigen::Index n = g.matrix.rows();
  switch (g.kind) {
    case GroupKind::Orthogonal:
      return {unitary_factor(Matrix(g.matrix.real().cast<Complex>())), g.kind};
    case GroupKind::SpecialUnitary: {
      Matrix u = unitary_factor(g.matrix);
      const Complex det = u.determinant();
      u /= std::pow(det, 1.0 / static_cast<double>(n));
      return {u, g.kind};
    }
    case GroupKind::SymplecticUnitary: {
      // Average with the quaternionic conjugate J^-1 conj(g) J first; the unitary polar
      // factor of a quaternionic matrix is then symplectic.
      const Matrix j = symplectic_form(n / 2);
      const Matrix q = 0.5 * (g.matrix + j.transpose() * g.matrix.conjugate() * j);
      return {unitary_factor(q), g.kind};
    }
    case GroupKind::AffineEuclidean: {
      Matrix out = g.matrix.real().cast<Complex>();
      const Eigen::Index k = n - 1;
      out.topLeftCorner(k, k) = unitary_factor(Matrix(out.topLeftCorner(k, k)));
      out.row(k).setZero();
      out(k, k) = 1.0;
      return {out, g.kind};
    }
  }
  return g;
}

double Quaternion::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

Matrix quat_embed(const Quaternion& q) {
  const Complex c = q.complex_part();
  const Complex d = q.j_part();
  Matrix m(2, 2);
  m << c, d, -std::conj(d), std::conj(c);
  return m;
}

}  // namespace bhlab
