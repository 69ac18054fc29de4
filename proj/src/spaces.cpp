#include "bhlab/spaces.hpp"

#include <cmath>
#include <sstream>

namespace bhlab {

namespace {

constexpr double kAlgebraTolerance = 1e-10;
constexpr double kGaugeThreshold = 1e-12;

ComplexVector quaternion_j_image(const ComplexVector& v) {
  // Left multiplication by j: (z, w) -> (-conj(w), conj(z)).
  const Eigen::Index m = v.size() / 2;
  ComplexVector out(v.size());
  out.head(m) = -v.tail(m).conjugate();
  out.tail(m) = v.head(m).conjugate();
  return out;
}

Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng, bool complex) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = dist(rng);
      const double im = complex ? dist(rng) : 0.0;
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Sphere:
      return "sphere";
    case SpaceKind::ComplexProjective:
      return "cpn";
    case SpaceKind::QuaternionProjective:
      return "hpn";
    case SpaceKind::EuclideanType:
      return "euclidean";
  }
  return "unknown";
}

Quaternion HomogeneousPoint::quaternion(Eigen::Index m) const {
  if (kind != SpaceKind::QuaternionProjective) {
    throw std::logic_error("quaternion(): point is not in a quaternion projective space");
  }
  const Eigen::Index half = coords.size() / 2;
  return Quaternion::from_complex_pair(coords(m), coords(half + m));
}

HomogeneousPoint align_gauge(const HomogeneousPoint& p) {
  HomogeneousPoint out = p;
  if (p.kind == SpaceKind::ComplexProjective) {
    for (Eigen::Index i = 0; i < p.coords.size(); ++i) {
      const double mag = std::abs(p.coords(i));
      if (mag > kGaugeThreshold) {
        out.coords *= std::conj(p.coords(i)) / mag;
        break;
      }
    }
  } else if (p.kind == SpaceKind::QuaternionProjective) {
    const Eigen::Index half = p.coords.size() / 2;
    for (Eigen::Index i = 0; i < half; ++i) {
      const Quaternion q = p.quaternion(i);
      const double mag = q.norm();
      if (mag > kGaugeThreshold) {
        const Quaternion unit = (1.0 / mag) * q.conj();
        const Complex alpha = unit.complex_part();
        const Complex beta = unit.j_part();
        const ComplexVector z = p.coords.head(half);
        const ComplexVector w = p.coords.tail(half);
        out.coords.head(half) = alpha * z - beta * w.conjugate();
        out.coords.tail(half) = alpha * w + beta * z.conjugate();
        break;
      }
    }
  }
  return out;
}

double point_distance(const HomogeneousPoint& p, const HomogeneousPoint& q) {
  if (p.kind != q.kind || p.coords.size() != q.coords.size()) {
    throw DimensionMismatch("point_distance: points live in different spaces");
  }
  switch (p.kind) {
    case SpaceKind::Sphere:
    case SpaceKind::EuclideanType:
      return (p.coords - q.coords).norm();
    case SpaceKind::ComplexProjective: {
      const ComplexVector a = p.coords.normalized();
      const ComplexVector b = q.coords.normalized();
      return norm(a * a.adjoint() - b * b.adjoint());
    }
    case SpaceKind::QuaternionProjective: {
      auto projector = [](const ComplexVector& v) {
        const ComplexVector u = v.normalized();
        Matrix c(u.size(), 2);
        c.col(0) = u;
        c.col(1) = quaternion_j_image(u);
        return Matrix(c * c.adjoint());
      };
      return norm(projector(p.coords) - projector(q.coords));
    }
  }
  return 0.0;
}

std::vector<double> point_columns(const HomogeneousPoint& p) {
  std::vector<double> out;
  switch (p.kind) {
    case SpaceKind::Sphere:
    case SpaceKind::EuclideanType:
      for (Eigen::Index i = 0; i < p.coords.size(); ++i) out.push_back(p.coords(i).real());
      break;
    case SpaceKind::ComplexProjective: {
      const HomogeneousPoint a = align_gauge(p);
      for (Eigen::Index i = 0; i < a.coords.size(); ++i) {
        out.push_back(a.coords(i).real());
        out.push_back(a.coords(i).imag());
      }
      break;
    }
    case SpaceKind::QuaternionProjective: {
      const HomogeneousPoint a = align_gauge(p);
      for (Eigen::Index i = 0; i < a.coords.size() / 2; ++i) {
        const Quaternion q = a.quaternion(i);
        out.insert(out.end(), {q.w, q.x, q.y, q.z});
      }
      break;
    }
  }
  return out;
}

std::vector<std::string> point_column_names(SpaceKind kind, int n) {
  std::vector<std::string> names;
  switch (kind) {
    case SpaceKind::Sphere:
      for (int i = 0; i <= n; ++i) names.push_back("x" + std::to_string(i));
      break;
    case SpaceKind::EuclideanType:
      for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
      break;
    case SpaceKind::ComplexProjective:
      for (int i = 0; i <= n; ++i) {
        names.push_back("z" + std::to_string(i) + "_re");
        names.push_back("z" + std::to_string(i) + "_im");
      }
      break;
    case SpaceKind::QuaternionProjective:
      for (int i = 0; i <= n; ++i) {
        for (const char* part : {"_1", "_i", "_j", "_k"}) {
          names.push_back("q" + std::to_string(i) + part);
        }
      }
      break;
  }
  return names;
}

SymmetricSpace SymmetricSpace::sphere(int n) {
  if (n < 1) throw std::invalid_argument("sphere: n must be >= 1");
  return {SpaceKind::Sphere, n, n + 1};
}

SymmetricSpace SymmetricSpace::complex_projective(int n) {
  if (n < 1) throw std::invalid_argument("complex projective space: n must be >= 1");
  return {SpaceKind::ComplexProjective, n, n + 1};
}

SymmetricSpace SymmetricSpace::quaternion_projective(int n) {
  if (n < 1) throw std::invalid_argument("quaternion projective space: n must be >= 1");
  return {SpaceKind::QuaternionProjective, n, 2 * n + 2};
}

SymmetricSpace SymmetricSpace::euclidean(int n) {
  if (n < 1) throw std::invalid_argument("euclidean type: n must be >= 1");
  return {SpaceKind::EuclideanType, n, n + 1};
}

GroupKind SymmetricSpace::group_kind() const {
  switch (kind_) {
    case SpaceKind::Sphere:
      return GroupKind::Orthogonal;
    case SpaceKind::ComplexProjective:
      return GroupKind::SpecialUnitary;
    case SpaceKind::QuaternionProjective:
      return GroupKind::SymplecticUnitary;
    case SpaceKind::EuclideanType:
      return GroupKind::AffineEuclidean;
  }
  return GroupKind::Orthogonal;
}

std::string SymmetricSpace::name() const {
  return std::string(to_string(kind_)) + "(" + std::to_string(n_) + ")";
}

Eigen::Index SymmetricSpace::chart_size() const {
  return kind_ == SpaceKind::QuaternionProjective ? 2 * n_ : n_;
}

bool SymmetricSpace::in_k_block(Eigen::Index r, Eigen::Index c) const {
  switch (kind_) {
    case SpaceKind::Sphere:
    case SpaceKind::ComplexProjective:
      return (r == 0) == (c == 0);
    case SpaceKind::QuaternionProjective: {
      auto base = [this](Eigen::Index i) { return i == 0 || i == n_ + 1; };
      return base(r) == base(c);
    }
    case SpaceKind::EuclideanType:
      // The bottom row is identically zero on the algebra; it is assigned to k.
      return !(c == n_ && r < n_);
  }
  return true;
}

double SymmetricSpace::algebra_residual(const Matrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) {
    std::ostringstream os;
    os << name() << ": expected " << dim_ << "x" << dim_ << " matrix, got " << x.rows() << "x"
       << x.cols();
    throw DimensionMismatch(os.str());
  }
  switch (kind_) {
    case SpaceKind::Sphere:
      return norm(x + x.transpose()) + x.imag().norm();
    case SpaceKind::ComplexProjective:
      return norm(x + x.adjoint()) + std::abs(x.trace());
    case SpaceKind::QuaternionProjective: {
      const Matrix j = symplectic_form(n_ + 1);
      return norm(x + x.adjoint()) + norm(x.transpose() * j + j * x);
    }
    case SpaceKind::EuclideanType: {
      const Matrix omega = x.topLeftCorner(n_, n_);
      return norm(omega + omega.transpose()) + x.row(n_).norm() + x.imag().norm();
    }
  }
  return 0.0;
}

Matrix SymmetricSpace::proj_k(const Matrix& x) const {
  require_same_shape(x, Matrix(dim_, dim_), "proj_k");
  Matrix out = x;
  for (Eigen::Index c = 0; c < dim_; ++c) {
    for (Eigen::Index r = 0; r < dim_; ++r) {
      if (!in_k_block(r, c)) out(r, c) = 0.0;
    }
  }
  return out;
}

Matrix SymmetricSpace::proj_m(const Matrix& x) const {
  require_same_shape(x, Matrix(dim_, dim_), "proj_m");
  Matrix out = x;
  for (Eigen::Index c = 0; c < dim_; ++c) {
    for (Eigen::Index r = 0; r < dim_; ++r) {
      if (in_k_block(r, c)) out(r, c) = 0.0;
    }
  }
  return out;
}

std::pair<Matrix, Matrix> SymmetricSpace::project(const Matrix& x) const {
  const double residual = algebra_residual(x);
  if (residual > kAlgebraTolerance * std::max(1.0, norm(x))) {
    throw ConstraintViolation(name() + ": matrix is not in the Lie algebra", residual);
  }
  return {proj_k(x), proj_m(x)};
}

Matrix SymmetricSpace::m_from_coords(const ComplexVector& coords) const {
  if (coords.size() != chart_size()) {
    std::ostringstream os;
    os << name() << ": m-chart expects " << chart_size() << " coordinates, got "
       << coords.size();
    throw DimensionMismatch(os.str());
  }
  if (real_chart() && coords.imag().norm() != 0.0) {
    throw std::invalid_argument(name() + ": m-chart coordinates must be real");
  }
  Matrix x = Matrix::Zero(dim_, dim_);
  const Eigen::Index n = n_;
  switch (kind_) {
    case SpaceKind::Sphere:
    case SpaceKind::ComplexProjective:
      x.block(1, 0, n, 1) = coords;
      x.block(0, 1, 1, n) = -coords.adjoint();
      break;
    case SpaceKind::QuaternionProjective: {
      const ComplexVector z = coords.head(n);
      const ComplexVector w = coords.tail(n);
      // Row 0: [0, Z, 0, W]; rows 1..n: [-Z^H, 0, W^T, 0];
      // row n+1: [0, -conj(W), 0, conj(Z)]; rows n+2..: [-W^H, 0, -Z^T, 0].
      x.block(0, 1, 1, n) = z.transpose();
      x.block(0, n + 2, 1, n) = w.transpose();
      x.block(1, 0, n, 1) = -z.conjugate();
      x.block(1, n + 1, n, 1) = w;
      x.block(n + 1, 1, 1, n) = -w.adjoint();
      x.block(n + 1, n + 2, 1, n) = z.adjoint();
      x.block(n + 2, 0, n, 1) = -w.conjugate();
      x.block(n + 2, n + 1, n, 1) = -z;
      break;
    }
    case SpaceKind::EuclideanType:
      x.block(0, n, n, 1) = coords;
      break;
  }
  return x;
}

ComplexVector SymmetricSpace::m_coords(const Matrix& xm) const {
  require_same_shape(xm, Matrix(dim_, dim_), "m_coords");
  const Eigen::Index n = n_;
  switch (kind_) {
    case SpaceKind::Sphere:
      return xm.block(1, 0, n, 1).real().cast<Complex>();
    case SpaceKind::ComplexProjective:
      return xm.block(1, 0, n, 1);
    case SpaceKind::QuaternionProjective: {
      ComplexVector out(2 * n);
      out.head(n) = xm.block(0, 1, 1, n).transpose();
      out.tail(n) = xm.block(0, n + 2, 1, n).transpose();
      return out;
    }
    case SpaceKind::EuclideanType:
      return xm.block(0, n, n, 1).real().cast<Complex>();
  }
  return {};
}

HomogeneousPoint SymmetricSpace::base_point() const {
  return project_point(identity_element(dim_, group_kind()));
}

HomogeneousPoint SymmetricSpace::project_point(const GroupElement& g, double tolerance) const {
  if (g.kind != group_kind()) {
    throw std::invalid_argument(name() + ": group element has the wrong constraint tag");
  }
  require_same_shape(g.matrix, Matrix(dim_, dim_), "project_point");
  const double d = drift(g);
  if (d > tolerance) {
    throw ConstraintViolation(name() + ": group element violates its constraint", d);
  }
  switch (kind_) {
    case SpaceKind::Sphere:
      return {kind_, g.matrix.col(0).real().cast<Complex>()};
    case SpaceKind::ComplexProjective:
    case SpaceKind::QuaternionProjective:
      return align_gauge({kind_, g.matrix.col(0)});
    case SpaceKind::EuclideanType:
      return {kind_, g.matrix.block(0, n_, n_, 1).real().cast<Complex>()};
  }
  return {kind_, {}};
}

HomogeneousPoint SymmetricSpace::act(const Matrix& g, const HomogeneousPoint& p) const {
  require_same_shape(g, Matrix(dim_, dim_), "act");
  if (kind_ == SpaceKind::EuclideanType) {
    ComplexVector h(n_ + 1);
    h.head(n_) = p.coords;
    h(n_) = 1.0;
    return {kind_, (g * h).head(n_)};
  }
  HomogeneousPoint out{kind_, g * p.coords};
  return kind_ == SpaceKind::Sphere ? out : align_gauge(out);
}

Matrix SymmetricSpace::random_algebra(std::mt19937_64& rng, double scale) const {
  const Eigen::Index n = n_;
  switch (kind_) {
    case SpaceKind::Sphere: {
      const Matrix g = random_gaussian(dim_, dim_, rng, false);
      return scale * 0.5 * (g - g.transpose());
    }
    case SpaceKind::ComplexProjective: {
      const Matrix g = random_gaussian(dim_, dim_, rng, true);
      Matrix x = 0.5 * (g - g.adjoint());
      x -= (x.trace() / static_cast<double>(dim_)) * Matrix::Identity(dim_, dim_);
      return scale * x;
    }
    case SpaceKind::QuaternionProjective: {
      const Eigen::Index m = n + 1;
      const Matrix ga = random_gaussian(m, m, rng, true);
      const Matrix gb = random_gaussian(m, m, rng, true);
      const Matrix a = 0.5 * (ga - ga.adjoint());
      const Matrix b = 0.5 * (gb + gb.transpose());
      Matrix x(dim_, dim_);
      x << a, b, -b.conjugate(), a.conjugate();
      return scale * x;
    }
    case SpaceKind::EuclideanType: {
      const Matrix g = random_gaussian(n, n + 1, rng, false);
      Matrix x = Matrix::Zero(dim_, dim_);
      x.topLeftCorner(n, n) = 0.5 * (g.leftCols(n) - g.leftCols(n).transpose());
      x.block(0, n, n, 1) = g.col(n);
      return scale * x;
    }
  }
  return {};
}

Matrix SymmetricSpace::random_k(std::mt19937_64& rng, double scale) const {
  return proj_k(random_algebra(rng, scale));
}

Matrix SymmetricSpace::random_m(std::mt19937_64& rng, double scale) const {
  return proj_m(random_algebra(rng, scale));
}

GroupElement SymmetricSpace::random_group(std::mt19937_64& rng, double scale) const {
  return exp_group(random_algebra(rng, scale), group_kind());
}

GroupElement SymmetricSpace::random_isotropy(std::mt19937_64& rng, double scale) const {
  return exp_group(random_k(rng, scale), group_kind());
}

Matrix sphere_m(const RealVector& u) {
  return SymmetricSpace::sphere(static_cast<int>(u.size())).m_from_coords(u.cast<Complex>());
}

Matrix sphere_m_exp(const RealVector& u) {
  const Eigen::Index n = u.size();
  const Matrix a = sphere_m(u);
  const double r = u.norm();
  Matrix out = Matrix::Identity(n + 1, n + 1);
  if (r == 0.0) return out;
  out += (std::sin(r) / r) * a + ((1.0 - std::cos(r)) / (r * r)) * (a * a);
  return out;
}

}  // namespace bhlab
