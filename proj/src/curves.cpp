#include "bhlab/curves.hpp"

#include "bhlab/numdiff.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bhlab {

namespace {

constexpr int kStencilNodes = 7;

// Indices of `count` nodes spaced `stride` apart, as centred on `idx` as the grid allows.
std::vector<std::size_t> stencil_indices(std::size_t idx, std::size_t size, int stride,
                                         int count) {
  std::size_t s = static_cast<std::size_t>(std::max(1, stride));
  const std::size_t span_needed = static_cast<std::size_t>(count - 1);
  if (size - 1 < span_needed * s) {
    s = std::max<std::size_t>(1, (size - 1) / span_needed);
  }
  const std::size_t n = std::min<std::size_t>(count, (size - 1) / s + 1);
  const std::size_t half = (n - 1) / 2 * s;
  std::size_t start = idx > half ? idx - half : 0;
  if (start + (n - 1) * s > size - 1) start = size - 1 - (n - 1) * s;
  std::vector<std::size_t> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = start + k * s;
  return out;
}

Matrix weighted_sum(const std::vector<Matrix>& values, const std::vector<std::size_t>& idx,
                    const std::vector<double>& w) {
  Matrix out = Matrix::Zero(values[idx[0]].rows(), values[idx[0]].cols());
  for (std::size_t k = 0; k < idx.size(); ++k) out += w[k] * values[idx[k]];
  return out;
}

}  // namespace

CurveFamily CurveFamily::analytic(SymmetricSpace space, JetFn jet) {
  CurveFamily f(space, DerivativeSource::Analytic);
  f.jet_ = std::move(jet);
  return f;
}

CurveFamily CurveFamily::finite_difference(SymmetricSpace space, ValueFn value,
                                           bool fallback_enabled) {
  CurveFamily f(space, DerivativeSource::FiniteDifference);
  f.value_ = std::move(value);
  f.fallback_enabled_ = fallback_enabled;
  return f;
}

CurveFamily CurveFamily::gridded(SymmetricSpace space, std::vector<double> times,
                                 std::vector<Matrix> values, int derivative_stride) {
  if (times.size() != values.size()) {
    throw std::invalid_argument("gridded family: times and values differ in length");
  }
  if (times.size() < 5) {
    throw std::invalid_argument("gridded family: at least 5 samples are required");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("gridded family: sample times must be strictly increasing");
    }
  }
  CurveFamily f(space, DerivativeSource::FiniteDifference);
  auto grid = std::make_shared<Grid>();
  grid->times = std::move(times);
  grid->values = std::move(values);
  grid->stride = std::max(1, derivative_stride);
  f.grid_ = std::move(grid);
  return f;
}

std::optional<std::pair<double, double>> CurveFamily::domain() const {
  if (!grid_) return std::nullopt;
  return std::make_pair(grid_->times.front() - offset_, grid_->times.back() - offset_);
}

void CurveFamily::check_domain(double t) const {
  if (auto d = domain()) {
    const double slack = 1e-9 * std::max(1.0, std::abs(t));
    if (t < d->first - slack || t > d->second + slack) {
      std::ostringstream os;
      os << "curve family: t = " << t << " outside [" << d->first << ", " << d->second << "]";
      throw std::out_of_range(os.str());
    }
  }
}

Matrix CurveFamily::value(double t) const {
  check_domain(t);
  const double s = t + offset_;
  if (jet_) return jet_(s).value;
  if (value_) return value_(s);
  return grid_jet(s, false).value;
}

CurveJet CurveFamily::jet(double t) const {
  check_domain(t);
  const double s = t + offset_;
  if (jet_) return jet_(s);
  if (value_) {
    if (!fallback_enabled_) {
      throw MissingDerivatives("curve family provides no derivatives and the finite-difference "
                               "fallback is disabled");
    }
    return central_jet(s);
  }
  return grid_jet(s, true);
}

CurveJet CurveFamily::central_jet(double t) const {
  const auto& f = value_;
  auto d1 = [&](double h) -> Matrix { return (f(t + h) - f(t - h)) / (2.0 * h); };
  auto d2 = [&](double h) -> Matrix { return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h); };
  auto d3 = [&](double h) -> Matrix {
    return (f(t + 2 * h) - 2.0 * f(t + h) + 2.0 * f(t - h) - f(t - 2 * h)) / (2.0 * h * h * h);
  };
  auto richardson = [](const Matrix& coarse, const Matrix& fine) -> Matrix {
    return (4.0 * fine - coarse) / 3.0;
  };
  const double h1 = central_step(1, t);
  const double h2 = central_step(2, t);
  const double h3 = central_step(3, t);
  return {f(t), richardson(d1(h1), d1(h1 / 2)), richardson(d2(h2), d2(h2 / 2)),
          richardson(d3(h3), d3(h3 / 2))};
}

CurveJet CurveFamily::grid_jet(double t, bool derivatives) const {
  const auto& g = *grid_;
  const auto it = std::lower_bound(g.times.begin(), g.times.end(), t);
  std::size_t idx = static_cast<std::size_t>(it - g.times.begin());
  if (idx == g.times.size()) idx = g.times.size() - 1;
  if (idx > 0 && std::abs(g.times[idx - 1] - t) < std::abs(g.times[idx] - t)) --idx;

  auto eval = [&](int stride, int order) {
    const auto nodes = stencil_indices(idx, g.times.size(), stride, kStencilNodes);
    std::vector<double> x(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) x[k] = g.times[nodes[k]];
    const int max_order = std::min<int>(order, static_cast<int>(nodes.size()) - 1);
    auto w = fd_weights(t, x, max_order);
    std::vector<Matrix> out;
    for (int k = 0; k <= order; ++k) {
      if (k <= max_order) {
        out.push_back(weighted_sum(g.values, nodes, w[k]));
      } else {
        out.push_back(Matrix::Zero(g.values[0].rows(), g.values[0].cols()));
      }
    }
    return out;
  };

  CurveJet jet;
  if (t == g.times[idx]) {
    jet.value = g.values[idx];
  } else {
    jet.value = eval(1, 0)[0];
  }
  if (derivatives) {
    auto d = eval(g.stride, 3);
    jet.d1 = std::move(d[1]);
    jet.d2 = std::move(d[2]);
    jet.d3 = std::move(d[3]);
  }
  return jet;
}

CurveFamily CurveFamily::shifted(double s0) const {
  CurveFamily copy = *this;
  copy.offset_ += s0;
  return copy;
}

double CurveFamily::derivative_mismatch(double t) const {
  if (source_ != DerivativeSource::Analytic) {
    throw std::logic_error("derivative_mismatch: family has no analytic derivatives");
  }
  const double h = central_step(1, t);
  const CurveJet j = jet(t);
  const Matrix fd = (value(t + h) - value(t - h)) / (2.0 * h);
  return norm(j.d1 - fd);
}

CurveFamily horizontal_family(const SymmetricSpace& space,
                              std::function<CoordinateJet(double)> coords) {
  return CurveFamily::analytic(space, [space, coords = std::move(coords)](double t) {
    const CoordinateJet c = coords(t);
    return CurveJet{space.m_from_coords(c.value), space.m_from_coords(c.d1),
                    space.m_from_coords(c.d2), space.m_from_coords(c.d3)};
  });
}

Matrix harmonic_residual(const CurveFamily& family, double t) {
  const SymmetricSpace& space = family.space();
  const CurveJet j = family.jet(t);
  const Matrix fk = space.proj_k(j.value);
  const Matrix fm = space.proj_m(j.value);
  const Matrix dfm = space.proj_m(j.d1);
  return space.proj_m(dfm + bracket(fk, fm));
}

Matrix biharmonic_residual(const CurveFamily& family, double t) {
  const SymmetricSpace& space = family.space();
  const CurveJet j = family.jet(t);
  const Matrix fk = space.proj_k(j.value);
  const Matrix fk1 = space.proj_k(j.d1);
  const Matrix fk2 = space.proj_k(j.d2);
  const Matrix fm = space.proj_m(j.value);
  const Matrix fm1 = space.proj_m(j.d1);
  const Matrix fm2 = space.proj_m(j.d2);
  const Matrix fm3 = space.proj_m(j.d3);

  const Matrix h = fm1 + bracket(fk, fm);
  const Matrix h2 = fm3 + bracket(fk2, fm) + 2.0 * bracket(fk1, fm1) + bracket(fk, fm2);
  return space.proj_m(-h2 + bracket(bracket(h, fm), fm));
}

Matrix horizontal_biharmonic_residual(const SymmetricSpace& space, const CurveJet& jet) {
  const Matrix fm = space.proj_m(jet.value);
  const Matrix fm1 = space.proj_m(jet.d1);
  const Matrix fm3 = space.proj_m(jet.d3);
  return -fm3 + bracket(bracket(fm1, fm), fm);
}

RealVector reduced_residual_sphere(const RealVectorJet& u) {
  return -u.d3 + u.d1.dot(u.value) * u.value - u.value.squaredNorm() * u.d1;
}

ComplexVector reduced_residual_cpn(const CoordinateJet& z) {
  const Eigen::Index n = z.value.size();
  ComplexVector r = -z.d3;
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      acc += (z.value(i) * std::conj(z.d1(j)) - z.d1(i) * std::conj(z.value(j))) * z.value(j) -
             z.value(i) * (std::conj(z.value(j)) * z.d1(j) - std::conj(z.d1(j)) * z.value(j));
    }
    r(i) += acc;
  }
  return r;
}

std::pair<ComplexVector, ComplexVector> reduced_residual_hpn(const CoordinateJet& z,
                                                             const CoordinateJet& w) {
  auto inner = [](const ComplexVector& a, const ComplexVector& b) {
    return (a.array() * b.conjugate().array()).sum();
  };
  const ComplexVector& Z = z.value;
  const ComplexVector& W = w.value;
  const ComplexVector& dZ = z.d1;
  const ComplexVector& dW = w.d1;
  const double s = Z.squaredNorm() + W.squaredNorm();
  const Complex c = 2.0 * inner(Z, dZ) + 2.0 * inner(W, dW) - inner(dZ, Z) - inner(dW, W);
  const Complex e = inner(dZ, W.conjugate()) - inner(dW, Z.conjugate());
  ComplexVector rz = -z.d3 - s * dZ + c * Z - 3.0 * e * W.conjugate();
  ComplexVector rw = -w.d3 - s * dW + c * W + 3.0 * e * Z.conjugate();
  return {std::move(rz), std::move(rw)};
}

}  // namespace bhlab
