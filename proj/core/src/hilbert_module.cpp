// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0

#include "modframe/hilbert_module.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace modframe {

ModuleShape::ModuleShape(FiniteSpectrum spectrum,
                         std::vector<Eigen::Index> fiber_dims)
    : spectrum_(std::move(spectrum)) {
  if (fiber_dims.size() != spectrum_.size()) {
    throw ShapeError("module shape needs one fiber dimension per point");
  }
  bool any_positive = false;
  for (Eigen::Index d : fiber_dims) {
    if (d < 0) throw ShapeError("fiber dimensions must be nonnegative");
    any_positive = any_positive || d > 0;
  }
  if (!any_positive) {
    throw ShapeError("at least one fiber must have positive dimension");
  }
  dims_ = std::make_shared<const std::vector<Eigen::Index>>(std::move(fiber_dims));
}

Eigen::Index ModuleShape::total_dim() const {
  return std::accumulate(dims_->begin(), dims_->end(), Eigen::Index{0});
}

ModuleElement::ModuleElement(ModuleShape shape,
                             std::vector<Eigen::VectorXcd> fibers)
    : shape_(std::move(shape)), fibers_(std::move(fibers)) {
  if (fibers_.size() != shape_.num_points()) {
    throw ShapeError("module element needs one fiber per point");
  }
  for (std::size_t t = 0; t < fibers_.size(); ++t) {
    if (fibers_[t].size() != shape_.dim(t)) {
      throw ShapeError("fiber size does not match the module shape");
    }
  }
}

ModuleElement ModuleElement::zero(const ModuleShape& shape) {
  std::vector<Eigen::VectorXcd> fibers(shape.num_points());
  for (std::size_t t = 0; t < fibers.size(); ++t) {
    fibers[t] = Eigen::VectorXcd::Zero(shape.dim(t));
  }
  return ModuleElement(shape, std::move(fibers));
}

double ModuleElement::norm() const {
  double sup = 0.0;
  for (const auto& f : fibers_) sup = std::max(sup, f.norm());
  return sup;
}

bool ModuleElement::is_zero() const {
  for (const auto& f : fibers_) {
    if (f.size() > 0 && f.norm() > 0.0) return false;
  }
  return true;
}

AlgebraElement inner(const ModuleElement& x, const ModuleElement& y) {
  if (!(x.shape() == y.shape())) {
    throw ShapeError("inner product: shape mismatch");
  }
  std::vector<Complex> values(x.num_points());
  for (std::size_t t = 0; t < x.num_points(); ++t) {
    // <x,y>(t) = sum_i x_i conj(y_i); Eigen's dot conjugates its receiver.
    values[t] = y.fiber(t).dot(x.fiber(t));
  }
  return AlgebraElement(x.shape().spectrum(), std::move(values));
}

namespace {
template <typename F>
ModuleElement zip_elements(const ModuleElement& x, const ModuleElement& y,
                           const char* what, F f) {
  if (!(x.shape() == y.shape())) throw ShapeError(std::string(what) + ": shape mismatch");
  std::vector<Eigen::VectorXcd> fibers(x.num_points());
  for (std::size_t t = 0; t < x.num_points(); ++t) fibers[t] = f(x.fiber(t), y.fiber(t));
  return ModuleElement(x.shape(), std::move(fibers));
}
}  // namespace

ModuleElement operator+(const ModuleElement& x, const ModuleElement& y) {
  return zip_elements(x, y, "element add",
                      [](const auto& a, const auto& b) { return (a + b).eval(); });
}

ModuleElement operator-(const ModuleElement& x, const ModuleElement& y) {
  return zip_elements(x, y, "element sub",
                      [](const auto& a, const auto& b) { return (a - b).eval(); });
}

ModuleElement operator*(Complex c, const ModuleElement& x) {
  std::vector<Eigen::VectorXcd> fibers(x.num_points());
  for (std::size_t t = 0; t < x.num_points(); ++t) fibers[t] = c * x.fiber(t);
  return ModuleElement(x.shape(), std::move(fibers));
}

ModuleElement operator*(const AlgebraElement& a, const ModuleElement& x) {
  detail::require_same_spectrum(a.spectrum(), x.shape().spectrum(), "module action");
  std::vector<Eigen::VectorXcd> fibers(x.num_points());
  for (std::size_t t = 0; t < x.num_points(); ++t) fibers[t] = a[t] * x.fiber(t);
  return ModuleElement(x.shape(), std::move(fibers));
}

ModuleOperator::ModuleOperator(ModuleShape domain, ModuleShape codomain,
                               std::vector<Eigen::MatrixXcd> fibers)
    : domain_(std::move(domain)), codomain_(std::move(codomain)),
      fibers_(std::move(fibers)) {
  detail::require_same_spectrum(domain_.spectrum(), codomain_.spectrum(),
                                "operator shapes");
  if (fibers_.size() != domain_.num_points()) {
    throw ShapeError("module operator needs one matrix per point");
  }
  for (std::size_t t = 0; t < fibers_.size(); ++t) {
    if (fibers_[t].rows() != codomain_.dim(t) || fibers_[t].cols() != domain_.dim(t)) {
      throw ShapeError("operator fiber size does not match the shapes");
    }
  }
}

ModuleOperator ModuleOperator::identity(const ModuleShape& shape) {
  std::vector<Eigen::MatrixXcd> fibers(shape.num_points());
  for (std::size_t t = 0; t < fibers.size(); ++t) {
    fibers[t] = Eigen::MatrixXcd::Identity(shape.dim(t), shape.dim(t));
  }
  return ModuleOperator(shape, shape, std::move(fibers));
}

ModuleOperator ModuleOperator::zero(const ModuleShape& domain,
                                    const ModuleShape& codomain) {
  std::vector<Eigen::MatrixXcd> fibers(domain.num_points());
  for (std::size_t t = 0; t < fibers.size(); ++t) {
    fibers[t] = Eigen::MatrixXcd::Zero(codomain.dim(t), domain.dim(t));
  }
  return ModuleOperator(domain, codomain, std::move(fibers));
}

ModuleOperator ModuleOperator::adjoint() const {
  std::vector<Eigen::MatrixXcd> fibers(fibers_.size());
  for (std::size_t t = 0; t < fibers_.size(); ++t) fibers[t] = fibers_[t].adjoint();
  return ModuleOperator(codomain_, domain_, std::move(fibers));
}

ModuleElement ModuleOperator::apply(const ModuleElement& x) const {
  if (!(x.shape() == domain_)) throw ShapeError("operator apply: shape mismatch");
  std::vector<Eigen::VectorXcd> fibers(fibers_.size());
  for (std::size_t t = 0; t < fibers_.size(); ++t) fibers[t] = fibers_[t] * x.fiber(t);
  return ModuleElement(codomain_, std::move(fibers));
}

ModuleOperator ModuleOperator::compose(const ModuleOperator& rhs) const {
  if (!(rhs.codomain_ == domain_)) throw ShapeError("operator compose: shape mismatch");
  std::vector<Eigen::MatrixXcd> fibers(fibers_.size());
  for (std::size_t t = 0; t < fibers_.size(); ++t) fibers[t] = fibers_[t] * rhs.fibers_[t];
  return ModuleOperator(rhs.domain_, codomain_, std::move(fibers));
}

double ModuleOperator::norm() const {
  double sup = 0.0;
  for (const auto& f : fibers_) {
    if (f.size() == 0) continue;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(f);
    if (svd.singularValues().size() > 0) {
      sup = std::max(sup, svd.singularValues()(0));
    }
  }
  return sup;
}

double ModuleOperator::hs_norm() const {
  double sq = 0.0;
  for (const auto& f : fibers_) sq += f.squaredNorm();
  return std::sqrt(sq);
}

namespace {
template <typename F>
ModuleOperator zip_operators(const ModuleOperator& a, const ModuleOperator& b,
                             const char* what, F f) {
  if (!(a.domain() == b.domain()) || !(a.codomain() == b.codomain())) {
    throw ShapeError(std::string(what) + ": shape mismatch");
  }
  std::vector<Eigen::MatrixXcd> fibers(a.num_points());
  for (std::size_t t = 0; t < a.num_points(); ++t) fibers[t] = f(a.fiber(t), b.fiber(t));
  return ModuleOperator(a.domain(), a.codomain(), std::move(fibers));
}
}  // namespace

ModuleOperator operator+(const ModuleOperator& a, const ModuleOperator& b) {
  return zip_operators(a, b, "operator add",
                       [](const auto& x, const auto& y) { return (x + y).eval(); });
}

ModuleOperator operator-(const ModuleOperator& a, const ModuleOperator& b) {
  return zip_operators(a, b, "operator sub",
                       [](const auto& x, const auto& y) { return (x - y).eval(); });
}

ModuleOperator operator*(Complex c, const ModuleOperator& a) {
  std::vector<Eigen::MatrixXcd> fibers(a.num_points());
  for (std::size_t t = 0; t < a.num_points(); ++t) fibers[t] = c * a.fiber(t);
  return ModuleOperator(a.domain(), a.codomain(), std::move(fibers));
}

ModuleOperator operator*(const ModuleOperator& a, const ModuleOperator& b) {
  return a.compose(b);
}

Complex hs_dot(const ModuleOperator& a, const ModuleOperator& b) {
  if (!(a.domain() == b.domain()) || !(a.codomain() == b.codomain())) {
    throw ShapeError("hs_dot: shape mismatch");
  }
  Complex sum(0.0, 0.0);
  for (std::size_t t = 0; t < a.num_points(); ++t) {
    sum += (a.fiber(t).adjoint() * b.fiber(t)).trace();
  }
  return sum;
}

HermitianEigen herm_eig(const ModuleOperator& m, double tol) {
  if (!m.is_endomorphism()) {
    throw ShapeError("herm_eig: operator must be an endomorphism");
  }
  const double scale = m.norm();
  HermitianEigen out;
  out.eigenvalues.resize(m.num_points());
  out.eigenvectors.resize(m.num_points());
  for (std::size_t t = 0; t < m.num_points(); ++t) {
    const Eigen::MatrixXcd& f = m.fiber(t);
    if (f.size() == 0) {
      out.eigenvalues[t] = Eigen::VectorXd(0);
      out.eigenvectors[t] = Eigen::MatrixXcd(0, 0);
      continue;
    }
    const double herm_resid = (f - f.adjoint()).norm();
    if (herm_resid > tol * std::max(1.0, scale)) {
      throw PreconditionError("herm_eig: fiber is not Hermitian at tolerance");
    }
    // Symmetrize before solving so rounding in the input cannot leak into
    // complex eigenvalues.
    Eigen::MatrixXcd h = 0.5 * (f + f.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("herm_eig: eigensolver failed to converge");
    }
    out.eigenvalues[t] = solver.eigenvalues();
    out.eigenvectors[t] = solver.eigenvectors();
  }
  return out;
}

namespace {

ModuleOperator hermitian_calculus(const ModuleOperator& m, double floor,
                                  SpectralFn fn) {
  const HermitianEigen eig = herm_eig(m);
  std::vector<Eigen::MatrixXcd> fibers(m.num_points());
  for (std::size_t t = 0; t < m.num_points(); ++t) {
    const Eigen::VectorXd& lam = eig.eigenvalues[t];
    const Eigen::MatrixXcd& v = eig.eigenvectors[t];
    Eigen::VectorXd mapped(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      switch (fn) {
        case SpectralFn::kSqrt:
          if (lam(i) < -floor) {
            throw NumericalError("spectral sqrt: negative eigenvalue");
          }
          mapped(i) = std::sqrt(std::max(lam(i), 0.0));
          break;
        case SpectralFn::kInvSqrt:
          if (lam(i) < floor) {
            throw NumericalError("spectral inv_sqrt: eigenvalue below floor");
          }
          mapped(i) = 1.0 / std::sqrt(lam(i));
          break;
        case SpectralFn::kInv:
          if (std::abs(lam(i)) < floor) {
            throw NumericalError("spectral inv: eigenvalue below floor");
          }
          mapped(i) = 1.0 / lam(i);
          break;
        default:
          throw NumericalError("spectral_fn: unsupported function");
      }
    }
    fibers[t] = v * mapped.asDiagonal() * v.adjoint();
  }
  return ModuleOperator(m.domain(), m.codomain(), std::move(fibers));
}

// Skew-Hermitian logarithm of a fiberwise unitary operator, via the complex
// Schur form (Q exactly unitary; for a normal input the triangle is diagonal
// up to rounding). Phases land in the principal branch (-pi, pi].
ModuleOperator unitary_log(const ModuleOperator& m, double tol) {
  if (!m.is_endomorphism()) {
    throw ShapeError("log_unitary: operator must be an endomorphism");
  }
  std::vector<Eigen::MatrixXcd> fibers(m.num_points());
  for (std::size_t t = 0; t < m.num_points(); ++t) {
    const Eigen::MatrixXcd& f = m.fiber(t);
    if (f.size() == 0) {
      fibers[t] = Eigen::MatrixXcd(0, 0);
      continue;
    }
    const Eigen::Index n = f.rows();
    const double unitary_resid =
        (f.adjoint() * f - Eigen::MatrixXcd::Identity(n, n)).norm();
    if (unitary_resid > tol * std::sqrt(static_cast<double>(n))) {
      throw PreconditionError("log_unitary: fiber is not unitary at tolerance");
    }
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(f);
    if (schur.info() != Eigen::Success) {
      throw NumericalError("log_unitary: Schur decomposition failed");
    }
    Eigen::VectorXcd logs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Complex ev = schur.matrixT()(i, i);
      logs(i) = Complex(0.0, std::arg(ev));
    }
    const Eigen::MatrixXcd& q = schur.matrixU();
    Eigen::MatrixXcd k = q * logs.asDiagonal() * q.adjoint();
    fibers[t] = 0.5 * (k - k.adjoint().eval());
  }
  return ModuleOperator(m.domain(), m.codomain(), std::move(fibers));
}

}  // namespace

ModuleOperator spectral_fn(const ModuleOperator& m, SpectralFn fn, double floor) {
  if (fn == SpectralFn::kLogUnitary) return unitary_log(m, 1e-8);
  return hermitian_calculus(m, floor, fn);
}

ModuleOperator exp_skew(const ModuleOperator& k) {
  // exp(K) = exp(i H) with H = -i K Hermitian.
  const ModuleOperator h = Complex(0.0, -1.0) * k;
  const HermitianEigen eig = herm_eig(h);
  std::vector<Eigen::MatrixXcd> fibers(k.num_points());
  for (std::size_t t = 0; t < k.num_points(); ++t) {
    const Eigen::VectorXd& lam = eig.eigenvalues[t];
    const Eigen::MatrixXcd& v = eig.eigenvectors[t];
    Eigen::VectorXcd mapped(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      mapped(i) = std::exp(Complex(0.0, lam(i)));
    }
    fibers[t] = v * mapped.asDiagonal() * v.adjoint();
  }
  return ModuleOperator(k.domain(), k.codomain(), std::move(fibers));
}

ModuleOperator exp_hermitian(const ModuleOperator& h) {
  const HermitianEigen eig = herm_eig(h);
  std::vector<Eigen::MatrixXcd> fibers(h.num_points());
  for (std::size_t t = 0; t < h.num_points(); ++t) {
    const Eigen::VectorXd& lam = eig.eigenvalues[t];
    const Eigen::MatrixXcd& v = eig.eigenvectors[t];
    Eigen::VectorXd mapped(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) mapped(i) = std::exp(lam(i));
    fibers[t] = v * mapped.asDiagonal() * v.adjoint();
  }
  return ModuleOperator(h.domain(), h.codomain(), std::move(fibers));
}

ModuleElement random_element(const ModuleShape& shape, Rng& rng) {
  std::vector<Eigen::VectorXcd> fibers(shape.num_points());
  for (std::size_t t = 0; t < shape.num_points(); ++t) {
    Eigen::VectorXcd f(shape.dim(t));
    for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = complex_gaussian(rng);
    fibers[t] = std::move(f);
  }
  return ModuleElement(shape, std::move(fibers));
}

ModuleOperator random_operator(const ModuleShape& domain,
                               const ModuleShape& codomain, Rng& rng) {
  std::vector<Eigen::MatrixXcd> fibers(domain.num_points());
  for (std::size_t t = 0; t < domain.num_points(); ++t) {
    Eigen::MatrixXcd f(codomain.dim(t), domain.dim(t));
    for (Eigen::Index i = 0; i < f.rows(); ++i) {
      for (Eigen::Index j = 0; j < f.cols(); ++j) f(i, j) = complex_gaussian(rng);
    }
    fibers[t] = std::move(f);
  }
  return ModuleOperator(domain, codomain, std::move(fibers));
}

}  // namespace modframe
