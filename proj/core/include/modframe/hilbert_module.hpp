// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0
//
// Finitely generated Hilbert C(X)-modules as fiber-fields of complex
// Hilbert spaces: one finite-dimensional fiber per point of X. Elements
// are fiber-fields of vectors, adjointable operators are fiber-fields of
// matrices, and every computation decomposes fiberwise.

#ifndef MODFRAME_HILBERT_MODULE_HPP
#define MODFRAME_HILBERT_MODULE_HPP

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "modframe/algebra.hpp"
#include "modframe/rng.hpp"

namespace modframe {

/// Eigenvalues below this floor are treated as singular by the inversion
/// routines. Single auditable singularity policy for the whole library.
inline constexpr double kDefaultEigFloor = 1e-8;

/// Relative cutoff for every rank decision (SVD-based).
inline constexpr double kDefaultRankCutoff = 1e-8;

/// A module shape: the spectrum plus one fiber dimension per point.
/// Dimensions may vary across points (projective, non-free modules) and may
/// be zero at some points; at least one fiber must be positive-dimensional.
class ModuleShape {
 public:
  ModuleShape(FiniteSpectrum spectrum, std::vector<Eigen::Index> fiber_dims);

  const FiniteSpectrum& spectrum() const { return spectrum_; }
  std::size_t num_points() const { return dims_->size(); }
  Eigen::Index dim(std::size_t t) const { return (*dims_)[t]; }
  const std::vector<Eigen::Index>& fiber_dims() const { return *dims_; }
  /// Sum of the fiber dimensions (used for sizing flattened solves).
  Eigen::Index total_dim() const;

  friend bool operator==(const ModuleShape& a, const ModuleShape& b) {
    return a.spectrum_ == b.spectrum_ &&
           (a.dims_ == b.dims_ || *a.dims_ == *b.dims_);
  }

 private:
  FiniteSpectrum spectrum_;
  std::shared_ptr<const std::vector<Eigen::Index>> dims_;
};

/// An element of the module: one complex vector per point, of that point's
/// fiber dimension. Immutable after construction.
class ModuleElement {
 public:
  ModuleElement(ModuleShape shape, std::vector<Eigen::VectorXcd> fibers);

  static ModuleElement zero(const ModuleShape& shape);

  const ModuleShape& shape() const { return shape_; }
  const Eigen::VectorXcd& fiber(std::size_t t) const { return fibers_[t]; }
  std::size_t num_points() const { return fibers_.size(); }

  /// Module norm ||x|| = ||<x,x>||^(1/2) = sup over fibers of the Euclidean
  /// fiber norm.
  double norm() const;

  bool is_zero() const;

 private:
  ModuleShape shape_;
  std::vector<Eigen::VectorXcd> fibers_;
};

/// <x,y>(t) = sum_i x_i(t) conj(y_i(t)). A-linear in the first slot,
/// conjugate-linear in the second, <x,y> = <y,x>*.
AlgebraElement inner(const ModuleElement& x, const ModuleElement& y);

ModuleElement operator+(const ModuleElement& x, const ModuleElement& y);
ModuleElement operator-(const ModuleElement& x, const ModuleElement& y);
ModuleElement operator*(Complex c, const ModuleElement& x);
/// The module action (a x)(t) = a(t) x(t).
ModuleElement operator*(const AlgebraElement& a, const ModuleElement& x);

/// An adjointable A-linear operator between two modules over the same
/// spectrum: one codomain_dim(t) x domain_dim(t) complex matrix per point.
class ModuleOperator {
 public:
  ModuleOperator(ModuleShape domain, ModuleShape codomain,
                 std::vector<Eigen::MatrixXcd> fibers);

  static ModuleOperator identity(const ModuleShape& shape);
  static ModuleOperator zero(const ModuleShape& domain,
                             const ModuleShape& codomain);

  const ModuleShape& domain() const { return domain_; }
  const ModuleShape& codomain() const { return codomain_; }
  const Eigen::MatrixXcd& fiber(std::size_t t) const { return fibers_[t]; }
  std::size_t num_points() const { return fibers_.size(); }
  bool is_endomorphism() const { return domain_ == codomain_; }

  ModuleOperator adjoint() const;
  ModuleElement apply(const ModuleElement& x) const;
  /// this o rhs (apply rhs first).
  ModuleOperator compose(const ModuleOperator& rhs) const;

  /// Operator norm: max over fibers of the spectral norm.
  double norm() const;
  /// Hilbert-Schmidt norm: sqrt of the summed squared Frobenius norms.
  double hs_norm() const;

 private:
  ModuleShape domain_;
  ModuleShape codomain_;
  std::vector<Eigen::MatrixXcd> fibers_;
};

ModuleOperator operator+(const ModuleOperator& a, const ModuleOperator& b);
ModuleOperator operator-(const ModuleOperator& a, const ModuleOperator& b);
ModuleOperator operator*(Complex c, const ModuleOperator& a);
/// Composition a o b.
ModuleOperator operator*(const ModuleOperator& a, const ModuleOperator& b);

/// Hilbert-Schmidt pairing sum_t trace(a(t)* b(t)), the inner product used
/// to orthonormalize operator-space bases.
Complex hs_dot(const ModuleOperator& a, const ModuleOperator& b);

/// Per-fiber Hermitian eigendecomposition M = V diag(lambda) V*, eigenvalues
/// ascending, V unitary. Deterministic given the input bits.
struct HermitianEigen {
  std::vector<Eigen::VectorXd> eigenvalues;
  std::vector<Eigen::MatrixXcd> eigenvectors;
};

/// Requires M fiberwise Hermitian within tol (relative, sup over fibers);
/// the residual contract is ||M V - V diag(lambda)|| <= 1e-10 ||M||.
HermitianEigen herm_eig(const ModuleOperator& m, double tol = 1e-8);

enum class SpectralFn { kSqrt, kInvSqrt, kInv, kLogUnitary };

/// Fiberwise functional calculus V f(diag lambda) V*.
///
/// kSqrt/kInvSqrt/kInv require a fiberwise Hermitian operator whose
/// eigenvalues all sit above `floor` (sqrt tolerates eigenvalues >= -floor,
/// clamped to zero). kLogUnitary requires a fiberwise unitary input and
/// returns the skew-Hermitian K with exp(K) = M, phases taken in the
/// principal branch (-pi, pi]; the eigenvalue -1 maps to i*pi.
ModuleOperator spectral_fn(const ModuleOperator& m, SpectralFn fn,
                           double floor = kDefaultEigFloor);

/// exp(K) for fiberwise skew-Hermitian K (functional calculus of -iK).
ModuleOperator exp_skew(const ModuleOperator& k);

/// exp(H) for fiberwise Hermitian H.
ModuleOperator exp_hermitian(const ModuleOperator& h);

/// Element with independent standard complex Gaussian fiber entries.
ModuleElement random_element(const ModuleShape& shape, Rng& rng);

/// Operator with independent standard complex Gaussian fiber entries.
ModuleOperator random_operator(const ModuleShape& domain,
                               const ModuleShape& codomain, Rng& rng);

}  // namespace modframe

#endif  // MODFRAME_HILBERT_MODULE_HPP
