// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0
//
// The commutative C*-algebra A = C(X) for a finite spectrum X: tuples of
// complex numbers indexed by the points of X, with pointwise operations,
// the sup norm, and the positive-cone order.

#ifndef MODFRAME_ALGEBRA_HPP
#define MODFRAME_ALGEBRA_HPP

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "modframe/errors.hpp"

namespace modframe {

using Complex = std::complex<double>;

/// Default tolerance for positive-cone decisions. Every downstream order
/// check (frame inequality, optimality gaps) inherits this one knob unless
/// the caller overrides it.
inline constexpr double kDefaultPositivityTol = 1e-9;

/// An ordered finite set of distinct point labels. The ordering is fixed at
/// construction and reproduced in every serialization.
class FiniteSpectrum {
 public:
  explicit FiniteSpectrum(std::vector<std::string> points);

  std::size_t size() const { return points_->size(); }
  const std::vector<std::string>& points() const { return *points_; }
  const std::string& point(std::size_t i) const { return (*points_)[i]; }

  friend bool operator==(const FiniteSpectrum& a, const FiniteSpectrum& b) {
    return a.points_ == b.points_ || *a.points_ == *b.points_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> points_;
};

/// An element of C(X): one complex value per point of X.
class AlgebraElement {
 public:
  AlgebraElement(FiniteSpectrum spectrum, std::vector<Complex> values);

  static AlgebraElement zero(const FiniteSpectrum& spectrum);
  static AlgebraElement unit(const FiniteSpectrum& spectrum);
  static AlgebraElement constant(const FiniteSpectrum& spectrum, Complex c);

  const FiniteSpectrum& spectrum() const { return spectrum_; }
  const std::vector<Complex>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  Complex operator[](std::size_t i) const { return values_[i]; }

  /// Pointwise complex conjugate (the *-operation of C(X)).
  AlgebraElement adjoint() const;

  /// The C*-norm: sup over points of the modulus.
  double norm() const;

 private:
  FiniteSpectrum spectrum_;
  std::vector<Complex> values_;
};

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a);
/// Pointwise product; commutative by construction.
AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(Complex c, const AlgebraElement& a);

/// a >= 0 in the positive cone: every value has |Im| <= tol and Re >= -tol.
bool is_positive(const AlgebraElement& a, double tol = kDefaultPositivityTol);

/// a <= b in the positive cone: b - a >= 0.
bool leq(const AlgebraElement& a, const AlgebraElement& b,
         double tol = kDefaultPositivityTol);

namespace detail {
void require_same_spectrum(const FiniteSpectrum& a, const FiniteSpectrum& b,
                           const char* what);
}  // namespace detail

}  // namespace modframe

#endif  // MODFRAME_ALGEBRA_HPP
