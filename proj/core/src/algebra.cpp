// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0

#include "modframe/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <utility>

namespace modframe {

FiniteSpectrum::FiniteSpectrum(std::vector<std::string> points) {
  if (points.empty()) {
    throw ShapeError("spectrum must contain at least one point");
  }
  std::unordered_set<std::string> seen;
  for (const auto& p : points) {
    if (!seen.insert(p).second) {
      throw ShapeError("spectrum labels must be distinct, duplicate: " + p);
    }
  }
  points_ = std::make_shared<const std::vector<std::string>>(std::move(points));
}

AlgebraElement::AlgebraElement(FiniteSpectrum spectrum,
                               std::vector<Complex> values)
    : spectrum_(std::move(spectrum)), values_(std::move(values)) {
  if (values_.size() != spectrum_.size()) {
    throw ShapeError("algebra element needs one value per spectrum point");
  }
}

AlgebraElement AlgebraElement::zero(const FiniteSpectrum& spectrum) {
  return constant(spectrum, Complex(0.0, 0.0));
}

AlgebraElement AlgebraElement::unit(const FiniteSpectrum& spectrum) {
  return constant(spectrum, Complex(1.0, 0.0));
}

AlgebraElement AlgebraElement::constant(const FiniteSpectrum& spectrum,
                                        Complex c) {
  return AlgebraElement(spectrum, std::vector<Complex>(spectrum.size(), c));
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<Complex> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = std::conj(values_[i]);
  return AlgebraElement(spectrum_, std::move(out));
}

double AlgebraElement::norm() const {
  double m = 0.0;
  for (const Complex& v : values_) m = std::max(m, std::abs(v));
  return m;
}

namespace detail {
void require_same_spectrum(const FiniteSpectrum& a, const FiniteSpectrum& b,
                           const char* what) {
  if (!(a == b)) {
    throw ShapeError(std::string(what) + ": spectrum mismatch");
  }
}
}  // namespace detail

namespace {
template <typename F>
AlgebraElement pointwise(const AlgebraElement& a, const AlgebraElement& b,
                         const char* what, F f) {
  detail::require_same_spectrum(a.spectrum(), b.spectrum(), what);
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i], b[i]);
  return AlgebraElement(a.spectrum(), std::move(out));
}
}  // namespace

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  return pointwise(a, b, "algebra add", [](Complex x, Complex y) { return x + y; });
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  return pointwise(a, b, "algebra sub", [](Complex x, Complex y) { return x - y; });
}

AlgebraElement operator-(const AlgebraElement& a) {
  return Complex(-1.0, 0.0) * a;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  return pointwise(a, b, "algebra mul", [](Complex x, Complex y) { return x * y; });
}

AlgebraElement operator*(Complex c, const AlgebraElement& a) {
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
  return AlgebraElement(a.spectrum(), std::move(out));
}

bool is_positive(const AlgebraElement& a, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i].imag()) > tol) return false;
    if (a[i].real() < -tol) return false;
  }
  return true;
}

bool leq(const AlgebraElement& a, const AlgebraElement& b, double tol) {
  return is_positive(b - a, tol);
}

}  // namespace modframe
