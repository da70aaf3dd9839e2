// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0

#include "modframe/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace modframe {

std::string to_string(FrameKind kind) {
  switch (kind) {
    case FrameKind::kNotFrame: return "not_frame";
    case FrameKind::kFrame: return "frame";
    case FrameKind::kTightFrame: return "tight_frame";
    case FrameKind::kParsevalFrame: return "parseval_frame";
  }
  return "unknown";
}

FrameKind classify_frame(const FrameBounds& bounds, double tol) {
  if (!(bounds.lower > tol)) return FrameKind::kNotFrame;
  if (bounds.upper - bounds.lower > tol * bounds.upper) return FrameKind::kFrame;
  if (std::abs(bounds.lower - 1.0) <= tol && std::abs(bounds.upper - 1.0) <= tol) {
    return FrameKind::kParsevalFrame;
  }
  return FrameKind::kTightFrame;
}

FrameBounds bounds_of_positive_operator(const ModuleOperator& s) {
  const HermitianEigen eig = herm_eig(s);
  const FiniteSpectrum& spectrum = s.domain().spectrum();
  std::vector<Complex> lower_vals(s.num_points(), Complex(0.0, 0.0));
  std::vector<Complex> upper_vals(s.num_points(), Complex(0.0, 0.0));
  double lower = std::numeric_limits<double>::infinity();
  double upper = 0.0;
  bool saw_fiber = false;
  for (std::size_t t = 0; t < s.num_points(); ++t) {
    const Eigen::VectorXd& lam = eig.eigenvalues[t];
    if (lam.size() == 0) continue;
    saw_fiber = true;
    lower_vals[t] = Complex(lam(0), 0.0);
    upper_vals[t] = Complex(lam(lam.size() - 1), 0.0);
    lower = std::min(lower, lam(0));
    upper = std::max(upper, lam(lam.size() - 1));
  }
  if (!saw_fiber) lower = 0.0;
  FrameBounds out{std::max(lower, 0.0), upper,
                  AlgebraElement(spectrum, std::move(lower_vals)),
                  AlgebraElement(spectrum, std::move(upper_vals))};
  return out;
}

namespace {

std::vector<ModuleElement> validated_frame_vectors(std::vector<ModuleElement> v) {
  if (v.empty()) throw ShapeError("frame system needs at least one vector");
  for (const ModuleElement& x : v) {
    if (!(x.shape() == v.front().shape())) {
      throw ShapeError("frame vectors must share one shape");
    }
  }
  return v;
}

ModuleOperator build_analysis(const ModuleShape& shape,
                              const std::vector<ModuleElement>& vectors) {
  const Eigen::Index count = static_cast<Eigen::Index>(vectors.size());
  ModuleShape codomain(shape.spectrum(),
                       std::vector<Eigen::Index>(shape.num_points(), count));
  std::vector<Eigen::MatrixXcd> fibers(shape.num_points());
  for (std::size_t t = 0; t < shape.num_points(); ++t) {
    Eigen::MatrixXcd m(count, shape.dim(t));
    for (Eigen::Index j = 0; j < count; ++j) {
      m.row(j) = vectors[static_cast<std::size_t>(j)].fiber(t).conjugate().transpose();
    }
    fibers[t] = std::move(m);
  }
  return ModuleOperator(shape, codomain, std::move(fibers));
}

}  // namespace

FrameSystem::FrameSystem(std::vector<ModuleElement> vectors)
    : vectors_(validated_frame_vectors(std::move(vectors))),
      shape_(vectors_.front().shape()),
      analysis_(build_analysis(shape_, vectors_)),
      frame_op_(analysis_.adjoint() * analysis_),
      bounds_(bounds_of_positive_operator(frame_op_)) {}

FrameSystem canonical_dual(const FrameSystem& f, double tol) {
  if (!f.is_frame(tol)) {
    throw PreconditionError("canonical_dual: not a frame at tolerance");
  }
  const ModuleOperator s_inv = spectral_fn(f.frame_operator(), SpectralFn::kInv);
  std::vector<ModuleElement> duals;
  duals.reserve(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) duals.push_back(s_inv.apply(f.vector(j)));
  return FrameSystem(std::move(duals));
}

double reconstruct_residual(const FrameSystem& f, const ModuleElement& x,
                            double tol) {
  const FrameSystem dual = canonical_dual(f, tol);
  ModuleElement acc = ModuleElement::zero(f.shape());
  for (std::size_t j = 0; j < f.size(); ++j) {
    acc = acc + inner(x, dual.vector(j)) * f.vector(j);
  }
  return (x - acc).norm();
}

FrameSystem canonical_parseval(const FrameSystem& f, double tol) {
  if (!f.is_frame(tol)) {
    throw PreconditionError("canonical_parseval: not a frame at tolerance");
  }
  const ModuleOperator s_inv_sqrt =
      spectral_fn(f.frame_operator(), SpectralFn::kInvSqrt);
  std::vector<ModuleElement> out;
  out.reserve(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) out.push_back(s_inv_sqrt.apply(f.vector(j)));
  return FrameSystem(std::move(out));
}

MultiGenerator::MultiGenerator(std::vector<ModuleElement> generators)
    : generators_(std::move(generators)) {
  if (generators_.empty()) {
    throw ShapeError("multi-generator needs at least one generator");
  }
  for (const ModuleElement& g : generators_) {
    if (!(g.shape() == generators_.front().shape())) {
      throw ShapeError("generators must share one shape");
    }
  }
}

AlgebraElement energy_sum(const MultiGenerator& g) {
  AlgebraElement acc = AlgebraElement::zero(g.shape().spectrum());
  for (std::size_t k = 0; k < g.size(); ++k) {
    acc = acc + inner(g.generator(k), g.generator(k));
  }
  return acc;
}

}  // namespace modframe
