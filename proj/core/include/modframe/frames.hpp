// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0
//
// Modular frames: analysis/synthesis/frame operators, optimal frame bounds
// (scalar and fiberwise), classification, canonical dual, reconstruction,
// and Parseval canonicalization.

#ifndef MODFRAME_FRAMES_HPP
#define MODFRAME_FRAMES_HPP

#include <optional>
#include <string>
#include <vector>

#include "modframe/hilbert_module.hpp"

namespace modframe {

/// Scale-invariant default for frame classification decisions.
inline constexpr double kDefaultClassifyTol = 1e-8;

/// Optimal frame bounds. The scalars C <= D are the classical constants;
/// lower_fn/upper_fn are the fiberwise extremes of the frame operator's
/// spectrum (the order in C(X) is pointwise, so the scalar bounds are the
/// min/max of these functions over the positive-dimensional fibers).
struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
  AlgebraElement lower_fn;
  AlgebraElement upper_fn;
};

enum class FrameKind { kNotFrame, kFrame, kTightFrame, kParsevalFrame };

std::string to_string(FrameKind kind);

/// frame iff C > tol; tight iff (D - C) <= tol * D; Parseval iff tight and
/// |C - 1|, |D - 1| <= tol.
FrameKind classify_frame(const FrameBounds& bounds,
                         double tol = kDefaultClassifyTol);

/// A finite indexed family {x_j} in one module, with its analysis operator
/// into the standard module A^J, the frame operator S = T*T, and the
/// optimal bounds, all computed once at construction (immutable afterwards,
/// so caching is trivially race-free).
class FrameSystem {
 public:
  explicit FrameSystem(std::vector<ModuleElement> vectors);

  const ModuleShape& shape() const { return shape_; }
  std::size_t size() const { return vectors_.size(); }
  const ModuleElement& vector(std::size_t j) const { return vectors_[j]; }
  const std::vector<ModuleElement>& vectors() const { return vectors_; }

  /// T: H -> A^J; row j of the fiber matrix at t is conj(x_j(t))^T, so
  /// (Tx)_j = <x, x_j> and T* chi_j = x_j.
  const ModuleOperator& analysis_operator() const { return analysis_; }
  /// S = T*T, fiberwise sum_j x_j(t) x_j(t)*.
  const ModuleOperator& frame_operator() const { return frame_op_; }
  const FrameBounds& bounds() const { return bounds_; }

  FrameKind kind(double tol = kDefaultClassifyTol) const {
    return classify_frame(bounds_, tol);
  }
  bool is_frame(double tol = kDefaultClassifyTol) const {
    return kind(tol) != FrameKind::kNotFrame;
  }

 private:
  std::vector<ModuleElement> vectors_;
  ModuleShape shape_;
  ModuleOperator analysis_;
  ModuleOperator frame_op_;
  FrameBounds bounds_;
};

/// Fiberwise eigenvalue extremes of a Hermitian positive semidefinite
/// endomorphism (used for frame operators and span-compressed variants).
/// Zero-dimensional fibers report 0 in both functions and are skipped when
/// forming the scalar bounds.
FrameBounds bounds_of_positive_operator(const ModuleOperator& s);

/// The canonical dual frame {S^-1 x_j}. Requires a frame at tolerance.
FrameSystem canonical_dual(const FrameSystem& f,
                           double tol = kDefaultClassifyTol);

/// || x - sum_j <x, S^-1 x_j> x_j ||; contract <= 1e-8 ||x|| for frames.
double reconstruct_residual(const FrameSystem& f, const ModuleElement& x,
                            double tol = kDefaultClassifyTol);

/// The canonical Parseval companion {S^-1/2 x_j}. Requires a frame.
FrameSystem canonical_parseval(const FrameSystem& f,
                               double tol = kDefaultClassifyTol);

/// A finite tuple of generators Phi = (phi_1, ..., phi_N) sharing a shape.
class MultiGenerator {
 public:
  explicit MultiGenerator(std::vector<ModuleElement> generators);

  const ModuleShape& shape() const { return generators_.front().shape(); }
  std::size_t size() const { return generators_.size(); }
  const ModuleElement& generator(std::size_t k) const { return generators_[k]; }
  const std::vector<ModuleElement>& generators() const { return generators_; }

 private:
  std::vector<ModuleElement> generators_;
};

/// sum_k <phi_k, phi_k>.
AlgebraElement energy_sum(const MultiGenerator& g);

}  // namespace modframe

#endif  // MODFRAME_FRAMES_HPP
