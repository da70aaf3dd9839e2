// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0
//
// Numerical commutants and bicommutants of operator families, the
// conjugate-linear pi-isomorphism between the left and right group-algebra
// commutants on l2_G(A), the A-valued trace, and partial isometries
// implementing projection equivalence inside an operator algebra.

#ifndef MODFRAME_COMMUTANT_HPP
#define MODFRAME_COMMUTANT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modframe/groupsys.hpp"

namespace modframe {

/// Relative residual below which an operator counts as a member of a span.
inline constexpr double kDefaultMembershipTol = 1e-8;

/// A linear basis of an operator space on one module, orthonormalized under
/// the Hilbert-Schmidt pairing for stable membership projections.
class OperatorAlgebraBasis {
 public:
  /// Orthonormalizes `basis` (dropping dependent elements at the rank
  /// cutoff) and detects the unital / star-closed flags.
  explicit OperatorAlgebraBasis(std::vector<ModuleOperator> basis);

  const ModuleShape& shape() const { return basis_.front().domain(); }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<ModuleOperator>& basis() const { return basis_; }
  /// Solution-space dimension per point of X (the global space is the
  /// fiberwise direct sum).
  const std::vector<Eigen::Index>& fiber_dimensions() const {
    return fiber_dims_;
  }

  bool unital() const { return unital_; }
  bool star_closed() const { return star_closed_; }

  /// Hilbert-Schmidt norm of M minus its orthogonal projection onto the span.
  double membership_residual(const ModuleOperator& m) const;
  /// membership_residual(M) <= tol * max(1, ||M||_HS).
  bool contains(const ModuleOperator& m,
                double tol = kDefaultMembershipTol) const;
  ModuleOperator project(const ModuleOperator& m) const;

  /// Element with independent standard complex Gaussian coefficients on the
  /// orthonormal basis.
  ModuleOperator random_element(Rng& rng) const;

 private:
  std::vector<ModuleOperator> basis_;  // HS-orthonormal
  std::vector<Eigen::Index> fiber_dims_;
  bool unital_ = false;
  bool star_closed_ = false;
};

/// Commutant of a family of endomorphisms on one module: per fiber, a basis
/// of {M : M op_k = op_k M for all k} from the vectorized nullspace; the
/// global basis is assembled fiber-blockwise (one block per point, zero
/// elsewhere), since an element of the commutant is any fiberwise choice.
OperatorAlgebraBasis commutant(const std::vector<ModuleOperator>& ops);

/// Commutant applied twice; contains span(ops).
OperatorAlgebraBasis bicommutant(const std::vector<ModuleOperator>& ops);

struct Lemma33Report {
  /// Per-fiber dimensions of {L}'', {R}', {R}'', {L}'.
  std::vector<Eigen::Index> left_bicomm_dims;
  std::vector<Eigen::Index> right_comm_dims;
  std::vector<Eigen::Index> right_bicomm_dims;
  std::vector<Eigen::Index> left_comm_dims;
  /// Max mutual membership residual for {L}'' = {R}' and {R}'' = {L}'.
  double span_equality_residual = 0.0;
  /// Max ||TS - ST|| over random T in {L}', S in {R}'.
  double cross_commute_residual = 0.0;
  bool passed = false;
};

/// Verifies {L}'' = {R}' and {R}'' = {L}' on l2_G(A), both directions,
/// plus TS = ST for seeded random T in {L}', S in {R}'.
Lemma33Report check_lemma33(const FiniteGroup& group,
                            const FiniteSpectrum& spectrum,
                            std::uint64_t seed = 0,
                            double membership_tol = kDefaultMembershipTol,
                            double commute_tol = 1e-9);

/// The standard-module machinery shared by the pi-map, the trace, and the
/// generator solver: l2_G(A) with its regular representations
/// and the algebras M = {L}'' (spanned fiberwise by the L_U) and
/// M' = {L}' (spanned fiberwise by the R_U).
class RegularContext {
 public:
  RegularContext(FiniteGroup group, FiniteSpectrum spectrum);

  const FiniteGroup& group() const { return group_; }
  const FiniteSpectrum& spectrum() const { return spectrum_; }
  const ModuleShape& shape() const { return shape_; }
  const UnitaryRepresentation& left() const { return left_; }
  const UnitaryRepresentation& right() const { return right_; }
  const ModuleElement& chi_identity() const { return chi_identity_; }
  /// M = {L_U}'' as a fiber-blockwise basis.
  const OperatorAlgebraBasis& left_algebra() const { return left_algebra_; }
  /// M' = {L_U}' as a fiber-blockwise basis.
  const OperatorAlgebraBasis& left_commutant() const { return left_commutant_; }

  /// pi(A), the unique operator in M' with pi(A) L_V chi_I = L_V A* chi_I;
  /// conjugate linear, pi(L_U) = R_U. Requires A in M.
  ModuleOperator pi_map(const ModuleOperator& a,
                        double tol = kDefaultMembershipTol) const;

  /// The A in M with pi(A) = T, characterized by A* chi_V = R_{V^-1} T chi_I
  /// (elements of M are fixed by their value on chi_I). Requires T in M'.
  ModuleOperator pi_inverse(const ModuleOperator& t,
                            double tol = kDefaultMembershipTol) const;

  /// phi(A) = <A chi_I, chi_I>; tracial and faithful on M.
  AlgebraElement trace_phi(const ModuleOperator& a) const;

 private:
  FiniteGroup group_;
  FiniteSpectrum spectrum_;
  ModuleShape shape_;
  UnitaryRepresentation left_;
  UnitaryRepresentation right_;
  ModuleElement chi_identity_;
  OperatorAlgebraBasis left_algebra_;
  OperatorAlgebraBasis left_commutant_;
};

/// A partial isometry C in span(alg) with CC* = I - P and C*C = I - Q.
///
/// P and Q must be projections in the span whose complements are
/// Murray-von Neumann equivalent inside the algebra (guaranteed along the
/// generator-solver pipeline; caller-guaranteed otherwise). Draws seeded
/// random elements D, takes the partial-isometry polar factor of
/// (I-P) D (I-Q), and retries (up to 16 draws) until the range and support
/// projections match.
ModuleOperator equivalent_projection_isometry(const OperatorAlgebraBasis& alg,
                                              const ModuleOperator& p,
                                              const ModuleOperator& q,
                                              Rng& rng, double tol = 1e-8);

}  // namespace modframe

#endif  // MODFRAME_COMMUTANT_HPP
