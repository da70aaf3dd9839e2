// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0
//
// Finite groups given extensionally by Cayley tables, unitary
// representations on Hilbert C(X)-modules, the standard module l2_G(A) with
// its left/right regular representations, orbit frames, frame-vector
// classification, and the dilation of a complete Parseval frame vector.

#ifndef MODFRAME_GROUPSYS_HPP
#define MODFRAME_GROUPSYS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "modframe/frames.hpp"

namespace modframe {

/// A finite group as an ordered element list plus its multiplication table
/// (indices into the list). The table is validated exhaustively at
/// construction: closure, associativity, identity, inverses.
class FiniteGroup {
 public:
  FiniteGroup(std::vector<std::string> elements,
              std::vector<std::vector<int>> table);

  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);
  static FiniteGroup klein_four();
  /// Symmetric group on n letters, n <= 4 (order 24).
  static FiniteGroup symmetric(int n);
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

  std::size_t order() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::string& element(std::size_t i) const { return elements_[i]; }
  int index_of(const std::string& label) const;
  int mul(int i, int j) const { return table_[i][j]; }
  int inverse(int i) const { return inverse_[i]; }
  int identity() const { return identity_; }
  const std::vector<std::vector<int>>& table() const { return table_; }

 private:
  std::vector<std::string> elements_;
  std::vector<std::vector<int>> table_;
  int identity_ = 0;
  std::vector<int> inverse_;
};

/// A unitary representation: one operator per group element, all acting on
/// one module. Validated at construction: each image unitary, the
/// homomorphism law on every pair, identity mapped to the identity.
class UnitaryRepresentation {
 public:
  UnitaryRepresentation(FiniteGroup group, std::vector<ModuleOperator> images,
                        double unitary_tol = 1e-9, double hom_tol = 1e-9,
                        double identity_tol = 1e-10);

  const FiniteGroup& group() const { return group_; }
  const ModuleShape& shape() const { return images_.front().domain(); }
  const ModuleOperator& image(std::size_t g) const { return images_[g]; }
  const std::vector<ModuleOperator>& images() const { return images_; }

 private:
  FiniteGroup group_;
  std::vector<ModuleOperator> images_;
};

/// Shape of the standard module A^n over the given spectrum (every fiber of
/// dimension n).
ModuleShape standard_shape(const FiniteSpectrum& spectrum, Eigen::Index n);

/// Shape of l2_G(A): every fiber of dimension |G|.
ModuleShape group_module_shape(const FiniteGroup& group,
                               const FiniteSpectrum& spectrum);

/// The k-th standard basis element chi_k of a standard module.
ModuleElement standard_basis_element(const ModuleShape& shape, Eigen::Index k);

/// The chi_U basis of l2_G(A) in element order.
std::vector<ModuleElement> group_module_basis(const FiniteGroup& group,
                                              const FiniteSpectrum& spectrum);

/// Left and right regular representations on l2_G(A):
/// L_U chi_V = chi_{UV}, R_U chi_V = chi_{V U^-1}; exact permutation
/// matrices on every fiber.
std::pair<UnitaryRepresentation, UnitaryRepresentation> regular_representations(
    const FiniteGroup& group, const FiniteSpectrum& spectrum);

/// The orbit multi-frame {U phi_j} indexed by G x {1..N} with element-major
/// nesting ((U_0,1), (U_0,2), ..., (U_1,1), ...).
FrameSystem orbit_multiframe(const UnitaryRepresentation& rep,
                             const MultiGenerator& generators);

/// Single-generator orbit {U x} in element order.
FrameSystem orbit_frame(const UnitaryRepresentation& rep,
                        const ModuleElement& x);

enum class VectorClass {
  kCompleteWandering,
  kWandering,
  kCompleteParseval,
  kParseval,
  kCompleteFrame,
  kFrame,
  kCompleteBessel,
  kBessel,
  kNone,
};

std::string to_string(VectorClass label);

/// Whether the defining inequalities of `weaker` hold whenever a vector
/// carries the label `got` (the label hierarchy is monotone).
bool label_implies(VectorClass got, VectorClass weaker);

struct VectorClassification {
  VectorClass label = VectorClass::kNone;
  /// Whether the orbit spans every fiber (rank test at the shared cutoff).
  bool complete = false;
  /// Frame bounds of the orbit on the whole module.
  FrameBounds module_bounds;
  /// Frame bounds of the orbit on its fiberwise span.
  FrameBounds span_bounds;
  /// sup norm of (Gram - I) over orbit pairs; small iff the orbit is an
  /// orthonormal set.
  double orthonormality_residual = 0.0;
};

/// Classifies x against the representation's orbit and returns the
/// strongest applicable label. Completeness for the wandering/Parseval/
/// frame labels is the fiberwise rank test; the Bessel inequality holds on
/// the whole module for every finite orbit, so complete Bessel is the
/// weakest reachable label.
VectorClassification classify_vector(const UnitaryRepresentation& rep,
                                     const ModuleElement& x,
                                     double tol = kDefaultClassifyTol);

struct Dilation {
  /// The analysis isometry T: H -> l2_G(A) of the orbit of eta.
  ModuleOperator isometry;
  /// P = T T*, the range projection in {L_U}'.
  ModuleOperator projection;
  /// Named residuals: isometry, intertwine, projection, commute, eta_embed.
  std::map<std::string, double> residuals;
};

/// Dilation: requires eta to be a complete Parseval frame
/// vector; T*T = I, L_U T = T U, P commutes with every L_U, T eta = P chi_I.
Dilation dilate(const UnitaryRepresentation& rep, const ModuleElement& eta,
                double tol = kDefaultClassifyTol);

}  // namespace modframe

#endif  // MODFRAME_GROUPSYS_HPP
