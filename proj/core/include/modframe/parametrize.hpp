// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0
//
// Parameterization of complete Parseval frame vectors by unitaries in the
// representation's bicommutant (both directions), explicit paths between
// Parseval frame vectors, and the unique best Parseval multi-frame
// approximation with optimality sampling.

#ifndef MODFRAME_PARAMETRIZE_HPP
#define MODFRAME_PARAMETRIZE_HPP

#include <map>
#include <string>
#include <vector>

#include "modframe/commutant.hpp"

namespace modframe {

enum class GeneratorKind { kUnitary, kInvertible, kAdjointable };

std::string to_string(GeneratorKind kind);

/// The operator A in G'' carrying eta to xi, with the residuals that back
/// the claim: membership in G'', unitarity (or invertibility margin), and
/// the generation residual ||A eta - xi||.
struct ParameterizationWitness {
  ModuleOperator generator;
  GeneratorKind kind = GeneratorKind::kUnitary;
  std::map<std::string, double> residuals;
};

/// Forward direction: xi = A eta for A in G'' of the declared kind.
/// Verifies the expected classification of the output: unitary gives a
/// complete Parseval frame vector, invertible a complete frame vector,
/// adjointable a complete Bessel vector.
ModuleElement apply_generator(const UnitaryRepresentation& rep,
                              const ModuleElement& eta,
                              const ModuleOperator& a, GeneratorKind kind,
                              double tol = kDefaultClassifyTol);

/// Backward direction: given two complete Parseval frame vectors eta, xi,
/// constructs a unitary A in G'' with A eta = xi through the dilation
/// picture (B: chi_U -> L_U xi, P = BB*, Q = B*B, a partial isometry C
/// with CC* = I-P and C*C = I-Q, T = B + C, A = (pi^-1(T))*, compressed
/// back to the original module).
ParameterizationWitness solve_generator(const UnitaryRepresentation& rep,
                                        const ModuleElement& eta,
                                        const ModuleElement& xi,
                                        std::uint64_t seed = 0,
                                        double tol = kDefaultClassifyTol);

/// Path of complete Parseval frame vectors from eta to xi:
/// xi_s = exp(s K) eta with K the skew-Hermitian logarithm of the solved
/// witness, s = 0, 1/steps, ..., 1. Every point is verified to classify as
/// a complete Parseval frame vector and every exp(sK) to sit in G'' within
/// path_tol.
std::vector<ModuleElement> connect_parseval_vectors(
    const UnitaryRepresentation& rep, const ModuleElement& eta,
    const ModuleElement& xi, int steps = 16, std::uint64_t seed = 0,
    double path_tol = 1e-7);

struct ApproximationReport {
  MultiGenerator best;
  /// gap(Psi) = sum_k <phi_k-psi_k, phi_k-psi_k>
  ///          - sum_k <phi_k-best_k, phi_k-best_k>, one entry per sample.
  std::vector<AlgebraElement> sample_gaps;
  bool gaps_nonnegative = true;
  bool uniqueness_ok = true;
  std::map<std::string, double> residuals;
};

/// The unique best Parseval multi-frame approximation S^(-1/2) Phi, where S
/// is the frame operator of the orbit multi-frame. Verifies S in G' and
/// that the output's orbit is Parseval.
ApproximationReport best_parseval_approx(const UnitaryRepresentation& rep,
                                         const MultiGenerator& phi,
                                         double tol = kDefaultClassifyTol);

/// Samples Parseval multi-frame generators Psi two ways (unitaries in G'
/// applied to the optimum, and canonicalized random generators) and checks
/// that every gap is nonnegative in the positive-cone order within gap_tol;
/// near-zero gaps must coincide with the optimum. Also checks the
/// analysis-operator cross-term identity
/// sum_k <T_best S^(-1/4) phi_k, T_Psi S^(-1/4) phi_k> = sum_k <psi_k, phi_k>
/// on every sample.
ApproximationReport certify_optimality(const UnitaryRepresentation& rep,
                                       const MultiGenerator& phi,
                                       int n_samples, std::uint64_t seed,
                                       double gap_tol = 1e-8,
                                       double tol = kDefaultClassifyTol);

struct EnergyReport {
  AlgebraElement phi_energy;
  AlgebraElement psi_energy;
  double residual = 0.0;
};

/// Energy equality for two complete Parseval multi-frame generators
/// (sum_k <phi_k, phi_k> = sum_k <psi_k, psi_k>); the generator counts may
/// differ. Contract: residual <= 1e-9.
EnergyReport check_energy_equality(const UnitaryRepresentation& rep,
                                   const MultiGenerator& phi,
                                   const MultiGenerator& psi,
                                   double tol = kDefaultClassifyTol);

/// exp of a skew-Hermitian combination drawn from the (star-closed,
/// multiplicatively closed) algebra span; lands on a unitary in the algebra.
ModuleOperator random_unitary_in(const OperatorAlgebraBasis& alg, Rng& rng);

/// Product of a unitary and a well-conditioned positive element of the
/// algebra; invertible, generically not unitary.
ModuleOperator random_invertible_in(const OperatorAlgebraBasis& alg, Rng& rng);

}  // namespace modframe

#endif  // MODFRAME_PARAMETRIZE_HPP
