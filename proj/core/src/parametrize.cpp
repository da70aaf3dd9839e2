// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0

#include "modframe/parametrize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace modframe {

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kUnitary: return "unitary";
    case GeneratorKind::kInvertible: return "invertible";
    case GeneratorKind::kAdjointable: return "adjointable";
  }
  return "unknown";
}

namespace {

void require_complete_parseval(const UnitaryRepresentation& rep,
                               const ModuleElement& x, const char* name,
                               double tol) {
  const VectorClassification cls = classify_vector(rep, x, tol);
  if (!label_implies(cls.label, VectorClass::kCompleteParseval)) {
    throw PreconditionError(std::string(name) +
                            " is not a complete Parseval frame vector "
                            "(classified " +
                            to_string(cls.label) + ")");
  }
}

double unitarity_residual(const ModuleOperator& a) {
  const ModuleOperator id = ModuleOperator::identity(a.domain());
  return std::max((a.adjoint() * a - id).norm(), (a * a.adjoint() - id).norm());
}

double smallest_singular_value(const ModuleOperator& a) {
  double smallest = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < a.num_points(); ++t) {
    if (a.fiber(t).size() == 0) continue;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a.fiber(t));
    const auto& sv = svd.singularValues();
    smallest = std::min(smallest, sv(sv.size() - 1));
  }
  return std::isfinite(smallest) ? smallest : 0.0;
}

}  // namespace

ModuleElement apply_generator(const UnitaryRepresentation& rep,
                              const ModuleElement& eta, const ModuleOperator& a,
                              GeneratorKind kind, double tol) {
  require_complete_parseval(rep, eta, "apply_generator: eta", tol);
  if (!(a.domain() == rep.shape()) || !(a.codomain() == rep.shape())) {
    throw ShapeError("apply_generator: operator must act on the module");
  }
  const OperatorAlgebraBasis bicomm = bicommutant(rep.images());
  if (!bicomm.contains(a)) {
    throw PreconditionError("apply_generator: operator is not in G'' at tolerance");
  }
  VectorClass expected = VectorClass::kCompleteBessel;
  switch (kind) {
    case GeneratorKind::kUnitary:
      if (unitarity_residual(a) > kDefaultMembershipTol) {
        throw PreconditionError("apply_generator: operator is not unitary");
      }
      expected = VectorClass::kCompleteParseval;
      break;
    case GeneratorKind::kInvertible:
      if (smallest_singular_value(a) < kDefaultEigFloor) {
        throw PreconditionError("apply_generator: operator is not invertible "
                                "at the eigenvalue floor");
      }
      expected = VectorClass::kCompleteFrame;
      break;
    case GeneratorKind::kAdjointable:
      expected = VectorClass::kCompleteBessel;
      break;
  }
  ModuleElement xi = a.apply(eta);
  const VectorClassification cls = classify_vector(rep, xi, tol);
  if (!label_implies(cls.label, expected)) {
    throw NumericalError("apply_generator: output classified " +
                         to_string(cls.label) + ", expected at least " +
                         to_string(expected));
  }
  return xi;
}

ParameterizationWitness solve_generator(const UnitaryRepresentation& rep,
                                        const ModuleElement& eta,
                                        const ModuleElement& xi,
                                        std::uint64_t seed, double tol) {
  require_complete_parseval(rep, eta, "solve_generator: eta", tol);
  require_complete_parseval(rep, xi, "solve_generator: xi", tol);

  const FiniteGroup& group = rep.group();
  const FiniteSpectrum& spectrum = rep.shape().spectrum();
  const RegularContext ctx(group, spectrum);
  std::map<std::string, double> residuals;

  // (i) dilation through the analysis operator of eta's orbit.
  const Dilation dil = dilate(rep, eta, tol);
  const ModuleOperator& t_eta = dil.isometry;
  const ModuleOperator& p = dil.projection;
  residuals["dilation_isometry"] = dil.residuals.at("isometry");

  // (ii) lift both vectors to range(P) inside l2_G(A).
  const ModuleElement eta_tilde = t_eta.apply(eta);
  const ModuleElement xi_tilde = t_eta.apply(xi);

  // (iii) B: chi_U -> L_U xi_tilde, an element of M' with BB* = P.
  const Eigen::Index n = static_cast<Eigen::Index>(group.order());
  std::vector<Eigen::MatrixXcd> b_fibers(ctx.shape().num_points());
  for (std::size_t t = 0; t < ctx.shape().num_points(); ++t) {
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index v = 0; v < n; ++v) {
      m.col(v) = ctx.left().image(static_cast<std::size_t>(v)).fiber(t) *
                 xi_tilde.fiber(t);
    }
    b_fibers[t] = std::move(m);
  }
  const ModuleOperator b(ctx.shape(), ctx.shape(), std::move(b_fibers));
  const double b_member = ctx.left_commutant().membership_residual(b) /
                          std::max(1.0, b.hs_norm());
  const double b_range = (b * b.adjoint() - p).norm();
  const ModuleOperator q = b.adjoint() * b;
  const double q_idem = (q * q - q).norm();
  residuals["b_membership"] = b_member;
  residuals["b_range_projection"] = b_range;
  residuals["q_idempotent"] = q_idem;
  if (b_member > tol || b_range > tol || q_idem > tol) {
    throw NumericalError("solve_generator: partial isometry B fails its contract");
  }

  // (iv) partial isometry between the complements.
  Rng rng(seed);
  const ModuleOperator c =
      equivalent_projection_isometry(ctx.left_commutant(), p, q, rng);

  // (v) T = B + C, unitary in M'.
  const ModuleOperator t_op = b + c;
  const double t_unitary = unitarity_residual(t_op);
  residuals["t_unitarity"] = t_unitary;
  if (t_unitary > tol) {
    throw NumericalError("solve_generator: B + C is not unitary at tolerance");
  }

  // (vi) A = (pi^-1(T))*, unitary in M, with A eta_tilde = xi_tilde.
  const ModuleOperator a_l2 = ctx.pi_inverse(t_op).adjoint();
  residuals["lift_generation"] =
      (a_l2.apply(eta_tilde) - xi_tilde).norm();
  if (residuals["lift_generation"] > tol) {
    throw NumericalError("solve_generator: lifted generator misses xi");
  }

  // (vii) compress back to the module and re-verify everything there.
  const ModuleOperator a = t_eta.adjoint() * a_l2 * t_eta;
  const OperatorAlgebraBasis bicomm = bicommutant(rep.images());
  residuals["membership"] =
      bicomm.membership_residual(a) / std::max(1.0, a.hs_norm());
  residuals["unitarity"] = unitarity_residual(a);
  residuals["generation"] = (a.apply(eta) - xi).norm();
  if (residuals["membership"] > tol || residuals["unitarity"] > tol ||
      residuals["generation"] > tol) {
    throw NumericalError("solve_generator: compressed witness fails its contract");
  }
  return ParameterizationWitness{a, GeneratorKind::kUnitary, std::move(residuals)};
}

std::vector<ModuleElement> connect_parseval_vectors(
    const UnitaryRepresentation& rep, const ModuleElement& eta,
    const ModuleElement& xi, int steps, std::uint64_t seed, double path_tol) {
  if (steps < 1) throw PreconditionError("connect_parseval_vectors: steps >= 1");
  const ParameterizationWitness witness = solve_generator(rep, eta, xi, seed);
  const ModuleOperator k = spectral_fn(witness.generator, SpectralFn::kLogUnitary);
  const OperatorAlgebraBasis bicomm = bicommutant(rep.images());

  std::vector<ModuleElement> path;
  path.reserve(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) {
    const double s = static_cast<double>(i) / steps;
    const ModuleOperator w = exp_skew(Complex(s, 0.0) * k);
    const double member =
        bicomm.membership_residual(w) / std::max(1.0, w.hs_norm());
    if (member > path_tol) {
      throw NumericalError("connect_parseval_vectors: path operator leaves G''");
    }
    ModuleElement point = w.apply(eta);
    const VectorClassification cls = classify_vector(rep, point, path_tol);
    if (!label_implies(cls.label, VectorClass::kCompleteParseval)) {
      throw NumericalError(
          "connect_parseval_vectors: path point is not complete Parseval "
          "(classified " +
          to_string(cls.label) + ")");
    }
    path.push_back(std::move(point));
  }
  return path;
}

namespace {

MultiGenerator apply_to_generators(const ModuleOperator& op,
                                   const MultiGenerator& g) {
  std::vector<ModuleElement> out;
  out.reserve(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) out.push_back(op.apply(g.generator(k)));
  return MultiGenerator(std::move(out));
}

AlgebraElement difference_energy(const MultiGenerator& a,
                                 const MultiGenerator& b) {
  if (a.size() != b.size()) {
    throw ShapeError("difference energy needs equally sized generators");
  }
  AlgebraElement acc = AlgebraElement::zero(a.shape().spectrum());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const ModuleElement d = a.generator(k) - b.generator(k);
    acc = acc + inner(d, d);
  }
  return acc;
}

double commutation_residual(const ModuleOperator& s,
                            const UnitaryRepresentation& rep) {
  double worst = 0.0;
  for (std::size_t g = 0; g < rep.group().order(); ++g) {
    worst = std::max(worst,
                     (s * rep.image(g) - rep.image(g) * s).norm());
  }
  return worst / std::max(1.0, s.norm());
}

}  // namespace

ApproximationReport best_parseval_approx(const UnitaryRepresentation& rep,
                                         const MultiGenerator& phi,
                                         double tol) {
  const FrameSystem orbit = orbit_multiframe(rep, phi);
  if (!orbit.is_frame(tol)) {
    throw PreconditionError(
        "best_parseval_approx: Phi is not a multi-frame generator (orbit "
        "lower bound " +
        std::to_string(orbit.bounds().lower) + ")");
  }
  const ModuleOperator& s = orbit.frame_operator();
  const double s_comm = commutation_residual(s, rep);
  if (s_comm > 1e-9) {
    throw NumericalError("best_parseval_approx: frame operator escapes G'");
  }
  const ModuleOperator s_inv_sqrt = spectral_fn(s, SpectralFn::kInvSqrt);
  MultiGenerator best = apply_to_generators(s_inv_sqrt, phi);

  const FrameSystem best_orbit = orbit_multiframe(rep, best);
  const double parseval_resid =
      (best_orbit.frame_operator() - ModuleOperator::identity(rep.shape()))
          .norm();
  if (parseval_resid > 1e-9) {
    throw NumericalError("best_parseval_approx: canonicalized orbit is not "
                         "Parseval at tolerance");
  }
  ApproximationReport report{std::move(best), {}, true, true, {}};
  report.residuals["s_commutant"] = s_comm;
  report.residuals["parseval"] = parseval_resid;
  report.residuals["orbit_lower_bound"] = orbit.bounds().lower;
  report.residuals["orbit_upper_bound"] = orbit.bounds().upper;
  return report;
}

ApproximationReport certify_optimality(const UnitaryRepresentation& rep,
                                       const MultiGenerator& phi, int n_samples,
                                       std::uint64_t seed, double gap_tol,
                                       double tol) {
  if (n_samples < 1) throw PreconditionError("certify_optimality: n_samples >= 1");
  ApproximationReport report = best_parseval_approx(rep, phi, tol);
  const MultiGenerator& best = report.best;

  const FrameSystem orbit = orbit_multiframe(rep, phi);
  const ModuleOperator& s = orbit.frame_operator();
  const ModuleOperator s_quarter_inv =
      spectral_fn(spectral_fn(s, SpectralFn::kSqrt), SpectralFn::kInvSqrt);
  std::vector<ModuleElement> probe;
  probe.reserve(phi.size());
  for (std::size_t k = 0; k < phi.size(); ++k) {
    probe.push_back(s_quarter_inv.apply(phi.generator(k)));
  }
  const ModuleOperator t_best =
      orbit_multiframe(rep, best).analysis_operator();

  const OperatorAlgebraBasis comm = commutant(rep.images());
  const AlgebraElement base_energy = difference_energy(phi, best);

  Rng rng(seed);
  double max_parseval = 0.0;
  double max_cross = 0.0;
  double min_gap = std::numeric_limits<double>::infinity();
  const ModuleOperator id = ModuleOperator::identity(rep.shape());

  for (int sample = 0; sample < n_samples; ++sample) {
    MultiGenerator psi = best;
    if (sample == 0) {
      // The optimum itself: pins the zero-gap/uniqueness probe.
    } else if (sample % 2 == 1) {
      const ModuleOperator w = random_unitary_in(comm, rng);
      psi = apply_to_generators(w, best);
    } else {
      // Canonicalized random generator; redraw on badly conditioned orbits.
      for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<ModuleElement> raw;
        raw.reserve(phi.size());
        for (std::size_t k = 0; k < phi.size(); ++k) {
          raw.push_back(random_element(rep.shape(), rng));
        }
        const MultiGenerator candidate(std::move(raw));
        const FrameSystem candidate_orbit = orbit_multiframe(rep, candidate);
        if (candidate_orbit.bounds().lower >
            1e-3 * std::max(1.0, candidate_orbit.bounds().upper)) {
          const ModuleOperator canon = spectral_fn(
              candidate_orbit.frame_operator(), SpectralFn::kInvSqrt);
          psi = apply_to_generators(canon, candidate);
          break;
        }
        if (attempt == 31) {
          throw NumericalError(
              "certify_optimality: could not draw a well-conditioned "
              "generator sample");
        }
      }
    }

    const FrameSystem psi_orbit = orbit_multiframe(rep, psi);
    max_parseval = std::max(
        max_parseval, (psi_orbit.frame_operator() - id).norm());

    AlgebraElement gap = difference_energy(phi, psi) - base_energy;
    for (std::size_t t = 0; t < gap.size(); ++t) {
      min_gap = std::min(min_gap, gap[t].real());
    }
    if (!is_positive(gap, gap_tol)) report.gaps_nonnegative = false;

    // Near-optimal samples must coincide with the optimum.
    if (gap.norm() <= 1e-10) {
      double deviation = 0.0;
      for (std::size_t k = 0; k < psi.size(); ++k) {
        deviation = std::max(
            deviation, (psi.generator(k) - best.generator(k)).norm());
      }
      if (deviation > 1e-6) report.uniqueness_ok = false;
    }

    // Cross-term identity of the optimality proof:
    // sum_k <T_best probe_k, T_psi probe_k> = sum_k <psi_k, phi_k>.
    const ModuleOperator t_psi = psi_orbit.analysis_operator();
    AlgebraElement lhs = AlgebraElement::zero(gap.spectrum());
    AlgebraElement rhs = AlgebraElement::zero(gap.spectrum());
    for (std::size_t k = 0; k < phi.size(); ++k) {
      lhs = lhs + inner(t_best.apply(probe[k]), t_psi.apply(probe[k]));
      rhs = rhs + inner(psi.generator(k), phi.generator(k));
    }
    max_cross = std::max(max_cross, (lhs - rhs).norm());

    report.sample_gaps.push_back(std::move(gap));
  }

  report.residuals["max_sample_parseval"] = max_parseval;
  report.residuals["max_cross_term"] = max_cross;
  report.residuals["min_gap"] = min_gap;
  return report;
}

EnergyReport check_energy_equality(const UnitaryRepresentation& rep,
                                   const MultiGenerator& phi,
                                   const MultiGenerator& psi, double tol) {
  const auto require_parseval_generator = [&](const MultiGenerator& g,
                                              const char* name) {
    const FrameSystem orbit = orbit_multiframe(rep, g);
    if (orbit.kind(tol) != FrameKind::kParsevalFrame) {
      throw PreconditionError(
          std::string("check_energy_equality: ") + name +
          " is not a complete Parseval multi-frame generator (orbit " +
          to_string(orbit.kind(tol)) + ")");
    }
  };
  require_parseval_generator(phi, "Phi");
  require_parseval_generator(psi, "Psi");
  EnergyReport out{energy_sum(phi), energy_sum(psi), 0.0};
  out.residual = (out.phi_energy - out.psi_energy).norm();
  return out;
}

ModuleOperator random_unitary_in(const OperatorAlgebraBasis& alg, Rng& rng) {
  const ModuleOperator z = alg.random_element(rng);
  const ModuleOperator skew = Complex(0.5, 0.0) * (z - z.adjoint());
  return exp_skew(skew);
}

ModuleOperator random_invertible_in(const OperatorAlgebraBasis& alg, Rng& rng) {
  const ModuleOperator u = random_unitary_in(alg, rng);
  ModuleOperator herm = alg.random_element(rng);
  herm = Complex(0.5, 0.0) * (herm + herm.adjoint());
  const double scale = herm.norm();
  if (scale > 1.0) herm = Complex(1.0 / scale, 0.0) * herm;
  return u * exp_hermitian(herm);
}

}  // namespace modframe
