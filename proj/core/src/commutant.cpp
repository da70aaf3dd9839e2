// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0

#include "modframe/commutant.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <utility>

namespace modframe {

namespace {

// Modified Gram-Schmidt under the HS pairing, two passes per element.
// Elements whose residual drops below the rank cutoff (relative to their
// own norm) are dependent and dropped.
std::vector<ModuleOperator> hs_orthonormalize(std::vector<ModuleOperator> raw) {
  std::vector<ModuleOperator> out;
  for (ModuleOperator& m : raw) {
    const double original = m.hs_norm();
    if (original == 0.0) continue;
    ModuleOperator v = m;
    for (int pass = 0; pass < 2; ++pass) {
      for (const ModuleOperator& b : out) {
        v = v - hs_dot(b, v) * b;
      }
    }
    const double remaining = v.hs_norm();
    if (remaining <= kDefaultRankCutoff * original) continue;
    out.push_back(Complex(1.0 / remaining, 0.0) * v);
  }
  return out;
}

}  // namespace

OperatorAlgebraBasis::OperatorAlgebraBasis(std::vector<ModuleOperator> basis) {
  if (basis.empty()) {
    throw ShapeError("operator algebra basis must be nonempty");
  }
  const ModuleShape shape = basis.front().domain();
  for (const ModuleOperator& b : basis) {
    if (!(b.domain() == shape) || !(b.codomain() == shape)) {
      throw ShapeError("algebra basis operators must be endomorphisms of one module");
    }
  }
  basis_ = hs_orthonormalize(std::move(basis));
  if (basis_.empty()) {
    throw ShapeError("operator algebra basis spans only zero");
  }

  // Per-fiber span dimensions via the rank of the vectorized fiber blocks.
  // The basis is HS-orthonormal, so 1 is the right scale reference: a fiber
  // whose blocks are all rounding-level is genuinely zero there.
  fiber_dims_.assign(shape.num_points(), 0);
  for (std::size_t t = 0; t < shape.num_points(); ++t) {
    const Eigen::Index n = shape.dim(t);
    if (n == 0) continue;
    Eigen::MatrixXcd cols(n * n, static_cast<Eigen::Index>(basis_.size()));
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      cols.col(static_cast<Eigen::Index>(i)) =
          Eigen::Map<const Eigen::VectorXcd>(basis_[i].fiber(t).data(), n * n);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cols);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    const double cutoff =
        kDefaultRankCutoff * std::max(sv.size() > 0 ? sv(0) : 0.0, 1.0);
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    fiber_dims_[t] = rank;
  }

  unital_ = membership_residual(ModuleOperator::identity(shape)) <=
            kDefaultMembershipTol * ModuleOperator::identity(shape).hs_norm();
  star_closed_ = true;
  for (const ModuleOperator& b : basis_) {
    if (membership_residual(b.adjoint()) > 1e-9) {
      star_closed_ = false;
      break;
    }
  }
}

ModuleOperator OperatorAlgebraBasis::project(const ModuleOperator& m) const {
  ModuleOperator acc = ModuleOperator::zero(shape(), shape());
  for (const ModuleOperator& b : basis_) {
    acc = acc + hs_dot(b, m) * b;
  }
  return acc;
}

double OperatorAlgebraBasis::membership_residual(const ModuleOperator& m) const {
  return (m - project(m)).hs_norm();
}

bool OperatorAlgebraBasis::contains(const ModuleOperator& m, double tol) const {
  return membership_residual(m) <= tol * std::max(1.0, m.hs_norm());
}

ModuleOperator OperatorAlgebraBasis::random_element(Rng& rng) const {
  ModuleOperator acc = ModuleOperator::zero(shape(), shape());
  for (const ModuleOperator& b : basis_) {
    acc = acc + complex_gaussian(rng) * b;
  }
  return acc;
}

namespace {

// Stacked constraint matrix for {M : M K_k = K_k M} in column-major
// vectorization: rows of (I (x) K - K^T (x) I) per constraint.
Eigen::MatrixXcd commutation_system(const std::vector<Eigen::MatrixXcd>& ks) {
  const Eigen::Index n = ks.front().rows();
  Eigen::MatrixXcd sys(static_cast<Eigen::Index>(ks.size()) * n * n, n * n);
  sys.setZero();
  Eigen::Index row0 = 0;
  for (const Eigen::MatrixXcd& k : ks) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index row = row0 + j * n + i;
        // (KM)(i,j): K(i,l) picks vec entry (j*n + l).
        for (Eigen::Index l = 0; l < n; ++l) {
          sys(row, j * n + l) += k(i, l);
        }
        // -(MK)(i,j): K(l,j) picks vec entry (l*n + i).
        for (Eigen::Index l = 0; l < n; ++l) {
          sys(row, l * n + i) -= k(l, j);
        }
      }
    }
    row0 += n * n;
  }
  return sys;
}

// The cutoff is taken relative to the constraint scale, not the system's
// own largest singular value: a family that commutes up to rounding yields
// a system that is pure noise, and a cutoff relative to that noise would
// manufacture rank.
std::vector<Eigen::MatrixXcd> fiber_commutant_basis(
    const std::vector<Eigen::MatrixXcd>& ks, double scale) {
  const Eigen::Index n = ks.front().rows();
  const Eigen::MatrixXcd sys = commutation_system(ks);
  Eigen::Index rank = 0;
  Eigen::MatrixXcd v;
  const auto count_rank = [&](const Eigen::VectorXd& sv) {
    const double top = sv.size() > 0 ? sv(0) : 0.0;
    const double cutoff = kDefaultRankCutoff * std::max(top, scale);
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  };
  if (sys.rows() * sys.cols() > 200000) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(sys, Eigen::ComputeFullV);
    count_rank(svd.singularValues());
    v = svd.matrixV();
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys, Eigen::ComputeFullV);
    count_rank(svd.singularValues());
    v = svd.matrixV();
  }
  std::vector<Eigen::MatrixXcd> basis;
  for (Eigen::Index c = rank; c < v.cols(); ++c) {
    basis.push_back(Eigen::Map<const Eigen::MatrixXcd>(v.col(c).data(), n, n));
  }
  return basis;
}

}  // namespace

OperatorAlgebraBasis commutant(const std::vector<ModuleOperator>& ops) {
  if (ops.empty()) throw ShapeError("commutant: need at least one operator");
  const ModuleShape shape = ops.front().domain();
  for (const ModuleOperator& op : ops) {
    if (!op.is_endomorphism() || !(op.domain() == shape)) {
      throw ShapeError("commutant: operators must be endomorphisms of one module");
    }
  }
  double input_scale = 1.0;
  for (const ModuleOperator& op : ops) input_scale = std::max(input_scale, op.norm());

  std::vector<ModuleOperator> global;
  for (std::size_t t = 0; t < shape.num_points(); ++t) {
    const Eigen::Index n = shape.dim(t);
    if (n == 0) continue;
    std::vector<Eigen::MatrixXcd> ks;
    ks.reserve(ops.size());
    for (const ModuleOperator& op : ops) ks.push_back(op.fiber(t));
    for (const Eigen::MatrixXcd& m : fiber_commutant_basis(ks, input_scale)) {
      std::vector<Eigen::MatrixXcd> fibers(shape.num_points());
      for (std::size_t s = 0; s < shape.num_points(); ++s) {
        fibers[s] = Eigen::MatrixXcd::Zero(shape.dim(s), shape.dim(s));
      }
      fibers[t] = m;
      global.emplace_back(shape, shape, std::move(fibers));
    }
  }
  OperatorAlgebraBasis result(std::move(global));

  for (const ModuleOperator& b : result.basis()) {
    for (const ModuleOperator& op : ops) {
      const double resid = (b * op - op * b).norm();
      if (resid > 1e-10 * input_scale) {
        throw NumericalError("commutant: basis residual exceeds contract");
      }
    }
  }
  return result;
}

OperatorAlgebraBasis bicommutant(const std::vector<ModuleOperator>& ops) {
  const OperatorAlgebraBasis first = commutant(ops);
  OperatorAlgebraBasis second = commutant(first.basis());
  for (const ModuleOperator& op : ops) {
    if (!second.contains(op)) {
      throw NumericalError("bicommutant: input operator escapes the span");
    }
  }
  return second;
}

Lemma33Report check_lemma33(const FiniteGroup& group,
                            const FiniteSpectrum& spectrum, std::uint64_t seed,
                            double membership_tol, double commute_tol) {
  const auto [left, right] = regular_representations(group, spectrum);
  const OperatorAlgebraBasis left_comm = commutant(left.images());
  const OperatorAlgebraBasis right_comm = commutant(right.images());
  const OperatorAlgebraBasis left_bicomm = commutant(left_comm.basis());
  const OperatorAlgebraBasis right_bicomm = commutant(right_comm.basis());

  Lemma33Report report;
  report.left_bicomm_dims = left_bicomm.fiber_dimensions();
  report.right_comm_dims = right_comm.fiber_dimensions();
  report.right_bicomm_dims = right_bicomm.fiber_dimensions();
  report.left_comm_dims = left_comm.fiber_dimensions();

  double resid = 0.0;
  const auto mutual = [&resid](const OperatorAlgebraBasis& a,
                               const OperatorAlgebraBasis& b) {
    for (const ModuleOperator& m : a.basis()) {
      resid = std::max(resid, b.membership_residual(m));
    }
    for (const ModuleOperator& m : b.basis()) {
      resid = std::max(resid, a.membership_residual(m));
    }
  };
  mutual(left_bicomm, right_comm);
  mutual(right_bicomm, left_comm);
  report.span_equality_residual = resid;

  Rng rng(seed);
  double cross = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    const ModuleOperator t_op = left_comm.random_element(rng);
    const ModuleOperator s_op = right_comm.random_element(rng);
    cross = std::max(cross, (t_op * s_op - s_op * t_op).norm());
  }
  report.cross_commute_residual = cross;

  const bool dims_ok = report.left_bicomm_dims == report.right_comm_dims &&
                       report.right_bicomm_dims == report.left_comm_dims;
  report.passed = dims_ok && resid <= membership_tol && cross <= commute_tol;
  return report;
}

namespace {

std::vector<ModuleOperator> fiber_block_basis(const UnitaryRepresentation& rep) {
  const ModuleShape& shape = rep.shape();
  std::vector<ModuleOperator> basis;
  for (std::size_t t = 0; t < shape.num_points(); ++t) {
    if (shape.dim(t) == 0) continue;
    for (std::size_t g = 0; g < rep.group().order(); ++g) {
      std::vector<Eigen::MatrixXcd> fibers(shape.num_points());
      for (std::size_t s = 0; s < shape.num_points(); ++s) {
        fibers[s] = Eigen::MatrixXcd::Zero(shape.dim(s), shape.dim(s));
      }
      fibers[t] = rep.image(g).fiber(t);
      basis.emplace_back(shape, shape, std::move(fibers));
    }
  }
  return basis;
}

}  // namespace

RegularContext::RegularContext(FiniteGroup group, FiniteSpectrum spectrum)
    : group_(std::move(group)),
      spectrum_(std::move(spectrum)),
      shape_(group_module_shape(group_, spectrum_)),
      left_(regular_representations(group_, spectrum_).first),
      right_(regular_representations(group_, spectrum_).second),
      chi_identity_(standard_basis_element(
          shape_, static_cast<Eigen::Index>(group_.identity()))),
      // {L}'' is spanned fiberwise by the L_U and {L}' fiberwise by the R_U
      // (the group-algebra commutant on each fiber); check_lemma33 verifies
      // the same spaces against the generic nullspace solver.
      left_algebra_(fiber_block_basis(left_)),
      left_commutant_(fiber_block_basis(right_)) {}

ModuleOperator RegularContext::pi_map(const ModuleOperator& a, double tol) const {
  if (!left_algebra_.contains(a, tol)) {
    throw PreconditionError("pi_map: operator is not in {L}'' at tolerance");
  }
  const int n = static_cast<int>(group_.order());
  const int id = group_.identity();
  std::vector<Eigen::MatrixXcd> fibers(shape_.num_points());
  for (std::size_t t = 0; t < shape_.num_points(); ++t) {
    const Eigen::VectorXcd a_star_chi = a.fiber(t).adjoint().col(id);
    Eigen::MatrixXcd m(n, n);
    for (int v = 0; v < n; ++v) {
      m.col(v) = left_.image(static_cast<std::size_t>(v)).fiber(t) * a_star_chi;
    }
    fibers[t] = std::move(m);
  }
  return ModuleOperator(shape_, shape_, std::move(fibers));
}

ModuleOperator RegularContext::pi_inverse(const ModuleOperator& t_op,
                                          double tol) const {
  if (!left_commutant_.contains(t_op, tol)) {
    throw PreconditionError("pi_inverse: operator is not in {L}' at tolerance");
  }
  const int n = static_cast<int>(group_.order());
  const int id = group_.identity();
  std::vector<Eigen::MatrixXcd> fibers(shape_.num_points());
  for (std::size_t t = 0; t < shape_.num_points(); ++t) {
    const Eigen::VectorXcd t_chi = t_op.fiber(t).col(id);
    Eigen::MatrixXcd a_star(n, n);
    for (int v = 0; v < n; ++v) {
      const std::size_t v_inv = static_cast<std::size_t>(group_.inverse(v));
      a_star.col(v) = right_.image(v_inv).fiber(t) * t_chi;
    }
    fibers[t] = a_star.adjoint();
  }
  return ModuleOperator(shape_, shape_, std::move(fibers));
}

AlgebraElement RegularContext::trace_phi(const ModuleOperator& a) const {
  if (!(a.domain() == shape_) || !(a.codomain() == shape_)) {
    throw ShapeError("trace_phi: operator must act on l2_G(A)");
  }
  const int id = group_.identity();
  std::vector<Complex> values(shape_.num_points());
  for (std::size_t t = 0; t < shape_.num_points(); ++t) {
    values[t] = a.fiber(t)(id, id);
  }
  return AlgebraElement(spectrum_, std::move(values));
}

ModuleOperator equivalent_projection_isometry(const OperatorAlgebraBasis& alg,
                                              const ModuleOperator& p,
                                              const ModuleOperator& q,
                                              Rng& rng, double tol) {
  const ModuleShape& shape = alg.shape();
  const ModuleOperator id = ModuleOperator::identity(shape);
  const auto check_projection = [&](const ModuleOperator& r, const char* name) {
    if (!(r.domain() == shape) || !(r.codomain() == shape)) {
      throw ShapeError(std::string("equivalent_projection_isometry: ") + name +
                       " has the wrong shape");
    }
    if ((r * r - r).norm() > tol || (r - r.adjoint()).norm() > tol) {
      throw PreconditionError(std::string("equivalent_projection_isometry: ") +
                              name + " is not a projection at tolerance");
    }
    if (!alg.contains(r, kDefaultMembershipTol)) {
      throw PreconditionError(std::string("equivalent_projection_isometry: ") +
                              name + " is not in the algebra span");
    }
  };
  check_projection(p, "P");
  check_projection(q, "Q");

  const ModuleOperator p_perp = id - p;
  const ModuleOperator q_perp = id - q;

  constexpr int kMaxDraws = 16;
  double best_resid = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    const ModuleOperator d = alg.random_element(rng);
    const ModuleOperator e = p_perp * d * q_perp;
    // Partial-isometry polar factor per fiber. Ranks are judged against
    // the scale of the whole problem (the draw dominates ||E||), so that
    // fibers where E is rounding noise do not grow noise isometries --
    // neither relative to the other fibers nor when I-P itself is zero up
    // to rounding.
    const double e_scale = std::max(e.norm(), d.norm());
    std::vector<Eigen::MatrixXcd> fibers(shape.num_points());
    for (std::size_t t = 0; t < shape.num_points(); ++t) {
      const Eigen::MatrixXcd& ef = e.fiber(t);
      if (ef.size() == 0) {
        fibers[t] = ef;
        continue;
      }
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
          ef, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const auto& sv = svd.singularValues();
      Eigen::Index rank = 0;
      const double cutoff =
          kDefaultRankCutoff * std::max(sv.size() > 0 ? sv(0) : 0.0, e_scale);
      while (rank < sv.size() && sv(rank) > cutoff) ++rank;
      fibers[t] = svd.matrixU().leftCols(rank) *
                  svd.matrixV().leftCols(rank).adjoint();
    }
    ModuleOperator c(shape, shape, std::move(fibers));
    const double range_resid = (c * c.adjoint() - p_perp).norm();
    const double support_resid = (c.adjoint() * c - q_perp).norm();
    const double member_resid = alg.membership_residual(c);
    const double worst =
        std::max({range_resid, support_resid,
                  member_resid / std::max(1.0, c.hs_norm())});
    best_resid = std::min(best_resid, worst);
    if (worst <= tol) return c;
  }
  throw NumericalError(
      "equivalent_projection_isometry: retry budget exhausted (best residual " +
      std::to_string(best_resid) +
      "); I-P and I-Q may not be equivalent inside the algebra");
}

}  // namespace modframe
