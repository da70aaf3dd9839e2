// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0

#include "modframe/groupsys.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

namespace modframe {

FiniteGroup::FiniteGroup(std::vector<std::string> elements,
                         std::vector<std::vector<int>> table)
    : elements_(std::move(elements)), table_(std::move(table)) {
  const int n = static_cast<int>(elements_.size());
  if (n == 0) throw ValidationError("group needs at least one element");
  {
    std::vector<std::string> sorted = elements_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ValidationError("group element labels must be distinct");
    }
  }
  if (static_cast<int>(table_.size()) != n) {
    throw ValidationError("group table must have one row per element");
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table_[i].size()) != n) {
      throw ValidationError("group table row " + std::to_string(i) +
                            " must have one entry per element");
    }
    for (int j = 0; j < n; ++j) {
      if (table_[i][j] < 0 || table_[i][j] >= n) {
        throw ValidationError("group table entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ") out of range");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (table_[table_[i][j]][k] != table_[i][table_[j][k]]) {
          std::ostringstream msg;
          msg << "group table is not associative at triple (" << elements_[i]
              << ", " << elements_[j] << ", " << elements_[k] << ")";
          throw ValidationError(msg.str());
        }
      }
    }
  }
  identity_ = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      ok = table_[e][j] == j && table_[j][e] == j;
    }
    if (ok) {
      identity_ = e;
      break;
    }
  }
  if (identity_ < 0) throw ValidationError("group table has no identity element");
  inverse_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (table_[i][j] == identity_ && table_[j][i] == identity_) {
        inverse_[i] = j;
        break;
      }
    }
    if (inverse_[i] < 0) {
      throw ValidationError("group element " + elements_[i] + " has no inverse");
    }
  }
}

int FiniteGroup::index_of(const std::string& label) const {
  const auto it = std::find(elements_.begin(), elements_.end(), label);
  if (it == elements_.end()) {
    throw ValidationError("unknown group element label: " + label);
  }
  return static_cast<int>(it - elements_.begin());
}

FiniteGroup FiniteGroup::trivial() {
  return FiniteGroup({"e"}, {{0}});
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw ValidationError("cyclic group order must be positive");
  std::vector<std::string> elements(n);
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    elements[i] = "g" + std::to_string(i);
    for (int j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  }
  return FiniteGroup(std::move(elements), std::move(table));
}

FiniteGroup FiniteGroup::klein_four() {
  return direct_product(cyclic(2), cyclic(2));
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1 || n > 4) {
    throw ValidationError("symmetric group supported for 1 <= n <= 4");
  }
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const auto label = [](const std::vector<int>& q) {
    std::string s;
    for (int v : q) s += static_cast<char>('0' + v);
    return s;
  };
  const int order = static_cast<int>(perms.size());
  std::vector<std::string> elements(order);
  for (int i = 0; i < order; ++i) elements[i] = label(perms[i]);
  const auto find_index = [&](const std::vector<int>& q) {
    for (int i = 0; i < order; ++i) {
      if (perms[i] == q) return i;
    }
    return -1;
  };
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      std::vector<int> composed(n);
      for (int v = 0; v < n; ++v) composed[v] = perms[i][perms[j][v]];
      table[i][j] = find_index(composed);
    }
  }
  return FiniteGroup(std::move(elements), std::move(table));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a,
                                        const FiniteGroup& b) {
  const int na = static_cast<int>(a.order());
  const int nb = static_cast<int>(b.order());
  std::vector<std::string> elements(static_cast<std::size_t>(na) * nb);
  std::vector<std::vector<int>> table(elements.size(),
                                      std::vector<int>(elements.size()));
  const auto idx = [nb](int i, int j) { return i * nb + j; };
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      elements[idx(i, j)] = a.element(i) + "." + b.element(j);
    }
  }
  for (int i1 = 0; i1 < na; ++i1) {
    for (int j1 = 0; j1 < nb; ++j1) {
      for (int i2 = 0; i2 < na; ++i2) {
        for (int j2 = 0; j2 < nb; ++j2) {
          table[idx(i1, j1)][idx(i2, j2)] = idx(a.mul(i1, i2), b.mul(j1, j2));
        }
      }
    }
  }
  return FiniteGroup(std::move(elements), std::move(table));
}

UnitaryRepresentation::UnitaryRepresentation(FiniteGroup group,
                                             std::vector<ModuleOperator> images,
                                             double unitary_tol, double hom_tol,
                                             double identity_tol)
    : group_(std::move(group)), images_(std::move(images)) {
  if (images_.size() != group_.order()) {
    throw ValidationError("representation needs one image per group element");
  }
  const ModuleShape& shape = images_.front().domain();
  for (const ModuleOperator& u : images_) {
    if (!(u.domain() == shape) || !(u.codomain() == shape)) {
      throw ValidationError("representation images must share one module shape");
    }
  }
  const ModuleOperator id = ModuleOperator::identity(shape);
  for (std::size_t g = 0; g < images_.size(); ++g) {
    const double resid = (images_[g].adjoint() * images_[g] - id).norm();
    if (resid > unitary_tol) {
      throw ValidationError("representation image of " + group_.element(g) +
                            " is not unitary at tolerance");
    }
  }
  if ((images_[static_cast<std::size_t>(group_.identity())] - id).norm() >
      identity_tol) {
    throw ValidationError("representation does not map the identity to I");
  }
  for (std::size_t g = 0; g < images_.size(); ++g) {
    for (std::size_t h = 0; h < images_.size(); ++h) {
      const std::size_t gh = static_cast<std::size_t>(
          group_.mul(static_cast<int>(g), static_cast<int>(h)));
      const double resid = (images_[gh] - images_[g] * images_[h]).norm();
      if (resid > hom_tol) {
        throw ValidationError("representation is not multiplicative on (" +
                              group_.element(g) + ", " + group_.element(h) + ")");
      }
    }
  }
}

ModuleShape standard_shape(const FiniteSpectrum& spectrum, Eigen::Index n) {
  return ModuleShape(spectrum, std::vector<Eigen::Index>(spectrum.size(), n));
}

ModuleShape group_module_shape(const FiniteGroup& group,
                               const FiniteSpectrum& spectrum) {
  return standard_shape(spectrum, static_cast<Eigen::Index>(group.order()));
}

ModuleElement standard_basis_element(const ModuleShape& shape, Eigen::Index k) {
  std::vector<Eigen::VectorXcd> fibers(shape.num_points());
  for (std::size_t t = 0; t < shape.num_points(); ++t) {
    if (k >= shape.dim(t)) {
      throw ShapeError("standard basis index exceeds a fiber dimension");
    }
    fibers[t] = Eigen::VectorXcd::Unit(shape.dim(t), k);
  }
  return ModuleElement(shape, std::move(fibers));
}

std::vector<ModuleElement> group_module_basis(const FiniteGroup& group,
                                              const FiniteSpectrum& spectrum) {
  const ModuleShape shape = group_module_shape(group, spectrum);
  std::vector<ModuleElement> basis;
  basis.reserve(group.order());
  for (std::size_t g = 0; g < group.order(); ++g) {
    basis.push_back(standard_basis_element(shape, static_cast<Eigen::Index>(g)));
  }
  return basis;
}

std::pair<UnitaryRepresentation, UnitaryRepresentation> regular_representations(
    const FiniteGroup& group, const FiniteSpectrum& spectrum) {
  const int n = static_cast<int>(group.order());
  const ModuleShape shape = group_module_shape(group, spectrum);
  std::vector<ModuleOperator> left, right;
  left.reserve(group.order());
  right.reserve(group.order());
  for (int u = 0; u < n; ++u) {
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(n, n);
    for (int v = 0; v < n; ++v) {
      l(group.mul(u, v), v) = Complex(1.0, 0.0);
      r(group.mul(v, group.inverse(u)), v) = Complex(1.0, 0.0);
    }
    left.emplace_back(shape, shape,
                      std::vector<Eigen::MatrixXcd>(shape.num_points(), l));
    right.emplace_back(shape, shape,
                       std::vector<Eigen::MatrixXcd>(shape.num_points(), r));
  }
  return {UnitaryRepresentation(group, std::move(left)),
          UnitaryRepresentation(group, std::move(right))};
}

FrameSystem orbit_multiframe(const UnitaryRepresentation& rep,
                             const MultiGenerator& generators) {
  if (!(generators.shape() == rep.shape())) {
    throw ShapeError("orbit multi-frame: generator shape mismatch");
  }
  std::vector<ModuleElement> vectors;
  vectors.reserve(rep.group().order() * generators.size());
  for (std::size_t u = 0; u < rep.group().order(); ++u) {
    for (std::size_t j = 0; j < generators.size(); ++j) {
      vectors.push_back(rep.image(u).apply(generators.generator(j)));
    }
  }
  return FrameSystem(std::move(vectors));
}

FrameSystem orbit_frame(const UnitaryRepresentation& rep,
                        const ModuleElement& x) {
  return orbit_multiframe(rep, MultiGenerator({x}));
}

std::string to_string(VectorClass label) {
  switch (label) {
    case VectorClass::kCompleteWandering: return "complete_wandering";
    case VectorClass::kWandering: return "wandering";
    case VectorClass::kCompleteParseval: return "complete_parseval_frame_vector";
    case VectorClass::kParseval: return "parseval_frame_vector";
    case VectorClass::kCompleteFrame: return "complete_frame_vector";
    case VectorClass::kFrame: return "frame_vector";
    case VectorClass::kCompleteBessel: return "complete_bessel";
    case VectorClass::kBessel: return "bessel";
    case VectorClass::kNone: return "none";
  }
  return "unknown";
}

bool label_implies(VectorClass got, VectorClass weaker) {
  if (got == weaker) return true;
  const auto step = [](VectorClass c) {
    switch (c) {
      case VectorClass::kCompleteWandering: return VectorClass::kCompleteParseval;
      case VectorClass::kCompleteParseval: return VectorClass::kCompleteFrame;
      case VectorClass::kCompleteFrame: return VectorClass::kCompleteBessel;
      case VectorClass::kWandering: return VectorClass::kParseval;
      case VectorClass::kParseval: return VectorClass::kFrame;
      case VectorClass::kFrame: return VectorClass::kBessel;
      case VectorClass::kCompleteBessel: return VectorClass::kBessel;
      default: return VectorClass::kNone;
    }
  };
  // Complete labels imply their span-restricted counterparts.
  const auto span_of = [](VectorClass c) {
    switch (c) {
      case VectorClass::kCompleteWandering: return VectorClass::kWandering;
      case VectorClass::kCompleteParseval: return VectorClass::kParseval;
      case VectorClass::kCompleteFrame: return VectorClass::kFrame;
      case VectorClass::kCompleteBessel: return VectorClass::kBessel;
      default: return VectorClass::kNone;
    }
  };
  if (got == VectorClass::kNone) return false;
  if (span_of(got) != VectorClass::kNone && label_implies(span_of(got), weaker)) {
    return true;
  }
  const VectorClass next = step(got);
  if (next == VectorClass::kNone) return false;
  return label_implies(next, weaker);
}

VectorClassification classify_vector(const UnitaryRepresentation& rep,
                                     const ModuleElement& x, double tol) {
  if (!(x.shape() == rep.shape())) {
    throw ShapeError("classify_vector: shape mismatch");
  }
  const FrameSystem orbit = orbit_frame(rep, x);
  const std::size_t count = orbit.size();

  VectorClassification out{VectorClass::kNone, true,
                           orbit.bounds(), orbit.bounds(), 0.0};

  // Orthonormality of the orbit: Gram matrix against the Kronecker delta.
  double gram_resid = 0.0;
  for (std::size_t u = 0; u < count; ++u) {
    for (std::size_t v = u; v < count; ++v) {
      AlgebraElement g = inner(orbit.vector(u), orbit.vector(v));
      if (u == v) g = g - AlgebraElement::unit(g.spectrum());
      gram_resid = std::max(gram_resid, g.norm());
    }
  }
  out.orthonormality_residual = gram_resid;

  // Fiberwise rank factorization of the orbit span; span-compressed frame
  // operator bounds. Rank decisions are judged against the global orbit
  // scale so a fiber where x vanishes does not grow a noise span.
  const ModuleShape& shape = rep.shape();
  const FiniteSpectrum& spectrum = shape.spectrum();
  const double orbit_scale = x.norm();
  std::vector<Complex> span_lower(shape.num_points(), Complex(0.0, 0.0));
  std::vector<Complex> span_upper(shape.num_points(), Complex(0.0, 0.0));
  double c_span = std::numeric_limits<double>::infinity();
  double d_span = 0.0;
  bool complete = true;
  bool any_rank = false;
  for (std::size_t t = 0; t < shape.num_points(); ++t) {
    const Eigen::Index d = shape.dim(t);
    if (d == 0) continue;
    Eigen::MatrixXcd cols(d, static_cast<Eigen::Index>(count));
    for (std::size_t u = 0; u < count; ++u) {
      cols.col(static_cast<Eigen::Index>(u)) = orbit.vector(u).fiber(t);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cols, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    const double cutoff =
        kDefaultRankCutoff * std::max(sv.size() > 0 ? sv(0) : 0.0, orbit_scale);
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    if (rank < d) complete = false;
    if (rank == 0) continue;
    any_rank = true;
    const Eigen::MatrixXcd q = svd.matrixU().leftCols(rank);
    const Eigen::MatrixXcd s_span =
        q.adjoint() * orbit.frame_operator().fiber(t) * q;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        0.5 * (s_span + s_span.adjoint()));
    const Eigen::VectorXd lam = solver.eigenvalues();
    span_lower[t] = Complex(lam(0), 0.0);
    span_upper[t] = Complex(lam(lam.size() - 1), 0.0);
    c_span = std::min(c_span, lam(0));
    d_span = std::max(d_span, lam(lam.size() - 1));
  }
  out.complete = complete;
  if (!any_rank) {
    // Zero vector: the orbit satisfies the Bessel inequality on the whole
    // module with any bound, and nothing stronger.
    out.label = VectorClass::kCompleteBessel;
    out.span_bounds = FrameBounds{0.0, 0.0,
                                  AlgebraElement(spectrum, span_lower),
                                  AlgebraElement(spectrum, span_upper)};
    return out;
  }
  out.span_bounds = FrameBounds{std::max(c_span, 0.0), d_span,
                                AlgebraElement(spectrum, std::move(span_lower)),
                                AlgebraElement(spectrum, std::move(span_upper))};

  const bool orthonormal = gram_resid <= tol;
  const FrameKind full_kind = classify_frame(out.module_bounds, tol);
  const FrameKind span_kind = classify_frame(out.span_bounds, tol);

  if (orthonormal && complete) out.label = VectorClass::kCompleteWandering;
  else if (orthonormal) out.label = VectorClass::kWandering;
  else if (complete && full_kind == FrameKind::kParsevalFrame) {
    out.label = VectorClass::kCompleteParseval;
  } else if (!complete && span_kind == FrameKind::kParsevalFrame) {
    out.label = VectorClass::kParseval;
  } else if (complete && full_kind != FrameKind::kNotFrame) {
    out.label = VectorClass::kCompleteFrame;
  } else if (!complete && span_kind != FrameKind::kNotFrame) {
    out.label = VectorClass::kFrame;
  } else {
    out.label = VectorClass::kCompleteBessel;
  }
  return out;
}

Dilation dilate(const UnitaryRepresentation& rep, const ModuleElement& eta,
                double tol) {
  const VectorClassification cls = classify_vector(rep, eta, tol);
  if (!label_implies(cls.label, VectorClass::kCompleteParseval)) {
    throw PreconditionError(
        "dilate: eta is not a complete Parseval frame vector (classified " +
        to_string(cls.label) + ")");
  }
  const FrameSystem orbit = orbit_frame(rep, eta);
  const ModuleOperator& t_op = orbit.analysis_operator();
  const ModuleOperator p_op = t_op * t_op.adjoint();

  const FiniteGroup& group = rep.group();
  const FiniteSpectrum& spectrum = rep.shape().spectrum();
  const auto [left, right] = regular_representations(group, spectrum);
  (void)right;
  const ModuleElement chi_identity = standard_basis_element(
      t_op.codomain(), static_cast<Eigen::Index>(group.identity()));

  std::map<std::string, double> residuals;
  residuals["isometry"] =
      (t_op.adjoint() * t_op - ModuleOperator::identity(rep.shape())).norm();
  double intertwine = 0.0;
  double commute = 0.0;
  for (std::size_t g = 0; g < group.order(); ++g) {
    intertwine = std::max(intertwine,
                          (left.image(g) * t_op - t_op * rep.image(g)).norm());
    commute = std::max(commute,
                       (p_op * left.image(g) - left.image(g) * p_op).norm());
  }
  residuals["intertwine"] = intertwine;
  residuals["commute"] = commute;
  residuals["projection"] = (p_op * p_op - p_op).norm();
  residuals["eta_embed"] =
      (t_op.apply(eta) - p_op.apply(chi_identity)).norm();
  return Dilation{t_op, p_op, std::move(residuals)};
}

}  // namespace modframe
