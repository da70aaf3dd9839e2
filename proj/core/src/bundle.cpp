// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0

#include "modframe/bundle.hpp"

#include <Eigen/QR>
#include <fstream>
#include <sstream>
#include <utility>

namespace modframe {

const UnitaryRepresentation& InstanceBundle::require_representation() const {
  if (!representation) {
    throw ValidationError("/representation: bundle has no representation");
  }
  return *representation;
}

const FiniteGroup& InstanceBundle::require_group() const {
  if (!group) throw ValidationError("/group: bundle has no group");
  return *group;
}

const ModuleElement& InstanceBundle::require_vector(const std::string& name) const {
  const auto it = vectors.find(name);
  if (it == vectors.end()) {
    throw ValidationError("/vectors/" + name + ": no such vector");
  }
  return it->second;
}

const FrameSystem& InstanceBundle::require_frame(const std::string& name) const {
  const auto it = frames.find(name);
  if (it == frames.end()) {
    throw ValidationError("/frames/" + name + ": no such frame");
  }
  return it->second;
}

const MultiGenerator& InstanceBundle::require_generators(
    const std::string& name) const {
  const auto it = generators.find(name);
  if (it == generators.end()) {
    throw ValidationError("/generators/" + name + ": no such multi-generator");
  }
  return it->second;
}

const ModuleOperator& InstanceBundle::require_operator(
    const std::string& name) const {
  const auto it = operators.find(name);
  if (it == operators.end()) {
    throw ValidationError("/operators/" + name + ": no such operator");
  }
  return it->second;
}

InstanceBundle bundle_from_json(const Json& j) {
  detail::require_object(j, "");
  const Json& version = detail::require_field(j, "version", "");
  if (!version.is_string() || version.get<std::string>() != kBundleSchemaVersion) {
    throw SchemaError("/version: unsupported schema version (expected \"" +
                      std::string(kBundleSchemaVersion) + "\")");
  }

  FiniteSpectrum spectrum =
      spectrum_from_json(detail::require_field(j, "spectrum", ""), "/spectrum");
  ModuleShape module =
      shape_from_json(detail::require_field(j, "module", ""), "/module");
  if (!(module.spectrum() == spectrum)) {
    throw ValidationError("/module/spectrum: does not match /spectrum");
  }

  InstanceBundle bundle{kBundleSchemaVersion, std::nullopt, std::move(spectrum),
                        std::move(module),    std::nullopt, std::nullopt,
                        {},                   {},           {},
                        {}};

  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      throw SchemaError("/seed: expected an unsigned integer");
    }
    bundle.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("group")) {
    bundle.group = group_from_json(j["group"], "/group");
  }
  if (j.contains("representation")) {
    if (!bundle.group) {
      throw ValidationError("/representation: requires a /group");
    }
    bundle.representation = representation_from_json(
        j["representation"], *bundle.group, bundle.module, "/representation");
  }
  if (j.contains("vectors")) {
    detail::require_object(j["vectors"], "/vectors");
    for (const auto& [name, value] : j["vectors"].items()) {
      bundle.vectors.emplace(
          name, element_from_json(value, bundle.module, "/vectors/" + name));
    }
  }
  if (j.contains("frames")) {
    detail::require_object(j["frames"], "/frames");
    for (const auto& [name, value] : j["frames"].items()) {
      bundle.frames.emplace(
          name, frame_from_json(value, bundle.module, "/frames/" + name));
    }
  }
  if (j.contains("generators")) {
    detail::require_object(j["generators"], "/generators");
    for (const auto& [name, value] : j["generators"].items()) {
      bundle.generators.emplace(name, generators_from_json(
                                          value, bundle.module,
                                          "/generators/" + name));
    }
  }
  if (j.contains("operators")) {
    detail::require_object(j["operators"], "/operators");
    for (const auto& [name, value] : j["operators"].items()) {
      bundle.operators.emplace(
          name, operator_from_json(value, bundle.module, bundle.module,
                                   "/operators/" + name));
    }
  }
  return bundle;
}

Json bundle_to_json(const InstanceBundle& bundle) {
  Json j{{"version", bundle.version},
         {"spectrum", to_json(bundle.spectrum)},
         {"module", to_json(bundle.module)}};
  if (bundle.seed) j["seed"] = *bundle.seed;
  if (bundle.group) j["group"] = to_json(*bundle.group);
  if (bundle.representation) {
    Json images = Json::object();
    const UnitaryRepresentation& rep = *bundle.representation;
    for (std::size_t g = 0; g < rep.group().order(); ++g) {
      images[rep.group().element(g)] = to_json(rep.image(g));
    }
    j["representation"] = Json{{"images", std::move(images)}};
  }
  if (!bundle.vectors.empty()) {
    Json vectors = Json::object();
    for (const auto& [name, v] : bundle.vectors) vectors[name] = to_json(v);
    j["vectors"] = std::move(vectors);
  }
  if (!bundle.frames.empty()) {
    Json frames = Json::object();
    for (const auto& [name, f] : bundle.frames) {
      Json vectors = Json::array();
      for (std::size_t i = 0; i < f.size(); ++i) vectors.push_back(to_json(f.vector(i)));
      frames[name] = Json{{"vectors", std::move(vectors)}};
    }
    j["frames"] = std::move(frames);
  }
  if (!bundle.generators.empty()) {
    Json generators = Json::object();
    for (const auto& [name, g] : bundle.generators) {
      Json vectors = Json::array();
      for (std::size_t i = 0; i < g.size(); ++i) {
        vectors.push_back(to_json(g.generator(i)));
      }
      generators[name] = Json{{"vectors", std::move(vectors)}};
    }
    j["generators"] = std::move(generators);
  }
  if (!bundle.operators.empty()) {
    Json operators = Json::object();
    for (const auto& [name, m] : bundle.operators) operators[name] = to_json(m);
    j["operators"] = std::move(operators);
  }
  return j;
}

InstanceBundle load_bundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return bundle_from_json(j);
}

void save_bundle(const InstanceBundle& bundle, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << bundle_to_json(bundle).dump(2) << "\n";
}

FiniteGroup group_from_spec(const std::string& spec) {
  if (spec == "trivial") return FiniteGroup::trivial();
  if (spec == "klein") return FiniteGroup::klein_four();
  if (spec == "s3") return FiniteGroup::symmetric(3);
  if (spec == "s4") return FiniteGroup::symmetric(4);
  if (spec.rfind("cyclic:", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(spec.substr(7));
    } catch (const std::exception&) {
      throw ValidationError("bad group spec: " + spec);
    }
    if (n < 1 || static_cast<std::size_t>(n) > kMaxRandGroupOrder) {
      throw ValidationError("cyclic group order out of range: " + spec);
    }
    return FiniteGroup::cyclic(n);
  }
  throw ValidationError("unknown group spec: " + spec +
                        " (expected trivial|cyclic:<n>|klein|s3|s4)");
}

namespace {

Eigen::MatrixXcd random_unitary_matrix(Eigen::Index n, Rng& rng) {
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = complex_gaussian(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  // Fix the phase of each column so the draw does not depend on QR's
  // internal sign conventions.
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

// Block-permutation model: floor(d / |G|) copies of the regular permutation
// action plus trivial blocks, conjugated by one random unitary per fiber.
std::vector<ModuleOperator> perm_model_images(const FiniteGroup& group,
                                              const ModuleShape& shape,
                                              Rng& rng) {
  const int n = static_cast<int>(group.order());
  std::vector<Eigen::MatrixXcd> conjugators(shape.num_points());
  for (std::size_t t = 0; t < shape.num_points(); ++t) {
    conjugators[t] = random_unitary_matrix(shape.dim(t), rng);
  }
  std::vector<ModuleOperator> images;
  images.reserve(group.order());
  for (int g = 0; g < n; ++g) {
    std::vector<Eigen::MatrixXcd> fibers(shape.num_points());
    for (std::size_t t = 0; t < shape.num_points(); ++t) {
      const Eigen::Index d = shape.dim(t);
      Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(d, d);
      const Eigen::Index copies = d / n;
      for (Eigen::Index c = 0; c < copies; ++c) {
        for (int v = 0; v < n; ++v) {
          block(c * n + group.mul(g, v), c * n + v) = Complex(1.0, 0.0);
        }
      }
      for (Eigen::Index i = copies * n; i < d; ++i) block(i, i) = Complex(1.0, 0.0);
      fibers[t] = conjugators[t] * block * conjugators[t].adjoint();
    }
    images.emplace_back(shape, shape, std::move(fibers));
  }
  return images;
}

}  // namespace

CompressedRegularInstance compressed_regular_instance(
    const FiniteGroup& group, const FiniteSpectrum& spectrum, Rng& rng) {
  const auto [left, right] = regular_representations(group, spectrum);
  (void)left;
  const ModuleShape l2_shape = group_module_shape(group, spectrum);

  // Random Hermitian element of {L}' (= span of the R_U per fiber); its
  // positive spectral projection commutes with every L_U. Redraw until at
  // least one fiber has positive rank.
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Eigen::MatrixXcd> isometries(l2_shape.num_points());
    std::vector<Eigen::Index> ranks(l2_shape.num_points());
    bool any_rank = false;
    for (std::size_t t = 0; t < l2_shape.num_points(); ++t) {
      Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(l2_shape.dim(t), l2_shape.dim(t));
      for (std::size_t g = 0; g < group.order(); ++g) {
        h += complex_gaussian(rng) * right.image(g).fiber(t);
      }
      h = 0.5 * (h + h.adjoint()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
      Eigen::Index rank = 0;
      for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        if (solver.eigenvalues()(i) > 0.0) ++rank;
      }
      isometries[t] = solver.eigenvectors().rightCols(rank);
      ranks[t] = rank;
      any_rank = any_rank || rank > 0;
    }
    if (!any_rank) continue;

    const ModuleShape shape(spectrum, std::move(ranks));
    std::vector<ModuleOperator> images;
    images.reserve(group.order());
    const auto [l2_left, l2_right] = regular_representations(group, spectrum);
    (void)l2_right;
    for (std::size_t g = 0; g < group.order(); ++g) {
      std::vector<Eigen::MatrixXcd> fibers(shape.num_points());
      for (std::size_t t = 0; t < shape.num_points(); ++t) {
        fibers[t] = isometries[t].adjoint() * l2_left.image(g).fiber(t) *
                    isometries[t];
      }
      images.emplace_back(shape, shape, std::move(fibers));
    }
    UnitaryRepresentation rep(group, std::move(images));

    // eta = compression of P chi_I; its orbit frame operator is exactly the
    // compressed projection, i.e. the identity.
    const int id = group.identity();
    std::vector<Eigen::VectorXcd> eta_fibers(shape.num_points());
    for (std::size_t t = 0; t < shape.num_points(); ++t) {
      eta_fibers[t] = isometries[t].adjoint().col(id);
    }
    ModuleElement eta(shape, std::move(eta_fibers));
    return CompressedRegularInstance{std::move(rep), std::move(eta)};
  }
  throw NumericalError("compressed_regular_instance: no usable projection drawn");
}

InstanceBundle rand_instance(const RandSpec& spec) {
  if (spec.num_points < 1 || spec.num_points > kMaxRandPoints) {
    throw ValidationError("rand: num_points out of range [1, " +
                          std::to_string(kMaxRandPoints) + "]");
  }
  if (spec.max_fiber_dim < 1 || spec.max_fiber_dim > kMaxRandFiberDim) {
    throw ValidationError("rand: max_fiber_dim out of range [1, " +
                          std::to_string(kMaxRandFiberDim) + "]");
  }
  if (spec.num_generators < 1 || spec.num_generators > kMaxRandGenerators) {
    throw ValidationError("rand: num_generators out of range [1, " +
                          std::to_string(kMaxRandGenerators) + "]");
  }
  if (spec.model != "perm" && spec.model != "compressed") {
    throw ValidationError("rand: model must be \"perm\" or \"compressed\"");
  }
  const FiniteGroup group = group_from_spec(spec.group);
  if (group.order() > kMaxRandGroupOrder) {
    throw ValidationError("rand: group order exceeds " +
                          std::to_string(kMaxRandGroupOrder));
  }

  Rng rng(spec.seed);
  std::vector<std::string> labels(spec.num_points);
  for (std::size_t i = 0; i < spec.num_points; ++i) {
    labels[i] = "t" + std::to_string(i + 1);
  }
  const FiniteSpectrum spectrum(std::move(labels));

  std::optional<ModuleShape> module;
  std::optional<UnitaryRepresentation> representation;
  std::map<std::string, ModuleElement> vectors;
  std::map<std::string, ModuleOperator> operators;

  if (spec.model == "perm") {
    std::vector<Eigen::Index> dims(spec.num_points);
    for (std::size_t t = 0; t < spec.num_points; ++t) {
      dims[t] = 1 + static_cast<Eigen::Index>(
                        uniform_index(rng, static_cast<std::uint64_t>(
                                               spec.max_fiber_dim)));
    }
    module = ModuleShape(spectrum, std::move(dims));
    representation =
        UnitaryRepresentation(group, perm_model_images(group, *module, rng));
  } else {
    CompressedRegularInstance instance =
        compressed_regular_instance(group, spectrum, rng);
    module = instance.rep.shape();
    // A complete Parseval frame vector pair plus the unitary witness
    // carrying one to the other.
    const OperatorAlgebraBasis bicomm = bicommutant(instance.rep.images());
    const ModuleOperator a = random_unitary_in(bicomm, rng);
    vectors.emplace("eta", instance.eta);
    vectors.emplace("xi", a.apply(instance.eta));
    operators.emplace("A", a);
    representation = std::move(instance.rep);
  }

  InstanceBundle bundle{kBundleSchemaVersion,
                        spec.seed,
                        spectrum,
                        *module,
                        group,
                        std::move(representation),
                        std::move(vectors),
                        {},
                        {},
                        std::move(operators)};

  bundle.vectors.emplace("x", random_element(bundle.module, rng));
  std::vector<ModuleElement> frame_vectors;
  frame_vectors.reserve(spec.frame_size);
  for (std::size_t i = 0; i < spec.frame_size; ++i) {
    frame_vectors.push_back(random_element(bundle.module, rng));
  }
  bundle.frames.emplace("F", FrameSystem(std::move(frame_vectors)));
  std::vector<ModuleElement> gens;
  gens.reserve(spec.num_generators);
  for (std::size_t i = 0; i < spec.num_generators; ++i) {
    gens.push_back(random_element(bundle.module, rng));
  }
  bundle.generators.emplace("Phi", MultiGenerator(std::move(gens)));
  return bundle;
}

}  // namespace modframe
