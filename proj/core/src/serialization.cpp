// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0

#include "modframe/serialization.hpp"

#include <utility>

namespace modframe {

namespace detail {

const Json& require_field(const Json& j, const char* key,
                          const std::string& loc) {
  require_object(j, loc);
  const auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(loc + ": missing field \"" + key + "\"");
  }
  return *it;
}

void require_array(const Json& j, const std::string& loc) {
  if (!j.is_array()) throw SchemaError(loc + ": expected an array");
}

void require_object(const Json& j, const std::string& loc) {
  if (!j.is_object()) throw SchemaError(loc + ": expected an object");
}

Complex complex_from_json(const Json& j, const std::string& loc) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw SchemaError(loc + ": expected a [re, im] pair");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json complex_to_json(Complex c) {
  return Json::array({c.real(), c.imag()});
}

}  // namespace detail

using detail::complex_from_json;
using detail::complex_to_json;
using detail::require_array;
using detail::require_field;
using detail::require_object;

Json to_json(const FiniteSpectrum& spectrum) {
  return Json(spectrum.points());
}

Json to_json(const AlgebraElement& a) {
  Json values = Json::array();
  for (std::size_t i = 0; i < a.size(); ++i) values.push_back(complex_to_json(a[i]));
  return Json{{"spectrum", to_json(a.spectrum())}, {"values", std::move(values)}};
}

Json to_json(const ModuleShape& shape) {
  return Json{{"spectrum", to_json(shape.spectrum())},
              {"fiber_dims", shape.fiber_dims()}};
}

Json to_json(const ModuleElement& x) {
  Json fibers = Json::array();
  for (std::size_t t = 0; t < x.num_points(); ++t) {
    Json fiber = Json::array();
    for (Eigen::Index i = 0; i < x.fiber(t).size(); ++i) {
      fiber.push_back(complex_to_json(x.fiber(t)(i)));
    }
    fibers.push_back(std::move(fiber));
  }
  return Json{{"fibers", std::move(fibers)}};
}

Json to_json(const ModuleOperator& m) {
  Json fibers = Json::array();
  for (std::size_t t = 0; t < m.num_points(); ++t) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.fiber(t).rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < m.fiber(t).cols(); ++c) {
        row.push_back(complex_to_json(m.fiber(t)(r, c)));
      }
      rows.push_back(std::move(row));
    }
    fibers.push_back(std::move(rows));
  }
  return Json{{"fibers", std::move(fibers)}};
}

Json to_json(const FiniteGroup& group) {
  return Json{{"elements", group.elements()}, {"table", group.table()}};
}

Json to_json(const UnitaryRepresentation& rep) {
  Json images = Json::object();
  for (std::size_t g = 0; g < rep.group().order(); ++g) {
    images[rep.group().element(g)] = to_json(rep.image(g));
  }
  return Json{{"group", to_json(rep.group())},
              {"module", to_json(rep.shape())},
              {"images", std::move(images)}};
}

Json to_json(const FrameSystem& frame) {
  Json vectors = Json::array();
  for (std::size_t j = 0; j < frame.size(); ++j) {
    vectors.push_back(to_json(frame.vector(j)));
  }
  return Json{{"module", to_json(frame.shape())}, {"vectors", std::move(vectors)}};
}

Json to_json(const MultiGenerator& generators) {
  Json vectors = Json::array();
  for (std::size_t k = 0; k < generators.size(); ++k) {
    vectors.push_back(to_json(generators.generator(k)));
  }
  return Json{{"module", to_json(generators.shape())},
              {"vectors", std::move(vectors)}};
}

Json to_json(const FrameBounds& bounds) {
  return Json{{"lower", bounds.lower},
              {"upper", bounds.upper},
              {"lower_fn", to_json(bounds.lower_fn)},
              {"upper_fn", to_json(bounds.upper_fn)}};
}

FiniteSpectrum spectrum_from_json(const Json& j, const std::string& loc) {
  require_array(j, loc);
  std::vector<std::string> points;
  points.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) {
      throw SchemaError(loc + "/" + std::to_string(i) + ": expected a string label");
    }
    points.push_back(j[i].get<std::string>());
  }
  try {
    return FiniteSpectrum(std::move(points));
  } catch (const Error& e) {
    throw ValidationError(loc + ": " + e.what());
  }
}

AlgebraElement algebra_from_json(const Json& j, const std::string& loc) {
  FiniteSpectrum spectrum =
      spectrum_from_json(require_field(j, "spectrum", loc), loc + "/spectrum");
  const Json& values = require_field(j, "values", loc);
  require_array(values, loc + "/values");
  std::vector<Complex> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.push_back(complex_from_json(values[i], loc + "/values/" + std::to_string(i)));
  }
  try {
    return AlgebraElement(std::move(spectrum), std::move(out));
  } catch (const Error& e) {
    throw ValidationError(loc + ": " + e.what());
  }
}

ModuleShape shape_from_json(const Json& j, const std::string& loc) {
  FiniteSpectrum spectrum =
      spectrum_from_json(require_field(j, "spectrum", loc), loc + "/spectrum");
  const Json& dims = require_field(j, "fiber_dims", loc);
  require_array(dims, loc + "/fiber_dims");
  std::vector<Eigen::Index> out;
  out.reserve(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (!dims[i].is_number_integer()) {
      throw SchemaError(loc + "/fiber_dims/" + std::to_string(i) +
                        ": expected an integer");
    }
    out.push_back(dims[i].get<Eigen::Index>());
  }
  try {
    return ModuleShape(std::move(spectrum), std::move(out));
  } catch (const Error& e) {
    throw ValidationError(loc + ": " + e.what());
  }
}

ModuleElement element_from_json(const Json& j, const ModuleShape& shape,
                                const std::string& loc) {
  const Json& fibers = require_field(j, "fibers", loc);
  require_array(fibers, loc + "/fibers");
  if (fibers.size() != shape.num_points()) {
    throw ValidationError(loc + "/fibers: expected " +
                          std::to_string(shape.num_points()) + " fibers, got " +
                          std::to_string(fibers.size()));
  }
  std::vector<Eigen::VectorXcd> out(shape.num_points());
  for (std::size_t t = 0; t < shape.num_points(); ++t) {
    const std::string floc = loc + "/fibers/" + std::to_string(t);
    require_array(fibers[t], floc);
    if (static_cast<Eigen::Index>(fibers[t].size()) != shape.dim(t)) {
      throw ValidationError(floc + ": expected length " +
                            std::to_string(shape.dim(t)));
    }
    Eigen::VectorXcd f(shape.dim(t));
    for (std::size_t i = 0; i < fibers[t].size(); ++i) {
      f(static_cast<Eigen::Index>(i)) =
          complex_from_json(fibers[t][i], floc + "/" + std::to_string(i));
    }
    out[t] = std::move(f);
  }
  return ModuleElement(shape, std::move(out));
}

ModuleOperator operator_from_json(const Json& j, const ModuleShape& domain,
                                  const ModuleShape& codomain,
                                  const std::string& loc) {
  const Json& fibers = require_field(j, "fibers", loc);
  require_array(fibers, loc + "/fibers");
  if (fibers.size() != domain.num_points()) {
    throw ValidationError(loc + "/fibers: expected " +
                          std::to_string(domain.num_points()) + " fibers");
  }
  std::vector<Eigen::MatrixXcd> out(domain.num_points());
  for (std::size_t t = 0; t < domain.num_points(); ++t) {
    const std::string floc = loc + "/fibers/" + std::to_string(t);
    require_array(fibers[t], floc);
    if (static_cast<Eigen::Index>(fibers[t].size()) != codomain.dim(t)) {
      throw ValidationError(floc + ": expected " +
                            std::to_string(codomain.dim(t)) + " rows");
    }
    Eigen::MatrixXcd m(codomain.dim(t), domain.dim(t));
    for (std::size_t r = 0; r < fibers[t].size(); ++r) {
      const std::string rloc = floc + "/" + std::to_string(r);
      require_array(fibers[t][r], rloc);
      if (static_cast<Eigen::Index>(fibers[t][r].size()) != domain.dim(t)) {
        throw ValidationError(rloc + ": expected " +
                              std::to_string(domain.dim(t)) + " columns");
      }
      for (std::size_t c = 0; c < fibers[t][r].size(); ++c) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            complex_from_json(fibers[t][r][c], rloc + "/" + std::to_string(c));
      }
    }
    out[t] = std::move(m);
  }
  return ModuleOperator(domain, codomain, std::move(out));
}

FiniteGroup group_from_json(const Json& j, const std::string& loc) {
  const Json& elements = require_field(j, "elements", loc);
  require_array(elements, loc + "/elements");
  std::vector<std::string> labels;
  labels.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!elements[i].is_string()) {
      throw SchemaError(loc + "/elements/" + std::to_string(i) +
                        ": expected a string label");
    }
    labels.push_back(elements[i].get<std::string>());
  }
  const Json& table = require_field(j, "table", loc);
  require_array(table, loc + "/table");
  std::vector<std::vector<int>> rows;
  rows.reserve(table.size());
  for (std::size_t r = 0; r < table.size(); ++r) {
    const std::string rloc = loc + "/table/" + std::to_string(r);
    require_array(table[r], rloc);
    std::vector<int> row;
    row.reserve(table[r].size());
    for (std::size_t c = 0; c < table[r].size(); ++c) {
      if (!table[r][c].is_number_integer()) {
        throw SchemaError(rloc + "/" + std::to_string(c) + ": expected an integer");
      }
      row.push_back(table[r][c].get<int>());
    }
    rows.push_back(std::move(row));
  }
  try {
    return FiniteGroup(std::move(labels), std::move(rows));
  } catch (const Error& e) {
    throw ValidationError(loc + ": " + e.what());
  }
}

UnitaryRepresentation representation_from_json(const Json& j,
                                               const FiniteGroup& group,
                                               const ModuleShape& shape,
                                               const std::string& loc) {
  if (j.contains("group")) {
    const FiniteGroup inline_group =
        group_from_json(j["group"], loc + "/group");
    if (inline_group.elements() != group.elements() ||
        inline_group.table() != group.table()) {
      throw ValidationError(loc + "/group: does not match the bundle group");
    }
  }
  if (j.contains("module")) {
    const ModuleShape inline_shape = shape_from_json(j["module"], loc + "/module");
    if (!(inline_shape == shape)) {
      throw ValidationError(loc + "/module: does not match the bundle module");
    }
  }
  const Json& images = require_field(j, "images", loc);
  require_object(images, loc + "/images");
  std::vector<ModuleOperator> ops;
  ops.reserve(group.order());
  for (std::size_t g = 0; g < group.order(); ++g) {
    const std::string& label = group.element(g);
    const auto it = images.find(label);
    if (it == images.end()) {
      throw ValidationError(loc + "/images: missing image for element \"" +
                            label + "\"");
    }
    ops.push_back(operator_from_json(*it, shape, shape, loc + "/images/" + label));
  }
  if (images.size() != group.order()) {
    throw ValidationError(loc + "/images: has entries for unknown elements");
  }
  try {
    return UnitaryRepresentation(group, std::move(ops));
  } catch (const Error& e) {
    throw ValidationError(loc + ": " + e.what());
  }
}

FrameSystem frame_from_json(const Json& j, const ModuleShape& shape,
                            const std::string& loc) {
  if (j.contains("module")) {
    const ModuleShape inline_shape = shape_from_json(j["module"], loc + "/module");
    if (!(inline_shape == shape)) {
      throw ValidationError(loc + "/module: does not match the bundle module");
    }
  }
  const Json& vectors = require_field(j, "vectors", loc);
  require_array(vectors, loc + "/vectors");
  if (vectors.empty()) {
    throw ValidationError(loc + "/vectors: a frame needs at least one vector");
  }
  std::vector<ModuleElement> out;
  out.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    out.push_back(element_from_json(vectors[i], shape,
                                    loc + "/vectors/" + std::to_string(i)));
  }
  return FrameSystem(std::move(out));
}

MultiGenerator generators_from_json(const Json& j, const ModuleShape& shape,
                                    const std::string& loc) {
  if (j.contains("module")) {
    const ModuleShape inline_shape = shape_from_json(j["module"], loc + "/module");
    if (!(inline_shape == shape)) {
      throw ValidationError(loc + "/module: does not match the bundle module");
    }
  }
  const Json& vectors = require_field(j, "vectors", loc);
  require_array(vectors, loc + "/vectors");
  if (vectors.empty()) {
    throw ValidationError(loc + "/vectors: a multi-generator needs at least one entry");
  }
  std::vector<ModuleElement> out;
  out.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    out.push_back(element_from_json(vectors[i], shape,
                                    loc + "/vectors/" + std::to_string(i)));
  }
  return MultiGenerator(std::move(out));
}

}  // namespace modframe
