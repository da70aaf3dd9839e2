// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0
//
// JSON encodings of every domain type. Parsers carry JSON-pointer-style
// locations into their error messages; complex scalars are [re, im] pairs,
// matrices are row-major, and everything is indexed in spectrum order.

#ifndef MODFRAME_SERIALIZATION_HPP
#define MODFRAME_SERIALIZATION_HPP

#include <nlohmann/json.hpp>
#include <string>

#include "modframe/commutant.hpp"
#include "modframe/parametrize.hpp"

namespace modframe {

using Json = nlohmann::json;

Json to_json(const FiniteSpectrum& spectrum);
Json to_json(const AlgebraElement& a);
Json to_json(const ModuleShape& shape);
Json to_json(const ModuleElement& x);
Json to_json(const ModuleOperator& m);
Json to_json(const FiniteGroup& group);
Json to_json(const UnitaryRepresentation& rep);
Json to_json(const FrameSystem& frame);
Json to_json(const MultiGenerator& generators);
Json to_json(const FrameBounds& bounds);

FiniteSpectrum spectrum_from_json(const Json& j, const std::string& loc);
AlgebraElement algebra_from_json(const Json& j, const std::string& loc);
ModuleShape shape_from_json(const Json& j, const std::string& loc);
ModuleElement element_from_json(const Json& j, const ModuleShape& shape,
                                const std::string& loc);
ModuleOperator operator_from_json(const Json& j, const ModuleShape& domain,
                                  const ModuleShape& codomain,
                                  const std::string& loc);
FiniteGroup group_from_json(const Json& j, const std::string& loc);
/// Bundle-context representation: images keyed by element label; "group"
/// and "module" fields are optional and must agree with the context.
UnitaryRepresentation representation_from_json(const Json& j,
                                               const FiniteGroup& group,
                                               const ModuleShape& shape,
                                               const std::string& loc);
FrameSystem frame_from_json(const Json& j, const ModuleShape& shape,
                            const std::string& loc);
MultiGenerator generators_from_json(const Json& j, const ModuleShape& shape,
                                    const std::string& loc);

namespace detail {
const Json& require_field(const Json& j, const char* key,
                          const std::string& loc);
void require_array(const Json& j, const std::string& loc);
void require_object(const Json& j, const std::string& loc);
Complex complex_from_json(const Json& j, const std::string& loc);
Json complex_to_json(Complex c);
}  // namespace detail

}  // namespace modframe

#endif  // MODFRAME_SERIALIZATION_HPP
