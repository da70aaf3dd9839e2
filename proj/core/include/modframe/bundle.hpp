// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0
//
// Instance bundles: one JSON file holding a spectrum, a module, optionally
// a group and a representation, plus named vectors, frames, generators and
// operators; everything cross-validated at load. Also the seeded random
// instance generator.

#ifndef MODFRAME_BUNDLE_HPP
#define MODFRAME_BUNDLE_HPP

#include <map>
#include <optional>
#include <string>

#include "modframe/serialization.hpp"

namespace modframe {

inline constexpr const char* kBundleSchemaVersion = "1";

struct InstanceBundle {
  std::string version = kBundleSchemaVersion;
  std::optional<std::uint64_t> seed;
  FiniteSpectrum spectrum;
  ModuleShape module;
  std::optional<FiniteGroup> group;
  std::optional<UnitaryRepresentation> representation;
  std::map<std::string, ModuleElement> vectors;
  std::map<std::string, FrameSystem> frames;
  std::map<std::string, MultiGenerator> generators;
  std::map<std::string, ModuleOperator> operators;

  const UnitaryRepresentation& require_representation() const;
  const FiniteGroup& require_group() const;
  const ModuleElement& require_vector(const std::string& name) const;
  const FrameSystem& require_frame(const std::string& name) const;
  const MultiGenerator& require_generators(const std::string& name) const;
  const ModuleOperator& require_operator(const std::string& name) const;
};

InstanceBundle bundle_from_json(const Json& j);
Json bundle_to_json(const InstanceBundle& bundle);

/// Loads and fully validates a bundle file. Throws ParseError for malformed
/// JSON, SchemaError for structural problems, ValidationError for semantic
/// ones; all carry JSON-pointer-style locations.
InstanceBundle load_bundle(const std::string& path);
void save_bundle(const InstanceBundle& bundle, const std::string& path);

/// Size caps for random instances.
inline constexpr std::size_t kMaxRandPoints = 8;
inline constexpr Eigen::Index kMaxRandFiberDim = 8;
inline constexpr std::size_t kMaxRandGroupOrder = 24;
inline constexpr std::size_t kMaxRandGenerators = 4;

/// "trivial", "cyclic:<n>", "klein", "s3" or "s4".
FiniteGroup group_from_spec(const std::string& spec);

struct RandSpec {
  std::size_t num_points = 2;
  Eigen::Index max_fiber_dim = 4;
  std::string group = "cyclic:2";
  std::size_t num_generators = 2;
  std::size_t frame_size = 6;
  /// "perm": conjugated block-permutation representation (regular plus
  /// trivial permutation blocks). "compressed": compression of the left
  /// regular representation by a random L-commuting projection; always
  /// carries a complete Parseval frame vector pair (eta, xi) and a unitary
  /// generator witness "A".
  std::string model = "perm";
  std::uint64_t seed = 0;
};

/// Deterministic per seed; every generated representation validates.
InstanceBundle rand_instance(const RandSpec& spec);

/// A representation with a guaranteed complete Parseval frame vector: the
/// left regular representation compressed by a random projection in {L}'.
struct CompressedRegularInstance {
  UnitaryRepresentation rep;
  ModuleElement eta;
};

CompressedRegularInstance compressed_regular_instance(
    const FiniteGroup& group, const FiniteSpectrum& spectrum, Rng& rng);

}  // namespace modframe

#endif  // MODFRAME_BUNDLE_HPP
