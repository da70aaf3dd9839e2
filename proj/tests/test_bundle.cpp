// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "modframe/bundle.hpp"
#include "modframe/report.hpp"

using namespace modframe;

namespace {

Json minimal_bundle_json() {
  return Json{
      {"version", "1"},
      {"spectrum", {"t"}},
      {"module", {{"spectrum", {"t"}}, {"fiber_dims", {1}}}},
      {"group", {{"elements", {"e"}}, {"table", {{0}}}}},
      {"vectors",
       {{"x", {{"fibers", {{{1.0, 0.0}}}}}}}},
  };
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("minimal bundle loads") {
  const InstanceBundle bundle = bundle_from_json(minimal_bundle_json());
  CHECK(bundle.spectrum.size() == 1);
  CHECK(bundle.module.dim(0) == 1);
  CHECK(bundle.group.has_value());
  CHECK(bundle.require_vector("x").fiber(0)(0) == Complex(1.0, 0.0));
}

TEST_CASE("schema and validation failures carry locations") {
  SUBCASE("unsupported version") {
    Json j = minimal_bundle_json();
    j["version"] = "2";
    CHECK_THROWS_AS(bundle_from_json(j), SchemaError);
  }
  SUBCASE("missing module") {
    Json j = minimal_bundle_json();
    j.erase("module");
    try {
      bundle_from_json(j);
      FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
      CHECK(std::string(e.what()).find("module") != std::string::npos);
    }
  }
  SUBCASE("non-associative table cites the failing triple") {
    Json j = minimal_bundle_json();
    j["group"] = Json{{"elements", {"e", "a", "b"}},
                      {"table", {{0, 1, 2}, {1, 0, 0}, {2, 0, 1}}}};
    try {
      bundle_from_json(j);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("/group") != std::string::npos);
      CHECK(msg.find("associative") != std::string::npos);
      CHECK(msg.find("(a, a, b)") != std::string::npos);
    }
  }
  SUBCASE("wrong fiber length points into the element") {
    Json j = minimal_bundle_json();
    j["vectors"]["x"]["fibers"][0].push_back(Json::array({2.0, 0.0}));
    try {
      bundle_from_json(j);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("/vectors/x/fibers/0") !=
            std::string::npos);
    }
  }
  SUBCASE("module spectrum must match the bundle spectrum") {
    Json j = minimal_bundle_json();
    j["module"]["spectrum"] = {"other"};
    CHECK_THROWS_AS(bundle_from_json(j), ValidationError);
  }
  SUBCASE("representation requires a group") {
    Json j = minimal_bundle_json();
    j.erase("group");
    j["representation"] = Json{{"images", Json::object()}};
    CHECK_THROWS_AS(bundle_from_json(j), ValidationError);
  }
}

TEST_CASE("save and load round trip") {
  const RandSpec spec{2, 3, "cyclic:2", 2, 5, "perm", 9};
  const InstanceBundle bundle = rand_instance(spec);
  const auto path = temp_file("modframe_roundtrip.json");
  save_bundle(bundle, path.string());
  const InstanceBundle loaded = load_bundle(path.string());
  CHECK(bundle_to_json(loaded).dump(2) == bundle_to_json(bundle).dump(2));
  std::filesystem::remove(path);
}

TEST_CASE("rand instances") {
  SUBCASE("deterministic per seed") {
    const RandSpec spec{2, 4, "cyclic:3", 2, 6, "perm", 0};
    const InstanceBundle a = rand_instance(spec);
    const InstanceBundle b = rand_instance(spec);
    CHECK(bundle_to_json(a).dump() == bundle_to_json(b).dump());
  }
  SUBCASE("seeds change the content") {
    RandSpec spec{2, 4, "cyclic:3", 2, 6, "perm", 0};
    const InstanceBundle a = rand_instance(spec);
    spec.seed = 1;
    const InstanceBundle b = rand_instance(spec);
    CHECK(bundle_to_json(a).dump() != bundle_to_json(b).dump());
  }
  SUBCASE("generated representations validate after a round trip") {
    for (const char* model : {"perm", "compressed"}) {
      const RandSpec spec{2, 4, "s3", 2, 6, model, 5};
      const InstanceBundle bundle = rand_instance(spec);
      CHECK(bundle.representation.has_value());
      // Re-parsing runs the full validation again.
      const InstanceBundle reloaded = bundle_from_json(bundle_to_json(bundle));
      CHECK(reloaded.representation.has_value());
    }
  }
  SUBCASE("compressed model ships a solvable pair") {
    const RandSpec spec{2, 4, "cyclic:4", 1, 4, "compressed", 21};
    const InstanceBundle bundle = rand_instance(spec);
    const UnitaryRepresentation& rep = bundle.require_representation();
    CHECK(label_implies(
        classify_vector(rep, bundle.require_vector("eta")).label,
        VectorClass::kCompleteParseval));
    CHECK(label_implies(
        classify_vector(rep, bundle.require_vector("xi")).label,
        VectorClass::kCompleteParseval));
    CHECK(bundle.operators.count("A") == 1);
  }
  SUBCASE("caps are enforced") {
    RandSpec spec;
    spec.num_points = 9;
    CHECK_THROWS_AS(rand_instance(spec), ValidationError);
    spec = RandSpec{};
    spec.max_fiber_dim = 9;
    CHECK_THROWS_AS(rand_instance(spec), ValidationError);
    spec = RandSpec{};
    spec.group = "cyclic:25";
    CHECK_THROWS_AS(rand_instance(spec), ValidationError);
    spec = RandSpec{};
    spec.num_generators = 5;
    CHECK_THROWS_AS(rand_instance(spec), ValidationError);
  }
}

TEST_CASE("parse errors are distinct from schema errors") {
  const auto path = temp_file("modframe_corrupt.json");
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_bundle(path.string()), ParseError);
  CHECK_THROWS_AS(load_bundle("/nonexistent/nowhere.json"), ParseError);
  {
    std::ofstream out(path);
    out << "[1, 2, 3]";
  }
  CHECK_THROWS_AS(load_bundle(path.string()), SchemaError);
  std::filesystem::remove(path);
}

TEST_CASE("report serialization") {
  RunReport report;
  report.command = "frame analyze";
  report.input_digest = fnv1a64_hex("abc");
  report.residuals["x"] = 1.0 / 3.0;
  report.verdicts["ok"] = true;
  const Json j = report_to_json(report);
  CHECK(j["command"] == "frame analyze");
  // Lossless float round trip.
  CHECK(Json::parse(j.dump())["residuals"]["x"].get<double>() == 1.0 / 3.0);
  // Deterministic rendering.
  CHECK(report_to_json(report).dump(2) == j.dump(2));
  CHECK(report_to_text(report).find("PASS") != std::string::npos);
}
