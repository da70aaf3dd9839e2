// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0
//
// modframe CLI: loads instance bundles, runs the library's checks and
// constructions, and emits deterministic JSON reports.
//
// Exit codes: 0 pass, 1 mathematical check failure, 2 input error.

#include <CLI11.hpp>
#include <functional>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include "modframe/bundle.hpp"
#include "modframe/report.hpp"

namespace {

using namespace modframe;

struct GlobalOpts {
  double tol = kDefaultClassifyTol;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  bool timing = false;
};

constexpr int kExitPass = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitInputError = 2;

RunReport make_report(const std::string& command, const std::string& bundle_path,
                      const GlobalOpts& opts) {
  RunReport report;
  report.command = command;
  report.input_digest = bundle_path.empty() ? std::string(16, '0')
                                            : digest_file(bundle_path);
  report.tol = opts.tol;
  report.seed = opts.seed;
  return report;
}

Json gap_summaries(const ApproximationReport& result,
                   const FiniteSpectrum& spectrum) {
  // Min and median of the (real) gap per point of X across samples.
  Json per_point = Json::array();
  const std::size_t samples = result.sample_gaps.size();
  for (std::size_t t = 0; t < spectrum.size(); ++t) {
    std::vector<double> values;
    values.reserve(samples);
    for (const AlgebraElement& gap : result.sample_gaps) {
      values.push_back(gap[t].real());
    }
    std::sort(values.begin(), values.end());
    const double median = values.empty()
                              ? 0.0
                              : (values.size() % 2 == 1
                                     ? values[values.size() / 2]
                                     : 0.5 * (values[values.size() / 2 - 1] +
                                              values[values.size() / 2]));
    per_point.push_back(Json{{"point", spectrum.point(t)},
                             {"min", values.empty() ? 0.0 : values.front()},
                             {"median", median}});
  }
  return per_point;
}

RunReport run_validate(const std::string& path, const GlobalOpts& opts) {
  const InstanceBundle bundle = load_bundle(path);
  RunReport report = make_report("validate", path, opts);
  report.labels["version"] = bundle.version;
  report.payload["counts"] =
      Json{{"points", bundle.spectrum.size()},
           {"vectors", bundle.vectors.size()},
           {"frames", bundle.frames.size()},
           {"generators", bundle.generators.size()},
           {"operators", bundle.operators.size()},
           {"group_order", bundle.group ? bundle.group->order() : 0},
           {"has_representation", bundle.representation.has_value()}};
  return report;
}

RunReport run_frame_analyze(const std::string& path, const std::string& frame_name,
                      const std::string& vector_name, const GlobalOpts& opts) {
  const InstanceBundle bundle = load_bundle(path);
  const FrameSystem& frame = bundle.require_frame(frame_name);
  RunReport report = make_report("frame analyze", path, opts);
  report.labels["frame"] = frame_name;
  report.labels["classification"] = to_string(frame.kind(opts.tol));
  report.payload["bounds"] = to_json(frame.bounds());
  report.residuals["lower_bound"] = frame.bounds().lower;
  report.residuals["upper_bound"] = frame.bounds().upper;
  if (!vector_name.empty()) {
    const ModuleElement& x = bundle.require_vector(vector_name);
    const double resid = reconstruct_residual(frame, x, opts.tol);
    report.labels["vector"] = vector_name;
    report.residuals["reconstruction"] = resid;
    report.verdicts["reconstruction"] = resid <= 1e-8 * std::max(1e-30, x.norm());
    report.pass = report.verdicts["reconstruction"];
  }
  return report;
}

RunReport run_frame_parseval(const std::string& path, const std::string& frame_name,
                       const GlobalOpts& opts) {
  const InstanceBundle bundle = load_bundle(path);
  const FrameSystem& frame = bundle.require_frame(frame_name);
  RunReport report = make_report("frame parseval", path, opts);
  report.labels["frame"] = frame_name;
  const FrameSystem parseval = canonical_parseval(frame, opts.tol);
  const double resid =
      (parseval.frame_operator() - ModuleOperator::identity(frame.shape()))
          .norm();
  report.residuals["parseval"] = resid;
  report.verdicts["parseval"] = resid <= 1e-9;
  report.payload["frame"] = to_json(parseval);
  report.pass = report.verdicts["parseval"];
  return report;
}

RunReport run_classify_vector(const std::string& path, const std::string& vector_name,
                        const GlobalOpts& opts) {
  const InstanceBundle bundle = load_bundle(path);
  const UnitaryRepresentation& rep = bundle.require_representation();
  const ModuleElement& x = bundle.require_vector(vector_name);
  RunReport report = make_report("group classify-vector", path, opts);
  const VectorClassification cls = classify_vector(rep, x, opts.tol);
  report.labels["vector"] = vector_name;
  report.labels["classification"] = to_string(cls.label);
  report.labels["complete"] = cls.complete ? "true" : "false";
  report.residuals["orthonormality"] = cls.orthonormality_residual;
  report.payload["module_bounds"] = to_json(cls.module_bounds);
  report.payload["span_bounds"] = to_json(cls.span_bounds);
  return report;
}

RunReport run_dilate(const std::string& path, const std::string& vector_name,
               const GlobalOpts& opts) {
  const InstanceBundle bundle = load_bundle(path);
  const UnitaryRepresentation& rep = bundle.require_representation();
  const ModuleElement& eta = bundle.require_vector(vector_name);
  RunReport report = make_report("group dilate", path, opts);
  const Dilation dil = dilate(rep, eta, opts.tol);
  report.labels["vector"] = vector_name;
  bool pass = true;
  for (const auto& [name, value] : dil.residuals) {
    report.residuals[name] = value;
    report.verdicts[name] = value <= 1e-9;
    pass = pass && report.verdicts[name];
  }
  report.payload["isometry"] = to_json(dil.isometry);
  report.payload["projection"] = to_json(dil.projection);
  report.pass = pass;
  return report;
}

RunReport run_commutant_compute(const std::string& path, const GlobalOpts& opts) {
  const InstanceBundle bundle = load_bundle(path);
  const UnitaryRepresentation& rep = bundle.require_representation();
  RunReport report = make_report("commutant compute", path, opts);
  const OperatorAlgebraBasis comm = commutant(rep.images());
  const OperatorAlgebraBasis bicomm = bicommutant(rep.images());
  double span_resid = 0.0;
  for (const ModuleOperator& u : rep.images()) {
    span_resid = std::max(span_resid, bicomm.membership_residual(u) /
                                          std::max(1.0, u.hs_norm()));
  }
  report.residuals["span_in_bicommutant"] = span_resid;
  report.verdicts["span_in_bicommutant"] = span_resid <= kDefaultMembershipTol;
  report.payload["commutant"] =
      Json{{"dimension", comm.dimension()},
           {"fiber_dims", comm.fiber_dimensions()},
           {"unital", comm.unital()},
           {"star_closed", comm.star_closed()}};
  report.payload["bicommutant"] =
      Json{{"dimension", bicomm.dimension()},
           {"fiber_dims", bicomm.fiber_dimensions()},
           {"unital", bicomm.unital()},
           {"star_closed", bicomm.star_closed()}};
  report.pass = report.verdicts["span_in_bicommutant"];
  return report;
}

RunReport run_lemma33(const std::string& path, const GlobalOpts& opts) {
  const InstanceBundle bundle = load_bundle(path);
  const FiniteGroup& group = bundle.require_group();
  RunReport report = make_report("commutant lemma33", path, opts);
  const Lemma33Report result = check_lemma33(group, bundle.spectrum, opts.seed);
  report.residuals["span_equality"] = result.span_equality_residual;
  report.residuals["cross_commute"] = result.cross_commute_residual;
  report.verdicts["lemma33"] = result.passed;
  report.payload["dims"] = Json{{"left_bicommutant", result.left_bicomm_dims},
                                {"right_commutant", result.right_comm_dims},
                                {"right_bicommutant", result.right_bicomm_dims},
                                {"left_commutant", result.left_comm_dims}};
  report.pass = result.passed;
  return report;
}

RunReport run_trace_check(const std::string& path, int samples, const GlobalOpts& opts) {
  const InstanceBundle bundle = load_bundle(path);
  const FiniteGroup& group = bundle.require_group();
  RunReport report = make_report("commutant trace-check", path, opts);
  const RegularContext ctx(group, bundle.spectrum);
  Rng rng(opts.seed);
  double tracial = 0.0;
  double faithful_margin = 0.0;
  const double order = static_cast<double>(group.order());
  for (int i = 0; i < samples; ++i) {
    const ModuleOperator a = ctx.left_algebra().random_element(rng);
    const ModuleOperator b = ctx.left_algebra().random_element(rng);
    tracial = std::max(
        tracial, (ctx.trace_phi(a * b) - ctx.trace_phi(b * a)).norm());
    // Faithfulness estimate ||B*B|| <= |G| * ||phi(B*B)||.
    const ModuleOperator positive = b.adjoint() * b;
    const double excess =
        positive.norm() - order * ctx.trace_phi(positive).norm();
    faithful_margin = std::max(faithful_margin, excess);
  }
  report.residuals["tracial"] = tracial;
  report.residuals["faithfulness_excess"] = faithful_margin;
  report.verdicts["tracial"] = tracial <= 1e-10;
  report.verdicts["faithful"] = faithful_margin <= 1e-8;
  report.pass = report.verdicts["tracial"] && report.verdicts["faithful"];
  return report;
}

RunReport run_param_solve(const std::string& path, const std::string& eta_name,
                    const std::string& xi_name, const GlobalOpts& opts) {
  const InstanceBundle bundle = load_bundle(path);
  const UnitaryRepresentation& rep = bundle.require_representation();
  RunReport report = make_report("param solve", path, opts);
  const ParameterizationWitness witness =
      solve_generator(rep, bundle.require_vector(eta_name),
                      bundle.require_vector(xi_name), opts.seed, opts.tol);
  report.labels["eta"] = eta_name;
  report.labels["xi"] = xi_name;
  report.labels["kind"] = to_string(witness.kind);
  bool pass = true;
  for (const auto& [name, value] : witness.residuals) {
    report.residuals[name] = value;
  }
  for (const char* key : {"membership", "unitarity", "generation"}) {
    report.verdicts[key] = witness.residuals.at(key) <= 1e-8;
    pass = pass && report.verdicts[key];
  }
  report.payload["generator"] = to_json(witness.generator);
  report.pass = pass;
  return report;
}

RunReport run_param_apply(const std::string& path, const std::string& eta_name,
                    const std::string& op_name, const std::string& kind_name,
                    const GlobalOpts& opts) {
  const InstanceBundle bundle = load_bundle(path);
  const UnitaryRepresentation& rep = bundle.require_representation();
  GeneratorKind kind = GeneratorKind::kUnitary;
  if (kind_name == "unitary") kind = GeneratorKind::kUnitary;
  else if (kind_name == "invertible") kind = GeneratorKind::kInvertible;
  else if (kind_name == "adjointable") kind = GeneratorKind::kAdjointable;
  else throw ValidationError("--kind must be unitary|invertible|adjointable");

  RunReport report = make_report("param apply", path, opts);
  const ModuleElement xi =
      apply_generator(rep, bundle.require_vector(eta_name),
                      bundle.require_operator(op_name), kind, opts.tol);
  const VectorClassification cls = classify_vector(rep, xi, opts.tol);
  report.labels["eta"] = eta_name;
  report.labels["operator"] = op_name;
  report.labels["kind"] = kind_name;
  report.labels["classification"] = to_string(cls.label);
  report.payload["xi"] = to_json(xi);
  report.payload["bounds"] = to_json(cls.module_bounds);
  return report;
}

RunReport run_param_path(const std::string& path, const std::string& eta_name,
                   const std::string& xi_name, int steps,
                   const GlobalOpts& opts) {
  const InstanceBundle bundle = load_bundle(path);
  const UnitaryRepresentation& rep = bundle.require_representation();
  RunReport report = make_report("param path", path, opts);
  const std::vector<ModuleElement> points = connect_parseval_vectors(
      rep, bundle.require_vector(eta_name), bundle.require_vector(xi_name),
      steps, opts.seed);
  report.labels["eta"] = eta_name;
  report.labels["xi"] = xi_name;
  report.labels["steps"] = std::to_string(steps);
  Json payload = Json::array();
  for (const ModuleElement& p : points) payload.push_back(to_json(p));
  report.payload["path"] = std::move(payload);
  report.residuals["endpoint"] =
      (points.back() - bundle.require_vector(xi_name)).norm();
  report.verdicts["endpoint"] = report.residuals["endpoint"] <= 1e-7;
  report.pass = report.verdicts["endpoint"];
  return report;
}

RunReport run_approx_best(const std::string& path, const std::string& gen_name,
                    const GlobalOpts& opts) {
  const InstanceBundle bundle = load_bundle(path);
  const UnitaryRepresentation& rep = bundle.require_representation();
  RunReport report = make_report("approx best", path, opts);
  const ApproximationReport result =
      best_parseval_approx(rep, bundle.require_generators(gen_name), opts.tol);
  report.labels["generator"] = gen_name;
  for (const auto& [name, value] : result.residuals) {
    report.residuals[name] = value;
  }
  report.verdicts["s_commutant"] = result.residuals.at("s_commutant") <= 1e-9;
  report.verdicts["parseval"] = result.residuals.at("parseval") <= 1e-9;
  report.payload["best"] = to_json(result.best);
  report.pass = report.verdicts["s_commutant"] && report.verdicts["parseval"];
  return report;
}

RunReport run_approx_certify(const std::string& path, const std::string& gen_name,
                       int samples, const GlobalOpts& opts) {
  const InstanceBundle bundle = load_bundle(path);
  const UnitaryRepresentation& rep = bundle.require_representation();
  RunReport report = make_report("approx certify", path, opts);
  const ApproximationReport result = certify_optimality(
      rep, bundle.require_generators(gen_name), samples, opts.seed, 1e-8,
      opts.tol);
  report.labels["generator"] = gen_name;
  for (const auto& [name, value] : result.residuals) {
    report.residuals[name] = value;
  }
  report.verdicts["gaps_nonnegative"] = result.gaps_nonnegative;
  report.verdicts["uniqueness"] = result.uniqueness_ok;
  report.verdicts["cross_term"] = result.residuals.at("max_cross_term") <= 1e-9;
  report.payload["best"] = to_json(result.best);
  report.payload["gap_summaries"] = gap_summaries(result, bundle.spectrum);
  report.payload["samples"] = result.sample_gaps.size();
  report.pass = report.verdicts["gaps_nonnegative"] &&
                report.verdicts["uniqueness"] && report.verdicts["cross_term"];
  return report;
}

RunReport run_rand(const std::string& bundle_path, const RandSpec& spec,
             const GlobalOpts& opts) {
  const InstanceBundle bundle = rand_instance(spec);
  save_bundle(bundle, bundle_path);
  RunReport report = make_report("rand", "", opts);
  report.input_digest = fnv1a64_hex(bundle_to_json(bundle).dump(2) + "\n");
  report.seed = spec.seed;
  report.labels["path"] = bundle_path;
  report.labels["model"] = spec.model;
  report.labels["group"] = spec.group;
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical modular-frame toolkit for Hilbert C(X)-modules"};
  app.require_subcommand(1);

  GlobalOpts opts;
  if (const char* env = std::getenv("MODFRAME_TOL")) {
    try {
      opts.tol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "MODFRAME_TOL is not a number: " << env << "\n";
      return kExitInputError;
    }
  }
  app.add_option("--tol", opts.tol,
                 "Classification/positivity tolerance (default 1e-8; "
                 "MODFRAME_TOL overrides the default)");
  app.add_option("--seed", opts.seed, "Seed for every randomized check");
  app.add_option("--out", opts.out, "Report path (default: stdout)");
  app.add_option("--format", opts.format, "Report format: json|text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timing", opts.timing,
               "Include wall time in the report (breaks byte-for-byte "
               "reproducibility)");

  std::string bundle_path, frame_name, vector_name, eta_name, xi_name;
  std::string op_name, kind_name = "unitary", gen_name;
  int samples = 100;
  int steps = 16;
  RandSpec rand_spec;
  std::string rand_out;

  CLI::App* validate = app.add_subcommand("validate", "Load and validate a bundle");
  validate->add_option("bundle", bundle_path, "Bundle file")->required();

  CLI::App* frame = app.add_subcommand("frame", "Frame operations");
  frame->require_subcommand(1);
  CLI::App* frame_analyze = frame->add_subcommand(
      "analyze", "Frame bounds, classification, optional reconstruction");
  frame_analyze->add_option("bundle", bundle_path)->required();
  frame_analyze->add_option("--frame", frame_name, "Frame name")->required();
  frame_analyze->add_option("--vector", vector_name,
                            "Vector to reconstruct (optional)");
  CLI::App* frame_parseval =
      frame->add_subcommand("parseval", "Canonical Parseval companion");
  frame_parseval->add_option("bundle", bundle_path)->required();
  frame_parseval->add_option("--frame", frame_name, "Frame name")->required();

  CLI::App* group = app.add_subcommand("group", "Representation operations");
  group->require_subcommand(1);
  CLI::App* classify = group->add_subcommand(
      "classify-vector", "Classify a vector against the representation orbit");
  classify->add_option("bundle", bundle_path)->required();
  classify->add_option("--vector", vector_name, "Vector name")->required();
  CLI::App* dilate_cmd = group->add_subcommand(
      "dilate", "Dilate a complete Parseval frame vector into l2_G(A)");
  dilate_cmd->add_option("bundle", bundle_path)->required();
  dilate_cmd->add_option("--vector", vector_name, "Vector name")->required();

  CLI::App* comm = app.add_subcommand("commutant", "Commutant machinery");
  comm->require_subcommand(1);
  CLI::App* comm_compute = comm->add_subcommand(
      "compute", "Commutant and bicommutant of the representation images");
  comm_compute->add_option("bundle", bundle_path)->required();
  CLI::App* comm_lemma = comm->add_subcommand(
      "lemma33", "Left/right commutant identities on l2_G(A)");
  comm_lemma->add_option("bundle", bundle_path)->required();
  CLI::App* comm_trace = comm->add_subcommand(
      "trace-check", "Tracial and faithfulness probes for the A-valued trace");
  comm_trace->add_option("bundle", bundle_path)->required();
  comm_trace->add_option("--samples", samples, "Random pairs to test");

  CLI::App* param = app.add_subcommand("param", "Frame-vector parameterization");
  param->require_subcommand(1);
  CLI::App* param_solve = param->add_subcommand(
      "solve", "Find a unitary generator in G'' carrying eta to xi");
  param_solve->add_option("bundle", bundle_path)->required();
  param_solve->add_option("--eta", eta_name)->required();
  param_solve->add_option("--xi", xi_name)->required();
  CLI::App* param_apply = param->add_subcommand(
      "apply", "Apply a generator of the declared kind to eta");
  param_apply->add_option("bundle", bundle_path)->required();
  param_apply->add_option("--eta", eta_name)->required();
  param_apply->add_option("--op", op_name, "Operator name")->required();
  param_apply->add_option("--kind", kind_name,
                          "unitary|invertible|adjointable");
  CLI::App* param_path = param->add_subcommand(
      "path", "Path of complete Parseval frame vectors from eta to xi");
  param_path->add_option("bundle", bundle_path)->required();
  param_path->add_option("--eta", eta_name)->required();
  param_path->add_option("--xi", xi_name)->required();
  param_path->add_option("--steps", steps, "Path steps (default 16)");

  CLI::App* approx = app.add_subcommand("approx", "Best Parseval approximation");
  approx->require_subcommand(1);
  CLI::App* approx_best = approx->add_subcommand(
      "best", "The unique best Parseval multi-frame approximation");
  approx_best->add_option("bundle", bundle_path)->required();
  approx_best->add_option("--generator", gen_name)->required();
  CLI::App* approx_certify = approx->add_subcommand(
      "certify", "Sampled optimality and uniqueness certificates");
  approx_certify->add_option("bundle", bundle_path)->required();
  approx_certify->add_option("--generator", gen_name)->required();
  approx_certify->add_option("--samples", samples, "Samples (default 100)");

  CLI::App* rand_cmd =
      app.add_subcommand("rand", "Generate a seeded random instance bundle");
  rand_cmd->add_option("output", rand_out, "Bundle output path")->required();
  rand_cmd->add_option("--points", rand_spec.num_points, "|X| (<= 8)");
  rand_cmd->add_option("--max-dim", rand_spec.max_fiber_dim,
                       "Max fiber dimension (<= 8)");
  rand_cmd->add_option("--group", rand_spec.group,
                       "trivial|cyclic:<n>|klein|s3|s4");
  rand_cmd->add_option("--generators", rand_spec.num_generators, "N (<= 4)");
  rand_cmd->add_option("--frame-size", rand_spec.frame_size,
                       "Vectors in the random frame");
  rand_cmd->add_option("--model", rand_spec.model, "perm|compressed")
      ->check(CLI::IsMember({"perm", "compressed"}));

  // Accept the global flags after the subcommand as well.
  const std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* cmd) {
    cmd->fallthrough();
    for (CLI::App* sub : cmd->get_subcommands([](CLI::App*) { return true; })) {
      enable_fallthrough(sub);
    }
  };
  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) {
    enable_fallthrough(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  const auto started = std::chrono::steady_clock::now();
  try {
    RunReport report = [&] {
      if (*validate) return run_validate(bundle_path, opts);
      if (*frame_analyze)
        return run_frame_analyze(bundle_path, frame_name, vector_name, opts);
      if (*frame_parseval)
        return run_frame_parseval(bundle_path, frame_name, opts);
      if (*classify) return run_classify_vector(bundle_path, vector_name, opts);
      if (*dilate_cmd) return run_dilate(bundle_path, vector_name, opts);
      if (*comm_compute) return run_commutant_compute(bundle_path, opts);
      if (*comm_lemma) return run_lemma33(bundle_path, opts);
      if (*comm_trace) return run_trace_check(bundle_path, samples, opts);
      if (*param_solve)
        return run_param_solve(bundle_path, eta_name, xi_name, opts);
      if (*param_apply)
        return run_param_apply(bundle_path, eta_name, op_name, kind_name, opts);
      if (*param_path)
        return run_param_path(bundle_path, eta_name, xi_name, steps, opts);
      if (*approx_best) return run_approx_best(bundle_path, gen_name, opts);
      if (*approx_certify)
        return run_approx_certify(bundle_path, gen_name, samples, opts);
      rand_spec.seed = opts.seed;
      return run_rand(rand_out, rand_spec, opts);
    }();
    if (opts.timing) {
      report.wall_time_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - started)
                                .count();
    }
    save_report(report, opts.out, opts.format);
    return report.pass ? kExitPass : kExitMathFailure;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ShapeError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const PreconditionError& e) {
    // A mathematically typed failure still produces a report.
    RunReport report = make_report("error", "", opts);
    report.pass = false;
    report.labels["error"] = e.what();
    save_report(report, opts.out, opts.format);
    std::cerr << "check failed: " << e.what() << "\n";
    return kExitMathFailure;
  } catch (const NumericalError& e) {
    RunReport report = make_report("error", "", opts);
    report.pass = false;
    report.labels["error"] = e.what();
    save_report(report, opts.out, opts.format);
    std::cerr << "check failed: " << e.what() << "\n";
    return kExitMathFailure;
  }
  return kExitPass;
}
