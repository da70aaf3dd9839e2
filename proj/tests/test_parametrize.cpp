// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "modframe/bundle.hpp"
#include "modframe/parametrize.hpp"

using namespace modframe;

namespace {

FiniteSpectrum one_point() { return FiniteSpectrum({"t"}); }
FiniteSpectrum two_points() { return FiniteSpectrum({"t1", "t2"}); }

UnitaryRepresentation z2_trivial_rep(const FiniteSpectrum& spectrum) {
  const ModuleShape shape(spectrum, std::vector<Eigen::Index>(spectrum.size(), 1));
  const ModuleOperator id = ModuleOperator::identity(shape);
  return UnitaryRepresentation(FiniteGroup::cyclic(2), {id, id});
}

ModuleElement scalar_element(const ModuleShape& shape, Complex v) {
  std::vector<Eigen::VectorXcd> fibers(shape.num_points());
  for (std::size_t t = 0; t < shape.num_points(); ++t) {
    fibers[t] = (Eigen::VectorXcd(1) << v).finished();
  }
  return ModuleElement(shape, fibers);
}

UnitaryRepresentation trivial_group_rep(const ModuleShape& shape) {
  return UnitaryRepresentation(FiniteGroup::trivial(),
                               {ModuleOperator::identity(shape)});
}

}  // namespace

TEST_CASE("apply_generator") {
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  const auto [left, right] = regular_representations(z2, one_point());
  (void)right;
  const std::vector<ModuleElement> chi = group_module_basis(z2, one_point());

  SUBCASE("identity keeps eta") {
    const ModuleElement xi = apply_generator(
        left, chi[0], ModuleOperator::identity(left.shape()),
        GeneratorKind::kUnitary);
    CHECK((xi - chi[0]).norm() == 0.0);
  }
  SUBCASE("L_g carries chi_I to chi_g") {
    const ModuleElement xi =
        apply_generator(left, chi[0], left.image(1), GeneratorKind::kUnitary);
    CHECK((xi - chi[1]).norm() == 0.0);
    CHECK(label_implies(classify_vector(left, xi).label,
                        VectorClass::kCompleteParseval));
  }
  SUBCASE("2I is invertible and scales the bounds to 4") {
    const ModuleOperator two =
        Complex(2.0, 0.0) * ModuleOperator::identity(left.shape());
    const ModuleElement xi =
        apply_generator(left, chi[0], two, GeneratorKind::kInvertible);
    const VectorClassification cls = classify_vector(left, xi);
    CHECK(cls.label == VectorClass::kCompleteFrame);
    CHECK(cls.module_bounds.lower == doctest::Approx(4.0));
    CHECK(cls.module_bounds.upper == doctest::Approx(4.0));
  }
  SUBCASE("declared-kind mismatch is rejected") {
    const ModuleOperator two =
        Complex(2.0, 0.0) * ModuleOperator::identity(left.shape());
    CHECK_THROWS_AS(
        apply_generator(left, chi[0], two, GeneratorKind::kUnitary),
        PreconditionError);
  }
  SUBCASE("zero adjointable generator yields a complete Bessel vector") {
    const ModuleOperator zero =
        ModuleOperator::zero(left.shape(), left.shape());
    const ModuleElement xi =
        apply_generator(left, chi[0], zero, GeneratorKind::kAdjointable);
    CHECK(xi.norm() == 0.0);
  }
  SUBCASE("membership in the bicommutant is enforced") {
    // The rank-one projection onto chi_I is not in {L}''.
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(2, 2);
    p(0, 0) = 1.0;
    const ModuleOperator bad(left.shape(), left.shape(), {p});
    CHECK_THROWS_AS(
        apply_generator(left, chi[0], bad, GeneratorKind::kAdjointable),
        PreconditionError);
  }
}

TEST_CASE("solve_generator") {
  SUBCASE("xi = eta accepts any valid witness") {
    Rng rng(3);
    const CompressedRegularInstance instance = compressed_regular_instance(
        FiniteGroup::cyclic(3), two_points(), rng);
    const ParameterizationWitness witness =
        solve_generator(instance.rep, instance.eta, instance.eta, 5);
    CHECK(witness.residuals.at("generation") <= 1e-8);
    CHECK(witness.residuals.at("unitarity") <= 1e-8);
    CHECK(witness.residuals.at("membership") <= 1e-8);
  }
  SUBCASE("forward-backward round trip on seeded unitaries") {
    Rng rng(7);
    int done = 0;
    for (const int variant : {2, 3, 4}) {
      const CompressedRegularInstance instance = compressed_regular_instance(
          FiniteGroup::cyclic(variant), two_points(), rng);
      const OperatorAlgebraBasis bicomm = bicommutant(instance.rep.images());
      const ModuleOperator planted = random_unitary_in(bicomm, rng);
      const ModuleElement xi = planted.apply(instance.eta);
      const ParameterizationWitness witness =
          solve_generator(instance.rep, instance.eta, xi, 11);
      CHECK(witness.residuals.at("generation") <= 1e-8);
      CHECK(witness.residuals.at("unitarity") <= 1e-8);
      CHECK(witness.residuals.at("membership") <= 1e-8);
      ++done;
    }
    CHECK(done == 3);
  }
  SUBCASE("scalar sign flip is recovered exactly") {
    const UnitaryRepresentation rep = z2_trivial_rep(one_point());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const ModuleElement eta = scalar_element(rep.shape(), Complex(inv_sqrt2, 0));
    const ModuleElement xi = scalar_element(rep.shape(), Complex(-inv_sqrt2, 0));
    const ParameterizationWitness witness = solve_generator(rep, eta, xi, 0);
    CHECK(std::abs(witness.generator.fiber(0)(0, 0) - Complex(-1.0, 0.0)) <=
          1e-8);
  }
  SUBCASE("rejects a non-Parseval target") {
    Rng rng(13);
    const CompressedRegularInstance instance = compressed_regular_instance(
        FiniteGroup::cyclic(2), one_point(), rng);
    const ModuleElement bad = Complex(2.0, 0.0) * instance.eta;
    CHECK_THROWS_AS(solve_generator(instance.rep, instance.eta, bad, 0),
                    PreconditionError);
  }
}

TEST_CASE("connect_parseval_vectors") {
  SUBCASE("constant path when xi = eta") {
    Rng rng(17);
    const CompressedRegularInstance instance = compressed_regular_instance(
        FiniteGroup::cyclic(3), one_point(), rng);
    const std::vector<ModuleElement> path =
        connect_parseval_vectors(instance.rep, instance.eta, instance.eta, 4, 3);
    CHECK(path.size() == 5);
    for (const ModuleElement& p : path) {
      CHECK((p - instance.eta).norm() <= 1e-7);
    }
  }
  SUBCASE("scalar phases walk the unit circle") {
    const UnitaryRepresentation rep = z2_trivial_rep(one_point());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const ModuleElement eta = scalar_element(rep.shape(), Complex(inv_sqrt2, 0));
    const ModuleElement xi = scalar_element(rep.shape(), Complex(-inv_sqrt2, 0));
    const std::vector<ModuleElement> path =
        connect_parseval_vectors(rep, eta, xi, 4, 0);
    CHECK(path.size() == 5);
    for (int i = 0; i <= 4; ++i) {
      const Complex expected =
          std::exp(Complex(0.0, M_PI * i / 4.0)) * Complex(inv_sqrt2, 0.0);
      CHECK(std::abs(path[static_cast<std::size_t>(i)].fiber(0)(0) - expected) <=
            1e-9);
    }
  }
  SUBCASE("random pairs stay complete Parseval along the path") {
    Rng rng(19);
    const CompressedRegularInstance instance = compressed_regular_instance(
        FiniteGroup::symmetric(3), two_points(), rng);
    const OperatorAlgebraBasis bicomm = bicommutant(instance.rep.images());
    const ModuleOperator planted = random_unitary_in(bicomm, rng);
    const ModuleElement xi = planted.apply(instance.eta);
    // connect_parseval_vectors verifies classification and membership at
    // every step and throws on any failure.
    const std::vector<ModuleElement> path =
        connect_parseval_vectors(instance.rep, instance.eta, xi, 8, 23);
    CHECK(path.size() == 9);
    CHECK((path.back() - xi).norm() <= 1e-7);
    CHECK((path.front() - instance.eta).norm() <= 1e-12);
  }
}

TEST_CASE("best_parseval_approx") {
  SUBCASE("already Parseval generators are fixed") {
    Rng rng(29);
    const CompressedRegularInstance instance = compressed_regular_instance(
        FiniteGroup::cyclic(4), two_points(), rng);
    const MultiGenerator phi({instance.eta});
    const ApproximationReport report = best_parseval_approx(instance.rep, phi);
    CHECK((report.best.generator(0) - instance.eta).norm() <= 1e-9);
  }
  SUBCASE("trivial group scalar normalization: ((2)) -> ((1))") {
    const ModuleShape shape(one_point(), {1});
    const UnitaryRepresentation rep = trivial_group_rep(shape);
    const MultiGenerator phi({scalar_element(shape, Complex(2.0, 0.0))});
    const ApproximationReport report = best_parseval_approx(rep, phi);
    CHECK(std::abs(report.best.generator(0).fiber(0)(0) - Complex(1.0, 0.0)) <=
          1e-12);
  }
  SUBCASE("fiberwise normalization over two points") {
    const FiniteGroup z2 = FiniteGroup::cyclic(2);
    const auto [left, right] = regular_representations(z2, two_points());
    (void)right;
    const std::vector<ModuleElement> chi = group_module_basis(z2, two_points());
    const AlgebraElement c(two_points(), {Complex(2, 0), Complex(3, 0)});
    const MultiGenerator phi({c * chi[0]});
    const ApproximationReport report = best_parseval_approx(left, phi);
    CHECK((report.best.generator(0) - chi[0]).norm() <= 1e-10);
  }
  SUBCASE("rejects non-generating tuples") {
    const ModuleShape shape(one_point(), {2});
    const UnitaryRepresentation rep = trivial_group_rep(shape);
    const MultiGenerator phi({standard_basis_element(shape, 0)});
    CHECK_THROWS_AS(best_parseval_approx(rep, phi), PreconditionError);
  }
}

TEST_CASE("certify_optimality") {
  SUBCASE("first sample is the optimum with zero gap") {
    Rng rng(31);
    const CompressedRegularInstance instance = compressed_regular_instance(
        FiniteGroup::cyclic(3), two_points(), rng);
    std::vector<ModuleElement> gens{random_element(instance.rep.shape(), rng),
                                    random_element(instance.rep.shape(), rng)};
    const ApproximationReport report =
        certify_optimality(instance.rep, MultiGenerator(std::move(gens)), 9, 41);
    CHECK(report.sample_gaps.size() == 9);
    CHECK(report.sample_gaps.front().norm() <= 1e-10);
    CHECK(report.gaps_nonnegative);
    CHECK(report.uniqueness_ok);
    CHECK(report.residuals.at("max_cross_term") <= 1e-9);
  }
  SUBCASE("hand-computed scalar gap") {
    const ModuleShape shape(one_point(), {1});
    const UnitaryRepresentation rep = trivial_group_rep(shape);
    const ModuleElement phi = scalar_element(shape, Complex(2.0, 0.0));
    const ModuleElement psi = scalar_element(shape, Complex(-1.0, 0.0));
    const ApproximationReport report =
        best_parseval_approx(rep, MultiGenerator({phi}));
    const ModuleElement& best = report.best.generator(0);
    const AlgebraElement gap =
        inner(phi - psi, phi - psi) - inner(phi - best, phi - best);
    CHECK(gap[0].real() == doctest::Approx(8.0));
    CHECK(is_positive(gap, 1e-12));
  }
  SUBCASE("100 seeded samples on Z/3 over two points stay nonnegative") {
    Rng rng(37);
    const CompressedRegularInstance instance = compressed_regular_instance(
        FiniteGroup::cyclic(3), two_points(), rng);
    const MultiGenerator phi({random_element(instance.rep.shape(), rng)});
    const ApproximationReport report =
        certify_optimality(instance.rep, phi, 100, 43);
    CHECK(report.gaps_nonnegative);
    CHECK(report.residuals.at("min_gap") >= -1e-8);
  }
}

TEST_CASE("energy equality") {
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  const auto [left, right] = regular_representations(z2, one_point());
  (void)right;
  const std::vector<ModuleElement> chi = group_module_basis(z2, one_point());

  SUBCASE("identical generators") {
    const MultiGenerator phi({chi[0]});
    const EnergyReport report = check_energy_equality(left, phi, phi);
    CHECK(report.residual == 0.0);
  }
  SUBCASE("the two basis translates carry equal energy") {
    const EnergyReport report = check_energy_equality(
        left, MultiGenerator({chi[0]}), MultiGenerator({chi[1]}));
    CHECK((report.phi_energy - AlgebraElement::unit(one_point())).norm() <=
          1e-12);
    CHECK((report.psi_energy - AlgebraElement::unit(one_point())).norm() <=
          1e-12);
    CHECK(report.residual <= 1e-12);
  }
  SUBCASE("unitary images of the optimum") {
    Rng rng(41);
    const CompressedRegularInstance instance = compressed_regular_instance(
        FiniteGroup::symmetric(3), two_points(), rng);
    std::vector<ModuleElement> gens{random_element(instance.rep.shape(), rng),
                                    random_element(instance.rep.shape(), rng)};
    const ApproximationReport approx =
        best_parseval_approx(instance.rep, MultiGenerator(std::move(gens)));
    const OperatorAlgebraBasis comm = commutant(instance.rep.images());
    const ModuleOperator w = random_unitary_in(comm, rng);
    std::vector<ModuleElement> rotated;
    for (std::size_t k = 0; k < approx.best.size(); ++k) {
      rotated.push_back(w.apply(approx.best.generator(k)));
    }
    const EnergyReport report = check_energy_equality(
        instance.rep, approx.best, MultiGenerator(std::move(rotated)));
    CHECK(report.residual <= 1e-9);
  }
  SUBCASE("different generator counts are allowed when both are Parseval") {
    const EnergyReport report = check_energy_equality(
        left, MultiGenerator({chi[0]}),
        MultiGenerator({Complex(1.0 / std::sqrt(2.0), 0.0) * chi[0],
                        Complex(1.0 / std::sqrt(2.0), 0.0) * chi[1]}));
    CHECK(report.residual <= 1e-12);
  }
  SUBCASE("rejects non-Parseval inputs") {
    const MultiGenerator phi({chi[0]});
    const MultiGenerator doubled({Complex(2.0, 0.0) * chi[0]});
    CHECK_THROWS_AS(check_energy_equality(left, phi, doubled),
                    PreconditionError);
  }
}
