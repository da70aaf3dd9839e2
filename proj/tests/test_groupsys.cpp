// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "modframe/bundle.hpp"
#include "modframe/groupsys.hpp"

using namespace modframe;

namespace {

FiniteSpectrum one_point() { return FiniteSpectrum({"t"}); }

ModuleElement scalar_pair(const ModuleShape& shape, Complex v) {
  std::vector<Eigen::VectorXcd> fibers(shape.num_points());
  for (std::size_t t = 0; t < shape.num_points(); ++t) {
    fibers[t] = (Eigen::VectorXcd(1) << v).finished();
  }
  return ModuleElement(shape, fibers);
}

// The trivial action of Z/2 on one-dimensional fibers.
UnitaryRepresentation z2_trivial_rep(const FiniteSpectrum& spectrum) {
  const ModuleShape shape(spectrum, std::vector<Eigen::Index>(spectrum.size(), 1));
  const ModuleOperator id = ModuleOperator::identity(shape);
  return UnitaryRepresentation(FiniteGroup::cyclic(2), {id, id});
}

}  // namespace

TEST_CASE("group construction and validation") {
  const FiniteGroup z4 = FiniteGroup::cyclic(4);
  CHECK(z4.order() == 4);
  CHECK(z4.identity() == 0);
  CHECK(z4.inverse(1) == 3);
  CHECK(z4.mul(2, 3) == 1);

  const FiniteGroup s3 = FiniteGroup::symmetric(3);
  CHECK(s3.order() == 6);
  CHECK(s3.element(static_cast<std::size_t>(s3.identity())) == "012");

  const FiniteGroup klein = FiniteGroup::klein_four();
  CHECK(klein.order() == 4);
  for (int g = 0; g < 4; ++g) CHECK(klein.inverse(g) == g);

  CHECK(FiniteGroup::direct_product(z4, s3).order() == 24);

  SUBCASE("non-associative table is rejected citing the triple") {
    std::vector<std::vector<int>> table{{0, 1, 2}, {1, 0, 0}, {2, 0, 1}};
    try {
      FiniteGroup bad({"e", "a", "b"}, table);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("associative") != std::string::npos);
      CHECK(msg.find("(a, a, b)") != std::string::npos);
    }
  }
  SUBCASE("missing identity is rejected") {
    // Constant table: associative, but no identity element exists.
    std::vector<std::vector<int>> table{{0, 0}, {0, 0}};
    try {
      FiniteGroup({"x", "y"}, table);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("identity") != std::string::npos);
    }
  }
}

TEST_CASE("standard group module") {
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  const ModuleShape shape = group_module_shape(z2, one_point());
  CHECK(shape.dim(0) == 2);

  const std::vector<ModuleElement> chi = group_module_basis(z2, one_point());
  CHECK(chi[0].fiber(0)(0) == Complex(1.0, 0.0));
  CHECK(chi[0].fiber(0)(1) == Complex(0.0, 0.0));

  for (std::size_t u = 0; u < 2; ++u) {
    for (std::size_t v = 0; v < 2; ++v) {
      const AlgebraElement g = inner(chi[u], chi[v]);
      CHECK(g[0] == (u == v ? Complex(1, 0) : Complex(0, 0)));
    }
  }

  const FiniteGroup s3 = FiniteGroup::symmetric(3);
  const ModuleShape big = group_module_shape(s3, FiniteSpectrum({"t1", "t2"}));
  CHECK(big.dim(0) == 6);
  CHECK(big.dim(1) == 6);
}

TEST_CASE("regular representations") {
  SUBCASE("Z/2 left translation is the swap") {
    const auto [left, right] = regular_representations(FiniteGroup::cyclic(2),
                                                       one_point());
    (void)right;
    Eigen::MatrixXcd swap(2, 2);
    swap << 0.0, 1.0, 1.0, 0.0;
    CHECK((left.image(1).fiber(0) - swap).norm() == 0.0);
  }
  SUBCASE("left and right translations commute exactly") {
    const auto [left, right] = regular_representations(FiniteGroup::cyclic(3),
                                                       one_point());
    for (std::size_t u = 0; u < 3; ++u) {
      for (std::size_t v = 0; v < 3; ++v) {
        CHECK((left.image(u) * right.image(v) - right.image(v) * left.image(u))
                  .norm() == 0.0);
      }
    }
  }
  SUBCASE("entries are exactly zero or one") {
    const auto [left, right] =
        regular_representations(FiniteGroup::symmetric(3), one_point());
    for (const auto* rep : {&left, &right}) {
      for (std::size_t g = 0; g < 6; ++g) {
        const Eigen::MatrixXcd& m = rep->image(g).fiber(0);
        for (Eigen::Index i = 0; i < 6; ++i) {
          for (Eigen::Index j = 0; j < 6; ++j) {
            const double re = m(i, j).real();
            CHECK((re == 0.0 || re == 1.0));
            CHECK(m(i, j).imag() == 0.0);
          }
        }
      }
    }
  }
  SUBCASE("S3 left translation matches composing one-line labels") {
    const FiniteGroup s3 = FiniteGroup::symmetric(3);
    const auto [left, right] = regular_representations(s3, one_point());
    (void)right;
    const auto compose = [](const std::string& a, const std::string& b) {
      std::string out(3, '0');
      for (int i = 0; i < 3; ++i) out[i] = a[static_cast<std::size_t>(b[i] - '0')];
      return out;
    };
    for (std::size_t g = 0; g < 6; ++g) {
      for (std::size_t v = 0; v < 6; ++v) {
        const std::string target = compose(s3.element(g), s3.element(v));
        const int target_index = s3.index_of(target);
        const Eigen::VectorXcd image =
            left.image(g).fiber(0) * Eigen::VectorXcd::Unit(6, v);
        CHECK(image(target_index) == Complex(1.0, 0.0));
      }
    }
  }
  SUBCASE("inverse, adjoint and inverse-element images coincide") {
    const auto [left, right] =
        regular_representations(FiniteGroup::cyclic(4), one_point());
    for (const auto* rep : {&left, &right}) {
      for (std::size_t g = 0; g < 4; ++g) {
        const std::size_t inv = static_cast<std::size_t>(
            rep->group().inverse(static_cast<int>(g)));
        CHECK((rep->image(g).adjoint() - rep->image(inv)).norm() == 0.0);
        CHECK((rep->image(g) * rep->image(inv) -
               ModuleOperator::identity(rep->shape()))
                  .norm() <= 1e-10);
      }
    }
  }
  SUBCASE("representation validation rejects a broken homomorphism") {
    const FiniteGroup z2 = FiniteGroup::cyclic(2);
    const ModuleShape shape(one_point(), {2});
    Eigen::MatrixXcd almost(2, 2);
    almost << 0.0, 1.0, 1.0, 1e-3;
    CHECK_THROWS_AS(
        UnitaryRepresentation(z2, {ModuleOperator::identity(shape),
                                   ModuleOperator(shape, shape, {almost})}),
        ValidationError);
  }
}

TEST_CASE("orbit frames") {
  SUBCASE("trivial group passthrough") {
    Rng rng(3);
    const ModuleShape shape(one_point(), {3});
    const UnitaryRepresentation rep(FiniteGroup::trivial(),
                                    {ModuleOperator::identity(shape)});
    const ModuleElement x = random_element(shape, rng);
    const FrameSystem f = orbit_frame(rep, x);
    CHECK(f.size() == 1);
    CHECK((f.vector(0) - x).norm() == 0.0);
  }
  SUBCASE("regular orbit of chi_I is the standard basis") {
    const FiniteGroup z2 = FiniteGroup::cyclic(2);
    const auto [left, right] = regular_representations(z2, one_point());
    (void)right;
    const std::vector<ModuleElement> chi = group_module_basis(z2, one_point());
    const FrameSystem f = orbit_frame(left, chi[0]);
    CHECK(f.bounds().lower == doctest::Approx(1.0));
    CHECK(f.bounds().upper == doctest::Approx(1.0));
  }
  SUBCASE("trivial rep scalar generator") {
    const FiniteSpectrum spectrum = one_point();
    const UnitaryRepresentation rep = z2_trivial_rep(spectrum);
    const ModuleElement phi = scalar_pair(rep.shape(), Complex(1.0 / std::sqrt(2.0), 0.0));
    const FrameSystem f = orbit_frame(rep, phi);
    CHECK(f.size() == 2);
    CHECK(std::abs(f.frame_operator().fiber(0)(0, 0) - Complex(1, 0)) <= 1e-15);
  }
  SUBCASE("element-major multi-generator nesting") {
    const FiniteGroup z2 = FiniteGroup::cyclic(2);
    const auto [left, right] = regular_representations(z2, one_point());
    (void)right;
    const std::vector<ModuleElement> chi = group_module_basis(z2, one_point());
    const FrameSystem f = orbit_multiframe(left, MultiGenerator({chi[0], chi[1]}));
    // Order: (U_0, phi_1), (U_0, phi_2), (U_1, phi_1), (U_1, phi_2).
    CHECK((f.vector(0) - chi[0]).norm() == 0.0);
    CHECK((f.vector(1) - chi[1]).norm() == 0.0);
    CHECK((f.vector(2) - chi[1]).norm() == 0.0);
    CHECK((f.vector(3) - chi[0]).norm() == 0.0);
  }
}

TEST_CASE("vector classification") {
  SUBCASE("chi_I is a complete wandering vector for the left regular rep") {
    const auto [left, right] =
        regular_representations(FiniteGroup::symmetric(3), one_point());
    (void)right;
    const std::vector<ModuleElement> chi =
        group_module_basis(FiniteGroup::symmetric(3), one_point());
    const VectorClassification cls = classify_vector(left, chi[0]);
    CHECK(cls.label == VectorClass::kCompleteWandering);
    CHECK(cls.complete);
  }
  SUBCASE("trivial-rep scalar vector is complete Parseval") {
    const UnitaryRepresentation rep = z2_trivial_rep(one_point());
    const ModuleElement x = scalar_pair(rep.shape(),
                                        Complex(1.0 / std::sqrt(2.0), 0.0));
    const VectorClassification cls = classify_vector(rep, x);
    CHECK(cls.label == VectorClass::kCompleteParseval);
    CHECK(cls.module_bounds.lower == doctest::Approx(1.0));
    CHECK(cls.module_bounds.upper == doctest::Approx(1.0));
  }
  SUBCASE("diagonal orbit is a non-complete frame vector with C = D = 2") {
    const FiniteGroup z2 = FiniteGroup::cyclic(2);
    const auto [left, right] = regular_representations(z2, one_point());
    (void)right;
    const std::vector<ModuleElement> chi = group_module_basis(z2, one_point());
    const ModuleElement x =
        Complex(1.0 / std::sqrt(2.0), 0.0) * (chi[0] + chi[1]);
    const VectorClassification cls = classify_vector(left, x);
    CHECK(cls.label == VectorClass::kFrame);
    CHECK_FALSE(cls.complete);
    CHECK(cls.span_bounds.lower == doctest::Approx(2.0));
    CHECK(cls.span_bounds.upper == doctest::Approx(2.0));
  }
  SUBCASE("zero vector classifies as complete Bessel") {
    const UnitaryRepresentation rep = z2_trivial_rep(one_point());
    const VectorClassification cls =
        classify_vector(rep, ModuleElement::zero(rep.shape()));
    CHECK(cls.label == VectorClass::kCompleteBessel);
  }
  SUBCASE("label hierarchy is monotone") {
    CHECK(label_implies(VectorClass::kCompleteWandering,
                        VectorClass::kCompleteParseval));
    CHECK(label_implies(VectorClass::kCompleteWandering,
                        VectorClass::kCompleteBessel));
    CHECK(label_implies(VectorClass::kCompleteParseval,
                        VectorClass::kCompleteFrame));
    CHECK(label_implies(VectorClass::kCompleteFrame, VectorClass::kCompleteBessel));
    CHECK(label_implies(VectorClass::kCompleteParseval, VectorClass::kParseval));
    CHECK(label_implies(VectorClass::kWandering, VectorClass::kBessel));
    CHECK_FALSE(label_implies(VectorClass::kCompleteBessel,
                              VectorClass::kCompleteFrame));
    CHECK_FALSE(label_implies(VectorClass::kFrame, VectorClass::kCompleteFrame));
  }
}

TEST_CASE("dilation") {
  SUBCASE("chi_I for the regular representation dilates to the identity") {
    const FiniteGroup z3 = FiniteGroup::cyclic(3);
    const auto [left, right] = regular_representations(z3, one_point());
    (void)right;
    const std::vector<ModuleElement> chi = group_module_basis(z3, one_point());
    const Dilation dil = dilate(left, chi[0]);
    CHECK((dil.isometry - ModuleOperator::identity(left.shape())).norm() <=
          1e-12);
    CHECK((dil.projection - ModuleOperator::identity(left.shape())).norm() <=
          1e-12);
  }
  SUBCASE("trivial rep embeds along the diagonal") {
    const UnitaryRepresentation rep = z2_trivial_rep(one_point());
    const ModuleElement eta = scalar_pair(rep.shape(),
                                          Complex(1.0 / std::sqrt(2.0), 0.0));
    const Dilation dil = dilate(rep, eta);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(dil.isometry.fiber(0)(0, 0) - Complex(inv_sqrt2, 0)) <= 1e-12);
    CHECK(std::abs(dil.isometry.fiber(0)(1, 0) - Complex(inv_sqrt2, 0)) <= 1e-12);
    Eigen::MatrixXcd p(2, 2);
    p << 0.5, 0.5, 0.5, 0.5;
    CHECK((dil.projection.fiber(0) - p).norm() <= 1e-12);
  }
  SUBCASE("random compressed instances satisfy every dilation contract") {
    Rng rng(71);
    for (const int n : {2, 3, 4}) {
      const CompressedRegularInstance instance = compressed_regular_instance(
          FiniteGroup::cyclic(n), FiniteSpectrum({"t1", "t2"}), rng);
      const Dilation dil = dilate(instance.rep, instance.eta);
      for (const auto& [name, value] : dil.residuals) {
        INFO(name);
        CHECK(value <= 1e-9);
      }
    }
  }
  SUBCASE("rejects a vector that is not complete Parseval") {
    const UnitaryRepresentation rep = z2_trivial_rep(one_point());
    const ModuleElement bad = scalar_pair(rep.shape(), Complex(1.0, 0.0));
    CHECK_THROWS_AS(dilate(rep, bad), PreconditionError);
  }
}
