// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "modframe/algebra.hpp"
#include "modframe/rng.hpp"

using namespace modframe;

namespace {

FiniteSpectrum two_points() { return FiniteSpectrum({"t1", "t2"}); }

AlgebraElement random_algebra(const FiniteSpectrum& spectrum, Rng& rng) {
  std::vector<Complex> values(spectrum.size());
  for (auto& v : values) v = complex_gaussian(rng);
  return AlgebraElement(spectrum, values);
}

}  // namespace

TEST_CASE("spectrum validation") {
  CHECK_THROWS_AS(FiniteSpectrum({}), ShapeError);
  CHECK_THROWS_AS(FiniteSpectrum({"a", "a"}), ShapeError);
  const FiniteSpectrum x({"a", "b"});
  CHECK(x.size() == 2);
  CHECK(x == FiniteSpectrum({"a", "b"}));
  CHECK_FALSE(x == FiniteSpectrum({"b", "a"}));
}

TEST_CASE("pointwise product") {
  const FiniteSpectrum x = two_points();
  const AlgebraElement unit = AlgebraElement::unit(x);
  const AlgebraElement b(x, {{3.0, 0.5}, {-1.0, 2.0}});
  SUBCASE("unit law") {
    const AlgebraElement prod = unit * b;
    for (std::size_t i = 0; i < 2; ++i) CHECK(prod[i] == b[i]);
  }
  SUBCASE("hand-computed values") {
    const AlgebraElement a(x, {{2.0, 0.0}, {0.0, 1.0}});
    const AlgebraElement c(x, {{3.0, 0.0}, {0.0, -1.0}});
    const AlgebraElement prod = a * c;
    CHECK(prod[0] == Complex(6.0, 0.0));
    CHECK(prod[1] == Complex(1.0, 0.0));
  }
  SUBCASE("commutes exactly and matches a pointwise oracle") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const AlgebraElement p = random_algebra(x, rng);
      const AlgebraElement q = random_algebra(x, rng);
      const AlgebraElement pq = p * q;
      const AlgebraElement qp = q * p;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const Complex expected = p[i] * q[i];  // independent path
        CHECK(pq[i] == expected);
        CHECK(qp[i] == expected);
      }
    }
  }
  SUBCASE("spectrum mismatch") {
    const AlgebraElement other = AlgebraElement::unit(FiniteSpectrum({"z"}));
    CHECK_THROWS_AS(unit * other, ShapeError);
  }
}

TEST_CASE("adjoint and norm") {
  const FiniteSpectrum x = two_points();
  const AlgebraElement a(x, {{0.0, 1.0}, {0.0, 0.0}});
  const AlgebraElement adj = a.adjoint();
  CHECK(adj[0] == Complex(0.0, -1.0));
  CHECK(adj[1] == Complex(0.0, 0.0));
  CHECK(a.norm() == doctest::Approx(1.0));

  const AlgebraElement real(x, {{2.0, 0.0}, {-3.0, 0.0}});
  const AlgebraElement real_adj = real.adjoint();
  for (std::size_t i = 0; i < 2; ++i) CHECK(real_adj[i] == real[i]);

  SUBCASE("C*-identity on random inputs") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const AlgebraElement p = random_algebra(x, rng);
      const double lhs = (p * p.adjoint()).norm();
      const double rhs = p.norm() * p.norm();
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("positivity and order") {
  const FiniteSpectrum x = two_points();
  CHECK(is_positive(AlgebraElement::zero(x), 0.0));
  CHECK_FALSE(is_positive(AlgebraElement(x, {{1.0, 0.0}, {-0.5, 0.0}}), 1e-9));
  CHECK_FALSE(is_positive(AlgebraElement(x, {{1.0, 0.1}, {1.0, 0.0}}), 1e-9));

  const AlgebraElement a(x, {{1.0, 0.0}, {2.0, 0.0}});
  const AlgebraElement b(x, {{1.0, 0.0}, {3.0, 0.0}});
  CHECK(leq(a, b, 1e-9));
  CHECK_FALSE(leq(b, a, 1e-9));

  SUBCASE("reflexivity") {
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      const AlgebraElement p = random_algebra(x, rng);
      CHECK(leq(p, p, 0.0));
    }
  }
  SUBCASE("positive cone closed under sum and product") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const AlgebraElement p = random_algebra(x, rng);
      const AlgebraElement q = random_algebra(x, rng);
      const AlgebraElement pp = p * p.adjoint();
      const AlgebraElement qq = q * q.adjoint();
      CHECK(is_positive(pp, 1e-12));
      CHECK(is_positive(pp + qq, 1e-12));
      CHECK(is_positive(pp * qq, 1e-12));
    }
  }
}
