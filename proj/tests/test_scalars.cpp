/*
   Copyright 2026 The nce Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <gtest/gtest.h>

#include <random>

#include "nce/units.hpp"

using namespace nce;

namespace {

Scalar random_scalar(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  std::vector<Rational> c(static_cast<std::size_t>(n));
  for (auto& q : c) {
    q = Rational(num(rng), den(rng));
    q.canonicalize();
  }
  return Scalar::from_coefficients(n, c);
}

}  // namespace

TEST(Scalar, FourthRootSquaredIsMinusOne) { EXPECT_EQ(Scalar::zeta(4, 1) * Scalar::zeta(4, 1), Scalar(-1)); }

TEST(Scalar, ConjugateCubeRootsMultiplyToOne) {
  Scalar a = Scalar(1) + Scalar::zeta(3, 1);
  Scalar b = Scalar(1) + Scalar::zeta(3, 2);
  EXPECT_TRUE((a * b).is_one());
}

TEST(Scalar, RationalInverse) { EXPECT_EQ(Scalar(Rational(2, 3)).inv(), Scalar(Rational(3, 2))); }

TEST(Scalar, DivisionByZeroThrows) { EXPECT_THROW(Scalar(0).inv(), MathError); }

TEST(Scalar, MixedConductorsPromoteToLcm) {
  Scalar s = Scalar::zeta(3, 1) * Scalar::zeta(4, 1);
  EXPECT_EQ(s.conductor(), 12);
  EXPECT_EQ(s, Scalar::zeta(12, 7));
}

TEST(Scalar, ConductorCapIsEnforced) {
  EXPECT_THROW(Scalar::zeta(121, 1), ResourceError);
  EXPECT_THROW(Scalar::zeta(11, 1) * Scalar::zeta(13, 1), ResourceError);
}

TEST(Scalar, RingAxiomsOnRandomElements) {
  std::mt19937 rng(7);
  for (int n : {1, 3, 4, 5, 8, 12}) {
    for (int trial = 0; trial < 20; ++trial) {
      Scalar a = random_scalar(rng, n), b = random_scalar(rng, n), c = random_scalar(rng, n);
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      if (!a.is_zero()) EXPECT_TRUE((a * a.inv()).is_one());
    }
  }
}

TEST(Scalar, CanonicalFormIsIdempotent) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Scalar a = random_scalar(rng, 12);
    Scalar b = Scalar::from_coefficients(12, a.coefficients());
    EXPECT_EQ(a.coefficients(), b.coefficients());
  }
  // zeta_3^2 reduces to -1 - zeta_3
  EXPECT_EQ(Scalar::zeta(3, 2), Scalar(-1) - Scalar::zeta(3, 1));
}

TEST(Scalar, PrintsDeterministically) {
  EXPECT_EQ(Scalar(Rational(-1, 2)).str(), "-1/2");
  EXPECT_EQ((Scalar(1) + Scalar::zeta(3, 1)).str(), Scalar::from_coefficients(3, {1, 1}).str());
}

TEST(UnitScalar, TorsionAddsModuloOne) {
  auto z = UnitScalar::root_of_unity(Rational(1, 3));
  EXPECT_TRUE((z * z.pow(2)).is_one());
}

TEST(UnitScalar, SquareRootSquared) {
  auto a = UnitScalar::parameter(0, 1, Rational(1));
  EXPECT_EQ(a.pow(Rational(1, 2)).pow(2), a);
}

TEST(UnitScalar, SignMatters) {
  auto a = UnitScalar::parameter(0, 1, Rational(1));
  EXPECT_NE(UnitScalar::minus_one(1) * a, a);
}

TEST(UnitScalar, Printing) {
  std::vector<std::string> names{"a"};
  EXPECT_EQ(UnitScalar::parameter(0, 1, Rational(-1, 2)).str(names), "a^{-1/2}");
  EXPECT_EQ((-UnitScalar::parameter(0, 1, Rational(1))).str(names), "-a");
}

TEST(Specialize, TorsionEmbedsInLargerConductor) {
  Assignment a;
  a.conductor = 12;
  EXPECT_EQ(specialize(UnitScalar::root_of_unity(Rational(1, 3)), a), Scalar::zeta(12, 4));
}

TEST(Specialize, SquareRootOfFour) {
  Assignment a;
  a.conductor = 4;
  a.set(0, Scalar(4));
  EXPECT_EQ(specialize(UnitScalar::parameter(0, 1, Rational(-1, 2)), a), Scalar(Rational(1, 2)));
  a.set(0, Scalar(4), 1);  // the other branch
  EXPECT_EQ(specialize(UnitScalar::parameter(0, 1, Rational(-1, 2)), a), Scalar(Rational(-1, 2)));
}

TEST(Specialize, IntegerPower) {
  Assignment a;
  a.set(0, Scalar(2));
  EXPECT_EQ(specialize(UnitScalar::parameter(0, 1, Rational(1)), a), Scalar(2));
}

TEST(Specialize, SquareRootOfNegativeNeedsFourthRoots) {
  Assignment a;
  a.conductor = 4;
  a.set(0, Scalar(-4));
  EXPECT_EQ(specialize(UnitScalar::parameter(0, 1, Rational(1, 2)), a), Scalar(2) * Scalar::zeta(4, 1));
  a.conductor = 1;
  EXPECT_THROW(specialize(UnitScalar::parameter(0, 1, Rational(1, 2)), a), MathError);
}

TEST(Specialize, RejectsNonCyclotomicRadicals) {
  Assignment a;
  a.set(0, Scalar(2));
  EXPECT_THROW(specialize(UnitScalar::parameter(0, 1, Rational(1, 2)), a), MathError);
}

TEST(Specialize, UnassignedParameter) {
  Assignment a;
  EXPECT_THROW(specialize(UnitScalar::parameter(0, 1, Rational(1)), a, {"a"}), InputError);
}

TEST(Specialize, IsMultiplicative) {
  std::mt19937 rng(3);
  Assignment a;
  a.conductor = 12;
  a.set(0, Scalar(16));
  a.set(1, Scalar(Rational(1, 81)));
  std::uniform_int_distribution<int> tor(0, 11), ex(-4, 4), den(1, 2);
  auto pick = [&] {
    UnitScalar u = UnitScalar::root_of_unity(Rational(tor(rng), 12), 2);
    u *= UnitScalar::parameter(0, 2, Rational(ex(rng), den(rng)));
    u *= UnitScalar::parameter(1, 2, Rational(ex(rng), den(rng)));
    return u;
  };
  for (int trial = 0; trial < 50; ++trial) {
    UnitScalar u = pick(), v = pick();
    EXPECT_EQ(specialize(u * v, a), specialize(u, a) * specialize(v, a));
  }
}
