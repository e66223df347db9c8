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

#include "helpers.hpp"

using namespace nce;
using nce::testing::load;

namespace {

const char* kCorpus[] = {"w_poly", "cubic_a", "s2_cubic", "cubic_s1", "sklyanin", "skew_s1", "skew_rels"};

std::vector<std::string> members(const Workspace& ws, int k) {
  std::vector<std::string> out;
  for (const auto& f : solve_units(ws.goodness(k)))
    for (const auto& m : f.describe()) out.push_back(m);
  return out;
}

SymbolicTuple tuple(const Workspace& ws, const std::string& text, std::vector<std::string> free = {}) {
  auto params = ws.unit_sp ? ws.src.ctx->params : unit_twist(ws.sp).params;
  return parse_unit_tuple(text, params, ws.sp.context().gens, free, ws.src.ctx->conductor);
}

}  // namespace

TEST(SmithForm, Factorization) {
  IntMatrix A{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  SmithForm s = smith_normal_form(A, 3);
  EXPECT_EQ(s.rank, 3u);
  EXPECT_EQ(s.diagonal, (std::vector<Integer>{2, 6, 12}));
  // S = L A R
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Integer acc = 0;
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) acc += s.L[i][a] * A[a][b] * s.R[b][j];
      EXPECT_EQ(acc, s.S[i][j]);
    }
}

TEST(GoodnessSystem, WPoly) {
  auto ws = load("w_poly");
  auto sys = ws.goodness(0);
  ASSERT_EQ(sys.rows.size(), 2u);
  EXPECT_EQ(sys.rows[0], (std::vector<long>{1, 0, 0}));
  EXPECT_EQ(sys.rows[1], (std::vector<long>{1, 1, 1}));
}

TEST(GoodnessSystem, S2) {
  auto ws = load("s2_cubic");
  auto sys = ws.goodness(0);
  ASSERT_EQ(sys.rows.size(), 2u);
  EXPECT_EQ(sys.rows[1], (std::vector<long>{2, 2}));
  EXPECT_EQ(sys.rhs[1], parse_unit("a", ws.src.ctx));
}

TEST(GoodnessSystem, Sklyanin) {
  auto ws = load("sklyanin");
  auto sys = ws.goodness(0);
  std::set<std::vector<long>> rows(sys.rows.begin(), sys.rows.end());
  std::set<std::vector<long>> expected{{1, 0, 0}, {1, 1, 1}, {3, 0, 0}, {0, 3, 0}, {0, 0, 3}};
  EXPECT_EQ(rows, expected);
}

TEST(SolveUnits, CubicA) {
  auto ws = load("cubic_a");
  EXPECT_EQ(members(ws, 0), (std::vector<std::string>{"(1, 1)", "(1, -1)"}));
}

TEST(SolveUnits, S2ContainsBothSquareRoots) {
  auto ws = load("s2_cubic");
  auto fams = solve_units(ws.goodness(0));
  ASSERT_EQ(fams.size(), 1u);
  for (const char* t : {"a, a^{-1/2}", "a, -a^{-1/2}"}) EXPECT_TRUE(fams[0].contains_point(tuple(ws, t).base)) << t;
  EXPECT_FALSE(fams[0].contains_point(tuple(ws, "a, a^{1/2}").base));
}

TEST(SolveUnits, WPolyHasOneFreeDirection) {
  auto ws = load("w_poly");
  auto fams = solve_units(ws.goodness(0));
  ASSERT_EQ(fams.size(), 1u);
  EXPECT_EQ(fams[0].directions.size(), 1u);
  auto t = tuple(ws, "1, l, l^-1", {"l"});
  EXPECT_TRUE(fams[0].contains_family(t.base, t.directions));
  auto bad = tuple(ws, "1, l, l", {"l"});
  EXPECT_FALSE(fams[0].contains_family(bad.base, bad.directions));
}

TEST(SolveUnits, InconsistentSystemIsEmpty) {
  ConstraintSystem sys;
  sys.n = 1;
  sys.add({2}, UnitScalar(0));
  sys.add({2}, UnitScalar::root_of_unity(Rational(1, 2)));
  EXPECT_TRUE(solve_units(sys).empty());
}

TEST(SolveUnits, DenominatorCap) {
  ConstraintSystem sys;
  sys.n = 1;
  sys.add({13}, UnitScalar::root_of_unity(Rational(1, 2)));
  EXPECT_THROW(solve_units(sys), ResourceError);
}

TEST(SolveUnits, MatrixCriterionAgrees) {
  for (const char* name : kCorpus) {
    auto ws = load(name);
    for (int k = 0; k < ws.n(); ++k) {
      auto a = solve_units(ws.goodness(k));
      auto b = solve_units(ws.goodness_from_matrix(k));
      ASSERT_EQ(a.size(), b.size()) << name;
      for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_EQ(a[i].to_json()["members"], b[i].to_json()["members"]) << name << " k=" << k + 1;
    }
  }
}

TEST(SolveUnits, CalabiYauAdmitsAllOnes) {
  for (const char* name : {"w_poly", "cubic_a", "sklyanin"}) {
    auto ws = load(name);
    for (int k = 0; k < ws.n(); ++k) {
      auto fams = solve_units(ws.goodness(k));
      ASSERT_EQ(fams.size(), 1u);
      std::vector<UnitScalar> ones(static_cast<std::size_t>(ws.n()), UnitScalar(fams[0].params.size()));
      EXPECT_TRUE(fams[0].contains_point(ones)) << name << " k=" << k + 1;
    }
  }
}

TEST(SolveUnits, PowersOfTheTwistAreGood) {
  // Q = (1, b, b^-1), so (1, b^j, b^-j) is good at k = 1 for every j
  auto ws = open_algebra_source(parse_algebra(
      "param b; b := 3; gens x, y, z; w = x*y*z + y*z*x + b*z*x*y - x*z*y - z*y*x - b^-1*y*x*z;"));
  ASSERT_TRUE(ws.unit_sp->q[0].is_one());
  auto fams = solve_units(ws.goodness(0));
  ASSERT_EQ(fams.size(), 1u);
  for (int j = -3; j <= 3; ++j) {
    std::vector<UnitScalar> p{ws.unit_sp->q[0], ws.unit_sp->q[1].pow(j), ws.unit_sp->q[2].pow(j)};
    EXPECT_TRUE(fams[0].contains_point(p)) << j;
  }
}

TEST(SolveUnits, MembersSpecializeToGoodTuples) {
  for (const char* name : {"cubic_a", "s2_cubic", "sklyanin", "skew_s1"}) {
    auto ws = load(name);
    for (int k = 0; k < ws.n(); ++k)
      for (const auto& f : solve_units(ws.goodness(k)))
        for (const auto& t : f.torsion) {
          std::vector<Scalar> p;
          for (std::size_t a = 0; a < t.size(); ++a) {
            UnitScalar u = f.particular[a] * UnitScalar::root_of_unity(t[a], f.params.size());
            // free directions at l = 5
            Scalar s = specialize(u, ws.src.assignment, f.params).promoted(ws.field_ctx->conductor);
            for (const auto& d : f.directions) s = s * Scalar(5).pow(d[a].get_si());
            p.push_back(s);
          }
          EXPECT_TRUE(is_good(ws.sp, k, p).good) << name << " k=" << k + 1;
        }
  }
}

TEST(IsGood, Examples) {
  auto ws = load("w_poly");
  EXPECT_TRUE(is_good(ws.sp, 0, {1, 1, 1}).good);
  auto bad = is_good(ws.sp, 0, {1, 2, 1});
  EXPECT_FALSE(bad.good);
  EXPECT_TRUE(bad.witness.has_value());
  auto sk = load("sklyanin");
  EXPECT_TRUE(is_good(sk.sp, 0, {1, Scalar::zeta(3, 1), Scalar::zeta(3, 2)}).good);
}

TEST(UnitTwist, FieldModeUsesPrimeParameters) {
  auto ws = load("skew_rels");
  auto ut = unit_twist(ws.sp);
  EXPECT_EQ(ut.params, (std::vector<std::string>{"2", "3"}));
  EXPECT_EQ(members(ws, 0), (std::vector<std::string>{"(2, l^{-1}, l)"}));
}
