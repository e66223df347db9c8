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

#include "helpers.hpp"

using namespace nce;
using nce::testing::el;
using nce::testing::load;

namespace {

using Dims = std::vector<std::size_t>;

Presentation algebra_A(const Workspace& ws) { return Presentation(ws.field_ctx, ws.sp.f, "A"); }

class BothEngines : public ::testing::TestWithParam<EngineKind> {};

}  // namespace

TEST_P(BothEngines, PolynomialRing) {
  auto ws = load("w_poly");
  EXPECT_EQ(hilbert_table(algebra_A(ws), 4, GetParam()).dims, (Dims{1, 3, 6, 10, 15}));
}

TEST_P(BothEngines, CentralExtensionOfPolynomialRing) {
  auto ws = load("w_poly");
  auto spec = build_extension(ws.sp, {1, 1, 1}, 0);
  EXPECT_EQ(hilbert_table(spec.D, 5, GetParam()).dims, (Dims{1, 3, 7, 13, 22, 34}));
}

TEST_P(BothEngines, FreeAlgebra) {
  Presentation free(make_context({"x", "y"}), {}, "free");
  EXPECT_EQ(hilbert_table(free, 3, GetParam()).dims, (Dims{1, 2, 4, 8}));
}

TEST_P(BothEngines, IdealBasis) {
  auto ws = load("w_poly");
  auto e = make_engine(algebra_A(ws), 4, GetParam());
  EXPECT_EQ(e->ideal_basis(2).size(), 3u);
  EXPECT_EQ(e->ideal_basis(3).size(), 17u);
  Presentation free(make_context({"x", "y"}), {}, "free");
  EXPECT_TRUE(make_engine(free, 3, GetParam())->ideal_basis(3).empty());
}

TEST_P(BothEngines, NormalFormAndMembership) {
  auto ws = load("w_poly");
  auto ctx = ws.field_ctx;
  auto e = make_engine(algebra_A(ws), 4, GetParam());
  // y*x is the larger word, so it rewrites to x*y
  EXPECT_EQ(e->normal_form(el("y*x", ctx)), el("x*y", ctx));
  EXPECT_TRUE(e->normal_form(ws.sp.f[0]).is_zero());
  EXPECT_TRUE(e->member(el("x*y*z - x*z*y", ctx)));
  EXPECT_FALSE(e->member(el("x*x*x", ctx)));
  EXPECT_TRUE(e->member(Element(ctx)));
  auto spec = build_extension(ws.sp, {1, 1, 1}, 0);
  auto d = make_engine(spec.D, 4, GetParam());
  EXPECT_TRUE(d->member(el("x*y*z - x*z*y - y*z*x + z*y*x", ctx)));
}

TEST_P(BothEngines, DegreeBeyondTruncationThrows) {
  auto ws = load("w_poly");
  auto e = make_engine(algebra_A(ws), 3, GetParam());
  EXPECT_THROW(e->normal_form(el("x*x*x*x", ws.field_ctx)), InputError);
}

INSTANTIATE_TEST_SUITE_P(Engines, BothEngines, ::testing::Values(EngineKind::la, EngineKind::gb),
                         [](const auto& info) { return info.param == EngineKind::la ? "la" : "gb"; });

TEST(Engines, AgreeOnCorpusPresentations) {
  for (const char* name : {"w_poly", "cubic_a", "s2_cubic", "sklyanin", "skew_s1"}) {
    auto ws = load(name);
    int bound = ws.default_bound();
    auto a = algebra_A(ws);
    EXPECT_NO_THROW(check_agreement(*make_engine(a, bound, EngineKind::la), *make_engine(a, bound, EngineKind::gb)))
        << name;
  }
}

TEST(Engines, MembershipIsLinear) {
  auto ws = load("skew_s1");
  auto e = make_engine(algebra_A(ws), 5, EngineKind::gb);
  std::mt19937 rng(9);
  auto basis = e->ideal_basis(4);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  for (int trial = 0; trial < 10; ++trial) {
    Element f = basis[pick(rng)], g = basis[pick(rng)];
    EXPECT_TRUE(e->member(f + Scalar(Rational(3, 7)) * g));
  }
}

TEST(Engines, IdealGrowsWithRelations) {
  auto ws = load("w_poly");
  auto ctx = ws.field_ctx;
  Presentation small(ctx, {ws.sp.f[0]}), big(ctx, ws.sp.f);
  auto a = make_engine(small, 4, EngineKind::gb), b = make_engine(big, 4, EngineKind::gb);
  for (int d = 0; d <= 4; ++d) EXPECT_LE(a->ideal_basis(d).size(), b->ideal_basis(d).size());
}

TEST(Engines, CompareIdeals) {
  auto ws = load("w_poly");
  auto ctx = ws.field_ctx;
  std::vector<Element> scaled;
  for (const auto& f : ws.sp.f) scaled.push_back(Scalar(-2) * f);
  auto a = make_engine(algebra_A(ws), 4, EngineKind::gb);
  auto b = make_engine(Presentation(ctx, scaled), 4, EngineKind::la);
  EXPECT_TRUE(compare_ideals(*a, *b).equal);
  auto c = make_engine(Presentation(ctx, {ws.sp.f[0], ws.sp.f[1]}), 4, EngineKind::gb);
  auto cmp = compare_ideals(*a, *c);
  EXPECT_FALSE(cmp.equal);
  EXPECT_EQ(cmp.first_difference, 2);
}

TEST(Engines, RejectsUnitCoefficients) {
  auto src = load_algebra(nce::testing::corpus("s2_cubic.alg"));
  EXPECT_THROW(Presentation(src.ctx, {}), InputError);
}

TEST(Engines, WordCapIsEnforced) {
  auto saved = Limits::max_words.load();
  Limits::max_words = 100;
  Presentation free(make_context({"x", "y", "z"}), {}, "free");
  EXPECT_THROW(make_engine(free, 6, EngineKind::gb), ResourceError);
  Limits::max_words = saved;
}
