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
using nce::testing::el;
using nce::testing::load;

namespace {

std::vector<std::vector<Scalar>> five_points() {
  return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {1, 2, 3}};
}

}  // namespace

TEST(Fiber, RelationsAndPivot) {
  auto ws = load("w_poly");
  auto f = fiber(ws.sp, {0, 2, 1});
  EXPECT_EQ(f.pivot, 1);
  EXPECT_EQ(f.omega, ws.sp.f[1]);
  EXPECT_EQ(f.D.relations.size(), 3u + 9u);
  EXPECT_THROW(fiber(ws.sp, {0, 0, 0}), InputError);
  EXPECT_THROW(fiber(ws.sp, {1, 0}), InputError);
  EXPECT_THROW(fiber(load("s2_cubic").sp, {1, 0}), InputError);
}

TEST(Fiber, CoordinateFibersMatchTheExtension) {
  for (const char* name : {"w_poly", "sklyanin"}) {
    auto ws = load(name);
    for (int k = 0; k < ws.n(); ++k) {
      auto a = make_engine(fiber(ws.sp, coordinate_point(ws.n(), k)).D, 5, EngineKind::gb);
      std::vector<Scalar> ones(static_cast<std::size_t>(ws.n()), Scalar(1));
      auto b = make_engine(build_extension(ws.sp, ones, k).D, 5, EngineKind::gb);
      EXPECT_TRUE(compare_ideals(*a, *b).equal) << name << " k=" << k + 1;
    }
  }
}

TEST(Fiber, ScalingThePointChangesNothing) {
  auto ws = load("w_poly");
  auto a = make_engine(fiber(ws.sp, {1, 2, 3}).D, 5, EngineKind::gb);
  auto b = make_engine(fiber(ws.sp, {-2, -4, -6}).D, 5, EngineKind::gb);
  EXPECT_TRUE(compare_ideals(*a, *b).equal);
}

TEST(Flatness, WPolyIsFlat) {
  auto ws = load("w_poly");
  auto r = flatness_probe(ws.sp, five_points(), 6);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.tables.front().dims, (std::vector<std::size_t>{1, 3, 7, 13, 22, 34, 50}));
  auto tsv = r.to_tsv(*ws.field_ctx);
  EXPECT_EQ(tsv.substr(0, 9), "point\td0\t");
  EXPECT_EQ(tsv.substr(tsv.size() - 5), "pass\n");
}

TEST(Flatness, NeedsTwoPoints) {
  auto ws = load("w_poly");
  EXPECT_THROW(flatness_probe(ws.sp, {{1, 0, 0}}, 4), InputError);
}

TEST(Zhang, MonomialScaling) {
  auto ctx = make_context({"x", "y"});
  DiagonalMap<Scalar> sigma{{Scalar(2), Scalar(3)}};
  // x y: x at position 0, y at position 1
  EXPECT_EQ(zhang_twist(el("x*y", ctx), sigma), el("3*x*y", ctx));
  EXPECT_EQ(zhang_twist(el("x*x*x", ctx), sigma), el("8*x*x*x", ctx));
  Element f = el("x*y*y - 2*y*x*y + y*y*x", ctx);
  EXPECT_EQ(zhang_twist(zhang_twist(f, sigma), sigma.inverse()), f);
}

TEST(Zhang, IdentityTwistPasses) {
  auto ws = load("w_poly");
  auto r = zhang_certificate(ws.sp, {1, 1, 1}, 0, DiagonalMap<Scalar>{{1, 1, 1}}, 5);
  EXPECT_TRUE(r.pass) << r.witness;
  EXPECT_TRUE(r.hdet.is_one());
}

TEST(Zhang, NontrivialTwists) {
  auto ws = load("w_poly");
  for (auto s : std::vector<std::vector<Scalar>>{{2, 1, 1}, {1, 2, 3}}) {
    auto r = zhang_certificate(ws.sp, {1, 1, 1}, 0, DiagonalMap<Scalar>{s}, 5);
    EXPECT_TRUE(r.pass) << r.witness;
  }
  auto s2 = load("s2_cubic");
  auto r = zhang_certificate(s2.sp, {Scalar(4), Scalar(Rational(1, 2))}, 0,
                             DiagonalMap<Scalar>{{Scalar(1), Scalar(3)}}, 6);
  EXPECT_TRUE(r.pass) << r.witness;
}

TEST(AdaptBasis, Identity) {
  auto ws = load("w_poly");
  auto bc = adapt_basis(ws.sp, ws.sp.f);
  EXPECT_TRUE(bc.verified);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(bc.generators[static_cast<std::size_t>(i)], Element::generator(ws.field_ctx, i));
}

TEST(AdaptBasis, ReversedOrderIsAPermutation) {
  auto ws = load("cubic_a");
  std::vector<Element> h{ws.sp.f[1], ws.sp.f[0]};
  auto bc = adapt_basis(ws.sp, h);
  EXPECT_TRUE(bc.verified);
  EXPECT_TRUE(bc.P[0][1].is_one());
  EXPECT_TRUE(bc.P[1][0].is_one());
  EXPECT_TRUE(bc.P[0][0].is_zero());
}

TEST(AdaptBasis, Unipotent) {
  auto ws = load("w_poly");
  std::vector<Element> h{ws.sp.f[0], ws.sp.f[1] + Scalar(2) * ws.sp.f[0], ws.sp.f[2]};
  auto bc = adapt_basis(ws.sp, h);
  EXPECT_TRUE(bc.verified);
  EXPECT_EQ(bc.P[1][0], Scalar(2));
}

TEST(AdaptBasis, RejectsWrongSpan) {
  auto ws = load("w_poly");
  std::vector<Element> h{ws.sp.f[0], ws.sp.f[0], ws.sp.f[2]};
  EXPECT_THROW(adapt_basis(ws.sp, h), MathError);
}
