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

bool passed(const Certificate& c, const std::string& name) {
  const Check* ch = c.find(name);
  EXPECT_NE(ch, nullptr) << name;
  return ch && ch->pass;
}

std::vector<Scalar> S2Tuple() { return {Scalar(4), Scalar(Rational(1, 2))}; }

}  // namespace

TEST(BuildExtension, RelationsOfWPoly) {
  auto ws = load("w_poly");
  auto spec = build_extension(ws.sp, {1, 1, 1}, 0, "w_poly");
  auto ctx = ws.field_ctx;
  ASSERT_EQ(spec.D.relations.size(), 4u);
  EXPECT_EQ(spec.D.relations[0], ws.sp.f[1]);
  EXPECT_EQ(spec.D.relations[1], ws.sp.f[2]);
  EXPECT_EQ(spec.D.relations[2], el("y*y*z - y*z*y - y*z*y + z*y*y", ctx));
  EXPECT_EQ(spec.omega, ws.sp.f[0]);
  EXPECT_EQ(spec.D.label, "D(w_poly)");
}

TEST(BuildExtension, Guards) {
  auto ws = load("w_poly");
  EXPECT_THROW(build_extension(ws.sp, {2, 1, 1}, 0), InputError);  // p_k must equal q_k
  EXPECT_THROW(build_extension(ws.sp, {1, 0, 1}, 0), InputError);
  EXPECT_THROW(build_extension(ws.sp, {1, 1}, 0), InputError);
  EXPECT_THROW(build_extension(ws.sp, {1, 1, 1}, 3), InputError);
  auto one = recognize(el("x*x*x", make_context({"x"})));
  EXPECT_THROW(build_extension(one, {1}, 0), InputError);
}

TEST(Certify, WPolyPassesEveryCheck) {
  auto ws = load("w_poly");
  auto cert = certify(build_extension(ws.sp, {1, 1, 1}, 0), 6);
  for (const auto& c : cert.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
  EXPECT_EQ(cert.table_D->dims, (std::vector<std::size_t>{1, 3, 7, 13, 22, 34, 50}));
  EXPECT_TRUE(*cert.central);
  EXPECT_EQ(cert.hdet, "1");
  for (auto e : cert.e) EXPECT_EQ(e, 0);
  for (const auto& row : cert.homology)
    for (auto h : row) EXPECT_EQ(h, 0);
}

TEST(Certify, BadTupleFailsInTheExpectedPlaces) {
  auto ws = load("w_poly");
  auto cert = certify(build_extension(ws.sp, {1, 2, 1}, 0), 6);
  EXPECT_FALSE(cert.pass());
  EXPECT_FALSE(passed(cert, "good tuple"));
  EXPECT_FALSE(passed(cert, "hilbert identity"));
  EXPECT_EQ(cert.find("hilbert identity")->witness, "first nonzero e_k at degree 4");
  EXPECT_FALSE(passed(cert, "resolution complex"));
  EXPECT_FALSE(passed(cert, "hdet = 1"));
  EXPECT_EQ(cert.hdet, "1/2");
  // the e-z recursion is an identity and holds for any tuple
  EXPECT_TRUE(passed(cert, "e-z recursion"));
}

TEST(Certify, S2NakayamaAndOmega) {
  auto ws = load("s2_cubic");
  auto cert = certify(build_extension(ws.sp, S2Tuple(), 0), 7);
  for (const auto& c : cert.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
  EXPECT_EQ(cert.nakayama, (std::vector<std::string>{"1/16", "-8"}));
  EXPECT_FALSE(*cert.central);
  EXPECT_TRUE(passed(cert, "omega normal"));
  EXPECT_TRUE(passed(cert, "omega regular"));
  EXPECT_EQ(cert.hdet_factors, (std::vector<std::string>{"4", "1/4", "1"}));
}

TEST(Certify, SingleEngineSkipsAgreement) {
  auto ws = load("w_poly");
  auto cert = certify(build_extension(ws.sp, {1, 1, 1}, 0), 5, CertifySession::Engines::la);
  EXPECT_EQ(cert.find("engine agreement"), nullptr);
  EXPECT_TRUE(cert.pass());
}

TEST(Certify, BoundTooSmallForResolution) {
  auto ws = load("w_poly");
  EXPECT_THROW(certify(build_extension(ws.sp, {1, 1, 1}, 0), 2), InputError);
}

TEST(Resolution, ShapesAndBuildIdentities) {
  auto ws = load("skew_s1");
  auto spec = build_extension(ws.sp, {Scalar(2), Scalar(5), Scalar(Rational(1, 5))}, 0);
  auto res = build_resolution(spec);
  EXPECT_EQ(res.ord, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(res.Ml.size(), 3u);
  EXPECT_EQ(res.Mr.size(), 4u);  // 2(n - 1) middle summands
  for (const auto& row : res.Mr) EXPECT_EQ(row.size(), 3u);
  auto k2 = build_resolution(build_extension(ws.sp, {Scalar(5), Scalar(3), Scalar(Rational(1, 5))}, 1));
  EXPECT_EQ(k2.ord, (std::vector<int>{1, 0, 2}));
}

TEST(Hdet, FactorsForRescaledTuple) {
  auto ws = load("w_poly");
  Certificate cert;
  hdet_certificate(build_extension(ws.sp, {1, 3, Scalar(Rational(1, 3))}, 0), cert);
  EXPECT_TRUE(cert.pass());
  EXPECT_EQ(cert.hdet, "1");
}

TEST(Certificate, JsonCarriesDiagnostics) {
  auto ws = load("w_poly");
  auto j = certify(build_extension(ws.sp, {1, 2, 1}, 0, "w_poly"), 6).to_json();
  EXPECT_EQ(j["algebra"], "w_poly");
  EXPECT_FALSE(j["pass"].get<bool>());
  EXPECT_TRUE(j.contains("diagnostics"));
  EXPECT_EQ(j["verified_to_degree"], 6);
}
