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

// Acceptance suite: one PASS/FAIL line per criterion, driven by the corpus
// sidecars. Exit status is the number of failed criteria.

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <set>

#include "helpers.hpp"

namespace {

using namespace nce;
using nce::testing::corpus;
using nce::testing::load;

const std::vector<std::string> kMandatory = {"cubic_a", "s2_cubic", "sklyanin", "skew_s1"};

struct Instance {
  std::string algebra;
  int k = 0;  // 1-based
  std::string p;
  Certificate cert;
};

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void fail(std::string why) {
    pass = false;
    notes.push_back(std::move(why));
  }
  void require(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(NCE_CORPUS_DIR))
    if (e.path().extension() == ".alg") out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json sidecar(const std::string& name) { return load_sidecar(corpus(name + ".json")).raw; }

std::string label(const Instance& i) { return i.algebra + " k=" + std::to_string(i.k) + " p=(" + i.p + ")"; }

bool check(const Certificate& c, const std::string& name) {
  const Check* ch = c.find(name);
  return ch && ch->pass;
}

void require_checks(Outcome& o, const std::vector<Instance>& all, const std::vector<std::string>& names) {
  for (const auto& i : all)
    for (const auto& n : names)
      if (!check(i.cert, n)) {
        const Check* ch = i.cert.find(n);
        o.fail(label(i) + ": " + n + (ch && !ch->witness.empty() ? " (" + ch->witness + ")" : ""));
      }
}

std::vector<Instance> certify_listed(const char* key) {
  std::vector<Instance> out;
  for (const auto& name : corpus_names()) {
    auto sc = sidecar(name);
    if (!sc.contains(key)) continue;
    auto ws = load(name);
    for (const auto& v : sc[key]) {
      Instance i{name, v.at("k").get<int>(), v.at("p").get<std::string>(), {}};
      auto spec = build_extension(ws.sp, parse_field_tuple(i.p, ws), i.k - 1, name);
      i.cert = certify(spec, ws.default_bound());
      out.push_back(std::move(i));
    }
  }
  return out;
}

Outcome tables() {
  Outcome o;
  auto reports = corpus_tables(NCE_CORPUS_DIR);
  for (const auto& m : kMandatory) {
    auto it = std::find_if(reports.begin(), reports.end(), [&](const auto& r) { return r.algebra == m; });
    if (it == reports.end() || !it->has_rows) o.fail(m + ": no table rows");
  }
  for (const auto& r : reports) {
    if (!r.error.empty()) o.fail(r.algebra + ": " + r.error);
    for (const auto& k : r.ks)
      for (const auto& row : k.rows)
        o.require(row.contained, r.algebra + " k=" + std::to_string(k.k) + ": (" + row.tuple + ") not contained");
  }
  return o;
}

Outcome hilbert(const std::vector<Instance>& good) {
  Outcome o;
  require_checks(o, good, {"hilbert identity", "e-z recursion"});
  bool seen = false;
  for (const auto& i : good)
    if (i.algebra == "w_poly" && i.k == 1 && i.p == "1, 1, 1") {
      seen = true;
      std::vector<std::size_t> prefix{1, 3, 7, 13, 22, 34};
      const auto& d = i.cert.table_D->dims;
      o.require(d.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), d.begin()),
                "D(w_poly) does not start 1,3,7,13,22,34");
    }
  o.require(seen, "w_poly (1,1,1) missing from the verify list");
  return o;
}

Outcome negatives() {
  Outcome o;
  std::set<std::string> covered;
  for (const auto& name : corpus_names()) {
    auto sc = sidecar(name);
    if (!sc.contains("negative")) continue;
    auto ws = load(name);
    for (const auto& v : sc["negative"]) {
      int k = v.at("k").get<int>() - 1;
      auto p = parse_field_tuple(v.at("p").get<std::string>(), ws);
      std::string tag = name + " p=(" + v.at("p").get<std::string>() + ")";
      bool good = is_good(ws.sp, k, p).good;
      CertifySession s(build_extension(ws.sp, p, k, name), ws.default_bound(), CertifySession::Engines::gb);
      Certificate c = new_certificate(s);
      verify_hilbert(s, c);
      resolution_certificate(s, build_resolution(s.spec()), c);
      bool h = check(c, "hilbert identity"), r = check(c, "resolution complex");
      o.require(!good && !h && !r, tag + ": is_good=" + std::to_string(good) + " hilbert=" + std::to_string(h) +
                                       " complex=" + std::to_string(r));
      covered.insert(name);
    }
  }
  for (const auto& name : corpus_names()) o.require(covered.count(name) > 0, name + ": no negative control");
  return o;
}

Outcome engines(const std::vector<Instance>& good) {
  Outcome o;
  require_checks(o, good, {"engine agreement"});
  for (const auto& name : corpus_names()) {
    auto ws = load(name);
    Presentation a(ws.field_ctx, ws.sp.f, "A(" + name + ")");
    int b = ws.default_bound();
    try {
      check_agreement(*make_engine(a, b, EngineKind::la), *make_engine(a, b, EngineKind::gb));
    } catch (const DefectError& e) {
      o.fail(e.what());
    }
  }
  return o;
}

Outcome omega(const std::vector<Instance>& good) {
  Outcome o;
  require_checks(o, good, {"omega normal", "omega centrality matches Q = id and p = 1", "omega regular"});
  return o;
}

Outcome resolution(const std::vector<Instance>& good) {
  Outcome o;
  require_checks(o, good, {"resolution complex", "euler residuals", "resolution exact"});
  return o;
}

Outcome nakayama_hdet(const std::vector<Instance>& good) {
  Outcome o;
  require_checks(o, good,
                 {"nakayama preserves relations", "nakayama scales omega", "omega x = tau(x) omega",
                  "nu_A = tau^-1 nu_D", "hdet factors (q_k, q_k^-1, 1)", "hdet = 1"});
  return o;
}

Outcome flat_family() {
  Outcome o;
  for (const char* name : {"w_poly", "sklyanin"}) {
    auto ws = load(name);
    std::vector<std::vector<Scalar>> pts;
    auto sc = sidecar(name);
    for (const auto& s : sc.at("points")) pts.push_back(parse_field_tuple(s.get<std::string>(), ws));
    o.require(pts.size() >= 5, std::string(name) + ": fewer than five points");
    auto rep = flatness_probe(ws.sp, pts, 6);
    o.require(rep.pass, std::string(name) + ": fiber tables differ");
    std::vector<Scalar> ones(static_cast<std::size_t>(ws.n()), Scalar(1));
    for (int k = 0; k < ws.n(); ++k) {
      auto a = make_engine(fiber(ws.sp, coordinate_point(ws.n(), k)).D, 6, EngineKind::gb);
      auto b = make_engine(build_extension(ws.sp, ones, k).D, 6, EngineKind::gb);
      o.require(compare_ideals(*a, *b).equal,
                std::string(name) + ": coordinate fiber " + std::to_string(k + 1) + " differs from the extension");
    }
  }
  return o;
}

Outcome zhang() {
  Outcome o;
  for (const auto& name : kMandatory) {
    auto sc = sidecar(name);
    if (!sc.contains("zhang")) {
      o.fail(name + ": no zhang entry");
      continue;
    }
    auto ws = load(name);
    const auto& z = sc["zhang"];
    int k = z.at("k").get<int>() - 1;
    auto p = parse_field_tuple(z.at("p").get<std::string>(), ws);
    int nontrivial = 0;
    bool identity = false;
    for (const auto& s : z.at("sigmas")) {
      DiagonalMap<Scalar> sigma{parse_field_tuple(s.get<std::string>(), ws)};
      bool id = std::all_of(sigma.s.begin(), sigma.s.end(), [](const Scalar& x) { return x.is_one(); });
      if (id) identity = true;
      else ++nontrivial;
      auto r = zhang_certificate(ws.sp, p, k, sigma, ws.default_bound());
      o.require(r.pass, name + " sigma=(" + s.get<std::string>() + "): " + r.witness);
    }
    o.require(identity && nontrivial >= 2, name + ": needs the identity and two nontrivial twists");
  }
  return o;
}

Outcome lpwz() {
  Outcome o;
  auto ws = load("s2_cubic", "a := -4");
  auto spec = build_extension(ws.sp, parse_field_tuple("(-a)^{1/2}, -a^{-1}", ws), 1);
  o.require(spec.p[0] == Scalar(2), "p_1 is " + spec.p[0].str() + ", expected 2");
  auto rels = spec.D.relations_of_degree(4);
  auto target = parse_element("x*x*x*y - 2*x*x*y*x + 4*x*y*x*x - 8*y*x*x*x", ws.field_ctx);
  if (rels.size() != 1) {
    o.fail("expected one degree-4 relation, found " + std::to_string(rels.size()));
    return o;
  }
  const auto& r = rels.front();
  auto lead = r.terms().begin();
  auto c = target.coefficient(lead->first);
  o.require(c.has_value() && (*c / lead->second) * r == target, "degree-4 relation is " + r.str());
  return o;
}

template <class F>
bool report(int n, const std::string& what, F&& run) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = run();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << what << " (" << std::fixed
            << std::setprecision(1) << secs << " s)\n";
  for (const auto& note : o.notes) std::cout << "    " << note << '\n';
  std::cout.flush();
  return o.pass;
}

}  // namespace

int main() {
  std::vector<Instance> good;
  std::string setup_error;
  auto t0 = std::chrono::steady_clock::now();
  try {
    good = certify_listed("verify");
  } catch (const std::exception& e) {
    setup_error = e.what();
  }
  std::cout << "certified " << good.size() << " listed tuples in " << std::fixed << std::setprecision(1)
            << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
  auto with_good = [&](auto fn) {
    return [&, fn] {
      if (!setup_error.empty()) throw std::runtime_error("certifying the verify list: " + setup_error);
      return fn(good);
    };
  };
  int failed = 0;
  failed += !report(1, "table containment", tables);
  failed += !report(2, "hilbert identity", with_good(hilbert));
  failed += !report(3, "negative controls", negatives);
  failed += !report(4, "engine agreement", with_good(engines));
  failed += !report(5, "omega normal, central, regular", with_good(omega));
  failed += !report(6, "resolution certificate", with_good(resolution));
  failed += !report(7, "nakayama and hdet", with_good(nakayama_hdet));
  failed += !report(8, "flat family", flat_family);
  failed += !report(9, "zhang twist", zhang);
  failed += !report(10, "s2 extension at k=2", lpwz);
  std::cout << (10 - failed) << "/10 criteria passed\n";
  return failed;
}
