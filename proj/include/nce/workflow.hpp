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

// Algebra files to ready-to-use superpotentials, tuple parsing, corpus
// sidecars and the table comparison report.

#ifndef NCE_WORKFLOW_HPP
#define NCE_WORKFLOW_HPP

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dsl.hpp"
#include "family.hpp"

namespace nce {

/// A parsed algebra file with its field superpotential and, for files
/// with parameters, the symbolic one.
struct Workspace {
  AlgebraSource src;
  ContextPtr field_ctx;
  Superpotential<Scalar> sp;
  std::optional<Superpotential<UnitScalar>> unit_sp;
  std::string path;

  const std::string& name() const { return src.name; }
  int n() const { return sp.n(); }
  int m() const { return sp.m(); }
  int default_bound() const { return 2 * sp.m() + 4; }

  ConstraintSystem goodness(int k) const {
    return unit_sp ? goodness_system(*unit_sp, k) : goodness_system(sp, k);
  }
  ConstraintSystem goodness_from_matrix(int k) const {
    return unit_sp ? goodness_system_from_matrix(*unit_sp, k) : goodness_system_from_matrix(sp, k);
  }
};

inline Workspace open_algebra_source(AlgebraSource src, const std::string& assign = {}) {
  Workspace ws;
  ws.src = std::move(src);
  if (!assign.empty()) parse_assignments(assign, *ws.src.ctx, ws.src.assignment);
  const auto& a = ws.src.assignment;
  if (ws.src.unit_mode()) {
    ws.field_ctx = field_context(*ws.src.ctx);
    Element w(ws.field_ctx);
    if (!ws.src.unit_w.empty()) {
      ws.unit_sp = recognize(ws.src.unit_w.front());
      w = specialize(ws.src.unit_w.front(), a, ws.field_ctx);
    } else {
      std::vector<Element> rels;
      for (const auto& r : ws.src.unit_rels) rels.push_back(specialize(r, a, ws.field_ctx));
      w = superpotential_from_relations(rels);
    }
    ws.sp = recognize(w);
  } else {
    ws.field_ctx = ws.src.ctx;
    ws.sp = recognize(ws.src.field_w.empty() ? superpotential_from_relations(ws.src.field_rels)
                                             : ws.src.field_w.front());
  }
  if (ws.sp.w.is_zero()) throw MathError("w specializes to zero");
  return ws;
}

inline Workspace open_algebra(const std::string& path, const std::string& assign = {}) {
  Workspace ws = open_algebra_source(load_algebra(path), assign);
  ws.path = path;
  if (ws.src.name.empty()) ws.src.name = std::filesystem::path(path).stem().string();
  return ws;
}

/// "p1, p2, ..." as field scalars. Parametric entries are specialized
/// through the file's assignment.
inline std::vector<Scalar> parse_field_tuple(const std::string& text, const Workspace& ws) {
  std::vector<Scalar> out;
  for (const auto& part : split_top_level(text)) {
    if (ws.src.unit_mode()) {
      // "(-a)^{1/2}" is the principal root of the value of -a, which only
      // the field parser sees; the unit path covers the remaining syntax
      try {
        out.push_back(parse_scalar(part, ws.src.ctx, &ws.src.assignment).promoted(ws.field_ctx->conductor));
        continue;
      } catch (const InputError&) {
      }
      out.push_back(specialize(parse_unit(part, ws.src.ctx), ws.src.assignment, ws.src.ctx->params)
                        .promoted(ws.field_ctx->conductor));
    } else {
      out.push_back(parse_scalar(part, ws.field_ctx).promoted(ws.field_ctx->conductor));
    }
  }
  if (static_cast<int>(out.size()) != ws.n())
    throw InputError("tuple '" + text + "' has " + std::to_string(out.size()) + " entries, expected " +
                     std::to_string(ws.n()));
  return out;
}

/// A symbolic tuple: base point and one exponent vector per free symbol.
struct SymbolicTuple {
  std::string text;
  std::vector<UnitScalar> base;
  std::vector<std::vector<Rational>> directions;
};

inline SymbolicTuple parse_unit_tuple(const std::string& text, const std::vector<std::string>& params,
                                      const std::vector<std::string>& gens,
                                      const std::vector<std::string>& free, int conductor) {
  auto names = params;
  names.insert(names.end(), free.begin(), free.end());
  auto ctx = make_context(gens, conductor, names, CoeffMode::unit);
  SymbolicTuple t;
  t.text = text;
  t.directions.assign(free.size(), {});
  std::size_t np = params.size();
  for (const auto& part : split_top_level(text)) {
    UnitScalar u = parse_unit(part, ctx);
    UnitScalar b = UnitScalar::root_of_unity(u.torsion(), np);
    for (std::size_t j = 0; j < np; ++j)
      if (sgn(u.exponents()[j]) != 0) b *= UnitScalar::parameter(j, np, u.exponents()[j]);
    t.base.push_back(b);
    for (std::size_t j = 0; j < free.size(); ++j) t.directions[j].push_back(u.exponents()[np + j]);
  }
  if (t.base.size() != gens.size())
    throw InputError("tuple '" + text + "' has the wrong number of entries");
  return t;
}

/// One table row group: listed tuples for an omitted index.
struct SidecarRow {
  int k = 0;  // 1-based as written
  std::vector<std::string> tuples;
};

struct Sidecar {
  std::string algebra;
  std::string label;
  std::string source;
  std::vector<std::string> free_symbols;
  std::vector<SidecarRow> rows;
  nlohmann::json raw;
};

inline Sidecar load_sidecar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("missing sidecar '" + path + "'");
  Sidecar s;
  try {
    in >> s.raw;
    s.algebra = s.raw.at("algebra").get<std::string>();
    s.label = s.raw.value("label", s.algebra);
    s.source = s.raw.value("source", "");
    s.free_symbols = s.raw.value("free_symbols", std::vector<std::string>{});
    if (s.raw.contains("rows"))
      for (const auto& r : s.raw["rows"])
        s.rows.push_back({r.at("k").get<int>(), r.at("tuples").get<std::vector<std::string>>()});
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed sidecar '" + path + "': " + e.what());
  }
  return s;
}

struct RowVerdict {
  std::string tuple;
  bool contained = false;
};

struct KReport {
  int k = 0;
  std::vector<std::string> computed;
  std::vector<RowVerdict> rows;
  std::vector<std::string> surplus;  // computed cosets covered by no listed row
};

struct TableReport {
  std::string algebra;
  std::string label;
  bool has_rows = false;
  std::vector<KReport> ks;
  std::string error;

  bool pass() const {
    if (!error.empty()) return false;
    for (const auto& k : ks)
      for (const auto& r : k.rows)
        if (!r.contained) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["algebra"] = algebra;
    j["label"] = label;
    if (!error.empty()) j["error"] = error;
    if (!has_rows) j["note"] = "no table row; families only";
    auto arr = nlohmann::json::array();
    for (const auto& k : ks) {
      nlohmann::json o;
      o["k"] = k.k;
      o["computed"] = k.computed;
      auto rows = nlohmann::json::array();
      for (const auto& r : k.rows) rows.push_back({{"tuple", r.tuple}, {"contained", r.contained}});
      o["table"] = rows;
      if (!k.surplus.empty())
        o["note"] = "computed family strictly larger than the listed rows; extra: " +
                    [&] {
                      std::string s;
                      for (const auto& x : k.surplus) s += (s.empty() ? "" : ", ") + x;
                      return s;
                    }();
      arr.push_back(o);
    }
    j["families"] = arr;
    j["pass"] = pass();
    return j;
  }
};

namespace detail {

/// The listed tuple as a one-coset family, directions scaled to integers.
inline SolutionFamily as_family(const SymbolicTuple& t, const SolutionFamily& like) {
  SolutionFamily f;
  f.n = like.n;
  f.k = like.k;
  f.params = like.params;
  f.particular = t.base;
  f.torsion.assign(1, std::vector<Rational>(static_cast<std::size_t>(like.n), Rational(0)));
  for (const auto& d : t.directions) {
    Integer den = 1;
    for (const auto& x : d) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> v;
    for (const auto& x : d) v.push_back(Integer(x * den));
    if (std::any_of(v.begin(), v.end(), [](const Integer& x) { return x != 0; })) f.directions.push_back(v);
  }
  return f;
}

}  // namespace detail

inline TableReport table_report(const Workspace& ws, const Sidecar* sc) {
  TableReport rep;
  rep.algebra = ws.name();
  rep.label = sc ? sc->label : ws.name();
  rep.has_rows = sc && !sc->rows.empty();
  auto params = ws.unit_sp ? ws.src.ctx->params : std::vector<std::string>{};
  for (int k = 0; k < ws.n(); ++k) {
    KReport kr;
    kr.k = k + 1;
    auto fams = solve_units(ws.goodness(k));
    for (const auto& f : fams)
      for (const auto& d : f.describe()) kr.computed.push_back(d);
    std::vector<SymbolicTuple> listed;
    if (sc)
      for (const auto& row : sc->rows) {
        if (row.k != k + 1) continue;
        for (const auto& t : row.tuples) {
          auto st = parse_unit_tuple(t, fams.empty() ? params : fams.front().params, ws.sp.context().gens,
                                     sc->free_symbols, ws.src.ctx->conductor);
          bool in = false;
          for (const auto& f : fams) in = in || f.contains_family(st.base, st.directions);
          kr.rows.push_back({t, in});
          listed.push_back(std::move(st));
        }
      }
    if (!listed.empty())
      for (const auto& f : fams) {
        auto names = f.describe();
        IntMatrix F = f.direction_matrix();
        std::vector<std::vector<Rational>> dirs;
        for (const auto& d : f.directions) {
          std::vector<Rational> r;
          for (const auto& x : d) r.emplace_back(x);
          dirs.push_back(r);
        }
        for (std::size_t c = 0; c < f.torsion.size(); ++c) {
          std::vector<UnitScalar> base;
          for (std::size_t a = 0; a < f.particular.size(); ++a)
            base.push_back(f.particular[a] * UnitScalar::root_of_unity(f.torsion[c][a], f.params.size()));
          bool covered = false;
          for (const auto& st : listed)
            covered = covered || detail::as_family(st, f).contains_family(base, dirs);
          if (!covered) kr.surplus.push_back(names[c]);
        }
      }
    rep.ks.push_back(std::move(kr));
  }
  return rep;
}

/// Runs jobs on a bounded pool; results keep the input order.
template <class R>
std::vector<R> run_pool(const std::vector<std::function<R()>>& jobs, unsigned workers = 0) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));
  std::vector<R> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < jobs.size();) out[i] = jobs[i]();
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

/// Every *.alg file in a directory with its sidecar, in name order.
inline std::vector<TableReport> corpus_tables(const std::string& dir, unsigned workers = 0) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InputError("'" + dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".alg") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<std::function<TableReport()>> jobs;
  for (const auto& f : files)
    jobs.push_back([f] {
      fs::path side = f;
      side.replace_extension(".json");
      try {
        Sidecar sc = load_sidecar(side.string());
        Workspace ws = open_algebra(f.string());
        return table_report(ws, &sc);
      } catch (const Error& e) {
        TableReport r;
        r.algebra = f.stem().string();
        r.error = e.what();
        return r;
      }
    });
  return run_pool(jobs, workers);
}

}  // namespace nce

#endif  // NCE_WORKFLOW_HPP
