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

// nce: command-line front end. Exit status 0 when every check passes, 1
// when a mathematical check fails, 2 on input or resource errors.

#include <CLI11.hpp>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "nce/workflow.hpp"

namespace {

using namespace nce;
using json = nlohmann::json;

struct Options {
  std::string input;
  std::string assign;
  int omit = 0;
  std::string p;
  int bound = -1;
  std::string engine = "both";
  std::string format = "json";
  std::string points;
  std::vector<std::string> sigmas;
  unsigned jobs = 0;
};

int omitted(const Options& o, const Workspace& ws) {
  if (o.omit < 1 || o.omit > ws.n())
    throw InputError("--omit must lie between 1 and " + std::to_string(ws.n()));
  return o.omit - 1;
}

int bound_of(const Options& o, const Workspace& ws) {
  int b = o.bound < 0 ? ws.default_bound() : o.bound;
  if (b > Word::kMaxLength) throw ResourceError("bound exceeds the word length limit " + std::to_string(Word::kMaxLength));
  return b;
}

CertifySession::Engines engines_of(const std::string& s) {
  if (s == "both") return CertifySession::Engines::both;
  return parse_engine(s) == EngineKind::la ? CertifySession::Engines::la : CertifySession::Engines::gb;
}

EngineKind primary_of(const std::string& s) { return s == "la" ? EngineKind::la : EngineKind::gb; }

std::vector<std::string> strs(const std::vector<Scalar>& v, const Context& ctx) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(CoeffOps<Scalar>::str(x, ctx));
  return out;
}

std::vector<std::string> strs(const std::vector<Element>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_check(const Options& o) {
  AlgebraSource src = load_algebra(o.input);
  json j;
  j["algebra"] = src.name;
  try {
    Workspace ws = open_algebra_source(std::move(src), o.assign);
    const auto& ctx = ws.sp.context();
    j["w"] = ws.sp.w.str();
    j["degree"] = ws.sp.degree;
    j["f"] = strs(ws.sp.f);
    j["g"] = strs(ws.sp.g);
    j["q"] = strs(ws.sp.q, ctx);
    if (ws.unit_sp) {
      std::vector<std::string> uq;
      for (const auto& q : ws.unit_sp->q) uq.push_back(q.str(ws.src.ctx->params));
      j["q_symbolic"] = uq;
    }
    auto M = coefficient_matrix(ws.sp.w, &ws.sp.q);
    json rows = json::array();
    for (const auto& r : M.entries) rows.push_back(strs(r));
    j["M"] = rows;
    j["superpotential"] = ws.sp.is_superpotential();
    j["twisted_superpotential"] = true;
    j["hash"] = superpotential_hash(ws.sp);
    emit(j);
    return 0;
  } catch (const MathError& e) {
    j["twisted_superpotential"] = false;
    j["reason"] = e.what();
    emit(j);
    return 1;
  }
}

int cmd_derive(const Options& o) {
  Workspace ws = open_algebra(o.input, o.assign);
  json j;
  j["algebra"] = ws.name();
  j["w"] = ws.sp.w.str();
  j["f"] = strs(ws.sp.f);
  j["from_relations"] = ws.src.field_w.empty() && ws.src.unit_w.empty();
  emit(j);
  return 0;
}

int cmd_solve(const Options& o) {
  Workspace ws = open_algebra(o.input, o.assign);
  int k = omitted(o, ws);
  auto fams = solve_units(ws.goodness(k));
  auto cross = solve_units(ws.goodness_from_matrix(k));
  json j;
  j["algebra"] = ws.name();
  j["k"] = k + 1;
  json arr = json::array();
  for (const auto& f : fams) arr.push_back(f.to_json());
  j["families"] = arr;
  bool agree = fams.size() == cross.size();
  for (std::size_t i = 0; agree && i < fams.size(); ++i)
    agree = fams[i].to_json()["members"] == cross[i].to_json()["members"];
  j["matrix_criterion_agrees"] = agree;
  emit(j);
  return agree ? 0 : 1;
}

int cmd_build(const Options& o) {
  Workspace ws = open_algebra(o.input, o.assign);
  int k = omitted(o, ws);
  auto spec = build_extension(ws.sp, parse_field_tuple(o.p, ws), k, ws.name());
  json j;
  j["algebra"] = ws.name();
  j["k"] = k + 1;
  j["p"] = strs(spec.p, *ws.field_ctx);
  j["relations"] = strs(spec.D.relations);
  j["omega"] = spec.omega.str();
  emit(j);
  return 0;
}

int cmd_hilbert(const Options& o) {
  Workspace ws = open_algebra(o.input, o.assign);
  int bound = bound_of(o, ws);
  Presentation pres = o.p.empty()
                          ? Presentation(ws.field_ctx, ws.sp.f, "A(" + ws.name() + ")")
                          : build_extension(ws.sp, parse_field_tuple(o.p, ws), omitted(o, ws), ws.name()).D;
  auto primary = make_engine(pres, bound, primary_of(o.engine));
  bool agree = true;
  std::string defect;
  if (o.engine == "both") {
    try {
      check_agreement(*primary, *make_engine(pres, bound, EngineKind::la));
    } catch (const DefectError& e) {
      agree = false;
      defect = e.what();
    }
  }
  DegreeTable t = primary->table();
  if (o.format == "tsv") {
    std::cout << t.to_tsv();
  } else {
    json j = t.to_json();
    j["presentation"] = pres.label;
    if (o.engine == "both") j["engines_agree"] = agree;
    if (!defect.empty()) j["defect"] = defect;
    emit(j);
  }
  return agree ? 0 : 1;
}

int cmd_verify(const Options& o) {
  Workspace ws = open_algebra(o.input, o.assign);
  int k = omitted(o, ws);
  auto spec = build_extension(ws.sp, parse_field_tuple(o.p, ws), k, ws.name());
  Certificate cert = certify(spec, bound_of(o, ws), engines_of(o.engine));
  if (o.format == "tsv") {
    for (const auto& c : cert.checks)
      std::cout << c.name << '\t' << (c.pass ? "pass" : "fail") << '\t' << c.witness << '\n';
    std::cout << (cert.pass() ? "pass" : "fail") << "\tverified to degree " << cert.bound << '\n';
  } else {
    json j = cert.to_json();
    j["summary"] = std::string(cert.pass() ? "pass" : "fail") + ", verified to degree " +
                   std::to_string(cert.bound);
    emit(j);
  }
  return cert.pass() ? 0 : 1;
}

std::vector<std::vector<Scalar>> parse_points(const std::string& text, const Workspace& ws) {
  std::vector<std::vector<Scalar>> pts;
  for (const auto& part : split_top_level(text, ';')) pts.push_back(parse_field_tuple(part, ws));
  return pts;
}

int cmd_family(const Options& o) {
  Workspace ws = open_algebra(o.input, o.assign);
  int bound = o.bound < 0 ? 6 : bound_of(o, ws);
  std::vector<std::vector<Scalar>> pts;
  if (o.points.empty()) {
    for (int i = 0; i < ws.n(); ++i) pts.push_back(coordinate_point(ws.n(), i));
    pts.push_back(std::vector<Scalar>(static_cast<std::size_t>(ws.n()), Scalar(1)));
  } else {
    pts = parse_points(o.points, ws);
  }
  EngineKind kind = primary_of(o.engine);
  FlatnessReport rep = flatness_probe(ws.sp, pts, bound, kind);
  // coordinate fibers against the central extensions with p = 1
  std::vector<std::pair<int, bool>> coord;
  std::vector<Scalar> ones(static_cast<std::size_t>(ws.n()), Scalar(1));
  for (int i = 0; i < ws.n(); ++i) {
    auto a = make_engine(fiber(ws.sp, coordinate_point(ws.n(), i)).D, bound, kind);
    auto b = make_engine(build_extension(ws.sp, ones, i, ws.name()).D, bound, kind);
    coord.emplace_back(i + 1, compare_ideals(*a, *b).equal);
  }
  bool pass = rep.pass;
  for (const auto& [i, eq] : coord) pass = pass && eq;
  if (o.format == "tsv") {
    std::cout << rep.to_tsv(*ws.field_ctx);
    for (const auto& [i, eq] : coord)
      std::cout << "coordinate fiber " << i << " matches extension\t" << (eq ? "pass" : "fail") << '\n';
  } else {
    json j;
    j["algebra"] = ws.name();
    j["bound"] = bound;
    json arr = json::array();
    for (std::size_t i = 0; i < pts.size(); ++i)
      arr.push_back({{"point", strs(pts[i], *ws.field_ctx)}, {"dims", rep.tables[i].dims}});
    j["fibers"] = arr;
    j["flat"] = rep.pass;
    json c = json::array();
    for (const auto& [i, eq] : coord) c.push_back({{"k", i}, {"matches_extension", eq}});
    j["coordinate_fibers"] = c;
    j["pass"] = pass;
    emit(j);
  }
  return pass ? 0 : 1;
}

int cmd_zhang(const Options& o) {
  Workspace ws = open_algebra(o.input, o.assign);
  int k = omitted(o, ws);
  int bound = bound_of(o, ws);
  auto p = parse_field_tuple(o.p, ws);
  if (o.sigmas.empty()) throw InputError("zhang needs at least one --sigma");
  json arr = json::array();
  bool pass = true;
  for (const auto& s : o.sigmas) {
    DiagonalMap<Scalar> sigma{parse_field_tuple(s, ws)};
    ZhangReport r = zhang_certificate(ws.sp, p, k, sigma, bound, primary_of(o.engine));
    pass = pass && r.pass;
    json e{{"sigma", strs(sigma.s, *ws.field_ctx)},
           {"hdet", CoeffOps<Scalar>::str(r.hdet, *ws.field_ctx)},
           {"p_twisted", strs(r.p_twisted, *ws.field_ctx)},
           {"pass", r.pass}};
    if (!r.witness.empty()) e["witness"] = r.witness;
    arr.push_back(e);
  }
  emit({{"algebra", ws.name()}, {"k", k + 1}, {"bound", bound}, {"twists", arr}, {"pass", pass}});
  return pass ? 0 : 1;
}

int cmd_tables(const Options& o) {
  auto reports = corpus_tables(o.input, o.jobs);
  bool pass = true;
  bool input_error = false;
  for (const auto& r : reports) {
    pass = pass && r.pass();
    if (!r.error.empty()) input_error = true;
  }
  if (o.format == "tsv") {
    std::cout << "algebra\tk\ttuple\tcontained\n";
    for (const auto& r : reports) {
      if (!r.error.empty()) {
        std::cout << r.algebra << "\t-\t-\terror: " << r.error << '\n';
        continue;
      }
      if (!r.has_rows) std::cout << r.algebra << "\t-\t-\tno table row; families only\n";
      for (const auto& k : r.ks) {
        for (const auto& row : k.rows)
          std::cout << r.algebra << '\t' << k.k << '\t' << row.tuple << '\t' << (row.contained ? "yes" : "no")
                    << '\n';
        for (const auto& s : k.surplus)
          std::cout << r.algebra << '\t' << k.k << '\t' << s << "\tsurplus\n";
      }
    }
  } else {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    emit({{"corpus", arr}, {"pass", pass}});
  }
  if (input_error) return 2;
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal and central extensions of superpotential algebras"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* c) {
    c->add_option("input", o.input, "algebra file")->required()->check(CLI::ExistingFile);
    c->add_option("--assign", o.assign, "parameter values, e.g. \"a:=4, b:=2\"");
  };
  auto add_engine = [&](CLI::App* c) {
    c->add_option("--engine", o.engine, "la, gb or both")->check(CLI::IsMember({"la", "gb", "both"}));
    c->add_option("--bound", o.bound, "degree bound (default 2m+4)")->check(CLI::NonNegativeNumber);
  };
  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
  };
  auto add_tuple = [&](CLI::App* c, bool required) {
    auto* k = c->add_option("--omit", o.omit, "omitted index k (1-based)");
    auto* p = c->add_option("--p", o.p, "tuple \"p1, ..., pn\"");
    if (required) {
      k->required();
      p->required();
    }
  };

  std::map<CLI::App*, std::function<int(const Options&)>> handlers;
  auto* check = app.add_subcommand("check-superpotential", "recognize w, its derivatives and twist");
  add_common(check);
  handlers[check] = cmd_check;
  auto* derive = app.add_subcommand("derive", "cyclic derivatives, or w recovered from relations");
  add_common(derive);
  handlers[derive] = cmd_derive;
  auto* solve = app.add_subcommand("solve-tuples", "all good tuples for an omitted index");
  add_common(solve);
  solve->add_option("--omit", o.omit, "omitted index k (1-based)")->required();
  handlers[solve] = cmd_solve;
  auto* build = app.add_subcommand("build-extension", "relations of D(w, p)");
  add_common(build);
  add_tuple(build, true);
  handlers[build] = cmd_build;
  auto* hilbert = app.add_subcommand("hilbert", "Hilbert table of A(w), or of D(w, p) with --p");
  add_common(hilbert);
  add_tuple(hilbert, false);
  add_engine(hilbert);
  add_format(hilbert);
  handlers[hilbert] = cmd_hilbert;
  auto* verify = app.add_subcommand("verify", "full truncated certificate for D(w, p)");
  add_common(verify);
  add_tuple(verify, true);
  add_engine(verify);
  add_format(verify);
  handlers[verify] = cmd_verify;
  auto* family = app.add_subcommand("family-probe", "Hilbert tables of fibers over projective points");
  add_common(family);
  family->add_option("--points", o.points, "points \"c1,...,cn; c1,...,cn\"");
  add_engine(family);
  add_format(family);
  handlers[family] = cmd_family;
  auto* zhang = app.add_subcommand("zhang", "compare twisted D(w, p) with D(twisted w, p')");
  add_common(zhang);
  add_tuple(zhang, true);
  zhang->add_option("--sigma", o.sigmas, "diagonal twist \"s1, ..., sn\" (repeatable)")->required();
  add_engine(zhang);
  handlers[zhang] = cmd_zhang;
  auto* tables = app.add_subcommand("tables", "compare computed families with corpus sidecars");
  tables->add_option("corpus", o.input, "corpus directory")->required()->check(CLI::ExistingDirectory);
  tables->add_option("--jobs", o.jobs, "worker threads (default: hardware)");
  add_format(tables);
  handlers[tables] = cmd_tables;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  for (auto& [sub, fn] : handlers) {
    if (!sub->parsed()) continue;
    try {
      return fn(o);
    } catch (const InputError& e) {
      std::cerr << "input error: " << e.what() << '\n';
      return 2;
    } catch (const ResourceError& e) {
      std::cerr << "resource limit: " << e.what() << '\n';
      return 2;
    } catch (const MathError& e) {
      std::cerr << "check failed: " << e.what() << '\n';
      return 1;
    } catch (const DefectError& e) {
      std::cerr << "internal defect: " << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}
