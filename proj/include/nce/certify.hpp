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

// The normal extension D(w, p) of A(w) with omitted index k and its
// degree-truncated regularity certificate.
//
// Resolution layout. With ord = (k, remaining indices ascending):
//
//   M_r (2(n-1) x n):  rows i != k:  M_{i,j}
//                      rows i != k:  x_i M_{k,j} - delta_{ij} p_i f_k
//   M_l (n x 2(n-1)):  column j != k: -M_{i,k} x_j + delta_{ij} q_k p_j^{-1} f_k
//                      column j != k: M_{i,j}
//
// so that M_r x = (f_j | g_j) and x^t M_l = (q_k p_j^{-1} g_j | q_j f_j) with
// g_j = x_j f_k - p_j f_k x_j, and the complex
//
//   D(-2m-1) -> D(-2m)^n -> D(-m)^{n-1} + D(-m-1)^{n-1} -> D(-1)^n -> D -> k
//
// acts by right multiplication with x^t, M_l, M_r and x.

#ifndef NCE_CERTIFY_HPP
#define NCE_CERTIFY_HPP

#include <memory>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "quotient.hpp"
#include "superpotential.hpp"
#include "tuples.hpp"

namespace nce {

struct ExtensionSpec {
  std::string name;
  Superpotential<Scalar> sp;
  int k = 0;  // 0-based
  std::vector<Scalar> p;
  Presentation D;
  Presentation A;
  Element omega;

  int n() const { return sp.n(); }
  int m() const { return sp.m(); }
  const ContextPtr& ctx() const { return sp.w.context_ptr(); }
  const Scalar& qk() const { return sp.q[static_cast<std::size_t>(k)]; }
};

/// Relations {f_i : i != k} and {x_i f_k - p_i f_k x_i : i != k}.
inline ExtensionSpec build_extension(const Superpotential<Scalar>& sp, const std::vector<Scalar>& p,
                                     int k, std::string name = {}) {
  int n = sp.n();
  if (n < 2) throw InputError("build_extension: at least two generators are required");
  if (k < 0 || k >= n) throw InputError("build_extension: omitted index out of range");
  if (static_cast<int>(p.size()) != n) throw InputError("build_extension: tuple has wrong length");
  for (const auto& x : p)
    if (x.is_zero()) throw InputError("build_extension: tuple entries must be nonzero");
  if (!(p[static_cast<std::size_t>(k)] == sp.q[static_cast<std::size_t>(k)]))
    throw InputError("build_extension: p_k = " + p[static_cast<std::size_t>(k)].str() +
                     " differs from q_k = " + sp.q[static_cast<std::size_t>(k)].str());
  if (!linearly_independent(sp.f))
    throw MathError("build_extension: the derivatives of w are linearly dependent");
  ExtensionSpec spec;
  spec.name = name;
  spec.sp = sp;
  spec.k = k;
  spec.p = p;
  auto ctx = sp.w.context_ptr();
  const Element& fk = sp.f[static_cast<std::size_t>(k)];
  std::vector<Element> rels;
  for (int i = 0; i < n; ++i)
    if (i != k) rels.push_back(sp.f[static_cast<std::size_t>(i)]);
  for (int i = 0; i < n; ++i) {
    if (i == k) continue;
    Element xi = Element::generator(ctx, i);
    rels.push_back(xi * fk - p[static_cast<std::size_t>(i)] * (fk * xi));
  }
  spec.D = Presentation(ctx, rels, name.empty() ? "D" : "D(" + name + ")");
  spec.A = Presentation(ctx, sp.f, name.empty() ? "A" : "A(" + name + ")");
  spec.omega = fk;
  return spec;
}

struct Check {
  std::string name;
  bool pass = false;
  std::string witness;
};

struct Certificate {
  std::string algebra;
  int k = 0;
  std::vector<std::string> p;
  int bound = 0;
  std::vector<Check> checks;
  std::optional<DegreeTable> table_A, table_D;
  std::vector<long> e, z, euler;
  std::vector<std::vector<long>> homology;  // [position][degree]
  std::optional<bool> central;
  std::vector<std::string> nakayama;
  std::string omega_eigenvalue;
  std::vector<std::string> hdet_factors;
  std::string hdet;

  void add(std::string name, bool pass, std::string witness = {}) {
    checks.push_back({std::move(name), pass, std::move(witness)});
  }
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["algebra"] = algebra;
    j["k"] = k + 1;
    j["p"] = p;
    j["bound"] = bound;
    j["verified_to_degree"] = bound;
    auto cs = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json o{{"name", c.name}, {"pass", c.pass}};
      if (!c.witness.empty()) o["witness"] = c.witness;
      cs.push_back(o);
    }
    j["checks"] = cs;
    nlohmann::json tables = nlohmann::json::object();
    if (table_A) tables["A"] = table_A->dims;
    if (table_D) tables["D"] = table_D->dims;
    j["tables"] = tables;
    j["diagnostics"] = {{"e", e}, {"z", z}, {"euler_residual", euler}, {"homology", homology}};
    if (central) j["central"] = *central;
    if (!nakayama.empty())
      j["nakayama"] = {{"scales", nakayama}, {"omega_eigenvalue", omega_eigenvalue}};
    if (!hdet_factors.empty()) j["hdet"] = {{"factors", hdet_factors}, {"value", hdet}};
    j["pass"] = pass();
    return j;
  }
};

/// Engines for D and A shared by all checks of one certificate.
class CertifySession {
 public:
  enum class Engines { la, gb, both };

  CertifySession(ExtensionSpec spec, int bound, Engines engines = Engines::both)
      : spec_(std::move(spec)), bound_(bound) {
    EngineKind primary = engines == Engines::la ? EngineKind::la : EngineKind::gb;
    D_ = make_engine(spec_.D, bound, primary);
    A_ = make_engine(spec_.A, bound, primary);
    if (engines == Engines::both) {
      D_oracle_ = make_engine(spec_.D, bound, EngineKind::la);
      A_oracle_ = make_engine(spec_.A, bound, EngineKind::la);
    }
  }

  const ExtensionSpec& spec() const { return spec_; }
  int bound() const { return bound_; }
  const QuotientEngine& D() const { return *D_; }
  const QuotientEngine& A() const { return *A_; }
  const QuotientEngine* D_oracle() const { return D_oracle_.get(); }
  const QuotientEngine* A_oracle() const { return A_oracle_.get(); }

  /// Rank of u -> NF(u * p) on normal words of degree d (or p * u).
  std::size_t multiplication_rank(int d, const Element& p, bool right) const {
    EchelonBasis<Word> b;
    for (const auto& u : D_->normal_words(d)) {
      Element mu = Element::monomial(spec_.ctx(), u);
      b.insert(to_sparse(D_->normal_form(right ? mu * p : p * mu)));
    }
    return b.rank();
  }

 private:
  ExtensionSpec spec_;
  int bound_;
  std::unique_ptr<QuotientEngine> D_, A_, D_oracle_, A_oracle_;
};

inline Certificate new_certificate(const CertifySession& s) {
  Certificate c;
  const auto& spec = s.spec();
  c.algebra = spec.name;
  c.k = spec.k;
  for (const auto& x : spec.p) c.p.push_back(CoeffOps<Scalar>::str(x, *spec.ctx()));
  c.bound = s.bound();
  return c;
}

/// Cross-checks the primary engine against the linear-algebra oracle.
inline void engine_agreement(const CertifySession& s, Certificate& cert) {
  if (!s.D_oracle()) return;
  try {
    check_agreement(s.D(), *s.D_oracle());
    check_agreement(s.A(), *s.A_oracle());
    cert.add("engine agreement", true);
  } catch (const DefectError& e) {
    cert.add("engine agreement", false, e.what());
  }
}

/// h_D (1 - t^m) = h_A to the bound, with e_k and z_k diagnostics.
inline void verify_hilbert(const CertifySession& s, Certificate& cert) {
  const auto& spec = s.spec();
  int B = s.bound(), m = spec.m();
  cert.table_A = s.A().table();
  cert.table_D = s.D().table();
  std::vector<long> predicted(static_cast<std::size_t>(B) + 1, 0);
  for (int d = 0; d <= B; ++d) {
    long a = static_cast<long>(s.A().dim(d));
    predicted[static_cast<std::size_t>(d)] = a + (d >= m ? predicted[static_cast<std::size_t>(d - m)] : 0);
  }
  cert.e.clear();
  int first_bad = -1;
  for (int d = 0; d <= B; ++d) {
    long e = predicted[static_cast<std::size_t>(d)] - static_cast<long>(s.D().dim(d));
    cert.e.push_back(e);
    if (e != 0 && first_bad < 0) first_bad = d;
  }
  cert.add("hilbert identity", first_bad < 0,
           first_bad < 0 ? "" : "first nonzero e_k at degree " + std::to_string(first_bad));
  cert.z.clear();
  for (int d = 0; d + m <= B; ++d)
    cert.z.push_back(static_cast<long>(s.D().dim(d)) -
                     static_cast<long>(s.multiplication_rank(d, spec.omega, true)));
  std::string bad;
  for (int d = 0; d <= B; ++d) {
    long lhs = cert.e[static_cast<std::size_t>(d)];
    long rhs = d >= m ? cert.e[static_cast<std::size_t>(d - m)] + cert.z[static_cast<std::size_t>(d - m)] : 0;
    if (lhs != rhs && bad.empty()) bad = "degree " + std::to_string(d);
  }
  cert.add("e-z recursion", bad.empty(), bad);
}

/// Normality, centrality and regularity of Omega in D.
inline void omega_certificate(const CertifySession& s, Certificate& cert) {
  const auto& spec = s.spec();
  int B = s.bound(), m = spec.m(), n = spec.n();
  if (B < m + 1) throw InputError("omega certificate needs bound >= m + 1");
  auto ctx = spec.ctx();
  const Element& om = spec.omega;
  std::string bad;
  bool all_commute = true;
  for (int i = 0; i < n; ++i) {
    Element xi = Element::generator(ctx, i);
    const Scalar& c = i == spec.k ? spec.qk() : spec.p[static_cast<std::size_t>(i)];
    if (!s.D().member(xi * om - c * (om * xi)) && bad.empty())
      bad = "x" + std::to_string(i + 1) + " Omega - c Omega x" + std::to_string(i + 1);
    if (!s.D().member(xi * om - om * xi)) all_commute = false;
  }
  cert.add("omega normal", bad.empty(), bad);
  cert.central = all_commute;
  bool predicted = spec.sp.is_superpotential();
  for (const auto& x : spec.p)
    if (!x.is_one()) predicted = false;
  cert.add("omega centrality matches Q = id and p = 1", all_commute == predicted,
           all_commute == predicted ? "" : all_commute ? "central unexpectedly" : "not central");
  std::string reg;
  for (int d = 0; d + m <= B && reg.empty(); ++d) {
    std::size_t dim = s.D().dim(d);
    if (s.multiplication_rank(d, om, true) != dim) reg = "u Omega = 0 has solutions in degree " + std::to_string(d);
    else if (s.multiplication_rank(d, om, false) != dim)
      reg = "Omega u = 0 has solutions in degree " + std::to_string(d);
  }
  cert.add("omega regular", reg.empty(), reg);
}

struct ResolutionData {
  std::vector<int> ord;  // k first, then the rest ascending
  CoeffMatrix<Scalar> M;
  std::vector<std::vector<Element>> Ml, Mr;
  std::vector<Element> gl, gr;
  std::vector<std::vector<Scalar>> Jh, Jv;
};

inline ResolutionData build_resolution(const ExtensionSpec& spec) {
  const auto& sp = spec.sp;
  int n = spec.n(), k = spec.k;
  auto ctx = spec.ctx();
  ResolutionData r;
  r.M = coefficient_matrix(sp.w, &sp.q);
  r.ord.push_back(k);
  for (int i = 0; i < n; ++i)
    if (i != k) r.ord.push_back(i);
  std::vector<int> rest(r.ord.begin() + 1, r.ord.end());
  auto X = [&](int i) { return Element::generator(ctx, i); };
  const Element& fk = sp.f[static_cast<std::size_t>(k)];
  auto P = [&](int i) { return spec.p[static_cast<std::size_t>(i)]; };
  auto Q = [&](int i) { return sp.q[static_cast<std::size_t>(i)]; };
  Element zero(ctx);

  r.Jh.assign(static_cast<std::size_t>(n), std::vector<Scalar>(rest.size(), Scalar(0)));
  r.Jv.assign(rest.size(), std::vector<Scalar>(static_cast<std::size_t>(n), Scalar(0)));
  for (std::size_t a = 0; a < rest.size(); ++a) {
    r.Jh[a + 1][a] = Q(k) / P(rest[a]);
    r.Jv[a][a + 1] = -P(rest[a]);
  }
  for (int i : rest) {
    std::vector<Element> row;
    for (int j : r.ord) row.push_back(r.M(i, j));
    r.Mr.push_back(row);
  }
  for (std::size_t a = 0; a < rest.size(); ++a) {
    int i = rest[a];
    std::vector<Element> row;
    for (std::size_t b = 0; b < r.ord.size(); ++b) {
      int j = r.ord[b];
      Element e = X(i) * r.M(k, j);
      if (!r.Jv[a][b].is_zero()) e += r.Jv[a][b] * fk;
      row.push_back(e);
    }
    r.Mr.push_back(row);
  }
  for (std::size_t a = 0; a < r.ord.size(); ++a) {
    int i = r.ord[a];
    std::vector<Element> row;
    for (std::size_t b = 0; b < rest.size(); ++b) {
      int j = rest[b];
      Element e = -(r.M(i, k) * X(j));
      if (!r.Jh[a][b].is_zero()) e += r.Jh[a][b] * fk;
      row.push_back(e);
    }
    for (int j : rest) row.push_back(r.M(i, j));
    r.Ml.push_back(row);
  }
  for (int j : rest) {
    Element gj = X(j) * fk - P(j) * (fk * X(j));
    r.gl.push_back((Q(k) / P(j)) * gj);
    r.gr.push_back(sp.f[static_cast<std::size_t>(j)]);
  }
  for (int j : rest) r.gl.push_back(Q(j) * sp.f[static_cast<std::size_t>(j)]);
  for (int j : rest) r.gr.push_back(X(j) * fk - P(j) * (fk * X(j)));

  for (std::size_t c = 0; c < r.gl.size(); ++c) {
    Element acc(ctx);
    for (std::size_t a = 0; a < r.ord.size(); ++a) acc += X(r.ord[a]) * r.Ml[a][c];
    if (!(acc == r.gl[c])) throw DefectError("resolution: x^t M_l != g_l^t");
  }
  for (std::size_t a = 0; a < r.Mr.size(); ++a) {
    Element acc(ctx);
    for (std::size_t b = 0; b < r.ord.size(); ++b) acc += r.Mr[a][b] * X(r.ord[b]);
    if (!(acc == r.gr[a])) throw DefectError("resolution: M_r x != g_r");
  }
  return r;
}

namespace detail {

using BlockKey = std::pair<int, Word>;

/// Rank in degree t of the map sum_rows D(-shift_row) -> sum_cols D(-.)
/// given by right multiplication with a matrix of elements.
inline std::size_t map_rank(const QuotientEngine& D, int t, const std::vector<int>& row_shift,
                            const std::vector<std::vector<Element>>& N) {
  EchelonBasis<BlockKey> b;
  for (std::size_t r = 0; r < N.size(); ++r) {
    int deg = t - row_shift[r];
    if (deg < 0) continue;
    for (const auto& u : D.normal_words(deg)) {
      Element mu = Element::monomial(D.context(), u);
      SparseVec<BlockKey> v;
      for (std::size_t c = 0; c < N[r].size(); ++c) {
        if (N[r][c].is_zero()) continue;
        Element nf = D.normal_form(mu * N[r][c]);
        for (const auto& [w, coeff] : nf.terms())
          v.emplace(BlockKey{static_cast<int>(c), w}, coeff);
      }
      b.insert(std::move(v));
    }
  }
  return b.rank();
}

}  // namespace detail

/// (a) M_l M_r = 0 in D, (b) Euler residuals, (c) degreewise exactness.
inline void resolution_certificate(const CertifySession& s, const ResolutionData& res,
                                   Certificate& cert) {
  const auto& spec = s.spec();
  const auto& D = s.D();
  int n = spec.n(), m = spec.m(), B = s.bound();
  auto ctx = spec.ctx();
  // (a)
  std::string bad;
  if (2 * m - 1 > B) throw InputError("resolution certificate needs bound >= 2m - 1");
  for (std::size_t i = 0; i < res.Ml.size() && bad.empty(); ++i)
    for (std::size_t j = 0; j < res.ord.size() && bad.empty(); ++j) {
      Element acc(ctx);
      for (std::size_t c = 0; c < res.Mr.size(); ++c) acc += res.Ml[i][c] * res.Mr[c][j];
      if (!D.member(acc))
        bad = "entry (" + std::to_string(res.ord[i] + 1) + "," + std::to_string(res.ord[j] + 1) +
              ") of M_l M_r is not in the ideal";
    }
  cert.add("resolution complex", bad.empty(), bad);
  // (b)
  auto d = [&](int t) -> long { return t < 0 ? 0 : static_cast<long>(D.dim(t)); };
  cert.euler.clear();
  std::string eb;
  for (int t = 0; t <= B; ++t) {
    long r = -(t == 0 ? 1 : 0) + d(t) - n * d(t - 1) + (n - 1) * (d(t - m) + d(t - m - 1)) -
             n * d(t - 2 * m) + d(t - 2 * m - 1);
    cert.euler.push_back(r);
    if (r != 0 && eb.empty()) eb = "degree " + std::to_string(t);
  }
  cert.add("euler residuals", eb.empty(), eb);
  // (c)
  std::vector<std::vector<Element>> X1, X4(1);
  for (int i : res.ord) {
    X1.push_back({Element::generator(ctx, i)});
    X4[0].push_back(Element::generator(ctx, i));
  }
  std::vector<int> s1(static_cast<std::size_t>(n), 1);
  std::vector<int> s2;
  for (int a = 0; a < n - 1; ++a) s2.push_back(m);
  for (int a = 0; a < n - 1; ++a) s2.push_back(m + 1);
  std::vector<int> s3(static_cast<std::size_t>(n), 2 * m);
  std::vector<int> s4{2 * m + 1};
  cert.homology.assign(5, {});
  std::string hb;
  for (int t = 0; t <= B; ++t) {
    long r1 = static_cast<long>(detail::map_rank(D, t, s1, X1));
    long r2 = static_cast<long>(detail::map_rank(D, t, s2, res.Mr));
    long r3 = static_cast<long>(detail::map_rank(D, t, s3, res.Ml));
    long r4 = static_cast<long>(detail::map_rank(D, t, s4, X4));
    long p0 = d(t), p1 = n * d(t - 1), p2 = (n - 1) * (d(t - m) + d(t - m - 1)),
         p3 = n * d(t - 2 * m), p4 = d(t - 2 * m - 1);
    long h[5] = {p0 - (t == 0 ? 1 : 0) - r1, p1 - r1 - r2, p2 - r2 - r3, p3 - r3 - r4, p4 - r4};
    for (int i = 0; i < 5; ++i) {
      cert.homology[static_cast<std::size_t>(i)].push_back(h[i]);
      if (h[i] != 0 && hb.empty())
        hb = "homology at position " + std::to_string(i) + " in degree " + std::to_string(t);
    }
  }
  cert.add("resolution exact", hb.empty(), hb);
}

/// nu_D = ((p_i q_i)^{-1}) preserves the relation spans and scales Omega.
inline void nakayama(const CertifySession& s, Certificate& cert) {
  const auto& spec = s.spec();
  int n = spec.n(), m = spec.m();
  auto ctx = spec.ctx();
  DiagonalMap<Scalar> nu, tau, nuA;
  for (int i = 0; i < n; ++i) {
    const Scalar& p = spec.p[static_cast<std::size_t>(i)];
    const Scalar& q = spec.sp.q[static_cast<std::size_t>(i)];
    nu.s.push_back((p * q).inv());
    tau.s.push_back(p.inv());
    nuA.s.push_back(q.inv());
  }
  cert.nakayama.clear();
  for (const auto& x : nu.s) cert.nakayama.push_back(CoeffOps<Scalar>::str(x, *ctx));
  std::string bad;
  for (int d : {m, m + 1}) {
    auto rels = spec.D.relations_of_degree(d);
    std::vector<Element> image;
    for (const auto& r : rels) image.push_back(nu.apply(r));
    if (!same_span(rels, image) && bad.empty()) bad = "degree " + std::to_string(d);
  }
  cert.add("nakayama preserves relations", bad.empty(), bad);
  try {
    Scalar lam = eigen_scale(nu, spec.omega);
    cert.omega_eigenvalue = CoeffOps<Scalar>::str(lam, *ctx);
    cert.add("nakayama scales omega", true);
  } catch (const MathError& e) {
    cert.add("nakayama scales omega", false, e.what());
  }
  std::string tb;
  for (int i = 0; i < n; ++i) {
    Element xi = Element::generator(ctx, i);
    if (!s.D().member(spec.omega * xi - tau.s[static_cast<std::size_t>(i)] * (xi * spec.omega)) &&
        tb.empty())
      tb = "generator x" + std::to_string(i + 1);
  }
  cert.add("omega x = tau(x) omega", tb.empty(), tb);
  bool composite = true;
  for (int i = 0; i < n; ++i)
    if (!(tau.inverse().s[static_cast<std::size_t>(i)] * nu.s[static_cast<std::size_t>(i)] ==
          nuA.s[static_cast<std::size_t>(i)]))
      composite = false;
  cert.add("nu_A = tau^-1 nu_D", composite);
}

/// hdet(nu_D) = lambda * hdet(tau|A) * hdet(nu_A), each factor read off as
/// an eigenvalue.
inline void hdet_certificate(const ExtensionSpec& spec, Certificate& cert) {
  int n = spec.n();
  auto ctx = spec.ctx();
  DiagonalMap<Scalar> tau, nuA;
  for (int i = 0; i < n; ++i) {
    tau.s.push_back(spec.p[static_cast<std::size_t>(i)].inv());
    nuA.s.push_back(spec.sp.q[static_cast<std::size_t>(i)].inv());
  }
  cert.hdet_factors.clear();
  try {
    Scalar lam = eigen_scale(nuA, spec.omega);
    Scalar htau = eigen_scale(tau, spec.sp.w);
    Scalar hnu = eigen_scale(nuA, spec.sp.w);
    for (const auto& x : {lam, htau, hnu}) cert.hdet_factors.push_back(CoeffOps<Scalar>::str(x, *ctx));
    Scalar h = lam * htau * hnu;
    cert.hdet = CoeffOps<Scalar>::str(h, *ctx);
    bool expected = lam == spec.qk() && htau == spec.qk().inv() && hnu.is_one();
    cert.add("hdet factors (q_k, q_k^-1, 1)", expected);
    cert.add("hdet = 1", h.is_one(), h.is_one() ? "" : "hdet = " + cert.hdet);
  } catch (const MathError& e) {
    cert.add("hdet = 1", false, e.what());
  }
}

/// Every check at once.
inline Certificate certify(const ExtensionSpec& spec, int bound,
                           CertifySession::Engines engines = CertifySession::Engines::both) {
  CertifySession s(spec, bound, engines);
  Certificate cert = new_certificate(s);
  auto good = is_good(spec.sp, spec.k, spec.p);
  cert.add("good tuple", good.good, good.reason);
  engine_agreement(s, cert);
  verify_hilbert(s, cert);
  omega_certificate(s, cert);
  resolution_certificate(s, build_resolution(spec), cert);
  nakayama(s, cert);
  hdet_certificate(spec, cert);
  return cert;
}

}  // namespace nce

#endif  // NCE_CERTIFY_HPP
