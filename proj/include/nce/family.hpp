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

// Fibers of the projective family of central extensions of a Calabi-Yau
// A(w), diagonal Zhang twists, and the change of generators matching a
// prescribed basis of derivatives.

#ifndef NCE_FAMILY_HPP
#define NCE_FAMILY_HPP

#include <sstream>
#include <string>
#include <vector>

#include "certify.hpp"

namespace nce {

struct Fiber {
  std::vector<Scalar> c;
  int pivot = 0;
  Presentation D;
  Element omega;
};

/// Relations {c_i f_j - c_j f_i : i < j} and {[x_i, f_j] : all i, j};
/// Omega is f at the first nonzero coordinate.
inline Fiber fiber(const Superpotential<Scalar>& sp, const std::vector<Scalar>& c) {
  int n = sp.n();
  if (static_cast<int>(c.size()) != n) throw InputError("fiber: point has the wrong number of coordinates");
  if (!sp.is_superpotential()) throw InputError("fiber: w must have identity twist");
  Fiber out;
  out.c = c;
  out.pivot = -1;
  for (int i = 0; i < n && out.pivot < 0; ++i)
    if (!c[static_cast<std::size_t>(i)].is_zero()) out.pivot = i;
  if (out.pivot < 0) throw InputError("fiber: all coordinates are zero");
  auto ctx = sp.w.context_ptr();
  std::vector<Element> rels;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      rels.push_back(c[static_cast<std::size_t>(i)] * sp.f[static_cast<std::size_t>(j)] -
                     c[static_cast<std::size_t>(j)] * sp.f[static_cast<std::size_t>(i)]);
  for (int i = 0; i < n; ++i) {
    Element xi = Element::generator(ctx, i);
    for (int j = 0; j < n; ++j) {
      const Element& fj = sp.f[static_cast<std::size_t>(j)];
      rels.push_back(xi * fj - fj * xi);
    }
  }
  std::string label = "D_(";
  for (int i = 0; i < n; ++i) label += (i ? ":" : "") + CoeffOps<Scalar>::str(c[static_cast<std::size_t>(i)], *ctx);
  out.D = Presentation(ctx, rels, label + ")");
  out.omega = sp.f[static_cast<std::size_t>(out.pivot)];
  return out;
}

inline std::vector<Scalar> coordinate_point(int n, int i) {
  std::vector<Scalar> c(static_cast<std::size_t>(n), Scalar(0));
  c[static_cast<std::size_t>(i)] = Scalar(1);
  return c;
}

struct FlatnessReport {
  std::vector<std::vector<Scalar>> points;
  std::vector<DegreeTable> tables;
  bool pass = true;

  std::string to_tsv(const Context& ctx) const {
    std::ostringstream os;
    os << "point";
    if (!tables.empty())
      for (int d = 0; d <= tables.front().bound; ++d) os << "\td" << d;
    os << '\n';
    for (std::size_t i = 0; i < points.size(); ++i) {
      os << '(';
      for (std::size_t j = 0; j < points[i].size(); ++j)
        os << (j ? ":" : "") << CoeffOps<Scalar>::str(points[i][j], ctx);
      os << ')';
      for (auto d : tables[i].dims) os << '\t' << d;
      os << '\n';
    }
    os << (pass ? "pass" : "fail") << '\n';
    return os.str();
  }
};

inline FlatnessReport flatness_probe(const Superpotential<Scalar>& sp,
                                     const std::vector<std::vector<Scalar>>& points, int bound,
                                     EngineKind kind = EngineKind::gb) {
  if (points.size() < 2) throw InputError("flatness_probe: at least two points are required");
  FlatnessReport r;
  r.points = points;
  for (const auto& c : points) {
    r.tables.push_back(hilbert_table(fiber(sp, c).D, bound, kind));
    if (!(r.tables.back().dims == r.tables.front().dims)) r.pass = false;
  }
  return r;
}

/// Monomial x_{j_1} ... x_{j_r} scales by prod_t s_{j_t}^(t-1).
inline Element zhang_twist(const Element& f, const DiagonalMap<Scalar>& sigma) {
  return f.rescale_words([&](int t, int letter) {
    return sigma.s[static_cast<std::size_t>(letter)].pow(t);
  });
}

inline Presentation zhang_twist(const Presentation& p, const DiagonalMap<Scalar>& sigma) {
  std::vector<Element> rels;
  for (const auto& r : p.relations) rels.push_back(zhang_twist(r, sigma));
  return Presentation(p.ctx, rels, "twisted " + p.label);
}

struct ZhangReport {
  Scalar hdet;
  std::vector<Scalar> p_twisted;
  bool pass = false;
  std::string witness;
  SpanComparison spans;
};

/// Ideal equality of the twisted D(w, p) and D(twisted w, p') to the bound,
/// with p'_i = p_i s_k s_i^m hdet(sigma)^{-1}.
inline ZhangReport zhang_certificate(const Superpotential<Scalar>& sp, const std::vector<Scalar>& p,
                                     int k, const DiagonalMap<Scalar>& sigma, int bound,
                                     EngineKind kind = EngineKind::gb) {
  int n = sp.n(), m = sp.m();
  if (static_cast<int>(sigma.s.size()) != n) throw InputError("zhang: sigma has the wrong size");
  for (const auto& s : sigma.s)
    if (s.is_zero()) throw InputError("zhang: sigma must be invertible");
  ZhangReport r;
  r.hdet = eigen_scale(sigma, sp.w);
  Scalar hinv = r.hdet.inv();
  const Scalar& sk = sigma.s[static_cast<std::size_t>(k)];
  for (int i = 0; i < n; ++i)
    r.p_twisted.push_back(p[static_cast<std::size_t>(i)] * sk *
                          sigma.s[static_cast<std::size_t>(i)].pow(m) * hinv);
  auto original = build_extension(sp, p, k);
  auto tw = recognize(zhang_twist(sp.w, sigma));
  ExtensionSpec target;
  try {
    target = build_extension(tw, r.p_twisted, k);
  } catch (const InputError& e) {
    r.witness = e.what();
    return r;
  }
  auto left = make_engine(zhang_twist(original.D, sigma), bound, kind);
  auto right = make_engine(target.D, bound, kind);
  r.spans = compare_ideals(*left, *right);
  r.pass = r.spans.equal;
  if (!r.pass) r.witness = "ideals differ in degree " + std::to_string(r.spans.first_difference);
  return r;
}

struct BasisChange {
  std::vector<std::vector<Scalar>> P;  // h_i = sum_j P_ij f_j
  std::vector<Element> generators;     // x'_i = sum_j x_j (P^{-1})_ji
  bool verified = false;
};

namespace detail {

inline std::vector<std::vector<Scalar>> invert(std::vector<std::vector<Scalar>> a) {
  std::size_t n = a.size();
  auto inv = std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Scalar(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw MathError("adapt_basis: the change of basis is singular");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Scalar s = a[col][col].inv();
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] = a[col][j] * s;
      inv[col][j] = inv[col][j] * s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col].is_zero()) continue;
      Scalar c = a[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= c * a[col][j];
        inv[i][j] -= c * inv[col][j];
      }
    }
  }
  return inv;
}

/// Replaces each letter x_j by images[j], a linear form.
inline Element substitute(const Element& f, const std::vector<Element>& images) {
  auto ctx = f.context_ptr();
  Element out(ctx);
  for (const auto& [w, c] : f.terms()) {
    Element t = Element::monomial(ctx, Word{}, c);
    for (int i = 0; i < w.size(); ++i) t = t * images[static_cast<std::size_t>(w[i])];
    out += t;
  }
  return out;
}

}  // namespace detail

/// Finds P with h = P f and generators x' = x P^{-1}, so that the cyclic
/// derivatives of w written in x' are the h_i.
inline BasisChange adapt_basis(const Superpotential<Scalar>& sp, const std::vector<Element>& h) {
  int n = sp.n();
  if (static_cast<int>(h.size()) != n) throw InputError("adapt_basis: expected one element per generator");
  if (!sp.is_superpotential()) throw InputError("adapt_basis: w must have identity twist");
  if (!same_span(h, sp.f)) throw MathError("adapt_basis: the elements do not span the derivative space");
  auto ctx = sp.w.context_ptr();
  // rows (f_j | e_j): word keys in block 1 sort above index keys in block 0
  using Key = std::pair<int, Word>;
  EchelonBasis<Key> basis;
  for (int j = 0; j < n; ++j) {
    SparseVec<Key> row;
    for (const auto& [w, c] : sp.f[static_cast<std::size_t>(j)].terms()) row.emplace(Key{1, w}, c);
    row.emplace(Key{0, Word::letter(j)}, Scalar(1));
    basis.insert(std::move(row));
  }
  BasisChange bc;
  bc.P.assign(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n), Scalar(0)));
  for (int i = 0; i < n; ++i) {
    SparseVec<Key> v;
    for (const auto& [w, c] : h[static_cast<std::size_t>(i)].terms()) v.emplace(Key{1, w}, c);
    basis.reduce(v);
    // what remains is -sum_j P_ij e_j
    for (const auto& [key, c] : v) {
      if (key.first != 0) throw DefectError("adapt_basis: reduction left a word component");
      bc.P[static_cast<std::size_t>(i)][static_cast<std::size_t>(key.second[0])] = -c;
    }
  }
  auto Pinv = detail::invert(bc.P);
  for (int i = 0; i < n; ++i) {
    Element g(ctx);
    for (int j = 0; j < n; ++j)
      g += Pinv[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * Element::generator(ctx, j);
    bc.generators.push_back(g);
  }
  // x = x' P: rewrite w and h in the new letters and differentiate
  std::vector<Element> old_in_new;
  for (int j = 0; j < n; ++j) {
    Element e(ctx);
    for (int i = 0; i < n; ++i)
      e += bc.P[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * Element::generator(ctx, i);
    old_in_new.push_back(e);
  }
  Element w_new = detail::substitute(sp.w, old_in_new);
  bool ok = true;
  for (int i = 0; i < n; ++i)
    if (!(w_new.left_derivative(i) == detail::substitute(h[static_cast<std::size_t>(i)], old_in_new)))
      ok = false;
  Element check(ctx);
  for (int i = 0; i < n; ++i) check += bc.generators[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i)];
  bc.verified = ok && check == sp.w;
  return bc;
}

}  // namespace nce

#endif  // NCE_FAMILY_HPP
