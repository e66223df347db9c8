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

#ifndef NCE_SUPERPOTENTIAL_HPP
#define NCE_SUPERPOTENTIAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "freealg.hpp"
#include "linalg.hpp"

namespace nce {

/// f_i: words of w starting with x_i, that letter stripped.
template <class K>
std::vector<FreeElement<K>> cyclic_derivatives(const FreeElement<K>& w) {
  int d = w.require_homogeneous("cyclic_derivatives");
  if (d < 2) throw InputError("cyclic_derivatives: degree must be at least 2");
  std::vector<FreeElement<K>> f;
  for (int i = 0; i < w.context().num_gens(); ++i) f.push_back(w.left_derivative(i));
  return f;
}

/// g_i: words of w ending with x_i, that letter stripped.
template <class K>
std::vector<FreeElement<K>> trailing_derivatives(const FreeElement<K>& w) {
  std::vector<FreeElement<K>> g;
  for (int i = 0; i < w.context().num_gens(); ++i) g.push_back(w.right_derivative(i));
  return g;
}

/// The diagonal Q with g_i = q_i f_i, i.e. w = sum_i q_i f_i x_i.
template <class K>
std::vector<K> twist_of(const FreeElement<K>& w) {
  auto f = cyclic_derivatives(w);
  auto g = trailing_derivatives(w);
  const Context& ctx = w.context();
  std::vector<K> q;
  for (int i = 0; i < ctx.num_gens(); ++i) {
    const auto& fi = f[static_cast<std::size_t>(i)];
    const auto& gi = g[static_cast<std::size_t>(i)];
    const std::string& name = ctx.gens[static_cast<std::size_t>(i)];
    if (fi.is_zero() && gi.is_zero()) {
      q.push_back(CoeffOps<K>::one(ctx));
      continue;
    }
    if (fi.is_zero() || gi.is_zero())
      throw MathError("no diagonal twist: exactly one of the leading and trailing " + name +
                      "-derivatives vanishes");
    if (fi.size() != gi.size())
      throw MathError("no diagonal twist: trailing " + name +
                      "-derivative is not a multiple of the leading one");
    std::optional<K> ratio;
    for (const auto& [word, c] : gi.terms()) {
      auto fc = fi.coefficient(word);
      if (!fc)
        throw MathError("no diagonal twist: word " + word_str(word, ctx) +
                        " occurs in the trailing " + name + "-derivative only");
      K r = c / *fc;
      if (!ratio) ratio = r;
      else if (!(*ratio == r))
        throw MathError("no diagonal twist: trailing " + name +
                        "-derivative is not a multiple of the leading one");
    }
    q.push_back(*ratio);
  }
  return q;
}

template <class K>
bool is_identity_twist(const std::vector<K>& q) {
  for (const auto& x : q)
    if (!CoeffOps<K>::is_one(x)) return false;
  return true;
}

/// A twisted superpotential w with its derivative bundles and twist.
template <class K>
struct Superpotential {
  FreeElement<K> w;
  std::vector<FreeElement<K>> f, g;
  std::vector<K> q;
  int degree = 0;  // m + 1

  int m() const { return degree - 1; }
  int n() const { return w.context().num_gens(); }
  const Context& context() const { return w.context(); }
  bool is_superpotential() const { return is_identity_twist(q); }
};

/// Recognizes w as a twisted superpotential; throws MathError if no diagonal
/// twist exists.
template <class K>
Superpotential<K> recognize(const FreeElement<K>& w) {
  Superpotential<K> s;
  s.w = w;
  s.degree = w.require_homogeneous("recognize");
  s.f = cyclic_derivatives(w);
  s.g = trailing_derivatives(w);
  s.q = twist_of(w);
  FreeElement<K> lhs(w.context_ptr()), rhs(w.context_ptr());
  for (int i = 0; i < s.n(); ++i) {
    auto xi = FreeElement<K>::generator(w.context_ptr(), i);
    lhs += xi * s.f[static_cast<std::size_t>(i)];
    rhs += s.q[static_cast<std::size_t>(i)] * (s.f[static_cast<std::size_t>(i)] * xi);
  }
  if (!(lhs == w) || !(rhs == w)) throw DefectError("bundle identity failed for w");
  return s;
}

/// n x n matrix of elements of degree m - 1 with x^t M x = w.
template <class K>
struct CoeffMatrix {
  std::vector<std::vector<FreeElement<K>>> entries;
  const FreeElement<K>& operator()(int i, int j) const {
    return entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
};

/// M_ij strips the leading x_i and trailing x_j; checks M x = f and, when a
/// twist is supplied, x^t M = (Q f)^t.
template <class K>
CoeffMatrix<K> coefficient_matrix(const FreeElement<K>& w, const std::vector<K>* q = nullptr) {
  auto f = cyclic_derivatives(w);
  auto ctx = w.context_ptr();
  int n = ctx->num_gens();
  CoeffMatrix<K> M;
  M.entries.assign(static_cast<std::size_t>(n), {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      M.entries[static_cast<std::size_t>(i)].push_back(
          f[static_cast<std::size_t>(i)].right_derivative(j));
  for (int i = 0; i < n; ++i) {
    FreeElement<K> row(ctx), col(ctx);
    for (int j = 0; j < n; ++j) {
      row += M(i, j) * FreeElement<K>::generator(ctx, j);
      col += FreeElement<K>::generator(ctx, j) * M(j, i);
    }
    if (!(row == f[static_cast<std::size_t>(i)]))
      throw DefectError("coefficient matrix: M x != f");
    if (q && !(col == (*q)[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(i)]))
      throw DefectError("coefficient matrix: x^t M != (Qf)^t");
  }
  return M;
}

/// x_i -> s_i x_i.
template <class K>
struct DiagonalMap {
  std::vector<K> s;

  FreeElement<K> apply(const FreeElement<K>& f) const {
    return f.rescale_words([&](int, int letter) { return s[static_cast<std::size_t>(letter)]; });
  }
  DiagonalMap inverse() const {
    DiagonalMap r;
    for (const auto& x : s) r.s.push_back(x.inv());
    return r;
  }
  friend DiagonalMap operator*(const DiagonalMap& a, const DiagonalMap& b) {
    DiagonalMap r;
    for (std::size_t i = 0; i < a.s.size(); ++i) r.s.push_back(a.s[i] * b.s[i]);
    return r;
  }
};

/// Product of the scaling factors over the letters of a word.
template <class K>
K word_scale(const DiagonalMap<K>& sigma, const Word& w, const Context& ctx) {
  K c = CoeffOps<K>::one(ctx);
  for (int t = 0; t < w.size(); ++t) c = c * sigma.s[static_cast<std::size_t>(w[t])];
  return c;
}

/// Eigenvalue of sigma^{(x) d} on a homogeneous f. Throws MathError naming
/// two monomials with different scale factors when f is not an eigenvector.
template <class K>
K eigen_scale(const DiagonalMap<K>& sigma, const FreeElement<K>& f) {
  f.require_homogeneous("eigen_scale");
  const Context& ctx = f.context();
  if (static_cast<int>(sigma.s.size()) != ctx.num_gens())
    throw InputError("eigen_scale: diagonal map has the wrong size");
  std::optional<K> c;
  Word first;
  for (const auto& [w, coeff] : f.terms()) {
    K s = word_scale(sigma, w, ctx);
    if (!c) {
      c = s;
      first = w;
    } else if (!(*c == s)) {
      throw MathError("not an eigenvector: " + word_str(first, ctx) + " scales by " +
                      CoeffOps<K>::str(*c, ctx) + " but " + word_str(w, ctx) + " scales by " +
                      CoeffOps<K>::str(s, ctx));
    }
  }
  return *c;
}

inline SparseVec<Word> to_sparse(const Element& f) { return {f.terms().begin(), f.terms().end()}; }

inline Element from_sparse(const SparseVec<Word>& v, ContextPtr ctx) {
  Element f(std::move(ctx));
  for (const auto& [w, c] : v) f.add_term(w, c);
  return f;
}

inline bool linearly_independent(const std::vector<Element>& fs) {
  EchelonBasis<Word> b;
  for (const auto& f : fs)
    if (!b.insert(to_sparse(f))) return false;
  return true;
}

/// Degreewise span equality of two lists of homogeneous elements.
inline bool same_span(const std::vector<Element>& a, const std::vector<Element>& b) {
  EchelonBasis<Word> ea, eb;
  for (const auto& f : a) ea.insert(to_sparse(f));
  for (const auto& f : b) eb.insert(to_sparse(f));
  if (ea.rank() != eb.rank()) return false;
  for (const auto& f : b)
    if (!ea.contains(to_sparse(f))) return false;
  return true;
}

/// The element w spanning (V (x) R) cap (R (x) V), scaled so that its
/// smallest word has coefficient 1. Throws MathError unless the
/// intersection is one-dimensional.
inline Element superpotential_from_relations(const std::vector<Element>& R) {
  if (R.empty()) throw InputError("superpotential_from_relations: no relations");
  auto ctx = R.front().context_ptr();
  int m = R.front().require_homogeneous("superpotential_from_relations");
  for (const auto& r : R)
    if (r.require_homogeneous("superpotential_from_relations") != m)
      throw InputError("superpotential_from_relations: relations of mixed degree");
  if (!linearly_independent(R))
    throw InputError("superpotential_from_relations: relations are linearly dependent");
  int n = ctx->num_gens();
  // Zassenhaus: rows (u | u) for u in V(x)R and (v | 0) for v in R(x)V;
  // block 1 keys sort above block 0, so rows with pivot in block 0 span
  // the intersection.
  using Key = std::pair<int, Word>;
  EchelonBasis<Key> basis;
  for (const auto& r : R)
    for (int i = 0; i < n; ++i) {
      Element u = Element::generator(ctx, i) * r;
      SparseVec<Key> row;
      for (const auto& [w, c] : u.terms()) {
        row.emplace(Key{1, w}, c);
        row.emplace(Key{0, w}, c);
      }
      basis.insert(std::move(row));
    }
  for (const auto& r : R)
    for (int i = 0; i < n; ++i) {
      Element v = r * Element::generator(ctx, i);
      SparseVec<Key> row;
      for (const auto& [w, c] : v.terms()) row.emplace(Key{1, w}, c);
      basis.insert(std::move(row));
    }
  std::vector<Element> inter;
  for (const auto& row : basis.rows()) {
    if (row.back().first.first != 0) continue;
    Element e(ctx);
    for (const auto& [k, c] : row) e.add_term(k.second, c);
    inter.push_back(std::move(e));
  }
  if (inter.size() != 1)
    throw MathError("(V (x) R) cap (R (x) V) has dimension " + std::to_string(inter.size()) +
                    ", expected 1");
  Element w = inter.front();
  Scalar lead = w.terms().begin()->second.inv();
  return lead * w;
}

}  // namespace nce

#endif  // NCE_SUPERPOTENTIAL_HPP
