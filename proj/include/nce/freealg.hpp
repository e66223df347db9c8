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

#ifndef NCE_FREEALG_HPP
#define NCE_FREEALG_HPP

#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "units.hpp"
#include "word.hpp"

namespace nce {

enum class CoeffMode { field, unit };

/// Generators, coefficient field and formal parameters shared by all
/// elements of one algebra.
struct Context {
  std::vector<std::string> gens;
  int conductor = 1;
  std::vector<std::string> params;
  CoeffMode mode = CoeffMode::field;

  int num_gens() const { return static_cast<int>(gens.size()); }

  int gen_index(const std::string& name) const {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i] == name) return static_cast<int>(i);
    return -1;
  }
  int param_index(const std::string& name) const {
    for (std::size_t i = 0; i < params.size(); ++i)
      if (params[i] == name) return static_cast<int>(i);
    return -1;
  }

  friend bool operator==(const Context& a, const Context& b) {
    return a.gens == b.gens && a.conductor == b.conductor && a.params == b.params &&
           a.mode == b.mode;
  }
};

using ContextPtr = std::shared_ptr<const Context>;

inline ContextPtr make_context(std::vector<std::string> gens, int conductor = 1,
                               std::vector<std::string> params = {},
                               CoeffMode mode = CoeffMode::field) {
  if (gens.empty()) throw InputError("at least one generator is required");
  if (static_cast<int>(gens.size()) > Word::kMaxLetters)
    throw ResourceError("at most " + std::to_string(Word::kMaxLetters) + " generators");
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] == gens[j]) throw InputError("duplicate generator '" + gens[i] + "'");
  detail::lcm_conductor(conductor, 1);
  auto ctx = std::make_shared<Context>();
  ctx->gens = std::move(gens);
  ctx->conductor = conductor;
  ctx->params = std::move(params);
  ctx->mode = mode;
  return ctx;
}

/// Same generators and conductor, field coefficients, parameters dropped.
inline ContextPtr field_context(const Context& c) {
  return make_context(c.gens, c.conductor, {}, CoeffMode::field);
}

template <class K>
struct CoeffOps;

template <>
struct CoeffOps<Scalar> {
  static Scalar one(const Context&) { return Scalar(1); }
  static bool is_one(const Scalar& s) { return s.is_one(); }
  static bool is_minus_one(const Scalar& s) { return (-s).is_one(); }
  static std::string str(const Scalar& s, const Context& c) {
    return s.str(c.gen_index("z") >= 0 ? "zeta_" + std::to_string(c.conductor) : "z");
  }
  static bool atomic(const Scalar& s) { return s.is_monomial(); }
};

template <>
struct CoeffOps<UnitScalar> {
  static UnitScalar one(const Context& c) { return UnitScalar(c.params.size()); }
  static bool is_one(const UnitScalar& u) { return u.is_one(); }
  static bool is_minus_one(const UnitScalar& u) {
    return u == UnitScalar::minus_one(u.num_params());
  }
  static std::string str(const UnitScalar& u, const Context& c) { return u.str(c.params); }
  static bool atomic(const UnitScalar&) { return true; }
};

inline std::string word_str(const Word& w, const Context& c) {
  if (w.empty()) return "1";
  std::string out;
  for (int i = 0; i < w.size(); ++i) {
    if (i) out += "*";
    out += c.gens[static_cast<std::size_t>(w[i])];
  }
  return out;
}

/// A finitely supported linear combination of words with coefficients in K
/// (Scalar in field mode, UnitScalar in unit mode). Zero coefficients are
/// never stored. Unit-mode coefficients cannot be summed, so combining two
/// terms on the same word throws.
template <class K>
class FreeElement {
 public:
  using Terms = std::map<Word, K>;

  FreeElement() = default;
  explicit FreeElement(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static FreeElement monomial(ContextPtr ctx, const Word& w) {
    K one = CoeffOps<K>::one(*ctx);
    return monomial(std::move(ctx), w, one);
  }
  static FreeElement monomial(ContextPtr ctx, const Word& w, const K& c) {
    FreeElement f(std::move(ctx));
    f.add_term(w, c);
    return f;
  }
  static FreeElement generator(ContextPtr ctx, int i) {
    if (i < 0 || i >= ctx->num_gens()) throw InputError("generator index out of range");
    return monomial(std::move(ctx), Word::letter(i));
  }

  const ContextPtr& context_ptr() const { return ctx_; }
  const Context& context() const { return *ctx_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Word& w, const K& c) {
    if constexpr (requires(K a, K b) { a + b; }) {
      if (c.is_zero()) return;
      auto [it, inserted] = terms_.try_emplace(w, c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
      }
    } else {
      auto [it, inserted] = terms_.try_emplace(w, c);
      if (!inserted)
        throw InputError("unit-mode coefficients cannot be combined on the word " +
                         word_str(w, *ctx_));
    }
  }

  std::optional<K> coefficient(const Word& w) const {
    auto it = terms_.find(w);
    if (it == terms_.end()) return std::nullopt;
    return it->second;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    return terms_.begin()->first.size() == terms_.rbegin()->first.size();
  }
  /// Degree of a nonzero homogeneous element.
  std::optional<int> degree() const {
    if (terms_.empty() || !is_homogeneous()) return std::nullopt;
    return terms_.begin()->first.size();
  }
  int require_homogeneous(const std::string& where) const {
    auto d = degree();
    if (!d) throw InputError(where + ": element must be nonzero and homogeneous");
    return *d;
  }

  const Word& leading_word() const {
    if (terms_.empty()) throw MathError("leading word of zero");
    return terms_.rbegin()->first;
  }

  FreeElement operator-() const {
    FreeElement r(ctx_);
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
  }

  friend FreeElement operator+(const FreeElement& a, const FreeElement& b) {
    check_same(a, b);
    FreeElement r = a;
    if (!r.ctx_) r.ctx_ = b.ctx_;
    for (const auto& [w, c] : b.terms_) r.add_term(w, c);
    return r;
  }
  friend FreeElement operator-(const FreeElement& a, const FreeElement& b) { return a + (-b); }
  FreeElement& operator+=(const FreeElement& b) { return *this = *this + b; }
  FreeElement& operator-=(const FreeElement& b) { return *this = *this - b; }

  friend FreeElement operator*(const K& s, const FreeElement& f) {
    FreeElement r(f.ctx_);
    for (const auto& [w, c] : f.terms_) r.add_term(w, s * c);
    return r;
  }

  /// Concatenation product.
  friend FreeElement operator*(const FreeElement& a, const FreeElement& b) {
    check_same(a, b);
    FreeElement r(a.ctx_ ? a.ctx_ : b.ctx_);
    for (const auto& [u, c] : a.terms_)
      for (const auto& [v, d] : b.terms_) r.add_term(u + v, c * d);
    return r;
  }

  /// Keeps the words starting with x_i and strips that letter.
  FreeElement left_derivative(int i) const {
    check_index(i);
    FreeElement r(ctx_);
    for (const auto& [w, c] : terms_)
      if (!w.empty() && w.front() == i) r.terms_.emplace(w.drop_front(), c);
    return r;
  }
  /// Keeps the words ending with x_i and strips that letter.
  FreeElement right_derivative(int i) const {
    check_index(i);
    FreeElement r(ctx_);
    for (const auto& [w, c] : terms_)
      if (!w.empty() && w.back() == i) r.terms_.emplace(w.drop_back(), c);
    return r;
  }

  /// Applies fn to each coefficient; zero results are dropped.
  template <class K2, class Fn>
  FreeElement<K2> map_coefficients(ContextPtr ctx, Fn&& fn) const {
    FreeElement<K2> r(std::move(ctx));
    for (const auto& [w, c] : terms_) r.add_term(w, fn(c));
    return r;
  }

  /// Rescales the word x_{j1}...x_{jr} by prod_t weight(t, j_t).
  template <class Fn>
  FreeElement rescale_words(Fn&& weight) const {
    FreeElement r(ctx_);
    for (const auto& [w, c] : terms_) {
      K s = c;
      for (int t = 0; t < w.size(); ++t) s = s * weight(t, w[t]);
      r.add_term(w, s);
    }
    return r;
  }

  /// Canonical DSL text, terms in increasing deglex order.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      bool neg = false;
      std::string coeff;
      if (CoeffOps<K>::is_one(c)) {
      } else if (CoeffOps<K>::is_minus_one(c)) {
        neg = true;
      } else if (CoeffOps<K>::atomic(c)) {
        coeff = CoeffOps<K>::str(c, *ctx_);
        if (coeff.front() == '-') {
          neg = true;
          coeff = CoeffOps<K>::str(-c, *ctx_);
        }
      } else {
        coeff = "(" + CoeffOps<K>::str(c, *ctx_) + ")";
      }
      std::string body = word_str(w, *ctx_);
      if (!coeff.empty()) body = w.empty() ? coeff : coeff + "*" + body;
      if (first) out += neg ? "-" + body : body;
      else out += neg ? " - " + body : " + " + body;
      first = false;
    }
    return out;
  }

  friend bool operator==(const FreeElement& a, const FreeElement& b) {
    return a.terms_ == b.terms_;
  }
  friend std::ostream& operator<<(std::ostream& os, const FreeElement& f) { return os << f.str(); }

 private:
  static void check_same(const FreeElement& a, const FreeElement& b) {
    if (a.ctx_ && b.ctx_ && a.ctx_ != b.ctx_ && !(*a.ctx_ == *b.ctx_))
      throw InputError("elements belong to different contexts");
  }
  void check_index(int i) const {
    if (!ctx_ || i < 0 || i >= ctx_->num_gens())
      throw InputError("generator index " + std::to_string(i + 1) + " out of range");
  }

  ContextPtr ctx_;
  Terms terms_;
};

using Element = FreeElement<Scalar>;
using UnitElement = FreeElement<UnitScalar>;

/// Specializes every unit coefficient into Q(zeta_N).
inline Element specialize(const UnitElement& f, const Assignment& a, ContextPtr field_ctx) {
  const auto& names = f.context().params;
  return f.map_coefficients<Scalar>(std::move(field_ctx), [&](const UnitScalar& u) {
    return specialize(u, a, names).promoted(a.conductor);
  });
}

/// Embeds a field-mode element into a context with a larger conductor.
inline Element promote(const Element& f, ContextPtr target) {
  int n = target->conductor;
  return f.map_coefficients<Scalar>(std::move(target),
                                    [n](const Scalar& s) { return s.promoted(n); });
}

}  // namespace nce

#endif  // NCE_FREEALG_HPP
