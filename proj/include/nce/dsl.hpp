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

// Text input for algebras, elements, scalars and tuples.
//
//   algebra s2_cubic
//   field cyclotomic 4
//   param a ; a := 4
//   gens x, y
//   w = x*x*y*y + a*x*y*y*x + a^2*y*y*x*x - a*y*x*x*y ;
//
// Relations may be given instead of w as `rels = r1 ; r2 ; ... ;`. Scalars
// are rationals p/q, z^k (zeta_N^k for the declared conductor), zeta_d^k,
// parameters a, a^2, a^{-1/2}, and parenthesised sums in field mode. `#`
// starts a comment. Files that declare parameters are read in unit mode.

#ifndef NCE_DSL_HPP
#define NCE_DSL_HPP

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "freealg.hpp"

namespace nce {

namespace dsl {

enum class Tok { ident, number, symbol, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  int line = 1;
  int col = 1;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      t.kind = Tok::ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::number;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == ':' && i + 1 < src.size() && src[i + 1] == '=') {
      t.kind = Tok::symbol;
      t.text = ":=";
      advance(2);
    } else if (std::string_view("+-*/^{}(),;=@").find(static_cast<char>(c)) !=
               std::string_view::npos) {
      t.kind = Tok::symbol;
      t.text = std::string(1, static_cast<char>(c));
      advance(1);
    } else if (c >= 0x80) {
      // UTF-8 minus sign and plus-minus are accepted as ASCII equivalents.
      std::string_view rest = src.substr(i);
      if (rest.starts_with("\xE2\x88\x92")) {
        t.kind = Tok::symbol;
        t.text = "-";
        i += 3;
        ++col;
      } else if (rest.starts_with("\xC2\xB1")) {
        t.kind = Tok::symbol;
        t.text = "\xC2\xB1";
        i += 2;
        ++col;
      } else {
        throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                         ": unexpected character");
      }
    } else {
      throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                       ": unexpected character '" + std::string(1, static_cast<char>(c)) + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

/// Recursive-descent reader over a token stream. Coefficients are built as
/// K = Scalar (field mode; parameters resolved through `assignment`) or
/// K = UnitScalar (unit mode).
class Parser {
 public:
  Parser(std::string_view src, ContextPtr ctx, const Assignment* assignment = nullptr)
      : toks_(tokenize(src)), ctx_(std::move(ctx)), assignment_(assignment) {}

  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) {
    throw InputError("line " + std::to_string(t.line) + ", column " + std::to_string(t.col) +
                     ": " + msg);
  }

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::end; }
  bool is_symbol(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Tok::symbol && peek(k).text == s;
  }
  bool accept(const std::string& s) {
    if (!is_symbol(s)) return false;
    ++pos_;
    return true;
  }
  void expect(const std::string& s) {
    if (!accept(s)) fail("expected '" + s + "'");
  }
  std::string expect_ident() {
    if (peek().kind != Tok::ident) fail("expected identifier");
    return toks_[pos_++].text;
  }
  long expect_int() {
    bool neg = accept("-");
    if (peek().kind != Tok::number) fail("expected integer");
    long v = std::stol(toks_[pos_++].text);
    return neg ? -v : v;
  }
  Rational expect_rational() {
    bool neg = accept("-");
    if (peek().kind != Tok::number) fail("expected number");
    Integer num(toks_[pos_++].text);
    Integer den(1);
    if (accept("/")) {
      if (peek().kind != Tok::number) fail("expected denominator");
      den = Integer(toks_[pos_++].text);
      if (den == 0) fail("zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  /// `^2`, `^-1`, `^{-1/2}`.
  Rational exponent() {
    if (!accept("^")) return Rational(1);
    if (accept("{")) {
      Rational e = expect_rational();
      expect("}");
      return e;
    }
    return Rational(expect_int());
  }

  void set_context(ContextPtr ctx) { ctx_ = std::move(ctx); }
  void set_assignment(const Assignment* a) { assignment_ = a; }
  std::size_t position() const { return pos_; }

  /// zeta_d or z (when z is not a generator). Returns the order d, or 0.
  int root_symbol(const std::string& name) const {
    if (name == "z" && (!ctx_ || ctx_->gen_index("z") < 0)) return ctx_ ? ctx_->conductor : 1;
    if (name.starts_with("zeta_") && name.size() > 5 &&
        std::all_of(name.begin() + 5, name.end(), [](char c) { return std::isdigit(c); }))
      return std::stoi(name.substr(5));
    return 0;
  }

  template <class K>
  FreeElement<K> poly() {
    FreeElement<K> out(ctx_);
    bool first = true;
    while (true) {
      bool neg = false;
      if (accept("-")) neg = true;
      else if (!accept("+") && !first) break;
      auto [w, c] = term<K>();
      out.add_term(w, neg ? K(-c) : c);
      first = false;
      if (!is_symbol("+") && !is_symbol("-")) break;
    }
    return out;
  }

  template <class K>
  std::pair<Word, K> term() {
    Word w;
    K c = CoeffOps<K>::one(*ctx_);
    bool any = false;
    do {
      any = true;
      const Token& t = peek();
      if (t.kind == Tok::number) {
        Rational q = expect_rational();
        c = c * rational_coeff<K>(q, t);
      } else if (is_symbol("(")) {
        if constexpr (std::is_same_v<K, Scalar>) {
          ++pos_;
          Scalar inner = scalar_sum();
          expect(")");
          c = c * paren_power(inner);
        } else {
          fail("parenthesised coefficients are not allowed in unit mode");
        }
      } else if (t.kind == Tok::ident) {
        int g = ctx_->gen_index(t.text);
        if (g >= 0) {
          ++pos_;
          w.push_back(g);
          if (is_symbol("^")) {
            Rational e = exponent();
            if (!is_integer(e) || e < 1) fail_at(t, "generator powers must be positive integers");
            for (long k = 1; k < e.get_num().get_si(); ++k) w.push_back(g);
          }
        } else {
          c = c * atom<K>();
        }
      } else {
        fail("expected a term");
      }
    } while (accept("*"));
    if (!any) fail("empty term");
    return {w, c};
  }

  /// A single coefficient atom: root of unity or parameter power.
  template <class K>
  K atom() {
    const Token& t = peek();
    std::string name = expect_ident();
    if (int d = root_symbol(name); d > 0) {
      Rational e = exponent();
      if (!is_integer(e)) fail_at(t, "root of unity exponents must be integers");
      Rational r(e.get_num(), d);
      r.canonicalize();
      if constexpr (std::is_same_v<K, Scalar>) {
        int n = ctx_->conductor;
        if (n % d != 0)
          fail_at(t, "zeta_" + std::to_string(d) + " is not in Q(zeta_" + std::to_string(n) + ")");
        return detail::torsion_in_field(r, n);
      } else {
        return UnitScalar::root_of_unity(r, ctx_->params.size());
      }
    }
    int p = ctx_->param_index(name);
    if (p < 0) fail_at(t, "unknown name '" + name + "'");
    Rational e = exponent();
    UnitScalar u = UnitScalar::parameter(static_cast<std::size_t>(p), ctx_->params.size(), e);
    if constexpr (std::is_same_v<K, Scalar>) {
      if (!assignment_) fail_at(t, "parameter '" + name + "' needs an assignment in field mode");
      try {
        return specialize(u, *assignment_, ctx_->params).promoted(ctx_->conductor);
      } catch (const Error& err) {
        fail_at(t, err.what());
      }
    } else {
      return u;
    }
  }

  template <class K>
  K rational_coeff(const Rational& q, const Token& t) {
    if constexpr (std::is_same_v<K, Scalar>) {
      return Scalar(q);
    } else {
      if (q == 1) return CoeffOps<K>::one(*ctx_);
      if (q == -1) return UnitScalar::minus_one(ctx_->params.size());
      fail_at(t, "coefficient mode mismatch: rational " + to_string(q) +
                     " is not allowed in unit mode");
    }
  }

  /// Optional exponent after a parenthesised scalar. Fractional powers take
  /// the principal root of the evaluated (rational) base.
  Scalar paren_power(const Scalar& base) {
    if (!is_symbol("^")) return base;
    const Token& t = peek();
    Rational e = exponent();
    if (is_integer(e)) return base.pow(e.get_num().get_si());
    if (!base.is_rational()) fail_at(t, "fractional power of a non-rational value");
    Assignment a;
    a.conductor = ctx_->conductor;
    a.set(0, base);
    try {
      return specialize(UnitScalar::parameter(0, 1, e), a, {"(" + base.str() + ")"});
    } catch (const Error& err) {
      fail_at(t, err.what());
    }
  }

  /// Field-mode scalar expression: sum of products of atoms.
  Scalar scalar_sum() {
    Scalar total;
    bool first = true;
    while (true) {
      bool neg = false;
      if (accept("-")) neg = true;
      else if (!accept("+") && !first) break;
      Scalar prod(1);
      do {
        const Token& t = peek();
        if (t.kind == Tok::number) prod *= Scalar(expect_rational());
        else if (accept("(")) {
          Scalar inner = scalar_sum();
          expect(")");
          prod *= paren_power(inner);
        } else if (t.kind == Tok::ident) prod *= atom<Scalar>();
        else fail("expected a scalar");
      } while (accept("*"));
      total += neg ? -prod : prod;
      first = false;
      if (!is_symbol("+") && !is_symbol("-")) break;
    }
    return total;
  }

  /// Unit expression: optional sign, product of atoms (and +-1), with an
  /// optional leading "(-a)^{e}" form meaning exp(pi i e) a^e.
  UnitScalar unit_product() {
    std::size_t np = ctx_->params.size();
    UnitScalar u(np);
    if (accept("-")) u *= UnitScalar::minus_one(np);
    do {
      const Token& t = peek();
      if (t.kind == Tok::number) {
        Rational q = expect_rational();
        u *= rational_coeff<UnitScalar>(q, t);
      } else if (accept("(")) {
        UnitScalar inner = unit_product();
        expect(")");
        u *= inner.pow(exponent());
      } else {
        u *= atom<UnitScalar>();
      }
    } while (accept("*"));
    return u;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ContextPtr ctx_;
  const Assignment* assignment_ = nullptr;
};

}  // namespace dsl

/// A parsed algebra file: the context, the file's parameter assignments, and
/// either a potential w or a relation list in the file's coefficient mode.
struct AlgebraSource {
  std::string name;
  ContextPtr ctx;
  Assignment assignment;
  std::vector<UnitElement> unit_w, unit_rels;
  std::vector<Element> field_w, field_rels;

  bool unit_mode() const { return ctx->mode == CoeffMode::unit; }
  bool has_w() const { return !unit_w.empty() || !field_w.empty(); }
};

template <class K>
FreeElement<K> parse_poly(std::string_view text, ContextPtr ctx,
                          const Assignment* assignment = nullptr) {
  dsl::Parser p(text, std::move(ctx), assignment);
  auto f = p.poly<K>();
  if (!p.at_end()) p.fail("unexpected trailing input");
  return f;
}

inline Element parse_element(std::string_view text, ContextPtr ctx,
                             const Assignment* assignment = nullptr) {
  return parse_poly<Scalar>(text, std::move(ctx), assignment);
}

inline Scalar parse_scalar(std::string_view text, ContextPtr ctx,
                           const Assignment* assignment = nullptr) {
  dsl::Parser p(text, std::move(ctx), assignment);
  Scalar s = p.scalar_sum();
  if (!p.at_end()) p.fail("unexpected trailing input");
  return s;
}

inline UnitScalar parse_unit(std::string_view text, ContextPtr ctx) {
  dsl::Parser p(text, std::move(ctx));
  UnitScalar u = p.unit_product();
  if (!p.at_end()) p.fail("unexpected trailing input");
  return u;
}

/// Splits "a, b, c" at top-level commas (commas inside (), {} are kept).
inline std::vector<std::string> split_top_level(std::string_view s, char sep = ',') {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& x : out) {
    auto b = x.find_first_not_of(" \t\n");
    auto e = x.find_last_not_of(" \t\n");
    x = b == std::string::npos ? "" : x.substr(b, e - b + 1);
  }
  return out;
}

/// Parses "a:=4, b:=2" (optional "@k" branch) into an assignment over ctx.
inline void parse_assignments(std::string_view text, const Context& ctx, Assignment& into) {
  if (text.find_first_not_of(" \t") == std::string_view::npos) return;
  auto fctx = make_context(ctx.gens, ctx.conductor, {}, CoeffMode::field);
  for (const auto& item : split_top_level(text, ',')) {
    auto pos = item.find(":=");
    if (pos == std::string::npos) throw InputError("assignment '" + item + "' lacks ':='");
    std::string name = split_top_level(item.substr(0, pos))[0];
    int idx = ctx.param_index(name);
    if (idx < 0) throw InputError("unknown parameter '" + name + "'");
    std::string rhs = item.substr(pos + 2);
    long branch = 0;
    if (auto at = rhs.find('@'); at != std::string::npos) {
      branch = std::stol(rhs.substr(at + 1));
      rhs = rhs.substr(0, at);
    }
    into.conductor = ctx.conductor;
    into.set(static_cast<std::size_t>(idx), parse_scalar(rhs, fctx), branch);
  }
}

inline AlgebraSource parse_algebra(std::string_view text) {
  using dsl::Tok;
  AlgebraSource src;
  int conductor = 1;
  std::vector<std::string> params, gens;
  std::vector<std::pair<std::string, std::string>> assigns;  // name, raw text
  std::vector<std::pair<std::string, std::vector<std::string>>> polys;  // kind, texts

  // First pass collects declarations; poly bodies are re-parsed once the
  // context is complete.
  auto toks = dsl::tokenize(text);
  std::size_t i = 0;
  auto fail = [&](const dsl::Token& t, const std::string& msg) { dsl::Parser::fail_at(t, msg); };
  auto slice_until_semicolon = [&](std::size_t from) {
    std::size_t j = from;
    while (toks[j].kind != Tok::end && !(toks[j].kind == Tok::symbol && toks[j].text == ";")) ++j;
    return j;
  };
  auto source_span = [&](std::size_t a, std::size_t b) {
    // Re-serialise tokens a..b-1; positions are kept via the original text.
    std::string s;
    for (std::size_t k = a; k < b; ++k) {
      if (!s.empty()) s += ' ';
      s += toks[k].text;
    }
    return s;
  };
  auto is_stmt_start = [&](std::size_t j) {
    const auto& t = toks[j];
    if (t.kind == Tok::end) return true;
    if (t.kind != Tok::ident) return false;
    if (t.text == "algebra" || t.text == "field" || t.text == "param" || t.text == "gens")
      return true;
    if ((t.text == "w" || t.text == "rels") && toks[j + 1].kind == Tok::symbol &&
        toks[j + 1].text == "=")
      return true;
    return false;
  };

  while (toks[i].kind != Tok::end) {
    const auto& t = toks[i];
    if (t.kind == Tok::symbol && t.text == ";") {
      ++i;
      continue;
    }
    if (t.kind != Tok::ident) fail(t, "expected a statement");
    if (t.text == "algebra") {
      if (toks[i + 1].kind != Tok::ident) fail(toks[i + 1], "expected algebra name");
      src.name = toks[i + 1].text;
      i += 2;
    } else if (t.text == "field") {
      if (toks[i + 1].text != "cyclotomic" || toks[i + 2].kind != Tok::number)
        fail(toks[i + 1], "expected 'cyclotomic <N>'");
      conductor = std::stoi(toks[i + 2].text);
      if (conductor <= 0) fail(toks[i + 2], "conductor must be positive");
      i += 3;
    } else if (t.text == "param") {
      ++i;
      while (true) {
        if (toks[i].kind != Tok::ident) fail(toks[i], "expected parameter name");
        params.push_back(toks[i].text);
        ++i;
        if (toks[i].kind == Tok::symbol && toks[i].text == ",") {
          ++i;
          continue;
        }
        break;
      }
      // optional "; name := scalar" assignments
      while (toks[i].kind == Tok::symbol && toks[i].text == ";" && toks[i + 1].kind == Tok::ident &&
             toks[i + 2].kind == Tok::symbol && toks[i + 2].text == ":=") {
        std::string name = toks[i + 1].text;
        std::size_t b = i + 3, e = b;
        while (toks[e].kind != Tok::end && !(toks[e].kind == Tok::symbol && toks[e].text == ";") &&
               !is_stmt_start(e))
          ++e;
        assigns.emplace_back(name, source_span(b, e));
        i = e;
      }
    } else if (t.text == "gens") {
      ++i;
      while (true) {
        if (toks[i].kind != Tok::ident) fail(toks[i], "expected generator name");
        gens.push_back(toks[i].text);
        ++i;
        if (toks[i].kind == Tok::symbol && toks[i].text == ",") {
          ++i;
          continue;
        }
        break;
      }
    } else if ((t.text == "w" || t.text == "rels") && toks[i + 1].text == "=") {
      std::string kind = t.text;
      std::vector<std::string> bodies;
      i += 2;
      while (true) {
        std::size_t e = slice_until_semicolon(i);
        if (e == i) fail(toks[i], "empty polynomial");
        bodies.push_back(source_span(i, e));
        i = e;
        if (toks[i].kind == Tok::symbol) ++i;  // the ';'
        if (kind == "w" || is_stmt_start(i)) break;
      }
      polys.emplace_back(kind, std::move(bodies));
    } else if (t.kind == Tok::ident && toks[i + 1].kind == Tok::symbol &&
               toks[i + 1].text == ":=") {
      std::size_t b = i + 2, e = slice_until_semicolon(b);
      assigns.emplace_back(t.text, source_span(b, e));
      i = e;
    } else {
      fail(t, "unknown statement '" + t.text + "'");
    }
  }
  if (gens.empty()) throw InputError("algebra file declares no generators");
  if (polys.empty()) throw InputError("algebra file declares neither w nor rels");
  CoeffMode mode = params.empty() ? CoeffMode::field : CoeffMode::unit;
  src.ctx = make_context(gens, conductor, params, mode);
  src.assignment.conductor = conductor;
  for (const auto& [name, rhs] : assigns) {
    int idx = src.ctx->param_index(name);
    if (idx < 0) throw InputError("assignment to unknown parameter '" + name + "'");
    std::string body = rhs;
    long branch = 0;
    if (auto at = body.find('@'); at != std::string::npos) {
      branch = std::stol(body.substr(at + 1));
      body = body.substr(0, at);
    }
    src.assignment.set(static_cast<std::size_t>(idx),
                       parse_scalar(body, field_context(*src.ctx)), branch);
  }
  for (const auto& [kind, bodies] : polys) {
    for (const auto& body : bodies) {
      if (mode == CoeffMode::unit) {
        auto f = parse_poly<UnitScalar>(body, src.ctx);
        (kind == "w" ? src.unit_w : src.unit_rels).push_back(std::move(f));
      } else {
        auto f = parse_poly<Scalar>(body, src.ctx);
        (kind == "w" ? src.field_w : src.field_rels).push_back(std::move(f));
      }
    }
  }
  if (src.unit_w.size() + src.field_w.size() > 1) throw InputError("more than one 'w ='");
  return src;
}

inline AlgebraSource load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_algebra(ss.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace nce

#endif  // NCE_DSL_HPP
