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

// Degree-truncated computation in a graded quotient TV/(R).
//
// Two independent engines compute the same normal words and normal forms:
//
//  * LinearAlgebraEngine: A_d = (A_{d-1} (x) V) / span{ b r : b a basis word
//    of A_{d-deg r}, r in R }, with right multiplication by a generator
//    given by one fully reduced echelon basis per degree.
//  * GroebnerEngine: truncated Buchberger completion over overlap
//    ambiguities, one degree at a time, with reduction by rewriting.
//
// Normal words are the complement of the leading words of the ideal in
// deglex order for both, so normal forms coincide exactly.

#ifndef NCE_QUOTIENT_HPP
#define NCE_QUOTIENT_HPP

#include <memory>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "linalg.hpp"
#include "superpotential.hpp"

namespace nce {

/// Generators plus homogeneous field-mode relations.
struct Presentation {
  ContextPtr ctx;
  std::vector<Element> relations;
  std::string label;

  Presentation() = default;
  Presentation(ContextPtr c, std::vector<Element> rels, std::string name = {})
      : ctx(std::move(c)), label(std::move(name)) {
    if (ctx->mode != CoeffMode::field)
      throw InputError("presentations need field coefficients; supply an assignment");
    for (auto& r : rels) {
      if (r.is_zero()) continue;
      int d = r.require_homogeneous("presentation relation");
      if (d == 0) throw InputError("constant relation");
      relations.push_back(std::move(r));
    }
  }

  int num_gens() const { return ctx->num_gens(); }

  std::vector<Element> relations_of_degree(int d) const {
    std::vector<Element> out;
    for (const auto& r : relations)
      if (*r.degree() == d) out.push_back(r);
    return out;
  }

  std::string str() const {
    std::string out;
    for (const auto& r : relations) out += r.str() + " ;\n";
    return out;
  }
};

struct DegreeTable {
  int bound = 0;
  std::vector<std::size_t> dims;
  std::string engine;

  std::string to_tsv() const {
    std::ostringstream os;
    for (std::size_t d = 0; d < dims.size(); ++d) os << d << '\t' << dims[d] << '\n';
    return os.str();
  }
  nlohmann::json to_json() const {
    return {{"bound", bound}, {"engine", engine}, {"dims", dims}};
  }
  friend bool operator==(const DegreeTable& a, const DegreeTable& b) { return a.dims == b.dims; }
};

class QuotientEngine {
 public:
  virtual ~QuotientEngine() = default;
  virtual std::string name() const = 0;

  int bound() const { return bound_; }
  const Presentation& presentation() const { return pres_; }
  const ContextPtr& context() const { return pres_.ctx; }

  /// Normal words of degree d in increasing deglex order.
  const std::vector<Word>& normal_words(int d) const {
    check_degree(d);
    return normal_[static_cast<std::size_t>(d)];
  }
  std::size_t dim(int d) const {
    if (d < 0) return 0;
    return normal_words(d).size();
  }

  /// Unique representative supported on normal words.
  Element normal_form(const Element& f) const {
    Element out(pres_.ctx);
    std::map<int, Element> parts;
    for (const auto& [w, c] : f.terms()) {
      auto [it, ins] = parts.try_emplace(w.size(), pres_.ctx);
      it->second.add_term(w, c);
    }
    for (const auto& [d, part] : parts) {
      check_degree(d);
      out += reduce_homogeneous(part);
    }
    return out;
  }
  bool member(const Element& f) const { return normal_form(f).is_zero(); }

  DegreeTable table() const {
    DegreeTable t;
    t.bound = bound_;
    t.engine = name();
    for (int d = 0; d <= bound_; ++d) t.dims.push_back(dim(d));
    return t;
  }

  /// Fully reduced echelon basis of the degree-d part of the ideal:
  /// w - NF(w) for each leading word w.
  std::vector<Element> ideal_basis(int d) const {
    check_degree(d);
    std::set<Word> normal(normal_words(d).begin(), normal_words(d).end());
    std::vector<Element> out;
    for (const auto& w : all_words(pres_.num_gens(), d)) {
      if (normal.count(w)) continue;
      Element e = Element::monomial(pres_.ctx, w);
      out.push_back(e - normal_form(e));
    }
    return out;
  }

 protected:
  QuotientEngine(Presentation p, int bound) : pres_(std::move(p)), bound_(bound) {
    if (bound < 0) throw InputError("bound must be nonnegative");
    if (bound > Word::kMaxLength)
      throw ResourceError("bound exceeds the maximal word length " +
                          std::to_string(Word::kMaxLength));
  }
  void check_degree(int d) const {
    if (d < 0 || d > bound_)
      throw InputError("degree " + std::to_string(d) + " exceeds the truncation bound " +
                       std::to_string(bound_));
  }
  void check_size(std::size_t count) const {
    if (count > Limits::max_words.load())
      throw ResourceError("degree component spans " + std::to_string(count) +
                          " words, above the configured cap");
  }
  virtual Element reduce_homogeneous(const Element& f) const = 0;

  Presentation pres_;
  int bound_ = 0;
  std::vector<std::vector<Word>> normal_;
};

class LinearAlgebraEngine final : public QuotientEngine {
 public:
  LinearAlgebraEngine(Presentation p, int bound) : QuotientEngine(std::move(p), bound) {
    int n = pres_.num_gens();
    normal_.push_back({Word{}});
    steps_.emplace_back();
    for (int d = 1; d <= bound_; ++d) {
      check_size(normal_[static_cast<std::size_t>(d - 1)].size() * static_cast<std::size_t>(n));
      steps_.emplace_back();
      auto& step = steps_.back();
      for (const auto& r : pres_.relations) {
        int s = *r.degree();
        if (s > d) continue;
        std::vector<Element> tails;
        for (int x = 0; x < n; ++x) tails.push_back(r.right_derivative(x));
        for (const auto& b : normal_[static_cast<std::size_t>(d - s)]) {
          SparseVec<Word> start{{b, Scalar(1)}};
          SparseVec<Word> raw;
          for (int x = 0; x < n; ++x) {
            if (tails[static_cast<std::size_t>(x)].is_zero()) continue;
            auto v = nf_mul(start, d - s, tails[static_cast<std::size_t>(x)]);
            for (auto& [w, c] : v) raw.emplace(w + Word::letter(x), std::move(c));
          }
          step.insert(std::move(raw));
        }
      }
      std::vector<Word> next;
      for (const auto& w : normal_[static_cast<std::size_t>(d - 1)])
        for (int x = 0; x < n; ++x) {
          Word wx = w + Word::letter(x);
          if (!step.is_pivot(wx)) next.push_back(wx);
        }
      std::sort(next.begin(), next.end());
      normal_.push_back(std::move(next));
    }
  }

  std::string name() const override { return "la"; }

 protected:
  Element reduce_homogeneous(const Element& f) const override {
    SparseVec<Word> one{{Word{}, Scalar(1)}};
    return from_sparse(nf_mul(one, 0, f), pres_.ctx);
  }

 private:
  /// Images of w x (w normal of degree d-1) reduced to normal words of
  /// degree d.
  SparseVec<Word> rho(const SparseVec<Word>& v, int x, int d) const {
    SparseVec<Word> out;
    for (const auto& [w, c] : v) out.emplace(w + Word::letter(x), c);
    steps_[static_cast<std::size_t>(d)].reduce(out);
    return out;
  }

  /// Normal form of v * p, with v supported on normal words of degree e and
  /// p homogeneous.
  SparseVec<Word> nf_mul(const SparseVec<Word>& v, int e, const Element& p) const {
    if (p.is_zero() || v.empty()) return {};
    int s = *p.degree();
    if (s == 0) {
      Scalar c = p.terms().begin()->second;
      SparseVec<Word> out;
      for (const auto& [w, a] : v) out.emplace(w, a * c);
      return out;
    }
    SparseVec<Word> out;
    for (int x = 0; x < pres_.num_gens(); ++x) {
      Element tail = p.right_derivative(x);
      if (tail.is_zero()) continue;
      auto part = rho(nf_mul(v, e, tail), x, e + s);
      for (auto& [w, c] : part) {
        auto [it, ins] = out.try_emplace(w, c);
        if (!ins) {
          it->second += c;
          if (it->second.is_zero()) out.erase(it);
        }
      }
    }
    return out;
  }

  std::vector<EchelonBasis<Word>> steps_;
};

class GroebnerEngine final : public QuotientEngine {
 public:
  struct Rule {
    Word lead;
    std::vector<std::pair<Word, Scalar>> poly;  // lead included, coefficient 1
  };

  GroebnerEngine(Presentation p, int bound) : QuotientEngine(std::move(p), bound) {
    int n = pres_.num_gens();
    normal_.push_back({Word{}});
    for (int d = 1; d <= bound_; ++d) {
      check_size(normal_[static_cast<std::size_t>(d - 1)].size() * static_cast<std::size_t>(n));
      EchelonBasis<Word> fresh;
      for (const auto& r : pres_.relations)
        if (*r.degree() == d) fresh.insert(reduce_map(to_sparse(r)));
      std::size_t existing = rules_.size();
      for (std::size_t a = 0; a < existing; ++a)
        for (std::size_t b = 0; b < existing; ++b) {
          const Word& u = rules_[a].lead;
          const Word& v = rules_[b].lead;
          int o = u.size() + v.size() - d;
          if (o < 1 || o >= u.size() || o >= v.size()) continue;
          if (!(u.suffix(o) == v.prefix(o))) continue;
          ++overlaps_;
          SparseVec<Word> s;
          Word right = v.drop_front(o), left = u.drop_back(o);
          for (const auto& [w, c] : rules_[a].poly) add_to(s, w + right, c);
          for (const auto& [w, c] : rules_[b].poly) add_to(s, left + w, -c);
          fresh.insert(reduce_map(std::move(s)));
        }
      for (const auto& row : fresh.rows()) {
        Rule rule{row.back().first, row};
        leads_.emplace(rule.lead, rules_.size());
        lead_lengths_.insert(rule.lead.size());
        rules_.push_back(std::move(rule));
      }
      std::vector<Word> next;
      for (const auto& w : normal_[static_cast<std::size_t>(d - 1)])
        for (int x = 0; x < n; ++x) {
          Word wx = w + Word::letter(x);
          bool ok = true;
          for (int len : lead_lengths_) {
            if (len > wx.size()) break;
            if (leads_.count(wx.suffix(len))) {
              ok = false;
              break;
            }
          }
          if (ok) next.push_back(wx);
        }
      std::sort(next.begin(), next.end());
      normal_.push_back(std::move(next));
    }
  }

  std::string name() const override { return "gb"; }
  const std::vector<Rule>& rules() const { return rules_; }
  std::size_t overlaps_processed() const { return overlaps_; }

 protected:
  Element reduce_homogeneous(const Element& f) const override {
    return from_sparse(reduce_map(to_sparse(f)), pres_.ctx);
  }

 private:
  static void add_to(SparseVec<Word>& v, const Word& w, const Scalar& c) {
    auto [it, ins] = v.try_emplace(w, c);
    if (!ins) {
      it->second += c;
      if (it->second.is_zero()) v.erase(it);
    }
  }

  /// (rule index, position) of some leading word inside w.
  std::optional<std::pair<std::size_t, int>> find_divisor(const Word& w) const {
    for (int len : lead_lengths_) {
      if (len > w.size()) break;
      for (int pos = 0; pos + len <= w.size(); ++pos)
        if (auto it = leads_.find(w.subword(pos, len)); it != leads_.end())
          return std::make_pair(it->second, pos);
    }
    return std::nullopt;
  }

  SparseVec<Word> reduce_map(SparseVec<Word> v) const {
    auto it = v.end();
    while (it != v.begin()) {
      --it;
      auto hit = find_divisor(it->first);
      if (!hit) continue;
      Word t = it->first;
      Scalar c = it->second;
      const Rule& r = rules_[hit->first];
      Word left = t.prefix(hit->second);
      Word right = t.drop_front(hit->second + r.lead.size());
      for (const auto& [w, a] : r.poly) add_to(v, left + w + right, -(c * a));
      it = v.upper_bound(t);
    }
    return v;
  }

  std::vector<Rule> rules_;
  std::unordered_map<Word, std::size_t, WordHash> leads_;
  std::set<int> lead_lengths_;
  std::size_t overlaps_ = 0;
};

enum class EngineKind { la, gb };

inline EngineKind parse_engine(const std::string& s) {
  if (s == "la") return EngineKind::la;
  if (s == "gb") return EngineKind::gb;
  throw InputError("unknown engine '" + s + "' (expected la or gb)");
}

inline std::unique_ptr<QuotientEngine> make_engine(const Presentation& p, int bound,
                                                   EngineKind kind) {
  if (kind == EngineKind::la) return std::make_unique<LinearAlgebraEngine>(p, bound);
  return std::make_unique<GroebnerEngine>(p, bound);
}

/// Throws DefectError when two engines disagree on any normal-word set.
inline void check_agreement(const QuotientEngine& a, const QuotientEngine& b) {
  int bound = std::min(a.bound(), b.bound());
  for (int d = 0; d <= bound; ++d)
    if (a.normal_words(d) != b.normal_words(d))
      throw DefectError("engines disagree at degree " + std::to_string(d) + " for " +
                        a.presentation().label + ": " + std::to_string(a.dim(d)) + " (" +
                        a.name() + ") vs " + std::to_string(b.dim(d)) + " (" + b.name() + ")");
}

inline DegreeTable hilbert_table(const Presentation& p, int bound, EngineKind kind) {
  return make_engine(p, bound, kind)->table();
}

/// Whether two presentations generate the same ideal in every degree up
/// to `bound`, with the first differing degree when they do not.
struct SpanComparison {
  bool equal = true;
  int first_difference = -1;
  std::vector<std::size_t> dims_a, dims_b;
};

inline SpanComparison compare_ideals(const QuotientEngine& a, const QuotientEngine& b) {
  SpanComparison out;
  int bound = std::min(a.bound(), b.bound());
  for (int d = 0; d <= bound; ++d) {
    out.dims_a.push_back(a.dim(d));
    out.dims_b.push_back(b.dim(d));
  }
  auto mark = [&](int d) {
    if (out.equal || d < out.first_difference) out.first_difference = d;
    out.equal = false;
  };
  for (int d = 0; d <= bound; ++d)
    if (a.normal_words(d) != b.normal_words(d)) mark(d);
  for (const auto& r : b.presentation().relations)
    if (*r.degree() <= bound && !a.member(r)) mark(*r.degree());
  for (const auto& r : a.presentation().relations)
    if (*r.degree() <= bound && !b.member(r)) mark(*r.degree());
  return out;
}

}  // namespace nce

#endif  // NCE_QUOTIENT_HPP
