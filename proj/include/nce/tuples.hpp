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

// Good-tuple systems: for the omitted index k, unknown units p_1..p_n with
// p_k = q_k and prod_t p_{j_t} = q_k for every monomial x_{j_1}...x_{j_l}
// of w. The unknowns live in the divisible group (Q/Z) + Q^params, so the
// system is solved exactly through a Smith form of its integer matrix.

#ifndef NCE_TUPLES_HPP
#define NCE_TUPLES_HPP

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "superpotential.hpp"

namespace nce {

/// FNV-1a 64-bit hash as 16 hex digits.
inline std::string content_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xF];
  return out;
}

template <class K>
std::string superpotential_hash(const Superpotential<K>& sp) {
  std::string key;
  for (const auto& g : sp.context().gens) key += g + ",";
  key += "|" + std::to_string(sp.context().conductor) + "|" + sp.w.str();
  return content_hash(key);
}

namespace detail {

/// Writes a nonzero rational as sign * prod p^e, appending new primes.
inline void factor_rational(const Rational& r, std::vector<Integer>& primes,
                            std::vector<Rational>& exps) {
  auto factor_int = [&](Integer v, int sign) {
    Integer p = 2;
    long steps = 0;
    while (v > 1) {
      if (p * p > v) p = v;
      if (++steps > 2'000'000) throw ResourceError("rational too hard to factor: " + v.get_str());
      if (v % p == 0) {
        std::size_t idx = 0;
        while (idx < primes.size() && primes[idx] != p) ++idx;
        if (idx == primes.size()) {
          primes.push_back(p);
          exps.push_back(0);
        }
        while (v % p == 0) {
          v /= p;
          exps[idx] += sign;
        }
      }
      p = p == 2 ? Integer(3) : Integer(p + 2);
    }
  };
  factor_int(abs(r.get_num()), 1);
  factor_int(r.get_den(), -1);
}

/// Splits s = r * zeta_N^j (r rational). Returns nullopt when s is not of
/// this form.
inline std::optional<std::pair<Rational, Rational>> rational_times_root(const Scalar& s) {
  int n = s.conductor();
  for (int j = 0; j < std::max(n, 1); ++j) {
    Scalar t = s * Scalar::zeta(n, -j);
    if (t.is_rational() && !t.is_zero()) {
      Rational torsion(j, n);
      torsion.canonicalize();
      return std::make_pair(t.to_rational(), torsion);
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Twist entries as units. Unit-mode inputs pass through; field-mode
/// entries must be rational multiples of roots of unity and each prime
/// dividing a rational part becomes a formal parameter named by the prime.
struct UnitTwist {
  std::vector<std::string> params;
  std::vector<UnitScalar> q;
};

inline UnitTwist unit_twist(const Superpotential<UnitScalar>& sp) {
  return {sp.context().params, sp.q};
}

inline UnitTwist unit_twist(const Superpotential<Scalar>& sp) {
  std::vector<Integer> primes;
  std::vector<std::vector<Rational>> exps;
  std::vector<Rational> tors;
  for (const auto& q : sp.q) {
    auto split = detail::rational_times_root(q);
    if (!split)
      throw MathError("twist entry " + q.str() +
                      " is not a rational multiple of a root of unity; declare parameters");
    std::vector<Rational> e(primes.size());
    detail::factor_rational(split->first, primes, e);
    exps.push_back(e);
    Rational t = split->second + Rational(sgn(split->first) < 0 ? 1 : 0, 2);
    tors.push_back(frac_part(t));
  }
  UnitTwist out;
  for (const auto& p : primes) out.params.push_back(p.get_str());
  for (std::size_t i = 0; i < sp.q.size(); ++i) {
    UnitScalar u = UnitScalar::root_of_unity(tors[i], primes.size());
    for (std::size_t j = 0; j < exps[i].size(); ++j)
      if (sgn(exps[i][j]) != 0) u *= UnitScalar::parameter(j, primes.size(), exps[i][j]);
    out.q.push_back(u);
  }
  return out;
}

/// One row per distinct equation prod_a p_a^{rows[r][a]} = rhs[r].
struct ConstraintSystem {
  int n = 0;
  int k = 0;  // omitted index, 0-based
  std::vector<std::string> params;
  std::vector<std::vector<long>> rows;
  std::vector<UnitScalar> rhs;
  std::string w_hash;

  void add(std::vector<long> row, const UnitScalar& r) {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i] == row && rhs[i] == r) return;
    rows.push_back(std::move(row));
    rhs.push_back(r);
  }
};

/// Equations read off the support monomials of w, plus p_k = q_k.
template <class K>
ConstraintSystem goodness_system(const Superpotential<K>& sp, int k) {
  int n = sp.n();
  if (k < 0 || k >= n) throw InputError("omitted index out of range");
  UnitTwist ut = unit_twist(sp);
  ConstraintSystem sys;
  sys.n = n;
  sys.k = k;
  sys.params = ut.params;
  sys.w_hash = superpotential_hash(sp);
  std::vector<long> pk(static_cast<std::size_t>(n), 0);
  pk[static_cast<std::size_t>(k)] = 1;
  sys.add(pk, ut.q[static_cast<std::size_t>(k)]);
  for (const auto& [w, c] : sp.w.terms()) {
    std::vector<long> row(static_cast<std::size_t>(n), 0);
    for (int t = 0; t < w.size(); ++t) ++row[static_cast<std::size_t>(w[t])];
    sys.add(row, ut.q[static_cast<std::size_t>(k)]);
  }
  return sys;
}

/// The same system built from the entries of M: q_k = p_i p_j prod p_{l_t}
/// for each monomial x_{l_1}...x_{l_{m-1}} of M_ij.
template <class K>
ConstraintSystem goodness_system_from_matrix(const Superpotential<K>& sp, int k) {
  int n = sp.n();
  if (k < 0 || k >= n) throw InputError("omitted index out of range");
  UnitTwist ut = unit_twist(sp);
  auto M = coefficient_matrix(sp.w, &sp.q);
  ConstraintSystem sys;
  sys.n = n;
  sys.k = k;
  sys.params = ut.params;
  sys.w_hash = superpotential_hash(sp);
  std::vector<long> pk(static_cast<std::size_t>(n), 0);
  pk[static_cast<std::size_t>(k)] = 1;
  sys.add(pk, ut.q[static_cast<std::size_t>(k)]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [w, c] : M(i, j).terms()) {
        std::vector<long> row(static_cast<std::size_t>(n), 0);
        ++row[static_cast<std::size_t>(i)];
        ++row[static_cast<std::size_t>(j)];
        for (int t = 0; t < w.size(); ++t) ++row[static_cast<std::size_t>(w[t])];
        sys.add(row, ut.q[static_cast<std::size_t>(k)]);
      }
  return sys;
}

namespace detail {

inline UnitScalar unit_power(const UnitScalar& u, const Integer& e) {
  return u.pow(Rational(e));
}

/// prod_j v_j^{L[i][j]}.
inline std::vector<UnitScalar> apply_int(const IntMatrix& L, const std::vector<UnitScalar>& v,
                                         std::size_t np) {
  std::vector<UnitScalar> out;
  for (const auto& row : L) {
    UnitScalar acc(np);
    for (std::size_t j = 0; j < v.size(); ++j)
      if (row[j] != 0) acc *= unit_power(v[j], row[j]);
    out.push_back(acc);
  }
  return out;
}

/// Does v lie in F G^f (F an n x f integer matrix, G divisible)?
inline bool in_image(const IntMatrix& F, std::size_t f, const std::vector<UnitScalar>& v,
                     std::size_t np) {
  if (f == 0) {
    for (const auto& x : v)
      if (!x.is_one()) return false;
    return true;
  }
  SmithForm s = smith_normal_form(F, f);
  auto lv = apply_int(s.L, v, np);
  for (std::size_t i = s.rank; i < lv.size(); ++i)
    if (!lv[i].is_one()) return false;
  return true;
}

/// Is the rational vector d in the Q-span of the columns of F?
inline bool in_rational_span(const IntMatrix& F, std::size_t f, const std::vector<Rational>& d) {
  Integer den = 1;
  for (const auto& x : d) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> di;
  for (const auto& x : d) di.push_back(Integer(x * den));
  SmithForm s = smith_normal_form(F, f);
  for (std::size_t i = (f == 0 ? 0 : s.rank); i < d.size(); ++i) {
    Integer acc = 0;
    for (std::size_t j = 0; j < d.size(); ++j)
      acc += (f == 0 ? (i == j ? Integer(1) : Integer(0)) : s.L[i][j]) * di[j];
    if (acc != 0) return false;
  }
  return true;
}

inline void check_denominator(const Rational& r, const std::string& what) {
  if (r.get_den() > Limits::max_exponent_denominator.load())
    throw ResourceError("exponent denominator bound breached: " + what + " needs denominator " +
                        r.get_den().get_str() + " > " +
                        std::to_string(Limits::max_exponent_denominator.load()));
}

}  // namespace detail

/// All solutions of a system: particular * torsion coset * prod lambda_j^{d_j}
/// with lambda_j ranging over the whole unit group.
struct SolutionFamily {
  int n = 0;
  int k = 0;
  std::vector<std::string> params;
  std::vector<UnitScalar> particular;
  std::vector<std::vector<Integer>> directions;
  std::vector<std::vector<Rational>> torsion;  // entries in [0, 1)
  std::string w_hash;

  IntMatrix direction_matrix() const {
    IntMatrix F(static_cast<std::size_t>(n), std::vector<Integer>(directions.size(), 0));
    for (std::size_t j = 0; j < directions.size(); ++j)
      for (std::size_t a = 0; a < static_cast<std::size_t>(n); ++a) F[a][j] = directions[j][a];
    return F;
  }

  bool contains_point(const std::vector<UnitScalar>& p) const {
    if (static_cast<int>(p.size()) != n) return false;
    IntMatrix F = direction_matrix();
    for (const auto& t : torsion) {
      std::vector<UnitScalar> delta;
      for (std::size_t a = 0; a < p.size(); ++a)
        delta.push_back(p[a] / (particular[a] * UnitScalar::root_of_unity(t[a], params.size())));
      if (detail::in_image(F, directions.size(), delta, params.size())) return true;
    }
    return false;
  }

  /// Whole-family containment: the base point is a member and every
  /// direction lies in the rational span of ours.
  bool contains_family(const std::vector<UnitScalar>& base,
                       const std::vector<std::vector<Rational>>& dirs) const {
    if (!contains_point(base)) return false;
    IntMatrix F = direction_matrix();
    for (const auto& d : dirs)
      if (!detail::in_rational_span(F, directions.size(), d)) return false;
    return true;
  }

  std::vector<std::string> lambda_names() const {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < directions.size(); ++j)
      out.push_back(directions.size() == 1 ? "l" : "l" + std::to_string(j + 1));
    return out;
  }

  /// One tuple per torsion coset, free directions written with l, l1, ...
  std::vector<std::string> describe() const {
    auto names = params;
    auto lam = lambda_names();
    names.insert(names.end(), lam.begin(), lam.end());
    std::size_t np = names.size();
    std::vector<std::string> out;
    for (const auto& t : torsion) {
      std::string s = "(";
      for (std::size_t a = 0; a < static_cast<std::size_t>(n); ++a) {
        UnitScalar u = UnitScalar::root_of_unity(particular[a].torsion() + t[a], np);
        for (std::size_t j = 0; j < particular[a].exponents().size(); ++j)
          if (sgn(particular[a].exponents()[j]) != 0)
            u *= UnitScalar::parameter(j, np, particular[a].exponents()[j]);
        for (std::size_t j = 0; j < directions.size(); ++j)
          if (directions[j][a] != 0)
            u *= UnitScalar::parameter(params.size() + j, np, Rational(directions[j][a]));
        if (a) s += ", ";
        s += u.str(names);
      }
      out.push_back(s + ")");
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["k"] = k + 1;
    j["w_hash"] = w_hash;
    j["params"] = params;
    std::vector<std::string> part;
    for (const auto& u : particular) part.push_back(u.str(params));
    j["particular"] = part;
    auto dirs = nlohmann::json::array();
    for (const auto& d : directions) {
      std::vector<std::string> row;
      for (const auto& x : d) row.push_back(x.get_str());
      dirs.push_back(row);
    }
    j["directions"] = dirs;
    auto tors = nlohmann::json::array();
    for (const auto& t : torsion) {
      std::vector<std::string> row;
      for (const auto& x : t) row.push_back(to_string(x));
      tors.push_back(row);
    }
    j["torsion"] = tors;
    j["members"] = describe();
    return j;
  }
};

/// Complete solution set of a good-tuple system; empty when inconsistent.
inline std::vector<SolutionFamily> solve_units(const ConstraintSystem& sys) {
  std::size_t n = static_cast<std::size_t>(sys.n);
  std::size_t np = sys.params.size();
  IntMatrix C;
  for (const auto& r : sys.rows) {
    std::vector<Integer> row;
    for (long x : r) row.emplace_back(x);
    C.push_back(row);
  }
  SmithForm s = smith_normal_form(C, n);
  auto c = detail::apply_int(s.L, sys.rhs, np);
  for (std::size_t i = s.rank; i < c.size(); ++i)
    if (!c[i].is_one()) return {};
  // z_i = c_i^{1/s_i} * zeta_{s_i}^{j}, free z for columns >= rank
  std::vector<UnitScalar> z(n, UnitScalar(np));
  std::size_t cosets = 1;
  for (std::size_t i = 0; i < s.rank; ++i) {
    z[i] = c[i].pow(Rational(Integer(1), s.diagonal[i]));
    cosets *= s.diagonal[i].get_ui();
    if (cosets > 100000) throw ResourceError("too many torsion cosets");
  }
  SolutionFamily fam;
  fam.n = sys.n;
  fam.k = sys.k;
  fam.params = sys.params;
  fam.w_hash = sys.w_hash;
  fam.particular = detail::apply_int(s.R, z, np);
  for (std::size_t j = s.rank; j < n; ++j) {
    std::vector<Integer> d;
    for (std::size_t a = 0; a < n; ++a) d.push_back(s.R[a][j]);
    fam.directions.push_back(d);
  }
  IntMatrix F = fam.direction_matrix();
  std::vector<std::size_t> digit(s.rank, 0);
  while (true) {
    std::vector<Rational> t(n, Rational(0));
    for (std::size_t a = 0; a < n; ++a) {
      Rational acc = 0;
      for (std::size_t i = 0; i < s.rank; ++i)
        acc += Rational(s.R[a][i]) * Rational(Integer(digit[i]), s.diagonal[i]);
      t[a] = frac_part(acc);
    }
    bool fresh = true;
    for (const auto& old : fam.torsion) {
      std::vector<UnitScalar> diff;
      for (std::size_t a = 0; a < n; ++a)
        diff.push_back(UnitScalar::root_of_unity(t[a] - old[a], np));
      if (detail::in_image(F, fam.directions.size(), diff, np)) {
        fresh = false;
        break;
      }
    }
    if (fresh) fam.torsion.push_back(t);
    std::size_t i = 0;
    while (i < s.rank && ++digit[i] == s.diagonal[i].get_ui()) digit[i++] = 0;
    if (i == s.rank) break;
  }
  for (std::size_t a = 0; a < n; ++a) {
    detail::check_denominator(fam.particular[a].torsion(), "p" + std::to_string(a + 1));
    for (const auto& e : fam.particular[a].exponents())
      detail::check_denominator(e, "p" + std::to_string(a + 1));
    for (const auto& t : fam.torsion) detail::check_denominator(frac_part(fam.particular[a].torsion() + t[a]), "torsion");
  }
  return {fam};
}

template <class K>
struct GoodnessResult {
  bool good = false;
  std::optional<Word> witness;
  std::string reason;
};

/// Condition p_k = q_k and prod_t p_{j_t} = q_k on every monomial of w.
template <class K>
GoodnessResult<K> is_good(const Superpotential<K>& sp, int k, const std::vector<K>& p) {
  GoodnessResult<K> r;
  int n = sp.n();
  if (k < 0 || k >= n) throw InputError("omitted index out of range");
  if (static_cast<int>(p.size()) != n) throw InputError("tuple has the wrong length");
  const K& qk = sp.q[static_cast<std::size_t>(k)];
  if (!(p[static_cast<std::size_t>(k)] == qk)) {
    r.reason = "p_k differs from q_k";
    return r;
  }
  DiagonalMap<K> phi{p};
  for (const auto& [w, c] : sp.w.terms()) {
    if (!(word_scale(phi, w, sp.context()) == qk)) {
      r.witness = w;
      r.reason = "monomial " + word_str(w, sp.context()) + " scales by " +
                 CoeffOps<K>::str(word_scale(phi, w, sp.context()), sp.context()) +
                 " instead of q_k";
      return r;
    }
  }
  r.good = true;
  return r;
}

}  // namespace nce

#endif  // NCE_TUPLES_HPP
