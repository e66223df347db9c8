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

#ifndef NCE_UNITS_HPP
#define NCE_UNITS_HPP

#include <optional>
#include <string>
#include <vector>

#include "cyclotomic.hpp"

namespace nce {

/// Reduces a rational into [0, 1).
inline Rational frac_part(const Rational& r) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  Rational out = r - Rational(fl);
  out.canonicalize();
  return out;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Element of (Q/Z) + Q^k: the formal unit exp(2 pi i r) * prod_j t_j^{a_j}
/// over declared parameters t_1..t_k. Written multiplicatively.
class UnitScalar {
 public:
  UnitScalar() = default;
  explicit UnitScalar(std::size_t num_params) : exps_(num_params) {}

  static UnitScalar root_of_unity(const Rational& r, std::size_t num_params = 0) {
    UnitScalar u(num_params);
    u.torsion_ = frac_part(r);
    return u;
  }
  static UnitScalar minus_one(std::size_t num_params = 0) {
    return root_of_unity(Rational(1, 2), num_params);
  }
  static UnitScalar parameter(std::size_t index, std::size_t num_params,
                              const Rational& exponent = 1) {
    if (index >= num_params) throw InputError("parameter index out of range");
    UnitScalar u(num_params);
    u.exps_[index] = exponent;
    return u;
  }

  const Rational& torsion() const { return torsion_; }
  const std::vector<Rational>& exponents() const { return exps_; }
  std::size_t num_params() const { return exps_.size(); }

  bool is_one() const { return sgn(torsion_) == 0 && is_torsion(); }
  bool is_torsion() const {
    for (const auto& e : exps_)
      if (sgn(e) != 0) return false;
    return true;
  }

  friend UnitScalar operator*(const UnitScalar& a, const UnitScalar& b) {
    UnitScalar r = a;
    r.absorb(b, 1);
    return r;
  }
  friend UnitScalar operator/(const UnitScalar& a, const UnitScalar& b) {
    UnitScalar r = a;
    r.absorb(b, -1);
    return r;
  }
  UnitScalar& operator*=(const UnitScalar& b) { return absorb(b, 1); }

  UnitScalar inv() const { return pow(Rational(-1)); }
  UnitScalar operator-() const { return *this * minus_one(num_params()); }

  /// Scales every exponent, torsion included (principal branch).
  UnitScalar pow(const Rational& e) const {
    UnitScalar r = *this;
    r.torsion_ = frac_part(torsion_ * e);
    for (auto& x : r.exps_) x *= e;
    return r;
  }

  friend bool operator==(const UnitScalar& a, const UnitScalar& b) {
    if (a.torsion_ != b.torsion_) return false;
    std::size_t n = std::max(a.exps_.size(), b.exps_.size());
    for (std::size_t i = 0; i < n; ++i) {
      Rational x = i < a.exps_.size() ? a.exps_[i] : Rational(0);
      Rational y = i < b.exps_.size() ? b.exps_[i] : Rational(0);
      if (x != y) return false;
    }
    return true;
  }
  friend bool operator!=(const UnitScalar& a, const UnitScalar& b) { return !(a == b); }

  /// Text form: "-a^{1/2}", "zeta_3^2*b", "1". Parameters missing from
  /// `names` print as t1, t2, ...
  std::string str(const std::vector<std::string>& names = {}) const {
    std::string out;
    bool negative = false;
    if (torsion_ == Rational(1, 2)) {
      negative = true;
    } else if (sgn(torsion_) != 0) {
      out += "zeta_" + torsion_.get_den().get_str();
      if (torsion_.get_num() != 1) out += "^" + torsion_.get_num().get_str();
    }
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      const Rational& e = exps_[i];
      if (sgn(e) == 0) continue;
      if (!out.empty()) out += "*";
      out += i < names.size() ? names[i] : "t" + std::to_string(i + 1);
      if (e == 1) continue;
      if (is_integer(e) && sgn(e) > 0) out += "^" + to_string(e);
      else out += "^{" + to_string(e) + "}";
    }
    if (out.empty()) out = "1";
    return negative ? "-" + out : out;
  }

 private:
  UnitScalar& absorb(const UnitScalar& b, int sign) {
    if (exps_.size() != b.exps_.size()) {
      if (b.exps_.empty()) {
      } else if (exps_.empty()) {
        exps_.resize(b.exps_.size());
      } else {
        throw InputError("unit scalars over different parameter lists");
      }
    }
    torsion_ = frac_part(sign > 0 ? Rational(torsion_ + b.torsion_) : Rational(torsion_ - b.torsion_));
    for (std::size_t i = 0; i < b.exps_.size(); ++i) {
      if (sign > 0) exps_[i] += b.exps_[i];
      else exps_[i] -= b.exps_[i];
    }
    return *this;
  }

  Rational torsion_{0};
  std::vector<Rational> exps_;
};

/// Values for formal parameters, used to map units into Q(zeta_N).
///
/// A fractional power t^e of a rational value v is realised as
/// |v|^e * exp(2 pi i e theta) with theta = [v < 0]/2 + branch; the branch
/// integer selects among the conjugate roots and keeps the map
/// multiplicative.
struct Assignment {
  int conductor = 1;
  std::vector<std::optional<Scalar>> values;
  std::vector<long> branch;

  void set(std::size_t index, const Scalar& value, long branch_index = 0) {
    if (value.is_zero()) throw InputError("assigned parameter values must be nonzero");
    if (values.size() <= index) values.resize(index + 1);
    if (branch.size() <= index) branch.resize(index + 1, 0);
    values[index] = value;
    branch[index] = branch_index;
  }
  bool assigned(std::size_t index) const {
    return index < values.size() && values[index].has_value();
  }
};

namespace detail {

/// Exact t-th root of a nonnegative rational, if it exists.
inline std::optional<Rational> exact_root(const Rational& v, unsigned long t) {
  Integer num_root, den_root;
  if (mpz_root(num_root.get_mpz_t(), v.get_num_mpz_t(), t) == 0) return std::nullopt;
  if (mpz_root(den_root.get_mpz_t(), v.get_den_mpz_t(), t) == 0) return std::nullopt;
  Rational r(num_root, den_root);
  r.canonicalize();
  return r;
}

inline Scalar torsion_in_field(const Rational& r, int conductor) {
  Rational f = frac_part(r);
  Integer den = f.get_den();
  // Q(zeta_N) = Q(zeta_2N) for odd N, with zeta_2N = -zeta_N^((N+1)/2)
  if (conductor % 2 == 1 && conductor % den.get_si() != 0 && (2 * conductor) % den.get_si() == 0) {
    long k = f.get_num().get_si() * (2 * conductor / den.get_si());
    Scalar s = Scalar::zeta(conductor, k * ((conductor + 1) / 2));
    return k % 2 ? -s : s;
  }
  if (conductor % den.get_si() != 0 && sgn(f) != 0)
    throw MathError("root of unity of order " + den.get_str() +
                    " does not lie in Q(zeta_" + std::to_string(conductor) + ")");
  long k = sgn(f) == 0 ? 0 : f.get_num().get_si() * (conductor / den.get_si());
  return Scalar::zeta(conductor, k);
}

}  // namespace detail

/// Maps a unit into Q(zeta_N) under an assignment. A group homomorphism
/// wherever it is defined.
inline Scalar specialize(const UnitScalar& u, const Assignment& a,
                         const std::vector<std::string>& names = {}) {
  int n = a.conductor;
  Scalar out = detail::torsion_in_field(u.torsion(), n);
  for (std::size_t j = 0; j < u.num_params(); ++j) {
    const Rational& e = u.exponents()[j];
    if (sgn(e) == 0) continue;
    std::string name = j < names.size() ? names[j] : "t" + std::to_string(j + 1);
    if (!a.assigned(j)) throw InputError("unassigned parameter '" + name + "'");
    const Scalar& v = *a.values[j];
    if (is_integer(e)) {
      out *= v.pow(e.get_num().get_si());
      continue;
    }
    if (!v.is_rational())
      throw MathError("fractional power of non-rational value of '" + name + "'");
    Rational q = v.to_rational();
    unsigned long t = e.get_den().get_ui();
    auto root = detail::exact_root(abs(q), t);
    if (!root)
      throw MathError(name + "^{" + to_string(e) + "} is not realizable in Q(zeta_" +
                      std::to_string(n) + ") for " + name + " = " + to_string(q));
    long b = j < a.branch.size() ? a.branch[j] : 0;
    Rational theta = Rational(sgn(q) < 0 ? 1 : 0, 2) + Rational(b);
    theta.canonicalize();
    Rational phase = e * theta;
    phase.canonicalize();
    out *= Scalar(*root).pow(e.get_num().get_si()) * detail::torsion_in_field(phase, n);
  }
  if (n % out.conductor() != 0)
    throw MathError("specialized value " + out.str() + " does not lie in Q(zeta_" +
                    std::to_string(n) + ")");
  return out.promoted(n);
}

}  // namespace nce

#endif  // NCE_UNITS_HPP
