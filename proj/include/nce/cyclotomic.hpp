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

#ifndef NCE_CYCLOTOMIC_HPP
#define NCE_CYCLOTOMIC_HPP

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "limits.hpp"

namespace nce {

using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

namespace detail {

/// Coefficients (constant term first) of the n-th cyclotomic polynomial.
/// Computed once per n as (x^n - 1) / prod_{d | n, d < n} Phi_d.
inline const std::vector<long>& cyclotomic_polynomial(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const std::vector<long>>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return *it->second;
  }
  std::vector<long> num(static_cast<std::size_t>(n) + 1, 0);
  num[0] = -1;
  num[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto& div = cyclotomic_polynomial(d);
    // exact division by a monic polynomial
    std::size_t dn = num.size() - 1, dd = div.size() - 1;
    std::vector<long> quo(dn - dd + 1, 0);
    for (std::size_t i = dn + 1; i-- > dd;) {
      long c = num[i];
      quo[i - dd] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * div[j];
    }
    num = std::move(quo);
  }
  std::lock_guard lock(mu);
  auto [it, inserted] =
      cache.emplace(n, std::make_shared<const std::vector<long>>(std::move(num)));
  return *it->second;
}

inline int euler_phi(int n) {
  return static_cast<int>(cyclotomic_polynomial(n).size()) - 1;
}

inline int lcm_conductor(int a, int b) {
  long l = std::lcm(static_cast<long>(a), static_cast<long>(b));
  if (l > Limits::max_conductor.load())
    throw ResourceError("conductor " + std::to_string(l) +
                        " exceeds the configured maximum " +
                        std::to_string(Limits::max_conductor.load()));
  return static_cast<int>(l);
}

/// Reduces sum_i v[i] zeta_n^i to the power basis 1, zeta, ..., zeta^(phi-1).
inline void reduce_mod_cyclotomic(std::vector<Rational>& v, int n) {
  const auto& phi_poly = cyclotomic_polynomial(n);
  std::size_t deg = phi_poly.size() - 1;
  for (std::size_t i = v.size(); i-- > deg;) {
    if (sgn(v[i]) == 0) continue;
    Rational c = v[i];
    for (std::size_t j = 0; j < deg; ++j)
      if (phi_poly[j] != 0) v[i - deg + j] -= c * phi_poly[j];
    v[i] = 0;
  }
  v.resize(deg);
}

}  // namespace detail

/// An element of the cyclotomic field Q(zeta_N), stored in the power basis
/// modulo the N-th cyclotomic polynomial. Values with different conductors
/// are promoted to the lcm before combining.
class Scalar {
 public:
  Scalar() : c_(1) {}
  Scalar(long v) : c_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& v) : c_{v} {}  // NOLINT(google-explicit-constructor)

  /// zeta_n^k as an element of conductor n.
  static Scalar zeta(int n, long k) {
    if (n <= 0) throw InputError("root of unity order must be positive");
    detail::lcm_conductor(n, 1);
    long e = ((k % n) + n) % n;
    std::vector<Rational> v(static_cast<std::size_t>(std::max<long>(e + 1, 1)));
    v[static_cast<std::size_t>(e)] = 1;
    Scalar s;
    s.n_ = n;
    detail::reduce_mod_cyclotomic(v, n);
    s.c_ = std::move(v);
    return s;
  }

  /// Builds a value from raw power-basis coefficients (reduced here).
  static Scalar from_coefficients(int n, std::vector<Rational> coeffs) {
    detail::lcm_conductor(n, 1);
    Scalar s;
    s.n_ = n;
    coeffs.resize(std::max<std::size_t>(coeffs.size(), 1));
    detail::reduce_mod_cyclotomic(coeffs, n);
    coeffs.resize(static_cast<std::size_t>(detail::euler_phi(n)));
    s.c_ = std::move(coeffs);
    return s;
  }

  int conductor() const { return n_; }
  const std::vector<Rational>& coefficients() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return sgn(q) == 0; });
  }
  bool is_rational() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& q) { return sgn(q) == 0; });
  }
  bool is_one() const { return is_rational() && c_[0] == 1; }

  Rational to_rational() const {
    if (!is_rational()) throw MathError("scalar " + str() + " is not rational");
    return c_[0];
  }

  /// Re-expresses the value in Q(zeta_target); requires conductor() | target.
  Scalar promoted(int target) const {
    if (target == n_) return *this;
    if (target % n_ != 0)
      throw InputError("cannot embed conductor " + std::to_string(n_) + " into " +
                       std::to_string(target));
    detail::lcm_conductor(target, 1);
    int step = target / n_;
    std::vector<Rational> v(static_cast<std::size_t>(step) * c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (sgn(c_[i]) != 0) v[i * static_cast<std::size_t>(step)] = c_[i];
    return from_coefficients(target, std::move(v));
  }

  Scalar operator-() const {
    Scalar r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.n_ == b.n_) {
      Scalar r = a;
      for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
      return r;
    }
    int n = detail::lcm_conductor(a.n_, b.n_);
    return a.promoted(n) + b.promoted(n);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.n_ == 1) return b.scaled(a.c_[0]);
    if (b.n_ == 1) return a.scaled(b.c_[0]);
    if (a.n_ != b.n_) {
      int n = detail::lcm_conductor(a.n_, b.n_);
      return a.promoted(n) * b.promoted(n);
    }
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        if (sgn(b.c_[j]) != 0) v[i + j] += a.c_[i] * b.c_[j];
    }
    Scalar r;
    r.n_ = a.n_;
    detail::reduce_mod_cyclotomic(v, a.n_);
    r.c_ = std::move(v);
    return r;
  }

  Scalar inv() const;

  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  Scalar pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Scalar result(1), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.n_ == b.n_) return a.c_ == b.c_;
    int n = detail::lcm_conductor(a.n_, b.n_);
    return a.promoted(n).c_ == b.promoted(n).c_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Largest bit length among numerators and denominators.
  std::size_t bit_size() const {
    std::size_t bits = 0;
    for (const auto& q : c_) {
      if (sgn(q) == 0) continue;
      bits = std::max({bits, mpz_sizeinbase(q.get_num_mpz_t(), 2),
                       mpz_sizeinbase(q.get_den_mpz_t(), 2)});
    }
    return bits;
  }

  /// Canonical text: rationals as p/q, z^k for powers of zeta_N, terms in
  /// increasing power. Example: "1/2-3*z+z^2". `root` replaces "z" when a
  /// generator already uses that name.
  std::string str(const std::string& root = "z") const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      const Rational& q = c_[i];
      if (sgn(q) == 0) continue;
      bool neg = sgn(q) < 0;
      Rational mag = abs(q);
      if (!out.empty()) out += neg ? "-" : "+";
      else if (neg) out += "-";
      if (i == 0) {
        out += to_string(mag);
        continue;
      }
      if (mag != 1) out += to_string(mag) + "*";
      out += root;
      if (i > 1) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.str() << " in Q(zeta_" << s.conductor() << ")";
  }

  /// True when str() is a single signed term (needs no parentheses).
  bool is_monomial() const {
    return std::count_if(c_.begin(), c_.end(), [](const Rational& q) { return sgn(q) != 0; }) <= 1;
  }

 private:
  Scalar scaled(const Rational& s) const {
    Scalar r = *this;
    for (auto& q : r.c_) q *= s;
    return r;
  }

  int n_ = 1;
  std::vector<Rational> c_;
};

inline Scalar Scalar::inv() const {
  if (is_zero()) throw MathError("division by zero");
  if (n_ == 1) return Scalar(Rational(1) / c_[0]);
  // Solve (multiplication-by-this) * x = 1 over Q.
  std::size_t d = c_.size();
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1));
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<Rational> col(d + j);
    for (std::size_t i = 0; i < d; ++i) col[i + j] = c_[i];
    detail::reduce_mod_cyclotomic(col, n_);
    for (std::size_t i = 0; i < d; ++i) m[i][j] = col[i];
  }
  m[0][d] = 1;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    while (piv < d && sgn(m[piv][col]) == 0) ++piv;
    if (piv == d) throw DefectError("singular multiplication matrix in cyclotomic inverse");
    std::swap(m[piv], m[col]);
    Rational p = m[col][col];
    for (auto& e : m[col]) e /= p;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = col; c <= d; ++c) m[r][c] -= f * m[col][c];
    }
  }
  Scalar r;
  r.n_ = n_;
  r.c_.resize(d);
  for (std::size_t i = 0; i < d; ++i) r.c_[i] = m[i][d];
  return r;
}

}  // namespace nce

#endif  // NCE_CYCLOTOMIC_HPP
