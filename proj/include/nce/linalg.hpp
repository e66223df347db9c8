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

#ifndef NCE_LINALG_HPP
#define NCE_LINALG_HPP

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"

namespace nce {

/// Sparse vector over Q(zeta_N) with ordered keys.
template <class Key>
using SparseVec = std::map<Key, Scalar>;

template <class Key>
void axpy(SparseVec<Key>& y, const Scalar& a, const std::vector<std::pair<Key, Scalar>>& x) {
  for (const auto& [k, v] : x) {
    Scalar t = a * v;
    auto [it, inserted] = y.try_emplace(k, t);
    if (!inserted) it->second += t;
    if (it->second.is_zero()) y.erase(it);
  }
}

/// Fully reduced row echelon basis of a subspace. The pivot of each row is
/// its largest key and has coefficient 1; no row mentions another row's
/// pivot, so reduction is a single pass.
template <class Key>
class EchelonBasis {
 public:
  using Row = std::vector<std::pair<Key, Scalar>>;  // ascending keys, pivot last

  std::size_t rank() const { return rows_.size(); }
  const std::vector<Row>& rows() const { return rows_; }
  bool is_pivot(const Key& k) const { return pivots_.count(k) != 0; }
  const std::map<Key, std::size_t>& pivots() const { return pivots_; }

  /// Reduces v in place modulo the span; the result mentions no pivot.
  void reduce(SparseVec<Key>& v) const {
    std::vector<std::pair<std::size_t, Scalar>> hits;
    for (const auto& [k, c] : v)
      if (auto it = pivots_.find(k); it != pivots_.end()) hits.emplace_back(it->second, c);
    for (const auto& [r, c] : hits) axpy(v, -c, rows_[r]);
  }

  bool contains(SparseVec<Key> v) const {
    reduce(v);
    return v.empty();
  }

  /// Adds v to the span. Returns false when v was already in it.
  bool insert(SparseVec<Key> v) {
    reduce(v);
    if (v.empty()) return false;
    Scalar lead_inv = v.rbegin()->second.inv();
    Row row;
    row.reserve(v.size());
    for (auto& [k, c] : v) {
      Scalar s = c * lead_inv;
      if (s.bit_size() > static_cast<std::size_t>(Limits::max_coefficient_bits.load()))
        throw ResourceError("coefficient size exceeds the configured bit cap");
      row.emplace_back(k, std::move(s));
    }
    const Key& piv = row.back().first;
    for (auto& other : rows_) {
      auto it = std::lower_bound(other.begin(), other.end(), piv,
                                 [](const auto& e, const Key& k) { return e.first < k; });
      if (it == other.end() || !(it->first == piv)) continue;
      Scalar c = it->second;
      SparseVec<Key> tmp(other.begin(), other.end());
      axpy(tmp, -c, row);
      other.assign(tmp.begin(), tmp.end());
    }
    pivots_.emplace(piv, rows_.size());
    rows_.push_back(std::move(row));
    return true;
  }

 private:
  std::vector<Row> rows_;
  std::map<Key, std::size_t> pivots_;
};

/// Rank of a list of sparse vectors.
template <class Key>
std::size_t rank_of(const std::vector<SparseVec<Key>>& vs) {
  EchelonBasis<Key> b;
  for (const auto& v : vs) b.insert(v);
  return b.rank();
}

using IntMatrix = std::vector<std::vector<Integer>>;

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

/// Smith normal form S = L A R with L, R unimodular, S diagonal and each
/// diagonal entry dividing the next.
struct SmithForm {
  IntMatrix S, L, R;
  std::size_t rank = 0;
  std::vector<Integer> diagonal;  // first `rank` entries, all positive
};

inline SmithForm smith_normal_form(const IntMatrix& A, std::size_t cols) {
  std::size_t rows = A.size();
  SmithForm f;
  f.S = A;
  for (auto& r : f.S) r.resize(cols, 0);
  f.L = identity_matrix(rows);
  f.R = identity_matrix(cols);
  auto& S = f.S;
  auto row_op = [&](std::size_t dst, std::size_t src, const Integer& q) {  // dst -= q src
    for (std::size_t j = 0; j < cols; ++j) S[dst][j] -= q * S[src][j];
    for (std::size_t j = 0; j < rows; ++j) f.L[dst][j] -= q * f.L[src][j];
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t i = 0; i < rows; ++i) S[i][dst] -= q * S[i][src];
    for (std::size_t i = 0; i < cols; ++i) f.R[i][dst] -= q * f.R[i][src];
  };
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    std::swap(S[a], S[b]);
    std::swap(f.L[a], f.L[b]);
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    for (auto& r : S) std::swap(r[a], r[b]);
    for (auto& r : f.R) std::swap(r[a], r[b]);
  };

  std::size_t t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero magnitude in the trailing block
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (S[i][j] != 0 && (pi == rows || abs(S[i][j]) < abs(S[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (S[i][t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), S[i][t].get_mpz_t(), S[t][t].get_mpz_t());
        row_op(i, t, q);
        if (S[i][t] != 0) {
          swap_rows(t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (S[t][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), S[t][j].get_mpz_t(), S[t][t].get_mpz_t());
        col_op(j, t, q);
        if (S[t][j] != 0) {
          swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility of the remaining block
      for (std::size_t i = t + 1; i < rows && clean; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (S[i][j] % S[t][t] != 0) {
            row_op(t, i, Integer(-1));
            clean = false;
            break;
          }
    }
    if (S[t][t] < 0) {
      for (std::size_t j = 0; j < cols; ++j) S[t][j] = -S[t][j];
      for (std::size_t j = 0; j < rows; ++j) f.L[t][j] = -f.L[t][j];
    }
    f.diagonal.push_back(S[t][t]);
    ++t;
  }
  f.rank = t;
  return f;
}

}  // namespace nce

#endif  // NCE_LINALG_HPP
