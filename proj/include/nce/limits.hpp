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

#ifndef NCE_LIMITS_HPP
#define NCE_LIMITS_HPP

#include <atomic>
#include <cstddef>

namespace nce {

/// Process-wide resource caps. Read on every check, so a CLI flag or a test
/// can tighten them before starting a computation.
struct Limits {
  static inline std::atomic<int> max_conductor{120};
  /// Largest denominator allowed for exponents produced by the tuple solver.
  static inline std::atomic<int> max_exponent_denominator{12};
  /// Largest numerator/denominator bit length tolerated in echelon rows.
  static inline std::atomic<long> max_coefficient_bits{1L << 16};
  /// Largest number of words n^d a single degree component may span.
  static inline std::atomic<std::size_t> max_words{20'000'000};
};

}  // namespace nce

#endif  // NCE_LIMITS_HPP
