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

#ifndef NCE_WORD_HPP
#define NCE_WORD_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "errors.hpp"

namespace nce {

/// A word in the free monoid on at most 16 letters, of length at most 16.
///
/// Letters are 0-based generator indices packed four bits each, first letter
/// most significant, so comparing (length, code) is exactly deglex with the
/// declared generator order.
class Word {
 public:
  static constexpr int kMaxLength = 16;
  static constexpr int kMaxLetters = 16;

  Word() = default;
  Word(std::initializer_list<int> letters) {
    for (int l : letters) push_back(l);
  }
  explicit Word(const std::vector<int>& letters) {
    for (int l : letters) push_back(l);
  }

  static Word letter(int l) { return Word{l}; }

  int size() const { return len_; }
  bool empty() const { return len_ == 0; }
  std::uint64_t code() const { return code_; }

  int operator[](int pos) const {
    return static_cast<int>((code_ >> (4 * (len_ - 1 - pos))) & 0xFu);
  }
  int front() const { return (*this)[0]; }
  int back() const { return (*this)[len_ - 1]; }

  void push_back(int l) {
    if (l < 0 || l >= kMaxLetters) throw InputError("letter index out of range");
    if (len_ >= kMaxLength)
      throw ResourceError("word length exceeds " + std::to_string(kMaxLength));
    code_ = (code_ << 4) | static_cast<std::uint64_t>(l);
    ++len_;
  }

  friend Word operator+(const Word& a, const Word& b) {
    if (a.len_ + b.len_ > kMaxLength)
      throw ResourceError("word length exceeds " + std::to_string(kMaxLength));
    Word r;
    r.len_ = static_cast<std::uint8_t>(a.len_ + b.len_);
    r.code_ = b.len_ == 16 ? b.code_ : (a.code_ << (4 * b.len_)) | b.code_;
    return r;
  }

  Word subword(int pos, int len) const {
    Word r;
    if (len == 0) return r;
    int shift = 4 * (len_ - pos - len);
    std::uint64_t mask = len == 16 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (4 * len)) - 1);
    r.code_ = (code_ >> shift) & mask;
    r.len_ = static_cast<std::uint8_t>(len);
    return r;
  }
  Word prefix(int len) const { return subword(0, len); }
  Word suffix(int len) const { return subword(len_ - len, len); }
  Word drop_front(int k = 1) const { return subword(k, len_ - k); }
  Word drop_back(int k = 1) const { return subword(0, len_ - k); }

  std::vector<int> letters() const {
    std::vector<int> out(static_cast<std::size_t>(len_));
    for (int i = 0; i < len_; ++i) out[static_cast<std::size_t>(i)] = (*this)[i];
    return out;
  }

  friend bool operator==(const Word& a, const Word& b) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.len_ <=> b.len_; c != 0) return c;
    return a.code_ <=> b.code_;
  }

 private:
  std::uint64_t code_ = 0;
  std::uint8_t len_ = 0;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::uint64_t h = w.code() * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(w.size());
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

/// All words of a given length over n letters, in increasing deglex order.
inline std::vector<Word> all_words(int n, int length) {
  std::vector<Word> out{Word{}};
  for (int d = 0; d < length; ++d) {
    std::vector<Word> next;
    next.reserve(out.size() * static_cast<std::size_t>(n));
    for (const auto& w : out)
      for (int l = 0; l < n; ++l) next.push_back(w + Word::letter(l));
    out = std::move(next);
  }
  return out;
}

}  // namespace nce

template <>
struct std::hash<nce::Word> {
  std::size_t operator()(const nce::Word& w) const noexcept { return nce::WordHash{}(w); }
};

#endif  // NCE_WORD_HPP
