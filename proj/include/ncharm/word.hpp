#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "ncharm/error.hpp"

namespace ncharm {

/// A letter of the alphabet {x_1, ..., x_g, h}. Variables are stored by their
/// 1-based index; the direction symbol h sorts after every variable.
class Letter {
 public:
  static constexpr std::uint8_t kDirectionCode = 0xFF;
  static constexpr int kMaxVars = 254;

  constexpr Letter() = default;

  static Letter variable(int index) {
    if (index < 1 || index > kMaxVars)
      throw Error("variable index " + std::to_string(index) + " out of range");
    return Letter(static_cast<std::uint8_t>(index));
  }
  static constexpr Letter direction() { return Letter(kDirectionCode); }

  constexpr bool is_direction() const { return code_ == kDirectionCode; }
  constexpr bool is_variable() const { return !is_direction(); }
  /// 1-based variable index; only meaningful for variables.
  constexpr int index() const { return code_; }
  constexpr std::uint8_t code() const { return code_; }

  friend constexpr auto operator<=>(Letter, Letter) = default;

 private:
  constexpr explicit Letter(std::uint8_t code) : code_(code) {}
  std::uint8_t code_ = 1;
};

/// A finite sequence of letters. Words are ordered graded-lexicographically:
/// shorter words first, then letterwise with x1 < x2 < ... < xg < h.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}

  /// Word in variables only, given 1-based indices.
  static Word of(std::initializer_list<int> indices) {
    Word w;
    w.letters_.reserve(indices.size());
    for (int i : indices) w.letters_.push_back(Letter::variable(i));
    return w;
  }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  Word transposed() const {
    return Word(std::vector<Letter>(letters_.rbegin(), letters_.rend()));
  }

  Word operator*(const Word& rhs) const {
    std::vector<Letter> out;
    out.reserve(letters_.size() + rhs.letters_.size());
    out.insert(out.end(), letters_.begin(), letters_.end());
    out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
    return Word(std::move(out));
  }

  Word subword(std::size_t pos, std::size_t len) const {
    return Word(std::vector<Letter>(letters_.begin() + pos, letters_.begin() + pos + len));
  }

  std::size_t count_direction() const {
    return static_cast<std::size_t>(
        std::count_if(letters_.begin(), letters_.end(), [](Letter l) { return l.is_direction(); }));
  }

  /// Largest variable index used, 0 if none.
  int max_variable() const {
    int m = 0;
    for (Letter l : letters_)
      if (l.is_variable()) m = std::max(m, l.index());
    return m;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                  b.letters_.begin(), b.letters_.end());
  }

 private:
  std::vector<Letter> letters_;
};

/// All g^d words of length d in x_1..x_g, in canonical order.
inline std::vector<Word> enumerate_words(int g, int d) {
  std::vector<Word> out;
  std::vector<Letter> cur(static_cast<std::size_t>(d), Letter::variable(1));
  if (g < 1) return out;
  while (true) {
    out.emplace_back(cur);
    int pos = d - 1;
    while (pos >= 0 && cur[pos].index() == g) {
      cur[pos] = Letter::variable(1);
      --pos;
    }
    if (pos < 0) break;
    cur[pos] = Letter::variable(cur[pos].index() + 1);
  }
  return out;
}

}  // namespace ncharm
