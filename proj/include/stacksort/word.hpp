#pragma once

// Words over positive integers with pairwise distinct letters.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#ifndef STACKSORT_MAX_LENGTH
#define STACKSORT_MAX_LENGTH 20
#endif

namespace stacksort {

using Letter = std::uint32_t;

/// Largest n accepted by operations on standard permutations
/// (complexity, classification, ranking, census).
inline constexpr std::size_t kMaxLength = STACKSORT_MAX_LENGTH;

static_assert(kMaxLength <= 20, "ranks are 64-bit; 21! overflows");

/// A finite sequence of distinct positive integers.
class Word {
 public:
  Word() = default;

  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
    validate();
  }

  Word(std::initializer_list<Letter> letters) : letters_(letters) {
    validate();
  }

  /// Identity permutation 12...n.
  static Word identity(std::size_t n) {
    std::vector<Letter> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Letter>(i + 1);
    return Word(std::move(v), unchecked_tag{});
  }

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  std::span<const Letter> letters() const noexcept { return letters_; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  /// True iff the letter set is exactly {1, ..., n}.
  bool is_standard() const noexcept { return is_standard(letters_); }

  static bool is_standard(std::span<const Letter> w) noexcept {
    // Letters are distinct, so it suffices that each lies in [1, n].
    return std::all_of(w.begin(), w.end(), [n = w.size()](Letter x) {
      return x >= 1 && x <= n;
    });
  }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < letters_.size(); ++i)
      if (letters_[i] != i + 1) return false;
    return true;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

  /// Builds a Word from letters already known to be distinct and positive.
  struct unchecked_tag {};
  Word(std::vector<Letter> letters, unchecked_tag) noexcept
      : letters_(std::move(letters)) {}

 private:
  void validate() const {
    std::vector<Letter> sorted = letters_;
    std::sort(sorted.begin(), sorted.end());
    if (!sorted.empty() && sorted.front() == 0)
      throw std::invalid_argument("word letters must be positive");
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("word letters must be distinct");
  }

  std::vector<Letter> letters_;
};

/// Throws unless w is a standard permutation of length at most kMaxLength.
inline void require_standard(const Word& w, std::string_view what) {
  if (!w.is_standard())
    throw std::invalid_argument(std::string(what) +
                                " requires a permutation of {1..n}");
  if (w.size() > kMaxLength)
    throw std::invalid_argument(std::string(what) + ": length exceeds " +
                                std::to_string(kMaxLength));
}

/// Parses "42513" (single digits) or "4,2,5,1,3" / "4 2 5 1 3".
inline Word parse_word(std::string_view text) {
  auto is_sep = [](char c) { return c == ',' || c == ' ' || c == '\t'; };
  bool has_sep = std::any_of(text.begin(), text.end(), is_sep);
  std::vector<Letter> letters;
  if (!has_sep) {
    for (char c : text) {
      if (c < '1' || c > '9')
        throw std::invalid_argument("malformed word: '" + std::string(text) +
                                    "'");
      letters.push_back(static_cast<Letter>(c - '0'));
    }
    return Word(std::move(letters));
  }
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_sep(text[i])) ++i;
    if (i == text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !is_sep(text[j])) ++j;
    Letter value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, value);
    if (ec != std::errc{} || ptr != text.data() + j)
      throw std::invalid_argument("malformed word: '" + std::string(text) +
                                  "'");
    letters.push_back(value);
    i = j;
  }
  return Word(std::move(letters));
}

/// Digit string when every letter is a single digit, else comma-separated.
inline std::string to_string(std::span<const Letter> w) {
  bool digits = std::all_of(w.begin(), w.end(), [](Letter x) { return x <= 9; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!digits && i > 0) out += ',';
    out += std::to_string(w[i]);
  }
  // A lone multi-digit letter still needs a separator to read back.
  if (!digits && w.size() == 1) out += ',';
  return out;
}

inline std::string to_string(const Word& w) { return to_string(w.letters()); }

}  // namespace stacksort
