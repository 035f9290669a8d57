#pragma once

// The stack-sorting operator S(LnR) = S(L) S(R) n, its single-pass stack
// machine form, sorting complexity and descent counting.

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "stacksort/word.hpp"

namespace stacksort {

namespace detail {

inline void stack_sort_recursive(std::span<const Letter> w,
                                 std::vector<Letter>& out) {
  if (w.empty()) return;
  auto max_it = std::max_element(w.begin(), w.end());
  auto split = static_cast<std::size_t>(max_it - w.begin());
  stack_sort_recursive(w.first(split), out);
  stack_sort_recursive(w.subspan(split + 1), out);
  out.push_back(*max_it);
}

}  // namespace detail

/// S(w) by the recursive definition. Accepts any word (letters need not be
/// 1..n) since the recursion runs on subwords.
inline Word stack_sort(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  detail::stack_sort_recursive(w.letters(), out);
  return Word(std::move(out), Word::unchecked_tag{});
}

/// One pass through a stack: before pushing x, pop every smaller letter to
/// the output; flush at the end. Writes |in| letters to out; in and out must
/// not overlap. `scratch` needs room for |in| letters.
inline void stack_sort_pass(std::span<const Letter> in, std::span<Letter> out,
                            std::span<Letter> scratch) noexcept {
  std::size_t top = 0, k = 0;
  for (Letter x : in) {
    while (top > 0 && scratch[top - 1] < x) out[k++] = scratch[--top];
    scratch[top++] = x;
  }
  while (top > 0) out[k++] = scratch[--top];
}

inline Word stack_sort_pass(const Word& w) {
  std::vector<Letter> out(w.size()), scratch(w.size());
  stack_sort_pass(w.letters(), out, scratch);
  return Word(std::move(out), Word::unchecked_tag{});
}

/// S^k(w).
inline Word stack_sort_passes(const Word& w, std::size_t k) {
  Word cur = w;
  for (std::size_t i = 0; i < k; ++i) cur = stack_sort_pass(cur);
  return cur;
}

namespace detail {

inline bool is_identity(std::span<const Letter> w) noexcept {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != i + 1) return false;
  return true;
}

}  // namespace detail

/// Complexity of a standard permutation of length <= kMaxLength, unchecked.
/// Hot path of the census.
inline unsigned complexity_unchecked(std::span<const Letter> w) noexcept {
  std::array<Letter, kMaxLength> a{}, b{}, stack{};
  const std::size_t n = w.size();
  std::copy(w.begin(), w.end(), a.begin());
  unsigned k = 0;
  std::span<Letter> cur(a.data(), n), next(b.data(), n);
  while (!detail::is_identity(cur)) {
    stack_sort_pass(cur, next, stack);
    std::swap(cur, next);
    ++k;
  }
  return k;
}

/// Smallest k with S^k(w) = id. Requires a standard permutation; the empty
/// word has complexity 0.
inline unsigned complexity(const Word& w) {
  require_standard(w, "complexity");
  return complexity_unchecked(w.letters());
}

inline unsigned descents(std::span<const Letter> w) noexcept {
  unsigned d = 0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] > w[i + 1]) ++d;
  return d;
}

inline unsigned descents(const Word& w) noexcept {
  return descents(w.letters());
}

}  // namespace stacksort
