#pragma once

// Lexicographic rank/unrank of standard permutations via the factorial
// number system. Used to cut S_n into contiguous shards.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stacksort/word.hpp"

namespace stacksort {

/// Position of a standard permutation in lexicographic order, 0-based.
struct Rank {
  std::uint64_t value = 0;
  friend auto operator<=>(const Rank&, const Rank&) = default;
};

/// n! for n <= 20.
inline std::uint64_t factorial(std::size_t n) {
  if (n > 20) throw std::out_of_range("factorial: n > 20 overflows 64 bits");
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

inline Word unrank(std::size_t n, Rank r) {
  if (n > kMaxLength)
    throw std::out_of_range("unrank: n exceeds " + std::to_string(kMaxLength));
  if (r.value >= factorial(n))
    throw std::out_of_range("unrank: rank " + std::to_string(r.value) +
                            " >= " + std::to_string(n) + "!");
  std::vector<Letter> pool(n), out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<Letter>(i + 1);
  std::uint64_t rest = r.value;
  for (std::size_t i = n; i > 0; --i) {
    std::uint64_t block = factorial(i - 1);
    auto idx = static_cast<std::size_t>(rest / block);
    rest %= block;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return Word(std::move(out), Word::unchecked_tag{});
}

inline Rank rank(const Word& w) {
  require_standard(w, "rank");
  const std::size_t n = w.size();
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t smaller_after = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (w[j] < w[i]) ++smaller_after;
    r += smaller_after * factorial(n - 1 - i);
  }
  return Rank{r};
}

}  // namespace stacksort
