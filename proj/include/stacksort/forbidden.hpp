#pragma once

// Forbidden patterns (B, c, a): B a subsequence before c, c before a, and
// a < b < c for every b in B. The pattern is uninterrupted when no letter
// x > c sits between two letters of B. Their orders bracket the complexity:
// no pattern of order k gives complexity <= k; an uninterrupted one of
// order k gives complexity > k.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "stacksort/stack_sort.hpp"
#include "stacksort/word.hpp"

namespace stacksort {

struct ForbiddenWitness {
  std::vector<Letter> b;  // in word order
  Letter c = 0;
  Letter a = 0;
  friend bool operator==(const ForbiddenWitness&,
                         const ForbiddenWitness&) = default;
};

struct ForbiddenReport {
  unsigned max_order = 0;
  unsigned max_uninterrupted_order = 0;
  /// Absent iff the word has no inversion, i.e. no pair (c, a) at all.
  std::optional<ForbiddenWitness> witness;
  std::optional<ForbiddenWitness> uninterrupted_witness;
};

/// O(n^3): for each inversion (c, a), count the candidates b before c with
/// a < b < c, and the largest run of them not split by a letter above c.
inline ForbiddenReport forbidden_report(std::span<const Letter> w) {
  ForbiddenReport r;
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Letter c = w[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Letter a = w[j];
      if (a > c) continue;
      std::vector<Letter> all, run, best_run;
      for (std::size_t p = 0; p < i; ++p) {
        const Letter x = w[p];
        if (x > c) {
          run.clear();
        } else if (x > a) {
          all.push_back(x);
          run.push_back(x);
          if (run.size() > best_run.size()) best_run = run;
        }
      }
      if (!r.witness || all.size() > r.max_order) {
        r.max_order = static_cast<unsigned>(all.size());
        r.witness = ForbiddenWitness{std::move(all), c, a};
      }
      if (!r.uninterrupted_witness ||
          best_run.size() > r.max_uninterrupted_order) {
        r.max_uninterrupted_order = static_cast<unsigned>(best_run.size());
        r.uninterrupted_witness = ForbiddenWitness{std::move(best_run), c, a};
      }
    }
  }
  return r;
}

inline ForbiddenReport forbidden_report(const Word& w) {
  return forbidden_report(w.letters());
}

struct ComplexityBounds {
  unsigned lower = 0;
  unsigned upper = 0;
  friend bool operator==(const ComplexityBounds&,
                         const ComplexityBounds&) = default;
};

/// lower <= complexity(w) <= upper.
///
/// lower is max_uninterrupted_order + 1 when that order is at least 1, else 0.
/// upper is max_order + 1: no pattern of order max_order + 1 exists. A word
/// without inversions has no pattern even of order 0, so its upper is 0.
inline ComplexityBounds complexity_bounds(const ForbiddenReport& r) {
  ComplexityBounds b;
  b.lower = r.max_uninterrupted_order >= 1 ? r.max_uninterrupted_order + 1 : 0;
  b.upper = r.witness ? r.max_order + 1 : 0;
  return b;
}

inline ComplexityBounds complexity_bounds(const Word& w) {
  require_standard(w, "complexity_bounds");
  return complexity_bounds(forbidden_report(w));
}

}  // namespace stacksort
