#pragma once

// Exhaustive census of S_n: counts by complexity, by first-matching catalog
// row, and by (complexity, descents); checked against the formula registry.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stacksort/catalog.hpp"
#include "stacksort/formula.hpp"
#include "stacksort/rank.hpp"
#include "stacksort/stack_sort.hpp"

namespace stacksort {

/// Largest n the census accepts; 14! < 2^63 keeps every counter in range.
inline constexpr std::size_t kMaxCensusLength = 14;

/// Smallest n at which permutations are classified against the catalog.
inline constexpr std::size_t kClassifyFrom = 6;

namespace detail {

inline void checked_add(std::uint64_t& into, std::uint64_t v) {
  if (__builtin_add_overflow(into, v, &into))
    throw std::overflow_error("census counter overflow");
}

}  // namespace detail

/// Additive counts over some set of permutations of one length n.
struct Tally {
  std::vector<std::uint64_t> by_complexity;              // [complexity]
  std::vector<std::uint64_t> by_row;                     // [catalog row]
  std::uint64_t mismatches = 0;  // classification disagreeing with complexity
  std::vector<std::vector<std::uint64_t>> descents;      // [complexity][descents]

  static Tally zero(std::size_t n, std::size_t rows) {
    const std::size_t width = std::max<std::size_t>(n, 1);
    Tally t;
    t.by_complexity.assign(width, 0);
    t.by_row.assign(rows, 0);
    t.descents.assign(width, std::vector<std::uint64_t>(width, 0));
    return t;
  }

  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (auto c : by_complexity) detail::checked_add(s, c);
    return s;
  }

  void merge(const Tally& other) {
    if (other.by_complexity.size() != by_complexity.size() ||
        other.by_row.size() != by_row.size())
      throw std::invalid_argument("merging tallies of different shapes");
    for (std::size_t i = 0; i < by_complexity.size(); ++i)
      detail::checked_add(by_complexity[i], other.by_complexity[i]);
    for (std::size_t i = 0; i < by_row.size(); ++i)
      detail::checked_add(by_row[i], other.by_row[i]);
    detail::checked_add(mismatches, other.mismatches);
    for (std::size_t i = 0; i < descents.size(); ++i)
      for (std::size_t j = 0; j < descents[i].size(); ++j)
        detail::checked_add(descents[i][j], other.descents[i][j]);
  }

  friend bool operator==(const Tally&, const Tally&) = default;
};

/// Half-open lexicographic rank range [begin, end).
struct ShardRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  std::uint64_t size() const noexcept { return end - begin; }
  friend bool operator==(const ShardRange&, const ShardRange&) = default;
};

/// Cuts [0, n!) into `count` contiguous ranges of near-equal size.
inline std::vector<ShardRange> plan_shards(std::size_t n, std::size_t count) {
  if (count == 0) throw std::invalid_argument("shard count must be positive");
  const unsigned __int128 total = factorial(n);
  std::vector<ShardRange> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s)
    out.push_back({static_cast<std::uint64_t>(total * s / count),
                   static_cast<std::uint64_t>(total * (s + 1) / count)});
  return out;
}

/// Tallies every permutation of length n with rank in `range`. Pass a
/// classifier to also count catalog rows.
inline Tally tally_range(std::size_t n, ShardRange range,
                         const Classifier* classifier, std::size_t rows) {
  Tally t = Tally::zero(n, rows);
  if (range.size() == 0) return t;
  Word start = unrank(n, Rank{range.begin});
  std::array<Letter, kMaxLength> buf{};
  std::copy(start.begin(), start.end(), buf.begin());
  std::span<Letter> w(buf.data(), n);
  const unsigned n_minus_4 = n >= 4 ? static_cast<unsigned>(n - 4) : 0;
  for (std::uint64_t i = 0; i < range.size(); ++i) {
    const unsigned k = complexity_unchecked(w);
    const unsigned d = descents(w);
    ++t.by_complexity[k];
    ++t.descents[k][d];
    if (classifier) {
      auto row = classifier->first_match(w);
      if (row) {
        ++t.by_row[*row];
        const auto& cert = classifier->catalog()[*row].certified;
        if (!cert || cert->at(n) != k) ++t.mismatches;
      } else if (k > n_minus_4) {
        ++t.mismatches;
      }
    }
    std::next_permutation(w.begin(), w.end());
  }
  return t;
}

struct Census {
  std::size_t n = 0;
  bool classified = false;
  std::vector<std::string> row_labels;  // catalog order, when classified
  Tally tally;
  std::uint64_t shards = 1;  // provenance only; not part of equality

  const std::vector<std::uint64_t>& counts_by_complexity() const {
    return tally.by_complexity;
  }

  std::uint64_t row_count(std::string_view label) const {
    for (std::size_t i = 0; i < row_labels.size(); ++i)
      if (row_labels[i] == label) return tally.by_row[i];
    throw std::out_of_range("census has no row '" + std::string(label) + "'");
  }

  /// Permutations of complexity exactly c.
  std::uint64_t exactly(long c) const {
    if (c < 0 || c >= static_cast<long>(tally.by_complexity.size())) return 0;
    return tally.by_complexity[static_cast<std::size_t>(c)];
  }

  /// Permutations of complexity at most c.
  std::uint64_t at_most(long c) const {
    std::uint64_t s = 0;
    for (long i = 0; i <= c && i < static_cast<long>(tally.by_complexity.size());
         ++i)
      s += tally.by_complexity[static_cast<std::size_t>(i)];
    return s;
  }

  friend bool operator==(const Census& a, const Census& b) {
    return a.n == b.n && a.classified == b.classified &&
           a.row_labels == b.row_labels && a.tally == b.tally;
  }
};

/// FNV-1a over a canonical rendering of the counts, as 16 hex digits.
inline std::string checksum(const Census& c) {
  std::string canon = "n=" + std::to_string(c.n) +
                      (c.classified ? ";classified" : ";unclassified");
  for (auto v : c.tally.by_complexity) canon += ";" + std::to_string(v);
  for (std::size_t i = 0; i < c.row_labels.size(); ++i)
    canon += ";" + c.row_labels[i] + "=" + std::to_string(c.tally.by_row[i]);
  canon += ";m=" + std::to_string(c.tally.mismatches);
  for (const auto& row : c.tally.descents)
    for (auto v : row) canon += "," + std::to_string(v);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

/// Throws std::runtime_error naming the first violated invariant.
inline void check_invariants(const Census& c) {
  auto fail = [](const std::string& what) {
    throw std::runtime_error("census invariant violated: " + what);
  };
  if (c.n < 1 || c.n > kMaxCensusLength) fail("n out of range");
  const std::size_t width = std::max<std::size_t>(c.n, 1);
  const Tally& t = c.tally;
  if (t.by_complexity.size() != width) fail("counts_by_complexity length");
  if (t.by_row.size() != c.row_labels.size()) fail("counts_by_row length");
  if (c.classified != !c.row_labels.empty()) fail("classified flag");
  if (t.descents.size() != width) fail("descent_matrix shape");
  for (const auto& r : t.descents)
    if (r.size() != width) fail("descent_matrix shape");
  if (t.total() != factorial(c.n)) fail("counts do not sum to n!");
  for (std::size_t k = 0; k < width; ++k) {
    std::uint64_t s = 0;
    for (auto v : t.descents[k]) detail::checked_add(s, v);
    if (s != t.by_complexity[k]) fail("descent_matrix row " + std::to_string(k));
  }
  if (c.classified && t.mismatches == 0) {
    for (unsigned off = 1; off <= 3 && off <= c.n; ++off) {
      std::uint64_t s = 0;
      for (std::size_t i = 0; i < c.row_labels.size(); ++i) {
        auto cert = certified_class_for_label(c.row_labels[i]);
        if (cert && cert->offset == off) s += t.by_row[i];
      }
      if (s != c.exactly(static_cast<long>(c.n) - off))
        fail("row counts of class n-" + std::to_string(off));
    }
  }
}

struct VerifyItem {
  std::string name;
  BigInt formula_value;
  BigInt census_value;
  bool pass = false;
};

struct VerifyReport {
  std::size_t n = 0;
  std::vector<VerifyItem> items;
  bool all_pass() const {
    return std::all_of(items.begin(), items.end(),
                       [](const VerifyItem& i) { return i.pass; });
  }
};

/// Compares every registry formula asserted at n with the census, plus the
/// per-row counts, the row partition and classification soundness when the
/// census is classified.
inline VerifyReport verify(const Census& c) {
  VerifyReport rep;
  rep.n = c.n;
  const long n = static_cast<long>(c.n);
  auto add = [&](std::string name, BigInt f, BigInt v) {
    bool pass = f == v;
    rep.items.push_back({std::move(name), std::move(f), std::move(v), pass});
  };

  for (const auto& e : class_formulas()) {
    if (c.n < e.formula.valid_from) continue;
    const long cls = n - static_cast<long>(e.target.offset);
    BigInt census_value =
        e.target.kind == CountTarget::Kind::exact_class ? c.exactly(cls)
                                                        : c.at_most(cls);
    add(e.formula.name, evaluate(e.formula, static_cast<unsigned>(c.n)),
        census_value);
  }
  if (c.n >= 8)
    add("conjecture1 forms agree", 1,
        conjecture1_forms_agree(static_cast<unsigned>(c.n)) ? 1 : 0);

  if (c.classified && c.n >= kClassifyFrom) {
    for (const auto& e : row_formulas())
      add(e.formula.name, evaluate(e.formula, static_cast<unsigned>(c.n)),
          c.row_count(e.target.label));
    for (unsigned off = 1; off <= 3; ++off) {
      std::uint64_t s = 0;
      for (std::size_t i = 0; i < c.row_labels.size(); ++i) {
        auto cert = certified_class_for_label(c.row_labels[i]);
        if (cert && cert->offset == off) s += c.tally.by_row[i];
      }
      add("rows partition class n-" + std::to_string(off),
          c.exactly(n - off), s);
    }
    add("classification soundness", 0, c.tally.mismatches);
  }
  return rep;
}

/// Coefficient k counts the (n-4)-stack sortable permutations with k descents.
inline std::vector<std::uint64_t> descent_polynomial(const Census& c) {
  if (c.n < 6)
    throw std::invalid_argument("descent polynomial needs n >= 6");
  std::vector<std::uint64_t> coeffs(c.n, 0);
  for (std::size_t k = 0; k + 4 <= c.n; ++k)
    for (std::size_t d = 0; d < c.n; ++d)
      detail::checked_add(coeffs[d], c.tally.descents[k][d]);
  return coeffs;
}

/// Exact-class counts complexity n-k for every census holding that class,
/// keyed by n; the input format of fit_binomial.
inline std::map<unsigned, BigInt> class_series(
    const std::vector<Census>& censuses, unsigned k) {
  std::map<unsigned, BigInt> data;
  for (const auto& c : censuses)
    if (c.n >= k) data[static_cast<unsigned>(c.n)] = c.exactly(static_cast<long>(c.n - k));
  return data;
}

}  // namespace stacksort
