#pragma once

// Characterisations of the permutations of complexity n-1, n-2 and n-3 as
// glob-pattern rows, and first-match classification against them.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stacksort/pattern.hpp"
#include "stacksort/rank.hpp"

namespace stacksort {

/// Rows in precedence order: complexity n-1 (L1), n-2 (L2-1..L2-5), then
/// n-3 (T1a..T5h). Mirrors data/catalog.txt.
inline constexpr std::string_view kCatalogText =
    R"(L1: * n 1
L2-1: * n 2
L2-2: * (n-1) 1 n
L2-3: * n 1 ?
L2-4: * n ? 1
L2-5: * n * (n-2) * (n-1) 1
T1a: * (n-1) 2 n
T1b: * (n-1) ? 1 n
T1c: * (n-1) 1 ? n
T1d: * (n-1) * (n-3) * (n-2) 1 n
T1e: * (n-2) 1 (n-1) n
T2a: * n 3
T2b: * (n-1) 1 n ?
T2c: * (n-2) 1 n (n-1)
T3a: * n 2 ?
T3b: * n ? 2
T4a: * n ? ? 1 minus { * n (n-2) (n-1) 1 }
T4b: * n ? 1 ?
T4c: * n 1 ? ?
T4d: * n (n-2) (n-1) 2
T5a: * n *A (n-2) *B (n-1) 2 where nonempty(A|B)
T5b: * n * (n-3) * (n-1) (n-2) 1
T5c: * n * (n-1) * (n-3) * (n-2) 1
T5d: * (n-1) * n * { (n-3) * (n-4) | (n-4) * (n-3) } * (n-2) 1
T5e: * n * (n-2) * (n-1) { 1 ? | ? 1 }
T5f: * n * (n-3) * (n-1) 1 (n-2)
T5g: * n * (n-3) * (n-2) 1 (n-1)
T5h: * (n-2) * n * { (n-3) * (n-4) | (n-4) * (n-3) } * (n-1) 1
)";

class Catalog {
 public:
  /// One row per nonblank line; lines starting with '#' are comments.
  static Catalog parse(std::string_view text) {
    Catalog cat;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      try {
        cat.rows_.push_back(parse_pattern(line));
      } catch (const PatternSyntaxError& e) {
        throw std::invalid_argument("catalog line " + std::to_string(lineno) +
                                    ": " + e.what());
      }
      if (cat.rows_.back().label.empty())
        throw std::invalid_argument("catalog line " + std::to_string(lineno) +
                                    ": row needs a label");
      if (cat.find(cat.rows_.back().label) != cat.rows_.size() - 1)
        throw std::invalid_argument("catalog line " + std::to_string(lineno) +
                                    ": duplicate label");
    }
    return cat;
  }

  static const Catalog& standard() {
    static const Catalog cat = parse(kCatalogText);
    return cat;
  }

  const std::vector<PatternRow>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  const PatternRow& operator[](std::size_t i) const { return rows_[i]; }

  /// Index of the row with `label`, or size() when absent.
  std::size_t find(std::string_view label) const noexcept {
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (rows_[i].label == label) return i;
    return rows_.size();
  }

  std::string to_text() const {
    std::string s;
    for (const auto& r : rows_) s += to_string(r) + '\n';
    return s;
  }

 private:
  std::vector<PatternRow> rows_;
};

struct Classification {
  std::string label;
  CertifiedClass certified;
  friend bool operator==(const Classification&,
                         const Classification&) = default;
};

/// A catalog compiled for one length n. Immutable; share across threads.
class Classifier {
 public:
  Classifier(const Catalog& cat, std::size_t n) : catalog_(&cat), n_(n) {
    if (n > kMaxLength)
      throw std::invalid_argument("classifier: n exceeds maximum length");
    compiled_.reserve(cat.size());
    for (const auto& row : cat.rows()) compiled_.emplace_back(row, n);
  }

  std::size_t n() const noexcept { return n_; }
  const Catalog& catalog() const noexcept { return *catalog_; }

  /// Index of the first matching row, or nullopt. `w` must be a standard
  /// permutation of length n.
  std::optional<std::size_t> first_match(std::span<const Letter> w) const {
    auto pos_of = detail::positions(w);
    for (std::size_t i = 0; i < compiled_.size(); ++i)
      if (compiled_[i].matches(w, pos_of)) return i;
    return std::nullopt;
  }

 private:
  const Catalog* catalog_;
  std::size_t n_;
  std::vector<CompiledRow> compiled_;
};

/// First matching row and the complexity it certifies; nullopt predicts
/// complexity at most n-4.
inline std::optional<Classification> classify(const Word& w,
                                              const Catalog& cat) {
  require_standard(w, "classify");
  Classifier c(cat, w.size());
  auto idx = c.first_match(w.letters());
  if (!idx) return std::nullopt;
  const PatternRow& row = cat[*idx];
  if (!row.certified)
    throw std::invalid_argument("row " + row.label +
                                " carries no certified class");
  return Classification{row.label, *row.certified};
}

/// Number of permutations of length n whose first match is `label`.
inline std::uint64_t count_matches(std::size_t n, std::string_view label,
                                   const Catalog& cat) {
  std::size_t target = cat.find(label);
  if (target == cat.size())
    throw std::invalid_argument("unknown row label '" + std::string(label) +
                                "'");
  Classifier c(cat, n);
  std::vector<Letter> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<Letter>(i + 1);
  std::uint64_t count = 0;
  do {
    if (c.first_match(w) == target) ++count;
  } while (std::next_permutation(w.begin(), w.end()));
  return count;
}

}  // namespace stacksort
