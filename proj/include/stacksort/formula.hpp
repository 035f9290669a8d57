#pragma once

// Exact count formulas of the shape (n-j)!/d * sum_i a_i * C(n-s, i), the
// registry of known and conjectured counts, and recovery of the a_i from
// census data by an exact triangular solve.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace stacksort {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_factorial(unsigned m) {
  BigInt f = 1;
  for (unsigned i = 2; i <= m; ++i) f *= i;
  return f;
}

/// C(m, i) for m >= 0.
inline BigInt big_binomial(unsigned m, unsigned i) {
  if (i > m) return 0;
  BigInt r = 1;
  for (unsigned t = 1; t <= i; ++t) {
    r *= m - i + t;
    r /= t;
  }
  return r;
}

struct BinomialFormula {
  std::string name;
  unsigned factorial_shift = 0;  // j
  BigInt denominator = 1;        // d
  unsigned basis_offset = 0;     // s
  std::vector<BigInt> coefficients;
  unsigned valid_from = 0;  // smallest n the formula is asserted for

  friend bool operator==(const BinomialFormula&,
                         const BinomialFormula&) = default;
};

/// Value at n. Throws std::domain_error below the validity floor or when the
/// division by d leaves a remainder.
inline BigInt evaluate(const BinomialFormula& f, unsigned n) {
  if (n < f.valid_from || n < f.factorial_shift || n < f.basis_offset)
    throw std::domain_error(f.name + ": not asserted for n=" +
                            std::to_string(n) + " (valid from n=" +
                            std::to_string(f.valid_from) + ")");
  BigInt sum = 0;
  for (std::size_t i = 0; i < f.coefficients.size(); ++i)
    sum += f.coefficients[i] *
           big_binomial(n - f.basis_offset, static_cast<unsigned>(i));
  BigInt num = big_factorial(n - f.factorial_shift) * sum;
  if (f.denominator == 0 || num % f.denominator != 0)
    throw std::domain_error(f.name + ": inexact division at n=" +
                            std::to_string(n));
  return num / f.denominator;
}

/// What a registry formula counts.
struct CountTarget {
  enum class Kind {
    exact_class,       // complexity exactly n - offset
    cumulative_class,  // complexity at most n - offset
    catalog_row,       // first-match count of a catalog row
  };
  Kind kind = Kind::exact_class;
  unsigned offset = 0;
  std::string label;
};

struct RegistryEntry {
  BinomialFormula formula;
  CountTarget target;
};

namespace detail {

inline std::vector<BigInt> big_vector(std::initializer_list<long long> v) {
  std::vector<BigInt> out;
  for (long long x : v) out.emplace_back(x);
  return out;
}

inline RegistryEntry class_entry(std::string name, CountTarget::Kind kind,
                                 unsigned offset, unsigned j, long long d,
                                 unsigned s, std::initializer_list<long long> a,
                                 unsigned valid_from) {
  return {BinomialFormula{std::move(name), j, d, s, big_vector(a), valid_from},
          CountTarget{kind, offset, {}}};
}

inline RegistryEntry row_entry(std::string label, unsigned j, long long d,
                               unsigned s, std::initializer_list<long long> a) {
  return {BinomialFormula{"row " + label, j, d, s, big_vector(a), 6},
          CountTarget{CountTarget::Kind::catalog_row, 3, std::move(label)}};
}

}  // namespace detail

/// Counts of complexity classes n-1..n-5, in binomial form.
inline const std::vector<RegistryEntry>& class_formulas() {
  using K = CountTarget::Kind;
  using detail::class_entry;
  static const std::vector<RegistryEntry> entries = {
      // (n-2)!
      class_entry("lemma1", K::exact_class, 1, 2, 1, 2, {1}, 2),
      // (n-3)!(7n-12)/2
      class_entry("lemma2", K::exact_class, 2, 3, 2, 4, {16, 7}, 4),
      // (n-3)!(2n^3-6n^2-5n+16)/2
      class_entry("proposition", K::cumulative_class, 3, 3, 2, 4,
                  {28, 63, 48, 12}, 4),
      // (n-4)!/3 (47 C(n-6,2) + 194 C(n-6,1) + 297)
      class_entry("theorem1", K::exact_class, 3, 4, 3, 6, {297, 194, 47}, 6),
      // (n-4)!(3n^4-18n^3-4n^2+158n-192)/3
      class_entry("corollary", K::cumulative_class, 4, 4, 3, 6,
                  {612, 1135, 1006, 432, 72}, 6),
      // (n-5)!/10 (854 C(n-8,3) + 5099 C(n-8,2) + 12545 C(n-8,1) + 16130)
      class_entry("conjecture1", K::exact_class, 4, 5, 10, 8,
                  {16130, 12545, 5099, 854}, 8),
      // (n-5)!/60 (60n^5-600n^4+506n^3+11241n^2-38369n+34236)
      class_entry("conjecture1-cumulative", K::cumulative_class, 5, 5, 60, 8,
                  {214260, 360390, 345606, 192036, 57600, 7200}, 8),
  };
  return entries;
}

/// Per-row counts for the complexity n-3 rows, valid for n >= 6.
inline const std::vector<RegistryEntry>& row_formulas() {
  using detail::row_entry;
  static const std::vector<RegistryEntry> entries = {
      row_entry("T1a", 3, 1, 6, {1}),        // (n-3)!
      row_entry("T1b", 3, 1, 6, {1}),        // (n-3)!
      row_entry("T1c", 3, 1, 6, {1}),        // (n-3)!
      row_entry("T1d", 3, 2, 6, {1}),        // (n-3)!/2
      row_entry("T1e", 4, 1, 6, {1}),        // (n-4)!
      row_entry("T2a", 2, 1, 6, {1}),        // (n-2)!
      row_entry("T2b", 4, 1, 5, {0, 1}),     // (n-5)(n-4)!
      row_entry("T2c", 4, 1, 6, {1}),        // (n-4)!
      row_entry("T3a", 3, 1, 3, {0, 1}),     // (n-3)(n-3)!
      row_entry("T3b", 3, 1, 3, {0, 1}),     // (n-3)(n-3)!
      row_entry("T4a", 4, 1, 4, {1, 4, 2}),  // (n-2)! - (n-4)!
      row_entry("T4b", 2, 1, 6, {1}),        // (n-2)!
      row_entry("T4c", 2, 1, 6, {1}),        // (n-2)!
      row_entry("T4d", 4, 1, 6, {1}),        // (n-4)!
      row_entry("T5a", 4, 2, 4, {0, 4, 2}),  // (n-2)!/2 - (n-4)!
      row_entry("T5b", 3, 2, 6, {1}),        // (n-3)!/2
      row_entry("T5c", 2, 6, 6, {1}),        // (n-2)!/6
      row_entry("T5d", 2, 12, 6, {1}),       // (n-2)!/12
      row_entry("T5e", 3, 1, 4, {0, 1}),     // (n-4)(n-3)!
      row_entry("T5f", 3, 2, 6, {1}),        // (n-3)!/2
      row_entry("T5g", 3, 2, 6, {1}),        // (n-3)!/2
      row_entry("T5h", 2, 12, 6, {1}),       // (n-2)!/12
  };
  return entries;
}

inline const RegistryEntry& find_formula(const std::string& name) {
  for (const auto* list : {&class_formulas(), &row_formulas()})
    for (const auto& e : *list)
      if (e.formula.name == name) return e;
  throw std::invalid_argument("no registry formula named '" + name + "'");
}

/// The two printed forms of the n-4 conjecture are consistent at n iff the
/// cumulative form equals corollary(n) - exact form(n).
inline bool conjecture1_forms_agree(unsigned n) {
  return evaluate(find_formula("conjecture1-cumulative").formula, n) ==
         evaluate(find_formula("corollary").formula, n) -
             evaluate(find_formula("conjecture1").formula, n);
}

/// Prefactor of the general n-k form, (k-1)!(n-k-1)!/(2(k-1))!, written as
/// (n-j)!/d with j = k+1 and d = (2k-2)!/(k-1)!.
inline BinomialFormula general_form(unsigned k, std::vector<BigInt> a) {
  if (k == 0) throw std::invalid_argument("general form needs k >= 1");
  return BinomialFormula{"general k=" + std::to_string(k),
                         k + 1,
                         big_factorial(2 * k - 2) / big_factorial(k - 1),
                         2 * k,
                         std::move(a),
                         2 * k};
}

struct FitResult {
  unsigned k = 0;
  std::vector<BigInt> coefficients;
  bool exact_prefactor = true;  // every count divisible by the prefactor
  bool natural = false;         // all coefficients >= 0
  bool consistent = false;      // points beyond the k solved for agree
  std::vector<unsigned> checked;  // n values verified beyond the solve
};

/// Solves sum_{i<k} a_i C(n-2k, i) = count(n) / prefactor(n) from the data
/// at n = 2k, ..., 3k-1, then checks every other n >= 2k present in `data`.
inline FitResult fit_binomial(unsigned k,
                              const std::map<unsigned, BigInt>& data) {
  if (k == 0) throw std::invalid_argument("fit: k must be positive");
  for (unsigned n = 2 * k; n < 3 * k; ++n)
    if (!data.contains(n))
      throw std::invalid_argument("fit: k=" + std::to_string(k) +
                                  " needs the count at n=" + std::to_string(n));

  FitResult r;
  r.k = k;
  const BigInt scale = big_factorial(2 * k - 2);
  const BigInt kf = big_factorial(k - 1);
  auto reduced = [&](unsigned n) -> std::optional<BigInt> {
    BigInt num = data.at(n) * scale;
    BigInt den = kf * big_factorial(n - k - 1);
    if (num % den != 0) return std::nullopt;
    return num / den;
  };

  for (unsigned t = 0; t < k; ++t) {
    auto value = reduced(2 * k + t);
    if (!value) {
      r.exact_prefactor = false;
      r.coefficients.clear();
      return r;
    }
    BigInt a = *value;
    for (unsigned i = 0; i < t; ++i) a -= r.coefficients[i] * big_binomial(t, i);
    r.coefficients.push_back(a);
  }
  r.natural = true;
  for (const auto& a : r.coefficients)
    if (a < 0) r.natural = false;

  r.consistent = true;
  BinomialFormula f = general_form(k, r.coefficients);
  for (const auto& [n, count] : data) {
    if (n < 3 * k) continue;
    r.checked.push_back(n);
    if (!reduced(n)) r.exact_prefactor = false;
    BigInt predicted;
    try {
      predicted = evaluate(f, n);
    } catch (const std::domain_error&) {
      r.consistent = false;
      continue;
    }
    if (predicted != count) r.consistent = false;
  }
  if (!r.exact_prefactor) r.consistent = false;
  return r;
}

inline BinomialFormula to_formula(const FitResult& fit) {
  return general_form(fit.k, fit.coefficients);
}

}  // namespace stacksort
