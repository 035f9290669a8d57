#pragma once

// Glob patterns over permutations.
//
//   row   := [label ":"] seq ["minus" "{" seq "}"]
//            ["where" "nonempty" "(" name ("|" name)* ")"]
//   seq   := token+
//   token := "*" [name] | "?" | "n" | "(n-" INT ")" | INT
//          | "{" seq ("|" seq)+ "}"
//   name  := single uppercase letter
//
// "*" matches any factor (possibly empty), "?" one letter, "n" and "(n-k)"
// the letters n and n-k of the subject (n = its length), INT a literal
// letter, and a braced alternation exactly one of its branches.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stacksort/word.hpp"

namespace stacksort {

struct PatternToken {
  enum class Kind { star, any_one, rel_value, abs_value, alt };

  Kind kind = Kind::star;
  char name = 0;       // star tag, 0 when anonymous
  unsigned value = 0;  // offset k for rel_value (letter n-k), literal for abs_value
  std::vector<std::vector<PatternToken>> branches;  // alt only

  static PatternToken star(char name = 0) { return {Kind::star, name, 0, {}}; }
  static PatternToken any_one() { return {Kind::any_one, 0, 0, {}}; }
  static PatternToken rel(unsigned offset) {
    return {Kind::rel_value, 0, offset, {}};
  }
  static PatternToken abs(unsigned v) { return {Kind::abs_value, 0, v, {}}; }
  static PatternToken alt(std::vector<std::vector<PatternToken>> b) {
    return {Kind::alt, 0, 0, std::move(b)};
  }

  friend bool operator==(const PatternToken&, const PatternToken&) = default;
};

using PatternSeq = std::vector<PatternToken>;

/// Complexity n-k certified by a catalog row, stored as the offset k.
struct CertifiedClass {
  unsigned offset = 0;
  unsigned at(std::size_t n) const { return static_cast<unsigned>(n) - offset; }
  friend bool operator==(const CertifiedClass&, const CertifiedClass&) = default;
};

struct PatternRow {
  std::string label;
  PatternSeq tokens;
  std::optional<PatternSeq> exclusion;
  /// Names of stars of which at least one must match a nonempty factor.
  std::vector<char> nonempty;
  std::optional<CertifiedClass> certified;

  friend bool operator==(const PatternRow&, const PatternRow&) = default;
};

/// Catalog labels carry their class: L1 -> n-1, L2-* -> n-2, T* -> n-3.
inline std::optional<CertifiedClass> certified_class_for_label(
    std::string_view label) {
  if (label == "L1") return CertifiedClass{1};
  if (label.starts_with("L2-")) return CertifiedClass{2};
  if (label.size() >= 2 && label[0] == 'T' && std::isdigit(
          static_cast<unsigned char>(label[1])))
    return CertifiedClass{3};
  return std::nullopt;
}

class PatternSyntaxError : public std::invalid_argument {
 public:
  PatternSyntaxError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " +
                              std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

class PatternParser {
 public:
  explicit PatternParser(std::string_view text) : text_(text) {}

  PatternRow parse_row() {
    PatternRow row;
    if (auto colon = text_.find(':'); colon != std::string_view::npos) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < colon && is_label_char(text_[pos_])) ++pos_;
      row.label = std::string(text_.substr(start, pos_ - start));
      skip_ws();
      if (row.label.empty() || pos_ != colon) fail("malformed label");
      ++pos_;
    }
    row.tokens = parse_seq();
    if (row.tokens.empty()) fail("expected a token");
    if (accept_keyword("minus")) {
      expect('{');
      row.exclusion = parse_seq();
      if (row.exclusion->empty()) fail("empty exclusion");
      expect('}');
    }
    if (accept_keyword("where")) {
      if (!accept_keyword("nonempty")) fail("expected 'nonempty'");
      expect('(');
      do {
        skip_ws();
        if (pos_ >= text_.size() || !std::isupper(uc(text_[pos_])))
          fail("expected star name");
        char name = text_[pos_++];
        if (std::find(row.nonempty.begin(), row.nonempty.end(), name) !=
            row.nonempty.end())
          fail("repeated name in constraint");
        row.nonempty.push_back(name);
      } while (accept('|'));
      expect(')');
    }
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");

    std::vector<char> names;
    collect_names(row.tokens, names);
    for (char c : row.nonempty)
      if (std::find(names.begin(), names.end(), c) == names.end())
        fail(std::string("constraint names unknown star '") + c + "'");
    if (row.exclusion) collect_names(*row.exclusion, names);
    row.certified = certified_class_for_label(row.label);
    return row;
  }

 private:
  static unsigned char uc(char c) { return static_cast<unsigned char>(c); }
  static bool is_label_char(char c) {
    return std::isalnum(uc(c)) || c == '-' || c == '_';
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw PatternSyntaxError(what, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(uc(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool at_keyword(std::string_view kw) {
    skip_ws();
    if (text_.substr(pos_, kw.size()) != kw) return false;
    std::size_t end = pos_ + kw.size();
    return end == text_.size() || !std::isalnum(uc(text_[end]));
  }

  bool accept_keyword(std::string_view kw) {
    if (!at_keyword(kw)) return false;
    pos_ += kw.size();
    return true;
  }

  unsigned parse_int() {
    std::size_t start = pos_;
    unsigned long v = 0;
    while (pos_ < text_.size() && std::isdigit(uc(text_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(text_[pos_] - '0');
      if (v > 1000000) fail("integer too large");
      ++pos_;
    }
    if (pos_ == start) {
      pos_ = start;
      fail("expected integer");
    }
    return static_cast<unsigned>(v);
  }

  PatternSeq parse_seq() {
    PatternSeq seq;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size() || at_keyword("minus") || at_keyword("where"))
        break;
      char c = text_[pos_];
      if (c == '}' || c == '|') break;
      if (c == '*') {
        ++pos_;
        char name = 0;
        if (pos_ < text_.size() && std::isupper(uc(text_[pos_])))
          name = text_[pos_++];
        seq.push_back(PatternToken::star(name));
      } else if (c == '?') {
        ++pos_;
        seq.push_back(PatternToken::any_one());
      } else if (c == 'n' &&
                 (pos_ + 1 == text_.size() || !std::isalnum(uc(text_[pos_ + 1])))) {
        ++pos_;
        seq.push_back(PatternToken::rel(0));
      } else if (c == '(') {
        ++pos_;
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != 'n') fail("expected 'n'");
        ++pos_;
        expect('-');
        skip_ws();
        unsigned k = parse_int();
        expect(')');
        seq.push_back(PatternToken::rel(k));
      } else if (std::isdigit(uc(c))) {
        std::size_t start = pos_;
        unsigned v = parse_int();
        if (v == 0) {
          pos_ = start;
          fail("letters are positive");
        }
        seq.push_back(PatternToken::abs(v));
      } else if (c == '{') {
        ++pos_;
        std::vector<PatternSeq> branches;
        do {
          PatternSeq b = parse_seq();
          if (b.empty()) fail("empty alternation branch");
          branches.push_back(std::move(b));
        } while (accept('|'));
        expect('}');
        if (branches.size() < 2) fail("alternation needs two branches");
        seq.push_back(PatternToken::alt(std::move(branches)));
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
    }
    return seq;
  }

  void collect_names(const PatternSeq& seq, std::vector<char>& names) {
    for (const auto& t : seq) {
      if (t.kind == PatternToken::Kind::star && t.name != 0) {
        if (std::find(names.begin(), names.end(), t.name) != names.end())
          throw PatternSyntaxError(
              std::string("duplicate star name '") + t.name + "'", pos_);
        names.push_back(t.name);
      }
      for (const auto& b : t.branches) collect_names(b, names);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline PatternRow parse_pattern(std::string_view text) {
  return detail::PatternParser(text).parse_row();
}

inline std::string to_string(const PatternSeq& seq);

inline std::string to_string(const PatternToken& t) {
  using K = PatternToken::Kind;
  switch (t.kind) {
    case K::star:
      return t.name ? std::string("*") + t.name : std::string("*");
    case K::any_one:
      return "?";
    case K::rel_value:
      return t.value == 0 ? std::string("n")
                          : "(n-" + std::to_string(t.value) + ")";
    case K::abs_value:
      return std::to_string(t.value);
    case K::alt: {
      std::string s = "{ ";
      for (std::size_t i = 0; i < t.branches.size(); ++i) {
        if (i) s += " | ";
        s += to_string(t.branches[i]);
      }
      return s + " }";
    }
  }
  return {};
}

inline std::string to_string(const PatternSeq& seq) {
  std::string s;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) s += ' ';
    s += to_string(seq[i]);
  }
  return s;
}

inline std::string to_string(const PatternRow& row) {
  std::string s;
  if (!row.label.empty()) s = row.label + ": ";
  s += to_string(row.tokens);
  if (row.exclusion) s += " minus { " + to_string(*row.exclusion) + " }";
  if (!row.nonempty.empty()) {
    s += " where nonempty(";
    for (std::size_t i = 0; i < row.nonempty.size(); ++i) {
      if (i) s += '|';
      s += row.nonempty[i];
    }
    s += ')';
  }
  return s;
}

/// A pattern sequence resolved against a fixed subject length n, with
/// alternations expanded into separate flat alternatives.
class CompiledSeq {
 public:
  CompiledSeq() = default;

  CompiledSeq(const PatternSeq& seq, std::size_t n,
              std::span<const char> nonempty = {}) {
    std::vector<Flat> partial(1);
    expand(seq, n, nonempty, partial);
    for (auto& f : partial) {
      if (f.dead) continue;
      f.fixed_after.assign(f.toks.size() + 1, 0);
      for (std::size_t i = f.toks.size(); i-- > 0;)
        f.fixed_after[i] =
            f.fixed_after[i + 1] + (f.toks[i].kind == Tok::Kind::star ? 0 : 1);
      alternatives_.push_back(std::move(f));
    }
    constrained_ = !nonempty.empty();
  }

  /// `pos_of[v]` is the index of letter v in w (entries 1..n).
  bool matches(std::span<const Letter> w,
               std::span<const std::size_t> pos_of) const {
    for (const auto& f : alternatives_)
      if (match_from(f, w, pos_of, 0, 0, !constrained_)) return true;
    return false;
  }

 private:
  struct Tok {
    enum class Kind : unsigned char { star, any_one, value } kind;
    bool watched = false;  // star named in the nonempty constraint
    Letter letter = 0;
  };

  struct Flat {
    std::vector<Tok> toks;
    std::vector<std::size_t> fixed_after;  // non-star tokens in toks[i..]
    bool dead = false;  // a value resolved outside 1..n
  };

  static void expand(const PatternSeq& seq, std::size_t n,
                     std::span<const char> nonempty, std::vector<Flat>& out) {
    using K = PatternToken::Kind;
    for (const auto& t : seq) {
      if (t.kind == K::alt) {
        std::vector<Flat> next;
        for (const auto& branch : t.branches) {
          std::vector<Flat> copy = out;
          expand(branch, n, nonempty, copy);
          for (auto& f : copy) next.push_back(std::move(f));
        }
        out = std::move(next);
        continue;
      }
      Tok tok{Tok::Kind::any_one};
      if (t.kind == K::star) {
        tok.kind = Tok::Kind::star;
        tok.watched = t.name != 0 && std::find(nonempty.begin(), nonempty.end(),
                                               t.name) != nonempty.end();
      } else if (t.kind == K::rel_value || t.kind == K::abs_value) {
        tok.kind = Tok::Kind::value;
        long v = t.kind == K::rel_value ? static_cast<long>(n) - t.value
                                        : static_cast<long>(t.value);
        bool ok = v >= 1 && v <= static_cast<long>(n);
        tok.letter = ok ? static_cast<Letter>(v) : 0;
        if (!ok)
          for (auto& f : out) f.dead = true;
      }
      for (auto& f : out) f.toks.push_back(tok);
    }
  }

  static bool match_from(const Flat& f, std::span<const Letter> w,
                         std::span<const std::size_t> pos_of, std::size_t ti,
                         std::size_t pos, bool constraint_met) {
    const std::size_t n = w.size();
    while (ti < f.toks.size()) {
      const Tok& t = f.toks[ti];
      if (n - pos < f.fixed_after[ti]) return false;
      if (t.kind == Tok::Kind::value) {
        if (w[pos] != t.letter) return false;
      } else if (t.kind == Tok::Kind::star) {
        std::size_t max_len = n - pos - f.fixed_after[ti + 1];
        if (ti + 1 == f.toks.size()) {
          // Trailing star swallows the rest.
          return constraint_met || (t.watched && max_len > 0);
        }
        const Tok& next = f.toks[ti + 1];
        if (next.kind == Tok::Kind::value) {
          // Letters are distinct: the star must end right before `next`.
          std::size_t at = pos_of[next.letter];
          if (at < pos || at - pos > max_len) return false;
          constraint_met = constraint_met || (t.watched && at > pos);
          pos = at;
          ++ti;
          continue;
        }
        for (std::size_t len = 0; len <= max_len; ++len)
          if (match_from(f, w, pos_of, ti + 1, pos + len,
                         constraint_met || (t.watched && len > 0)))
            return true;
        return false;
      }
      ++pos;
      ++ti;
    }
    return pos == n && constraint_met;
  }

  std::vector<Flat> alternatives_;
  bool constrained_ = false;
};

/// A row compiled for subjects of length n.
class CompiledRow {
 public:
  CompiledRow(const PatternRow& row, std::size_t n)
      : main_(row.tokens, n, row.nonempty) {
    if (row.exclusion) exclusion_ = CompiledSeq(*row.exclusion, n);
  }

  bool matches(std::span<const Letter> w,
               std::span<const std::size_t> pos_of) const {
    return main_.matches(w, pos_of) &&
           !(exclusion_ && exclusion_->matches(w, pos_of));
  }

 private:
  CompiledSeq main_;
  std::optional<CompiledSeq> exclusion_;
};

namespace detail {

inline std::array<std::size_t, kMaxLength + 1> positions(
    std::span<const Letter> w) {
  std::array<std::size_t, kMaxLength + 1> pos_of{};
  for (std::size_t i = 0; i < w.size(); ++i) pos_of[w[i]] = i;
  return pos_of;
}

}  // namespace detail

/// True iff w lies in the word set of `row`. Requires a standard permutation.
inline bool matches(const Word& w, const PatternRow& row) {
  require_standard(w, "matches");
  auto pos_of = detail::positions(w.letters());
  return CompiledRow(row, w.size()).matches(w.letters(), pos_of);
}

}  // namespace stacksort
