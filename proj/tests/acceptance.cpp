// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "stacksort/stacksort.hpp"

namespace {

using namespace stacksort;
namespace fs = std::filesystem;

constexpr std::size_t kMaxN = 11;

class Criterion {
 public:
  explicit Criterion(std::string title) : title_(std::move(title)) {}

  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }

  template <class A, class B>
  void expect_eq(const A& got, const B& want, const std::string& what) {
    std::ostringstream s;
    s << what << ": got " << got << ", want " << want;
    expect(got == want, s.str());
  }

  bool passed() const { return failed_ == 0; }
  const std::string& title() const { return title_; }
  const std::vector<std::string>& failures() const { return failures_; }
  std::size_t failed() const { return failed_; }

 private:
  std::string title_;
  std::vector<std::string> failures_;
  std::size_t failed_ = 0;
};

struct CliResult {
  int code;
  std::string out;
};

CliResult cli(const std::string& args) {
  std::string cmd = std::string(STACKSORT_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe))
    out.append(buf.data(), got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

// Censuses for n = 2..kMaxN, computed once.
const std::map<std::size_t, Census>& censuses() {
  static const std::map<std::size_t, Census> all = [] {
    std::map<std::size_t, Census> m;
    for (std::size_t n = 2; n <= kMaxN; ++n) {
      CensusOptions opt;
      opt.n = n;
      opt.shards = n >= 9 ? 16 : 1;
      m.emplace(n, run_census(opt));
    }
    return m;
  }();
  return all;
}

const Census& census(std::size_t n) { return censuses().at(n); }

BigInt big(std::uint64_t v) { return BigInt(v); }

void worked_examples(Criterion& c) {
  c.expect_eq(to_string(stack_sort(parse_word("42513"))), "24135", "S(42513)");
  c.expect_eq(to_string(stack_sort_pass(parse_word("42513"))), "24135",
              "single pass S(42513)");
  CliResult r = cli("sort 42513");
  c.expect_eq(r.out, "24135\n", "cli sort 42513");
  c.expect_eq(r.code, 0, "cli exit code");

  const std::vector<unsigned> want = {0, 1, 1, 2, 1, 1};
  std::vector<unsigned> got, got_cli;
  oracle::for_each_permutation(3, [&](const std::vector<Letter>& v) {
    Word w(v);
    got.push_back(complexity(w));
    got_cli.push_back(static_cast<unsigned>(
        std::stoul(cli("complexity " + to_string(w)).out)));
  });
  c.expect(got == want, "S_3 complexity table");
  c.expect(got_cli == want, "S_3 complexity table via cli");
}

void glob_example(Criterion& c) {
  const std::set<std::string> want = {"23514", "24513", "32514",
                                      "34512", "42513", "43512"};
  PatternRow row = parse_pattern("* n 1 ?");
  std::set<std::string> got;
  oracle::for_each_permutation(5, [&](const std::vector<Letter>& v) {
    if (matches(Word(v), row)) got.insert(to_string(Word(v)));
    c.expect(matches(Word(v), row) == oracle::naive_matches(v, row),
             "matcher agrees with naive matcher on " + to_string(Word(v)));
  });
  c.expect(got == want, "library match set");
  auto out = lines(cli("match '* n 1 ?' --n 5").out);
  c.expect(std::set<std::string>(out.begin(), out.end()) == want &&
               out.size() == want.size(),
           "cli match set");
}

void lemma1(Criterion& c) {
  for (std::size_t n = 2; n <= 10; ++n) {
    const auto tag = "n=" + std::to_string(n);
    c.expect_eq(big(census(n).exactly(static_cast<long>(n) - 1)),
                oracle::fact(static_cast<long>(n) - 2), "class n-1 " + tag);
    c.expect_eq(evaluate(find_formula("lemma1").formula, static_cast<unsigned>(n)),
                oracle::fact(static_cast<long>(n) - 2), "registry lemma1 " + tag);
    std::uint64_t members = 0, bad_suffix = 0;
    oracle::for_each_permutation(n, [&](const std::vector<Letter>& v) {
      if (complexity_unchecked(v) != n - 1) return;
      ++members;
      if (v[n - 2] != n || v[n - 1] != 1) ++bad_suffix;
    });
    c.expect_eq(big(members), oracle::fact(static_cast<long>(n) - 2),
                "enumerated class n-1 " + tag);
    c.expect_eq(bad_suffix, 0u, "members without suffix n1 " + tag);
  }
}

void lemma2_proposition(Criterion& c) {
  for (std::size_t n = 4; n <= 10; ++n) {
    const auto tag = " n=" + std::to_string(n);
    const long ln = static_cast<long>(n);
    const auto un = static_cast<unsigned>(n);
    c.expect_eq(big(census(n).exactly(ln - 2)), oracle::printed_lemma2(ln),
                "class n-2" + tag);
    c.expect_eq(evaluate(find_formula("lemma2").formula, un),
                oracle::printed_lemma2(ln), "registry lemma2" + tag);
    c.expect_eq(big(census(n).at_most(ln - 3)), oracle::printed_proposition(ln),
                "classes <= n-3" + tag);
    c.expect_eq(evaluate(find_formula("proposition").formula, un),
                oracle::printed_proposition(ln), "registry proposition" + tag);
  }
}

void theorem1_table(Criterion& c) {
  const Catalog& cat = Catalog::standard();
  c.expect_eq(oracle::printed_theorem1(6), BigInt(198), "class n-3 formula at n=6");
  for (std::size_t n = 6; n <= 9; ++n) {
    const Census& cs = census(n);
    const long ln = static_cast<long>(n);
    const auto tag = " n=" + std::to_string(n);
    c.expect_eq(big(cs.exactly(ln - 3)), oracle::printed_theorem1(ln),
                "class n-3" + tag);
    c.expect_eq(evaluate(find_formula("theorem1").formula, static_cast<unsigned>(n)),
                oracle::printed_theorem1(ln), "registry theorem1" + tag);
    std::map<unsigned, std::uint64_t> by_offset;
    std::size_t table_rows = 0;
    for (const auto& row : cat.rows()) {
      by_offset[row.certified->offset] += cs.row_count(row.label);
      if (row.certified->offset != 3) continue;
      ++table_rows;
      c.expect_eq(big(cs.row_count(row.label)), oracle::printed_row(row.label, ln),
                  "row " + row.label + tag);
    }
    c.expect_eq(table_rows, 22u, "table rows");
    c.expect_eq(big(by_offset[3]), oracle::printed_row_total(ln),
                "sum of table rows" + tag);
    for (unsigned off = 1; off <= 3; ++off)
      c.expect_eq(by_offset[off], cs.exactly(ln - off),
                  "rows partition class n-" + std::to_string(off) + tag);
    c.expect_eq(cs.tally.mismatches, 0u, "classification mismatches" + tag);
  }
}

void corollary(Criterion& c) {
  for (std::size_t n = 6; n <= 10; ++n) {
    const long ln = static_cast<long>(n);
    const auto tag = " n=" + std::to_string(n);
    c.expect_eq(big(census(n).at_most(ln - 4)), oracle::printed_corollary(ln),
                "classes <= n-4" + tag);
    c.expect_eq(evaluate(find_formula("corollary").formula, static_cast<unsigned>(n)),
                oracle::printed_corollary(ln), "registry corollary" + tag);
  }
  c.expect_eq(oracle::printed_corollary(6), BigInt(408), "value at n=6");
  std::uint64_t two_sortable = 0;
  oracle::for_each_permutation(6, [&](const std::vector<Letter>& v) {
    if (stack_sort(stack_sort(Word(v))).is_identity()) ++two_sortable;
  });
  c.expect_eq(two_sortable, 408u, "brute-force 2-stack-sortable count in S_6");
  // 2(3n)! / ((n+1)!(2n+1)!)
  c.expect_eq(2 * oracle::fact(18) / (oracle::fact(7) * oracle::fact(13)),
              BigInt(408), "2-stack-sortable closed form at n=6");
}

void conjecture1(Criterion& c) {
  c.expect_eq(oracle::printed_conjecture1(8), BigInt(9678), "value at n=8");
  for (std::size_t n = 8; n <= kMaxN; ++n) {
    const long ln = static_cast<long>(n);
    const auto tag = " n=" + std::to_string(n);
    c.expect_eq(big(census(n).exactly(ln - 4)), oracle::printed_conjecture1(ln),
                "class n-4" + tag);
    c.expect_eq(big(census(n).at_most(ln - 5)),
                oracle::printed_conjecture1_cumulative(ln), "classes <= n-5" + tag);
  }
  for (long n = 8; n <= 60; ++n) {
    c.expect(oracle::printed_conjecture1_cumulative(n) ==
                 oracle::printed_corollary(n) - oracle::printed_conjecture1(n),
             "printed forms disagree at n=" + std::to_string(n));
    c.expect(conjecture1_forms_agree(static_cast<unsigned>(n)),
             "registry forms disagree at n=" + std::to_string(n));
  }
}

void conjecture2(Criterion& c) {
  const std::map<unsigned, std::vector<long long>> want = {
      {1, {1}},
      {2, {16, 7}},
      {3, {1188, 776, 188}},
      {4, {193560, 150540, 61188, 10248}}};
  std::vector<Census> all;
  for (const auto& [n, cs] : censuses()) all.push_back(cs);
  for (const auto& [k, a] : want) {
    const auto tag = " k=" + std::to_string(k);
    FitResult fit = fit_binomial(k, class_series(all, k));
    std::vector<BigInt> expected(a.begin(), a.end());
    c.expect(fit.coefficients == expected, "coefficients" + tag);
    c.expect(fit.natural, "natural" + tag);
    c.expect(fit.consistent, "consistent" + tag);
    c.expect(fit.exact_prefactor, "exact prefactor" + tag);
    if (3 * k <= kMaxN) c.expect(!fit.checked.empty(), "no extra data point" + tag);
  }
}

void check_bounds(Criterion& c, const std::vector<Letter>& v) {
  const unsigned ssc = complexity_unchecked(v);
  const ForbiddenReport rep = forbidden_report(v);
  const ComplexityBounds b = complexity_bounds(rep);
  const std::string tag = to_string(Word(v));
  c.expect(b.lower <= ssc && ssc <= b.upper, "bounds do not bracket " + tag);
  // ssc > k implies a forbidden pattern of order k; the largest order
  // witnesses every smaller k.
  if (ssc > 0) {
    c.expect(rep.max_order + 1 >= ssc, "no pattern of order ssc-1 in " + tag);
    c.expect(rep.witness && rep.witness->b.size() == rep.max_order &&
                 oracle::is_forbidden(v, *rep.witness, false),
             "bad witness for " + tag);
  }
  if (rep.max_uninterrupted_order > 0)
    c.expect(rep.uninterrupted_witness &&
                 rep.uninterrupted_witness->b.size() ==
                     rep.max_uninterrupted_order &&
                 oracle::is_forbidden(v, *rep.uninterrupted_witness, true),
             "bad uninterrupted witness for " + tag);
}

void lemma3(Criterion& c) {
  for (std::size_t n = 1; n <= 8; ++n)
    oracle::for_each_permutation(
        n, [&](const std::vector<Letter>& v) { check_bounds(c, v); });
  std::mt19937_64 rng(20261019);
  std::uniform_int_distribution<std::size_t> len(1, 20);
  for (int i = 0; i < 100000; ++i)
    check_bounds(c, oracle::random_permutation(rng, len(rng)));
}

void infrastructure(Criterion& c) {
  for (std::size_t n = 1; n <= 8; ++n) {
    std::uint64_t r = 0;
    oracle::for_each_permutation(n, [&](const std::vector<Letter>& v) {
      Word w(v);
      c.expect(stack_sort_pass(w) == stack_sort(w),
               "pass differs from recursion on " + to_string(w));
      c.expect(unrank(n, Rank{r}) == w, "unrank out of lexicographic order");
      c.expect(rank(w).value == r, "rank(unrank(r)) != r");
      ++r;
    });
    c.expect_eq(r, factorial(n), "permutations of length " + std::to_string(n));
  }

  CensusOptions opt;
  opt.n = 8;
  const Census one = run_census(opt);
  for (std::size_t shards : {4, 16}) {
    opt.shards = shards;
    const Census s = run_census(opt);
    c.expect(s == one, "census differs with " + std::to_string(shards) + " shards");
    c.expect_eq(checksum(s), checksum(one),
                "checksum with " + std::to_string(shards) + " shards");
  }

  const fs::path dir = fs::temp_directory_path() / "stacksort_acceptance_ckpt";
  fs::remove_all(dir);
  CensusOptions first;
  first.n = 9;
  first.shards = 16;
  first.checkpoint_dir = dir;
  first.stop_after = 5;
  bool interrupted = false;
  try {
    run_census(first);
  } catch (const CensusInterrupted& e) {
    interrupted = e.shards_done() == 5;
  }
  c.expect(interrupted, "first run was not interrupted after 5 shards");
  CensusOptions second = first;
  second.stop_after.reset();
  second.resume = true;
  std::size_t reused = 0;
  second.on_shard = [&](ShardRange, bool resumed) { reused += resumed; };
  const Census resumed = run_census(second);
  c.expect_eq(reused, 5u, "shards reused on resume");
  c.expect(resumed == census(9), "resumed census differs from single shot");
  c.expect_eq(checksum(resumed), checksum(census(9)), "resumed checksum");
  fs::remove_all(dir);
}

void descent_polynomials(Criterion& c) {
  for (std::size_t n = 6; n <= 9; ++n) {
    const auto tag = " n=" + std::to_string(n);
    auto poly = descent_polynomial(census(n));
    std::uint64_t sum = 0;
    for (auto v : poly) sum += v;
    c.expect_eq(big(sum), oracle::printed_corollary(static_cast<long>(n)),
                "sum of coefficients" + tag);
    c.expect_eq(poly.front(), 1u, "c_0" + tag);
  }
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>>
      criteria = {
          {"worked example: sort 42513 and the S_3 complexity table",
           worked_examples},
          {"glob example: '* n 1 ?' over S_5", glob_example},
          {"class n-1: (n-2)! members, all ending n1, 2<=n<=10", lemma1},
          {"class n-2 and classes <= n-3, 4<=n<=10", lemma2_proposition},
          {"class n-3 and every table row, 6<=n<=9", theorem1_table},
          {"classes <= n-4, 6<=n<=10, 2-stack-sortable cross-check", corollary},
          {"class n-4 conjecture, both forms, 8<=n<=11", conjecture1},
          {"general n-k fits for k=1..4", conjecture2},
          {"forbidden-pattern bounds, exhaustive n<=8 plus 1e5 random n<=20",
           lemma3},
          {"operator, rank, shard and checkpoint equivalence", infrastructure},
          {"descent polynomial, 6<=n<=9", descent_polynomials},
      };

  const auto warm = Clock::now();
  try {
    censuses();
  } catch (const std::exception& e) {
    std::printf("census failed: %s\n", e.what());
  }
  std::printf("censuses n=2..%zu computed in %.2fs\n", kMaxN,
              std::chrono::duration<double>(Clock::now() - warm).count());

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c(criteria[i].first);
    const auto start = Clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("%s %zu %s (%.2fs)\n", c.passed() ? "PASS" : "FAIL", i + 1,
                c.title().c_str(), secs);
    for (const auto& f : c.failures()) std::printf("    %s\n", f.c_str());
    if (c.failed() > c.failures().size())
      std::printf("    ... %zu more\n", c.failed() - c.failures().size());
    std::fflush(stdout);
    if (!c.passed()) ++failed;
  }
  std::printf("%s: %zu criteria, %d failed\n", failed ? "FAIL" : "PASS",
              criteria.size(), failed);
  return failed ? 1 : 0;
}
