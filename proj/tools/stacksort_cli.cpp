// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage error, 3 runtime failure (I/O, corrupt checkpoint).

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stacksort/stacksort.hpp"

namespace {

using namespace stacksort;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string join(const std::vector<Letter>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

void print_census_table(const Census& c, std::ostream& out) {
  out << "n " << c.n << "\n";
  out << "permutations " << c.tally.total() << "\n";
  out << "shards " << c.shards << "\n";
  for (std::size_t k = 0; k < c.tally.by_complexity.size(); ++k)
    out << "complexity " << k << " " << c.tally.by_complexity[k] << "\n";
  for (std::size_t i = 0; i < c.row_labels.size(); ++i)
    out << "row " << c.row_labels[i] << " " << c.tally.by_row[i] << "\n";
  if (c.classified)
    out << "classification_mismatches " << c.tally.mismatches << "\n";
  out << "checksum " << checksum(c) << "\n";
}

void print_verify(const VerifyReport& rep, std::ostream& out) {
  for (const auto& item : rep.items)
    out << (item.pass ? "PASS " : "FAIL ") << item.name
        << " formula=" << item.formula_value << " census=" << item.census_value
        << "\n";
  out << (rep.all_pass() ? "ALL PASS" : "SOME FAILED") << " n=" << rep.n
      << "\n";
}

std::string fit_line(const FitResult& f) {
  std::string s = "k=" + std::to_string(f.k) + " a=(";
  for (std::size_t i = 0; i < f.coefficients.size(); ++i) {
    if (i) s += ",";
    s += f.coefficients[i].str();
  }
  s += ") natural=" + std::string(f.natural ? "true" : "false");
  s += " consistent=" + std::string(f.consistent ? "true" : "false");
  s += " exact_prefactor=" + std::string(f.exact_prefactor ? "true" : "false");
  s += " checked=";
  for (std::size_t i = 0; i < f.checked.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(f.checked[i]);
  }
  if (f.checked.empty()) s += "none";
  return s;
}

void check_format(const std::string& format) {
  if (format != "table" && format != "json" && format != "csv")
    throw UsageError("unknown format '" + format + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stack-sorting complexity laboratory"};
  app.require_subcommand(1);

  std::string word_text, pattern_text, format = "table", out_file, checkpoint;
  std::size_t passes = 1, n = 0, shards = 1, threads = 0, k = 0, n_max = 0;
  std::size_t stop_after = 0;
  bool resume = false, no_classify = false;
  std::vector<std::string> census_files;

  auto* sort_cmd = app.add_subcommand("sort", "Apply the stack-sorting operator");
  sort_cmd->add_option("word", word_text, "Permutation, e.g. 42513 or 4,2,5,1,3")
      ->required();
  sort_cmd->add_option("--passes", passes, "Number of passes k (prints S^k)");

  auto* cx_cmd = app.add_subcommand("complexity", "Stack-sorting complexity");
  cx_cmd->add_option("word", word_text)->required();

  auto* des_cmd =
      app.add_subcommand("descents", "Descent count, or the descent polynomial");
  des_cmd->add_option("word", word_text);
  des_cmd->add_option("--n", n, "Descent polynomial of the (n-4)-sortable class");
  des_cmd->add_option("--census", census_files, "Census report to read");

  auto* fb_cmd = app.add_subcommand("forbidden", "Forbidden-pattern report");
  fb_cmd->add_option("word", word_text)->required();

  auto* cl_cmd = app.add_subcommand("classify", "First matching catalog row");
  cl_cmd->add_option("word", word_text)->required();

  auto* match_cmd = app.add_subcommand("match", "Glob-pattern membership");
  match_cmd->add_option("pattern", pattern_text)->required();
  match_cmd->add_option("word", word_text);
  match_cmd->add_option("--n", n, "List every permutation of length n matching");

  auto* census_cmd = app.add_subcommand("census", "Exhaustive census of S_n");
  census_cmd->add_option("--n", n)->required();
  census_cmd->add_option("--shards", shards);
  census_cmd->add_option("--threads", threads, "0 = all cores");
  census_cmd->add_option("--out", out_file, "Write the JSON report here");
  census_cmd->add_option("--checkpoint", checkpoint, "Shard checkpoint directory");
  census_cmd->add_flag("--resume", resume, "Reuse shards found in --checkpoint");
  census_cmd->add_flag("--no-classify", no_classify, "Skip catalog classification");
  census_cmd->add_option("--stop-after", stop_after,
                         "Stop after computing this many shards");
  census_cmd->add_option("--format", format, "table|json|csv");

  auto* verify_cmd =
      app.add_subcommand("verify", "Check every formula against a census");
  verify_cmd->add_option("--n", n);
  verify_cmd->add_option("--census", census_files, "Census report to read");
  verify_cmd->add_option("--shards", shards);
  verify_cmd->add_option("--threads", threads);
  verify_cmd->add_option("--format", format, "table|json");

  auto* fit_cmd = app.add_subcommand("fit", "Fit the general n-k binomial form");
  fit_cmd->add_option("--k", k)->required();
  fit_cmd->add_option("--census", census_files, "Census reports to read");
  fit_cmd->add_option("--n-max", n_max, "Compute censuses for n <= n-max instead");
  fit_cmd->add_option("--threads", threads);
  fit_cmd->add_option("--format", format, "table|json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  auto& out = std::cout;
  try {
    check_format(format);
    auto need_word = [&] { return parse_word(word_text); };

    if (*sort_cmd) {
      out << to_string(stack_sort_passes(need_word(), passes)) << "\n";
      return 0;
    }
    if (*cx_cmd) {
      out << complexity(need_word()) << "\n";
      return 0;
    }
    if (*fb_cmd) {
      Word w = need_word();
      require_standard(w, "forbidden");
      auto rep = forbidden_report(w);
      auto b = complexity_bounds(rep);
      out << "max_order " << rep.max_order << "\n";
      out << "max_uninterrupted_order " << rep.max_uninterrupted_order << "\n";
      auto print_w = [&](const char* tag, const std::optional<ForbiddenWitness>& x) {
        if (!x) {
          out << tag << " none\n";
          return;
        }
        out << tag << " B=" << (x->b.empty() ? "-" : join(x->b, ","))
            << " c=" << x->c << " a=" << x->a << "\n";
      };
      print_w("witness", rep.witness);
      print_w("uninterrupted_witness", rep.uninterrupted_witness);
      out << "bounds " << b.lower << " " << b.upper << "\n";
      return 0;
    }
    if (*cl_cmd) {
      Word w = need_word();
      auto c = classify(w, Catalog::standard());
      if (c)
        out << c->label << " n-" << c->certified.offset << " "
            << c->certified.at(w.size()) << "\n";
      else
        out << "none <=n-4\n";
      return 0;
    }
    if (*match_cmd) {
      PatternRow row = parse_pattern(pattern_text);
      if (!word_text.empty()) {
        out << (matches(need_word(), row) ? "true" : "false") << "\n";
        return 0;
      }
      if (n == 0 || n > 10) throw UsageError("match: give a word or --n in [1, 10]");
      Word w = Word::identity(n);
      std::vector<Letter> v(w.begin(), w.end());
      do {
        Word cur(v, Word::unchecked_tag{});
        if (matches(cur, row)) out << to_string(cur) << "\n";
      } while (std::next_permutation(v.begin(), v.end()));
      return 0;
    }
    if (*des_cmd) {
      if (!word_text.empty()) {
        out << descents(need_word()) << "\n";
        return 0;
      }
      Census c = !census_files.empty() ? load_census(census_files.front())
                                       : run_census(n, 1, threads);
      auto poly = descent_polynomial(c);
      for (std::size_t i = 0; i < poly.size(); ++i)
        out << (i ? " " : "") << poly[i];
      out << "\n";
      return 0;
    }
    if (*census_cmd) {
      CensusOptions opt;
      opt.n = n;
      opt.shards = shards;
      opt.threads = threads;
      opt.classify = !no_classify;
      if (!checkpoint.empty()) opt.checkpoint_dir = checkpoint;
      opt.resume = resume;
      if (stop_after) opt.stop_after = stop_after;
      Census c;
      try {
        c = run_census(opt);
      } catch (const CensusInterrupted& e) {
        std::cerr << e.what() << "; rerun with --resume to finish\n";
        return kExitRuntime;
      }
      auto rep = verify(c);
      if (!out_file.empty()) save_report(out_file, c, &rep);
      if (format == "json")
        out << census_json(c, &rep).dump(2) << "\n";
      else if (format == "csv")
        out << census_csv(c);
      else
        print_census_table(c, out);
      return 0;
    }
    if (*verify_cmd) {
      Census c;
      if (!census_files.empty()) {
        c = load_census(census_files.front());
      } else {
        if (n == 0) throw UsageError("verify: give --n or --census");
        c = run_census(n, shards, threads);
      }
      auto rep = verify(c);
      if (format == "json")
        out << verify_json(rep).dump(2) << "\n";
      else
        print_verify(rep, out);
      return rep.all_pass() ? 0 : kExitFail;
    }
    if (*fit_cmd) {
      std::vector<Census> censuses;
      for (const auto& f : census_files) censuses.push_back(load_census(f));
      if (census_files.empty()) {
        if (n_max == 0) throw UsageError("fit: give --census files or --n-max");
        for (std::size_t m = 2 * k; m <= n_max; ++m) {
          CensusOptions opt;
          opt.n = m;
          opt.threads = threads;
          opt.classify = false;
          censuses.push_back(run_census(opt));
        }
      }
      auto fit = fit_binomial(static_cast<unsigned>(k), class_series(censuses,
                                                   static_cast<unsigned>(k)));
      if (format == "json")
        out << fit_json(fit).dump(2) << "\n";
      else
        out << fit_line(fit) << "\n";
      return fit.natural && fit.consistent ? 0 : kExitFail;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
