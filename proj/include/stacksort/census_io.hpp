#pragma once

// Report files, shard checkpoints and CSV export. Every count is written as
// a decimal string so no reader truncates it to a double.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "stacksort/census.hpp"
#include "stacksort/formula.hpp"

namespace stacksort {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string count_str(std::uint64_t v) { return std::to_string(v); }

inline std::uint64_t parse_count(const Json& j, const char* field) {
  if (!j.is_string())
    throw SchemaError(std::string(field) + ": counts must be decimal strings");
  const auto& s = j.get_ref<const std::string&>();
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw SchemaError(std::string(field) + ": bad count '" + s + "'");
  return v;
}

inline const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw SchemaError(std::string("missing field '") + name + "'");
  return j.at(name);
}

inline Json tally_json(const Census& c) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = c.n;
  j["classified"] = c.classified;
  Json by_c = Json::array();
  for (auto v : c.tally.by_complexity) by_c.push_back(count_str(v));
  j["counts_by_complexity"] = by_c;
  Json by_r = Json::object();
  for (std::size_t i = 0; i < c.row_labels.size(); ++i)
    by_r[c.row_labels[i]] = count_str(c.tally.by_row[i]);
  j["counts_by_row"] = by_r;
  j["classification_mismatches"] = count_str(c.tally.mismatches);
  Json dm = Json::array();
  for (const auto& row : c.tally.descents) {
    Json r = Json::array();
    for (auto v : row) r.push_back(count_str(v));
    dm.push_back(r);
  }
  j["descent_matrix"] = dm;
  return j;
}

inline Census tally_from_json(const Json& j) {
  try {
    if (field(j, "schema_version").get<int>() != kSchemaVersion)
      throw SchemaError("unsupported schema_version");
    Census c;
    c.n = field(j, "n").get<std::size_t>();
    if (c.n < 1 || c.n > kMaxCensusLength) throw SchemaError("n out of range");
    c.classified = field(j, "classified").get<bool>();
    for (const auto& v : field(j, "counts_by_complexity"))
      c.tally.by_complexity.push_back(parse_count(v, "counts_by_complexity"));
    const Json& rows = field(j, "counts_by_row");
    if (!rows.is_object()) throw SchemaError("counts_by_row must be an object");
    for (const auto& [label, v] : rows.items()) {
      c.row_labels.push_back(label);
      c.tally.by_row.push_back(parse_count(v, "counts_by_row"));
    }
    c.tally.mismatches = parse_count(field(j, "classification_mismatches"),
                                     "classification_mismatches");
    for (const auto& row : field(j, "descent_matrix")) {
      std::vector<std::uint64_t> r;
      for (const auto& v : row) r.push_back(parse_count(v, "descent_matrix"));
      c.tally.descents.push_back(std::move(r));
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed census document: ") + e.what());
  }
}

inline Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

/// Writes via a temporary file and rename so readers never see a torn file.
inline void write_atomically(const std::filesystem::path& path,
                             const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace detail

inline Json verify_json(const VerifyReport& v) {
  Json arr = Json::array();
  for (const auto& item : v.items)
    arr.push_back({{"name", item.name},
                   {"formula_value", item.formula_value.str()},
                   {"census_value", item.census_value.str()},
                   {"pass", item.pass}});
  return arr;
}

inline Json fit_json(const FitResult& f) {
  Json a = Json::array();
  for (const auto& x : f.coefficients) a.push_back(x.str());
  Json checked = Json::array();
  for (auto n : f.checked) checked.push_back(n);
  return {{"k", f.k},
          {"a", a},
          {"natural", f.natural},
          {"consistent", f.consistent},
          {"exact_prefactor", f.exact_prefactor},
          {"checked_n", checked}};
}

inline Json census_json(const Census& c, const VerifyReport* verify = nullptr,
                        const std::vector<FitResult>& fits = {}) {
  Json j = detail::tally_json(c);
  j["verify"] = verify ? verify_json(*verify) : Json::array();
  Json fa = Json::array();
  for (const auto& f : fits) fa.push_back(fit_json(f));
  j["fits"] = fa;
  j["shards"] = c.shards;
  j["checksum"] = checksum(c);
  return j;
}

/// Parses a report document, validating its checksum and the census
/// invariants.
inline Census census_from_json(const Json& j) {
  Census c = detail::tally_from_json(j);
  try {
    c.shards = detail::field(j, "shards").get<std::uint64_t>();
    if (detail::field(j, "checksum").get<std::string>() != checksum(c))
      throw SchemaError("checksum mismatch");
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed report: ") + e.what());
  }
  check_invariants(c);
  return c;
}

inline void save_report(const std::filesystem::path& path, const Census& c,
                        const VerifyReport* verify = nullptr,
                        const std::vector<FitResult>& fits = {}) {
  detail::write_atomically(path, census_json(c, verify, fits).dump(2) + "\n");
}

inline Census load_census(const std::filesystem::path& path) {
  return census_from_json(detail::read_json(path));
}

/// Checkpoint for one shard: the partial counts in the report schema plus
/// the rank range they cover.
inline Json shard_json(const Census& partial, ShardRange range) {
  Json j = detail::tally_json(partial);
  j["rank_begin"] = std::to_string(range.begin);
  j["rank_end"] = std::to_string(range.end);
  j["checksum"] = checksum(partial);
  return j;
}

inline std::filesystem::path shard_path(const std::filesystem::path& dir,
                                        ShardRange range) {
  return dir / ("shard_" + std::to_string(range.begin) + "_" +
                std::to_string(range.end) + ".json");
}

inline void save_shard(const std::filesystem::path& dir, const Census& partial,
                       ShardRange range) {
  detail::write_atomically(shard_path(dir, range),
                           shard_json(partial, range).dump() + "\n");
}

/// Loads and validates the checkpoint for `range`; nullopt when absent.
inline std::optional<Census> load_shard(const std::filesystem::path& dir,
                                        ShardRange range) {
  auto path = shard_path(dir, range);
  if (!std::filesystem::exists(path)) return std::nullopt;
  Json j = detail::read_json(path);
  Census c = detail::tally_from_json(j);
  try {
    if (detail::parse_count(detail::field(j, "rank_begin"), "rank_begin") !=
            range.begin ||
        detail::parse_count(detail::field(j, "rank_end"), "rank_end") !=
            range.end)
      throw SchemaError(path.string() + ": rank range mismatch");
    if (detail::field(j, "checksum").get<std::string>() != checksum(c))
      throw SchemaError(path.string() + ": checksum mismatch");
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
  if (c.tally.total() != range.size())
    throw SchemaError(path.string() + ": counts do not cover the rank range");
  return c;
}

/// Header `n,kind,key,count`; kind is `class` (key = complexity) or `row`
/// (key = catalog label).
inline std::string census_csv(const Census& c) {
  std::ostringstream out;
  out << "n,kind,key,count\n";
  for (std::size_t k = 0; k < c.tally.by_complexity.size(); ++k)
    out << c.n << ",class," << k << ',' << c.tally.by_complexity[k] << '\n';
  for (std::size_t i = 0; i < c.row_labels.size(); ++i)
    out << c.n << ",row," << c.row_labels[i] << ',' << c.tally.by_row[i]
        << '\n';
  return out.str();
}

}  // namespace stacksort
