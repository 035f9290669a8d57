#pragma once

// Sharded, multithreaded, resumable census driver.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "stacksort/census.hpp"
#include "stacksort/census_io.hpp"

namespace stacksort {

struct CensusOptions {
  std::size_t n = 0;
  std::size_t shards = 1;
  std::size_t threads = 0;  // 0: hardware concurrency
  bool classify = true;     // ignored below n = 6
  /// When set, each completed shard is written here.
  std::optional<std::filesystem::path> checkpoint_dir;
  /// Reuse valid shard files found in checkpoint_dir instead of recomputing.
  bool resume = false;
  /// Stop after computing this many shards (CensusInterrupted is thrown once
  /// they are checkpointed). Simulates a killed run.
  std::optional<std::size_t> stop_after;
  /// Called after each shard completes, from the worker thread, serialized.
  std::function<void(ShardRange, bool resumed)> on_shard;
};

class CensusInterrupted : public std::runtime_error {
 public:
  explicit CensusInterrupted(std::size_t done)
      : std::runtime_error("census stopped after " + std::to_string(done) +
                           " shards"),
        done_(done) {}
  std::size_t shards_done() const noexcept { return done_; }

 private:
  std::size_t done_;
};

inline Census run_census(const CensusOptions& opt) {
  if (opt.n < 1 || opt.n > kMaxCensusLength)
    throw std::invalid_argument("census: n must be in [1, " +
                                std::to_string(kMaxCensusLength) + "]");
  if (opt.resume && !opt.checkpoint_dir)
    throw std::invalid_argument("census: resume needs a checkpoint directory");

  const Catalog& cat = Catalog::standard();
  Census shape;
  shape.n = opt.n;
  shape.classified = opt.classify && opt.n >= kClassifyFrom;
  if (shape.classified)
    for (const auto& row : cat.rows()) shape.row_labels.push_back(row.label);
  const std::size_t rows = shape.row_labels.size();
  std::optional<Classifier> classifier;
  if (shape.classified) classifier.emplace(cat, opt.n);

  const auto plan = plan_shards(opt.n, opt.shards);
  std::vector<std::optional<Tally>> results(plan.size());
  std::mutex callback_mutex;

  if (opt.checkpoint_dir) std::filesystem::create_directories(*opt.checkpoint_dir);
  if (opt.resume) {
    for (std::size_t s = 0; s < plan.size(); ++s) {
      auto loaded = load_shard(*opt.checkpoint_dir, plan[s]);
      if (!loaded) continue;
      if (loaded->n != opt.n || loaded->classified != shape.classified ||
          loaded->row_labels != shape.row_labels)
        throw SchemaError("checkpoint " +
                          shard_path(*opt.checkpoint_dir, plan[s]).string() +
                          " belongs to a different census");
      results[s] = std::move(loaded->tally);
      if (opt.on_shard) opt.on_shard(plan[s], true);
    }
  }

  std::vector<std::size_t> todo;
  for (std::size_t s = 0; s < plan.size(); ++s)
    if (!results[s]) todo.push_back(s);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  const std::size_t limit =
      opt.stop_after ? std::min(*opt.stop_after, todo.size()) : todo.size();

  auto worker = [&] {
    for (;;) {
      if (failed.load()) return;
      std::size_t idx = next.fetch_add(1);
      if (idx >= limit) return;
      const std::size_t s = todo[idx];
      try {
        Tally t = tally_range(opt.n, plan[s],
                              classifier ? &*classifier : nullptr, rows);
        if (opt.checkpoint_dir) {
          Census partial = shape;
          partial.tally = t;
          save_shard(*opt.checkpoint_dir, partial, plan[s]);
        }
        results[s] = std::move(t);
        if (opt.on_shard) {
          std::lock_guard lock(callback_mutex);
          opt.on_shard(plan[s], false);
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };

  std::size_t threads = opt.threads ? opt.threads
                                    : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(limit, 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }
  if (error) std::rethrow_exception(error);
  if (limit < todo.size()) throw CensusInterrupted(limit);

  Census c = shape;
  c.tally = Tally::zero(opt.n, rows);
  for (const auto& r : results) c.tally.merge(*r);
  c.shards = plan.size();
  check_invariants(c);
  return c;
}

inline Census run_census(std::size_t n, std::size_t shards = 1,
                         std::size_t threads = 0) {
  CensusOptions opt;
  opt.n = n;
  opt.shards = shards;
  opt.threads = threads;
  return run_census(opt);
}

}  // namespace stacksort
