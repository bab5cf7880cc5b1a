#include "costsel/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "costsel/errors.hpp"
#include "costsel/linear_model.hpp"

namespace costsel {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Runs body(0..count-1) across a worker pool. Each index writes only its own
// output slot, so results are identical for any thread count or schedule.
// body must not throw.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) return;
        body(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

// Raw gain table for one data-generating configuration (theta not involved).
struct GainTable {
  std::vector<double> rel;
  std::vector<double> noise;
  std::string error;  // diagnostic of the lowest-id failed replicate, if any

  bool failed() const noexcept { return !error.empty(); }
};

std::pair<double, double> replicate_gains(const SimConfig& config, std::uint64_t replicate_id) {
  const std::uint64_t signature = dataset_signature(config);
  RngStream train_stream(config.master_seed, signature, replicate_id, StreamRole::train);
  RngStream test_stream(config.master_seed, signature, replicate_id, StreamRole::test);
  const Dataset train = draw_dataset(config, train_stream, config.n_train, DataRole::train);
  const Dataset test = draw_dataset(config, test_stream, config.n_test, DataRole::test);

  const FittedLinearModel baseline = fit_ols(train, {});
  const double rmse_baseline = rmse(baseline, test);

  double delta_rel = -std::numeric_limits<double>::infinity();
  double delta_noise = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < config.p(); ++j) {
    const std::size_t subset[1] = {j};
    const FittedLinearModel candidate = fit_ols(train, subset);
    const double delta = rmse_baseline - rmse(candidate, test);
    if (!std::isfinite(delta)) {
      throw NumericalError("non-finite RMSE gain for feature " + std::to_string(j));
    }
    if (j < config.p_rel) {
      delta_rel = std::max(delta_rel, delta);
    } else {
      delta_noise = std::max(delta_noise, delta);
    }
  }
  if (config.p_noise == 0) delta_noise = kNan;
  return {delta_rel, delta_noise};
}

GainTable compute_gains(const SimConfig& config, unsigned threads) {
  const std::size_t b = config.replicates;
  GainTable table;
  table.rel.resize(b);
  table.noise.resize(b);

  std::mutex failures_mutex;
  std::vector<std::pair<std::uint64_t, std::string>> failures;

  parallel_for(b, threads, [&](std::size_t r) {
    try {
      const auto [rel, noise] = replicate_gains(config, r);
      table.rel[r] = rel;
      table.noise[r] = noise;
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(failures_mutex);
      failures.emplace_back(r, e.what());
    }
  });

  if (!failures.empty()) {
    const auto first = *std::min_element(failures.begin(), failures.end());
    table.error = "replicate " + std::to_string(first.first) + ": " + first.second;
  }
  return table;
}

SettingSummary summarize(const SimConfig& config, std::uint64_t setting_id,
                         const GainTable& table) {
  SettingSummary summary;
  summary.setting = config;
  summary.setting_id = setting_id;
  summary.rel_gain_samples = table.rel;
  summary.noise_gain_samples = table.noise;
  for (std::size_t r = 0; r < table.rel.size(); ++r) {
    switch (classify(table.rel[r], table.noise[r], config.theta)) {
      case Outcome::relevant_selected: ++summary.count_relevant; break;
      case Outcome::noise_selected: ++summary.count_noise; break;
      case Outcome::none_selected: ++summary.count_none; break;
    }
  }
  return summary;
}

// Exact data-generation key; settings with equal keys draw identical
// replicate datasets and may differ only in theta.
using DataKey = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t,
                           std::uint64_t, std::uint64_t, std::uint64_t,
                           std::uint64_t, std::size_t>;

DataKey data_key(const SimConfig& c) {
  return {c.n_train, c.n_test, c.p_rel, c.p_noise,
          std::bit_cast<std::uint64_t>(c.beta), std::bit_cast<std::uint64_t>(c.beta0),
          std::bit_cast<std::uint64_t>(c.sigma2), c.master_seed, c.replicates};
}

}  // namespace

double SettingSummary::p_relevant() const {
  const auto total = count_relevant + count_noise + count_none;
  return static_cast<double>(count_relevant) / static_cast<double>(total);
}

double SettingSummary::p_noise_sel() const {
  const auto total = count_relevant + count_noise + count_none;
  return static_cast<double>(count_noise) / static_cast<double>(total);
}

double SettingSummary::p_none() const {
  const auto total = count_relevant + count_noise + count_none;
  return static_cast<double>(count_none) / static_cast<double>(total);
}

Outcome classify(double delta_rel, double delta_noise, double theta) {
  const bool rel_positive = delta_rel > 0.0;
  const bool noise_positive = delta_noise > 0.0;  // false for NaN
  if (!rel_positive && !noise_positive) return Outcome::none_selected;
  if (!noise_positive) return Outcome::relevant_selected;
  if (!rel_positive) return Outcome::noise_selected;
  // Both groups admissible: the scaled relevant gain wins ties (lower index).
  return (delta_rel / theta >= delta_noise) ? Outcome::relevant_selected
                                            : Outcome::noise_selected;
}

ReplicateResult run_replicate(const SimConfig& config, std::uint64_t replicate_id) {
  config.validate();
  try {
    const auto [rel, noise] = replicate_gains(config, replicate_id);
    return {rel, noise, classify(rel, noise, config.theta)};
  } catch (const Error& e) {
    throw NumericalError("replicate " + std::to_string(replicate_id) + ": " + e.what());
  }
}

SettingSummary run_setting(const SimConfig& config, std::uint64_t setting_id, unsigned threads) {
  config.validate();
  const GainTable table = compute_gains(config, threads);
  if (table.failed()) throw NumericalError(table.error);
  return summarize(config, setting_id, table);
}

std::vector<SettingRun> run_grid(std::span<const SimConfig> grid, unsigned threads) {
  std::vector<SettingRun> runs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    runs[i].setting_id = i;
    runs[i].config = grid[i];
  }

  // Group settings by their data-generation key so each group's replicates
  // are computed once no matter how many theta values reference them.
  std::map<DataKey, std::size_t> group_of;
  std::vector<SimConfig> group_config;
  std::vector<std::vector<std::size_t>> group_members;
  std::vector<std::string> invalid(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      grid[i].validate();
    } catch (const ValidationError& e) {
      invalid[i] = e.what();
      continue;
    }
    const auto [it, inserted] = group_of.try_emplace(data_key(grid[i]), group_config.size());
    if (inserted) {
      group_config.push_back(grid[i]);
      group_members.emplace_back();
    }
    group_members[it->second].push_back(i);
  }

  // One flat task list over (group, replicate) pairs keeps all workers busy
  // even when the grid holds a single large group.
  std::vector<GainTable> tables(group_config.size());
  std::vector<std::size_t> task_offset(group_config.size() + 1, 0);
  for (std::size_t g = 0; g < group_config.size(); ++g) {
    tables[g].rel.resize(group_config[g].replicates);
    tables[g].noise.resize(group_config[g].replicates);
    task_offset[g + 1] = task_offset[g] + group_config[g].replicates;
  }

  std::mutex failures_mutex;
  std::vector<std::map<std::uint64_t, std::string>> failures(group_config.size());

  parallel_for(task_offset.back(), threads, [&](std::size_t t) {
    const std::size_t g = static_cast<std::size_t>(
        std::upper_bound(task_offset.begin(), task_offset.end(), t) - task_offset.begin() - 1);
    const std::uint64_t r = t - task_offset[g];
    try {
      const auto [rel, noise] = replicate_gains(group_config[g], r);
      tables[g].rel[r] = rel;
      tables[g].noise[r] = noise;
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(failures_mutex);
      failures[g].emplace(r, e.what());
    }
  });

  for (std::size_t g = 0; g < group_config.size(); ++g) {
    if (!failures[g].empty()) {
      const auto& first = *failures[g].begin();
      tables[g].error = "replicate " + std::to_string(first.first) + ": " + first.second;
    }
    for (std::size_t i : group_members[g]) {
      if (tables[g].failed()) {
        runs[i].error = tables[g].error;
      } else {
        runs[i].summary = summarize(grid[i], i, tables[g]);
      }
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!invalid[i].empty()) runs[i].error = invalid[i];
  }
  return runs;
}

}  // namespace costsel
