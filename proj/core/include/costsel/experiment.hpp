#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "costsel/simgen.hpp"

namespace costsel {

enum class Outcome { relevant_selected, noise_selected, none_selected };

/// Result of one replicate: the best relevant-feature and best noise-feature
/// test-RMSE gains (raw, unscaled) and the classified selection outcome.
/// delta_noise is NaN when the setting has no noise features.
struct ReplicateResult {
  double delta_rel = 0.0;
  double delta_noise = 0.0;
  Outcome outcome = Outcome::none_selected;
};

/// Aggregated results for one grid setting. Counts are the source of truth
/// (they sum to `replicates` exactly); sample vectors are ordered by
/// replicate id and store raw, unscaled gains.
struct SettingSummary {
  SimConfig setting;
  std::uint64_t setting_id = 0;
  std::size_t count_relevant = 0;
  std::size_t count_noise = 0;
  std::size_t count_none = 0;
  std::vector<double> rel_gain_samples;
  std::vector<double> noise_gain_samples;

  double p_relevant() const;
  double p_noise_sel() const;
  double p_none() const;
};

/// Classifies one replicate: argmax of (delta_rel / theta, delta_noise, 0).
/// Nothing is selected when both raw gains are <= 0; a tie between the scaled
/// relevant gain and the noise gain resolves to the relevant feature (lower
/// index); delta_noise may be NaN (no noise features).
Outcome classify(double delta_rel, double delta_noise, double theta);

/// Draws fresh train/test data for the replicate, fits the intercept baseline
/// and every one-feature model, and classifies the outcome. Streams are keyed
/// by dataset_signature(config), so theta does not influence the data.
/// Throws NumericalError (with the replicate id) if any gain is non-finite.
ReplicateResult run_replicate(const SimConfig& config, std::uint64_t replicate_id);

/// Runs all replicates of one setting and aggregates. Deterministic for any
/// thread count; threads = 0 means hardware concurrency.
SettingSummary run_setting(const SimConfig& config, std::uint64_t setting_id = 0,
                           unsigned threads = 0);

/// Per-setting slot of a grid run: either a summary or an error diagnostic.
struct SettingRun {
  std::uint64_t setting_id = 0;
  SimConfig config;
  std::optional<SettingSummary> summary;
  std::string error;

  bool ok() const noexcept { return summary.has_value(); }
};

/// Runs every setting of the grid. Settings that differ only in theta share
/// replicate datasets (see dataset_signature), so their gain computations run
/// once and only the outcome classification differs. Output order matches
/// input order and is byte-identical for any thread count. A failed replicate
/// fails its setting (and the matched-seed settings sharing its data) with a
/// diagnostic; remaining settings still run.
std::vector<SettingRun> run_grid(std::span<const SimConfig> grid, unsigned threads = 0);

}  // namespace costsel
