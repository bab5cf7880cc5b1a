#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "costsel/criteria.hpp"
#include "costsel/dataset.hpp"

namespace costsel {

/// Outcome of one forward-selection step.
///
/// `selected` is empty exactly when no candidate has a strictly positive raw
/// RMSE gain (the admission rule); when present it is the admissible candidate
/// with the highest criterion score. `scores` and `gains` are aligned with the
/// candidate list passed to select_step.
struct StepResult {
  std::optional<std::size_t> selected;
  std::vector<double> scores;
  std::vector<double> gains;
};

/// Evaluates one sequential-forward-selection step.
///
/// Fits the baseline model on `current_subset` and each one-feature extension,
/// measures the test-RMSE gain of every candidate, scores gains against costs,
/// and picks the admissible argmax. Ties between equal scores resolve to the
/// lower feature index; a gain of exactly zero is never admitted.
StepResult select_step(const Dataset& train, const Dataset& test,
                       std::span<const std::size_t> current_subset,
                       std::span<const std::size_t> candidates,
                       const CostVector& costs, const TradeoffCriterion& criterion);

/// Runs select_step repeatedly from the empty subset, growing the subset by
/// one feature per step. Stops at the first step that selects nothing or
/// after max_steps (1 <= max_steps <= p). Returns the full step trace,
/// including a trailing no-selection step if that is what terminated the run.
///
/// The same test set scores every step, so later gains carry the usual
/// selection optimism; per-step gain magnitudes should be read with that in
/// mind.
std::vector<StepResult> sfs(const Dataset& train, const Dataset& test,
                            const CostVector& costs, const TradeoffCriterion& criterion,
                            std::size_t max_steps);

}  // namespace costsel
