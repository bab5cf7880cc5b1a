#include "costsel/selection.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "costsel/errors.hpp"
#include "costsel/linear_model.hpp"

namespace costsel {

StepResult select_step(const Dataset& train, const Dataset& test,
                       std::span<const std::size_t> current_subset,
                       std::span<const std::size_t> candidates,
                       const CostVector& costs, const TradeoffCriterion& criterion) {
  if (candidates.empty()) {
    throw EmptyCandidates("select_step requires at least one candidate feature");
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const std::size_t c = candidates[i];
    if (c >= costs.size()) {
      throw DimensionMismatch("candidate " + std::to_string(c) +
                              " has no cost entry (cost vector size " +
                              std::to_string(costs.size()) + ")");
    }
    if (std::find(current_subset.begin(), current_subset.end(), c) != current_subset.end()) {
      throw DimensionMismatch("candidate " + std::to_string(c) +
                              " already in the current subset");
    }
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (candidates[j] == c) {
        throw DimensionMismatch("duplicate candidate " + std::to_string(c));
      }
    }
  }

  const FittedLinearModel baseline = fit_ols(train, current_subset);

  StepResult result;
  result.scores.resize(candidates.size());
  result.gains.resize(candidates.size());

  std::vector<std::size_t> extended(current_subset.begin(), current_subset.end());
  extended.push_back(0);
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    extended.back() = candidates[k];
    const FittedLinearModel candidate = fit_ols(train, extended);
    result.gains[k] = delta_rmse(baseline, candidate, test);
    result.scores[k] = score(criterion, result.gains[k], costs[candidates[k]]);
  }

  // Admission: only strictly positive raw gains are selectable. Among those,
  // the highest score wins; score ties resolve to the lower feature index so
  // the result is independent of candidate evaluation order.
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (!(result.gains[k] > 0.0)) continue;
    if (!best || result.scores[k] > result.scores[*best] ||
        (result.scores[k] == result.scores[*best] && candidates[k] < candidates[*best])) {
      best = k;
    }
  }
  if (best) result.selected = candidates[*best];
  return result;
}

std::vector<StepResult> sfs(const Dataset& train, const Dataset& test,
                            const CostVector& costs, const TradeoffCriterion& criterion,
                            std::size_t max_steps) {
  if (max_steps == 0 || max_steps > train.cols()) {
    throw DimensionMismatch("max_steps must be in [1, p], got " + std::to_string(max_steps) +
                            " with p = " + std::to_string(train.cols()));
  }

  std::vector<StepResult> trace;
  std::vector<std::size_t> subset;
  for (std::size_t step = 0; step < max_steps; ++step) {
    std::vector<std::size_t> candidates;
    for (std::size_t j = 0; j < train.cols(); ++j) {
      if (std::find(subset.begin(), subset.end(), j) == subset.end()) candidates.push_back(j);
    }
    StepResult result = select_step(train, test, subset, candidates, costs, criterion);
    const bool selected = result.selected.has_value();
    if (selected) subset.push_back(*result.selected);
    trace.push_back(std::move(result));
    if (!selected) break;
  }
  return trace;
}

}  // namespace costsel
