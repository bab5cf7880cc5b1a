#include "costsel/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "costsel/errors.hpp"

namespace costsel {

CostVector::CostVector(std::vector<double> costs) : costs_(std::move(costs)) {
  for (std::size_t i = 0; i < costs_.size(); ++i) {
    if (!(costs_[i] > 0.0) || !std::isfinite(costs_[i])) {
      throw NonPositiveCost("cost " + std::to_string(costs_[i]) + " at index " +
                            std::to_string(i) + " must be strictly positive and finite");
    }
  }
}

TradeoffCriterion TradeoffCriterion::adapted_bcr(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("adapted_bcr gamma must be a finite value >= 0");
  }
  return {Kind::adapted_bcr, gamma, 0.0};
}

TradeoffCriterion TradeoffCriterion::weighted_sum(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("weighted_sum lambda must be a finite value >= 0");
  }
  return {Kind::weighted_sum, 0.0, lambda};
}

double score(const TradeoffCriterion& criterion, double gain, double cost) {
  if (!(cost > 0.0) || !std::isfinite(cost)) {
    throw NonPositiveCost("score requires a strictly positive finite cost, got " +
                          std::to_string(cost));
  }
  switch (criterion.kind) {
    case TradeoffCriterion::Kind::plain_gain:
      return gain;
    case TradeoffCriterion::Kind::benefit_cost_ratio:
      return gain / cost;
    case TradeoffCriterion::Kind::adapted_bcr:
      return gain / std::pow(cost, criterion.gamma);
    case TradeoffCriterion::Kind::weighted_sum:
      return gain - criterion.lambda * cost;
  }
  throw std::logic_error("unreachable criterion kind");
}

CostVector epsilon_floor(std::span<const double> costs, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon_floor requires epsilon > 0");
  }
  std::vector<double> floored(costs.begin(), costs.end());
  for (double& c : floored) {
    if (c < epsilon) c = epsilon;
  }
  return CostVector(std::move(floored));
}

CostVector log_rescale(const CostVector& costs) {
  if (costs.size() == 0) return CostVector({});
  const double min_cost = *std::min_element(costs.values().begin(), costs.values().end());
  std::vector<double> rescaled(costs.size());
  for (std::size_t i = 0; i < costs.size(); ++i) {
    rescaled[i] = 1.0 + std::log(costs[i] / min_cost);
  }
  return CostVector(std::move(rescaled));
}

}  // namespace costsel
