#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace costsel {

/// Per-feature acquisition costs. Every entry must be strictly positive and
/// finite; zero-cost features are rejected at construction. Callers holding
/// cost-free features apply epsilon_floor first.
class CostVector {
 public:
  explicit CostVector(std::vector<double> costs);

  std::size_t size() const noexcept { return costs_.size(); }
  double operator[](std::size_t i) const noexcept { return costs_[i]; }
  std::span<const double> values() const noexcept { return costs_; }

 private:
  std::vector<double> costs_;
};

/// Scoring rule that trades a performance gain off against a feature cost.
///
/// adapted_bcr(0) scores identically to plain_gain and adapted_bcr(1) to
/// benefit_cost_ratio; weighted_sum(0) scores identically to plain_gain.
struct TradeoffCriterion {
  enum class Kind { plain_gain, benefit_cost_ratio, adapted_bcr, weighted_sum };

  Kind kind = Kind::plain_gain;
  double gamma = 0.0;   ///< adapted_bcr cost exponent, >= 0
  double lambda = 0.0;  ///< weighted_sum cost penalty, >= 0

  static TradeoffCriterion plain_gain() { return {Kind::plain_gain, 0.0, 0.0}; }
  static TradeoffCriterion benefit_cost_ratio() { return {Kind::benefit_cost_ratio, 0.0, 0.0}; }
  static TradeoffCriterion adapted_bcr(double gamma);
  static TradeoffCriterion weighted_sum(double lambda);
};

/// Applies the criterion to one (gain, cost) pair:
///   plain_gain          -> gain
///   benefit_cost_ratio  -> gain / cost
///   adapted_bcr(gamma)  -> gain / cost^gamma
///   weighted_sum(lambda)-> gain - lambda * cost
double score(const TradeoffCriterion& criterion, double gain, double cost);

/// Replaces every cost below `epsilon` with `epsilon` (epsilon > 0), turning a
/// vector that may contain zero-cost entries into a valid CostVector.
CostVector epsilon_floor(std::span<const double> costs, double epsilon);

/// Compresses large relative cost spreads: c_j -> 1 + ln(c_j / min_k c_k).
/// Order-preserving; the cheapest feature maps to exactly 1.
CostVector log_rescale(const CostVector& costs);

}  // namespace costsel
