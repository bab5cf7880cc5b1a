#pragma once

// Reference implementations used only by tests. They deliberately avoid the
// library's solver and scoring paths: normal equations are solved by explicit
// Gauss-Jordan inversion and selection is re-derived from scratch, so
// agreement between the two routes is meaningful.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "costsel/criteria.hpp"
#include "costsel/dataset.hpp"

namespace testsupport {

// Gauss-Jordan inversion with partial pivoting of a dense d x d matrix
// (row-major).
inline std::vector<double> invert_matrix(std::vector<double> a, std::size_t d) {
  std::vector<double> inv(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) inv[i * d + i] = 1.0;

  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < d; ++r) {
      if (std::abs(a[r * d + col]) > std::abs(a[pivot * d + col])) pivot = r;
    }
    if (a[pivot * d + col] == 0.0) throw std::runtime_error("oracle: singular matrix");
    if (pivot != col) {
      for (std::size_t c = 0; c < d; ++c) {
        std::swap(a[pivot * d + c], a[col * d + c]);
        std::swap(inv[pivot * d + c], inv[col * d + c]);
      }
    }
    const double diag = a[col * d + col];
    for (std::size_t c = 0; c < d; ++c) {
      a[col * d + c] /= diag;
      inv[col * d + c] /= diag;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col) continue;
      const double factor = a[r * d + col];
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < d; ++c) {
        a[r * d + c] -= factor * a[col * d + c];
        inv[r * d + c] -= factor * inv[col * d + c];
      }
    }
  }
  return inv;
}

struct OracleFit {
  double intercept = 0.0;
  std::vector<double> coefficients;
};

// OLS by explicitly inverting [1 X_s]'[1 X_s] and multiplying with [1 X_s]'y.
inline OracleFit oracle_fit(const costsel::Dataset& train, std::span<const std::size_t> subset) {
  const std::size_t n = train.rows();
  const std::size_t d = subset.size() + 1;

  auto design = [&](std::size_t row, std::size_t col) {
    return col == 0 ? 1.0 : train.feature(row, subset[col - 1]);
  };

  std::vector<double> gram(d * d, 0.0);
  std::vector<double> rhs(d, 0.0);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += design(i, a) * design(i, b);
      gram[a * d + b] = dot;
    }
    double dot_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot_y += design(i, a) * train.response()[i];
    rhs[a] = dot_y;
  }

  const std::vector<double> inv = invert_matrix(std::move(gram), d);
  std::vector<double> beta(d, 0.0);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) beta[a] += inv[a * d + b] * rhs[b];
  }

  OracleFit fit;
  fit.intercept = beta[0];
  fit.coefficients.assign(beta.begin() + 1, beta.end());
  return fit;
}

inline std::vector<double> oracle_predict(const costsel::Dataset& data, double intercept,
                                          std::span<const std::size_t> subset,
                                          std::span<const double> coefficients) {
  std::vector<double> out(data.rows(), intercept);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t k = 0; k < subset.size(); ++k) {
      out[i] += coefficients[k] * data.feature(i, subset[k]);
    }
  }
  return out;
}

inline double oracle_rmse(const costsel::Dataset& test, double intercept,
                          std::span<const std::size_t> subset,
                          std::span<const double> coefficients) {
  const auto pred = oracle_predict(test, intercept, subset, coefficients);
  double sse = 0.0;
  for (std::size_t i = 0; i < test.rows(); ++i) {
    const double r = test.response()[i] - pred[i];
    sse += r * r;
  }
  return std::sqrt(sse / static_cast<double>(test.rows()));
}

inline double oracle_score(const costsel::TradeoffCriterion& criterion, double gain, double cost) {
  using Kind = costsel::TradeoffCriterion::Kind;
  switch (criterion.kind) {
    case Kind::plain_gain: return gain;
    case Kind::benefit_cost_ratio: return gain / cost;
    case Kind::adapted_bcr: return gain / std::pow(cost, criterion.gamma);
    case Kind::weighted_sum: return gain - criterion.lambda * cost;
  }
  throw std::runtime_error("oracle: bad criterion");
}

// Exhaustive evaluation of every single-feature extension: independent fits,
// independent scoring, positive-raw-gain admission, lowest-index tie-break.
inline std::optional<std::size_t> oracle_select(
    const costsel::Dataset& train, const costsel::Dataset& test,
    std::span<const std::size_t> current, std::span<const std::size_t> candidates,
    const costsel::CostVector& costs, const costsel::TradeoffCriterion& criterion) {
  const std::size_t base_k = current.size();
  std::vector<std::size_t> subset(current.begin(), current.end());
  subset.push_back(0);

  const OracleFit base = oracle_fit(train, current);
  const double rmse_base = oracle_rmse(test, base.intercept, current, base.coefficients);

  std::optional<std::size_t> best;
  double best_score = 0.0;
  for (const std::size_t j : candidates) {
    subset[base_k] = j;
    const OracleFit fit = oracle_fit(train, subset);
    const double gain = rmse_base - oracle_rmse(test, fit.intercept, subset, fit.coefficients);
    if (!(gain > 0.0)) continue;
    const double s = oracle_score(criterion, gain, costs[j]);
    if (!best || s > best_score || (s == best_score && j < *best)) {
      best = j;
      best_score = s;
    }
  }
  return best;
}

}  // namespace testsupport
