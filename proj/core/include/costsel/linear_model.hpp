#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "costsel/dataset.hpp"

namespace costsel {

/// Least-squares fit of y = intercept + sum_{j in subset} x_j * coef_j.
struct FittedLinearModel {
  std::vector<std::size_t> subset;    ///< 0-based feature indices, in fit order
  double intercept = 0.0;
  std::vector<double> coefficients;   ///< aligned with `subset`
};

/// Fits an ordinary-least-squares model on the given feature subset.
///
/// The empty subset yields the intercept-only model (intercept = mean of the
/// training response). Subsets of size one use the closed-form simple
/// regression solution; larger subsets solve the normal equations with a
/// symmetric positive-definite Cholesky factorization. A pivot below 1e-12
/// relative to the largest Gram diagonal raises SingularDesign.
FittedLinearModel fit_ols(const Dataset& train, std::span<const std::size_t> subset);

/// Normal-equations path without the small-subset closed forms. Exposed so the
/// two routes can be cross-checked; fit_ols and fit_ols_general agree to
/// 1e-10 relative for subsets of size <= 1.
FittedLinearModel fit_ols_general(const Dataset& train, std::span<const std::size_t> subset);

/// Row-wise predictions; requires every subset index to be a valid column.
std::vector<double> predict(const FittedLinearModel& model, const Dataset& data);

/// sqrt(mean squared prediction error) on the given data.
double rmse(const FittedLinearModel& model, const Dataset& test);

/// RMSE(baseline) - RMSE(candidate); positive means the candidate improves.
double delta_rmse(const FittedLinearModel& baseline, const FittedLinearModel& candidate,
                  const Dataset& test);

}  // namespace costsel
