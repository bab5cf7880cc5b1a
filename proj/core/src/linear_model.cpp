#include "costsel/linear_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "costsel/errors.hpp"

namespace costsel {

namespace {

constexpr double kPivotTolerance = 1e-12;  // relative to the largest Gram diagonal

void validate_subset(const Dataset& train, std::span<const std::size_t> subset) {
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] >= train.cols()) {
      throw DimensionMismatch("subset index " + std::to_string(subset[i]) +
                              " out of range, p = " + std::to_string(train.cols()));
    }
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      if (subset[i] == subset[j]) {
        throw DimensionMismatch("duplicate subset index " + std::to_string(subset[i]));
      }
    }
  }
}

double mean(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

// In-place lower Cholesky factorization with solve. `a` is a dense symmetric
// d x d matrix (row-major); `b` the right-hand side. A pivot below
// kPivotTolerance times the largest original diagonal entry raises
// SingularDesign rather than silently regularizing.
std::vector<double> cholesky_solve(std::vector<double> a, std::vector<double> b, std::size_t d) {
  double max_diag = 0.0;
  for (std::size_t i = 0; i < d; ++i) max_diag = std::max(max_diag, std::abs(a[i * d + i]));
  const double tol = kPivotTolerance * max_diag;

  for (std::size_t j = 0; j < d; ++j) {
    double pivot = a[j * d + j];
    for (std::size_t t = 0; t < j; ++t) pivot -= a[j * d + t] * a[j * d + t];
    if (!(pivot > tol)) {
      throw SingularDesign("Gram matrix pivot " + std::to_string(pivot) +
                           " below tolerance at column " + std::to_string(j));
    }
    const double ljj = std::sqrt(pivot);
    a[j * d + j] = ljj;
    for (std::size_t i = j + 1; i < d; ++i) {
      double s = a[i * d + j];
      for (std::size_t t = 0; t < j; ++t) s -= a[i * d + t] * a[j * d + t];
      a[i * d + j] = s / ljj;
    }
  }

  // L y = b
  for (std::size_t i = 0; i < d; ++i) {
    double s = b[i];
    for (std::size_t t = 0; t < i; ++t) s -= a[i * d + t] * b[t];
    b[i] = s / a[i * d + i];
  }
  // L^T x = y
  for (std::size_t ii = d; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t t = ii + 1; t < d; ++t) s -= a[t * d + ii] * b[t];
    b[ii] = s / a[ii * d + ii];
  }
  return b;
}

double predict_row(const FittedLinearModel& model, const Dataset& data, std::size_t row) {
  double y = model.intercept;
  for (std::size_t k = 0; k < model.subset.size(); ++k) {
    y += model.coefficients[k] * data.feature(row, model.subset[k]);
  }
  return y;
}

void validate_model_columns(const FittedLinearModel& model, const Dataset& data) {
  for (std::size_t j : model.subset) {
    if (j >= data.cols()) {
      throw DimensionMismatch("model uses feature " + std::to_string(j) +
                              " but data has only " + std::to_string(data.cols()) + " columns");
    }
  }
}

}  // namespace

FittedLinearModel fit_ols_general(const Dataset& train, std::span<const std::size_t> subset) {
  validate_subset(train, subset);
  const std::size_t n = train.rows();
  const std::size_t k = subset.size();
  const std::size_t d = k + 1;  // leading column of ones

  // Gram matrix and right-hand side of [1 X_s]' [1 X_s] beta = [1 X_s]' y.
  std::vector<double> gram(d * d, 0.0);
  std::vector<double> rhs(d, 0.0);
  const auto y = train.response();

  gram[0] = static_cast<double>(n);
  for (double v : y) rhs[0] += v;
  for (std::size_t a = 0; a < k; ++a) {
    const auto xa = train.column(subset[a]);
    double sum_a = 0.0, dot_ay = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum_a += xa[i];
      dot_ay += xa[i] * y[i];
    }
    gram[(a + 1) * d] = gram[a + 1] = sum_a;
    rhs[a + 1] = dot_ay;
    for (std::size_t b = a; b < k; ++b) {
      const auto xb = train.column(subset[b]);
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += xa[i] * xb[i];
      gram[(a + 1) * d + (b + 1)] = gram[(b + 1) * d + (a + 1)] = dot;
    }
  }

  std::vector<double> beta = cholesky_solve(std::move(gram), std::move(rhs), d);

  FittedLinearModel model;
  model.subset.assign(subset.begin(), subset.end());
  model.intercept = beta[0];
  model.coefficients.assign(beta.begin() + 1, beta.end());
  return model;
}

FittedLinearModel fit_ols(const Dataset& train, std::span<const std::size_t> subset) {
  validate_subset(train, subset);

  if (subset.empty()) {
    FittedLinearModel model;
    model.intercept = mean(train.response());
    return model;
  }

  if (subset.size() == 1) {
    // Closed-form simple regression. The singularity check mirrors the
    // general path: for a centered column, the second Cholesky pivot equals
    // the centered sum of squares, tested against the largest Gram diagonal.
    const auto x = train.column(subset[0]);
    const auto y = train.response();
    const std::size_t n = train.rows();
    const double x_bar = mean(x);
    const double y_bar = mean(y);
    double sxx = 0.0, sxy = 0.0, xx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = x[i] - x_bar;
      sxx += dx * dx;
      sxy += dx * (y[i] - y_bar);
      xx += x[i] * x[i];
    }
    const double tol = kPivotTolerance * std::max(static_cast<double>(n), xx);
    if (!(sxx > tol)) {
      throw SingularDesign("feature " + std::to_string(subset[0]) +
                           " is numerically constant on the training data");
    }
    FittedLinearModel model;
    model.subset.assign(subset.begin(), subset.end());
    const double slope = sxy / sxx;
    model.coefficients.push_back(slope);
    model.intercept = y_bar - slope * x_bar;
    return model;
  }

  return fit_ols_general(train, subset);
}

std::vector<double> predict(const FittedLinearModel& model, const Dataset& data) {
  validate_model_columns(model, data);
  if (model.coefficients.size() != model.subset.size()) {
    throw DimensionMismatch("model has " + std::to_string(model.coefficients.size()) +
                            " coefficients for " + std::to_string(model.subset.size()) +
                            " subset indices");
  }
  std::vector<double> out(data.rows());
  for (std::size_t i = 0; i < data.rows(); ++i) out[i] = predict_row(model, data, i);
  return out;
}

double rmse(const FittedLinearModel& model, const Dataset& test) {
  validate_model_columns(model, test);
  const auto y = test.response();
  double sse = 0.0;
  for (std::size_t i = 0; i < test.rows(); ++i) {
    const double r = y[i] - predict_row(model, test, i);
    sse += r * r;
  }
  return std::sqrt(sse / static_cast<double>(test.rows()));
}

double delta_rmse(const FittedLinearModel& baseline, const FittedLinearModel& candidate,
                  const Dataset& test) {
  return rmse(baseline, test) - rmse(candidate, test);
}

}  // namespace costsel
