#include "costsel/dataset.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "costsel/errors.hpp"

namespace costsel {

Dataset::Dataset(std::size_t rows, std::size_t cols, std::vector<double> features,
                 std::vector<double> response, DataRole role)
    : rows_(rows), cols_(cols), features_(std::move(features)),
      response_(std::move(response)), role_(role) {
  if (rows_ < 2) {
    throw DimensionMismatch("Dataset requires at least 2 rows, got " + std::to_string(rows_));
  }
  if (features_.size() != rows_ * cols_) {
    throw DimensionMismatch("feature storage holds " + std::to_string(features_.size()) +
                            " values, expected " + std::to_string(rows_ * cols_));
  }
  if (response_.size() != rows_) {
    throw DimensionMismatch("response length " + std::to_string(response_.size()) +
                            " does not match row count " + std::to_string(rows_));
  }
  for (double v : features_) {
    if (!std::isfinite(v)) throw NumericalError("non-finite feature value in Dataset");
  }
  for (double v : response_) {
    if (!std::isfinite(v)) throw NumericalError("non-finite response value in Dataset");
  }
}

std::span<const double> Dataset::column(std::size_t col) const {
  if (col >= cols_) {
    throw DimensionMismatch("column index " + std::to_string(col) + " out of range, p = " +
                            std::to_string(cols_));
  }
  return {features_.data() + col * rows_, rows_};
}

}  // namespace costsel
