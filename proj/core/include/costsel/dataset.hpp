#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace costsel {

enum class DataRole { train, test };

/// Immutable n x p feature matrix plus response vector.
///
/// Features are stored column-major so per-feature scans (the dominant access
/// pattern in single-feature model fits) are contiguous. Feature indices are
/// 0-based throughout the library.
class Dataset {
 public:
  /// `features` is column-major with `rows * cols` entries. Requires
  /// rows >= 2, response.size() == rows, and every entry finite.
  Dataset(std::size_t rows, std::size_t cols, std::vector<double> features,
          std::vector<double> response, DataRole role);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  DataRole role() const noexcept { return role_; }

  double feature(std::size_t row, std::size_t col) const noexcept {
    return features_[col * rows_ + row];
  }
  std::span<const double> column(std::size_t col) const;
  std::span<const double> response() const noexcept { return response_; }

  /// Raw column-major storage; used for bit-level reproducibility checks.
  std::span<const double> raw_features() const noexcept { return features_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> features_;
  std::vector<double> response_;
  DataRole role_;
};

}  // namespace costsel
