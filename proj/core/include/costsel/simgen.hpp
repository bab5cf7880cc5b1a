#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "costsel/criteria.hpp"
#include "costsel/dataset.hpp"

namespace costsel {

/// One cell of the simulation grid: data-generating parameters plus the
/// cost-scaling factor applied to relevant features.
struct SimConfig {
  std::size_t n_train = 100;
  std::size_t n_test = 1000;
  std::size_t p_rel = 1;        ///< number of relevant features (first columns)
  std::size_t p_noise = 0;      ///< number of noise features (remaining columns)
  double beta = 0.0;            ///< common effect size of every relevant feature
  double beta0 = 1.0;           ///< intercept of the generating model
  double sigma2 = 1.0;          ///< residual variance
  double theta = 1.0;           ///< cost of each relevant feature (noise costs 1)
  std::size_t replicates = 1000;
  std::uint64_t master_seed = 0;

  std::size_t p() const noexcept { return p_rel + p_noise; }

  /// Throws ValidationError listing every violated constraint.
  void validate() const;
};

enum class StreamRole : std::uint64_t { train = 1, test = 2 };

/// Deterministic random stream for one (master_seed, setting_key,
/// replicate_id, role) tuple.
///
/// The tuple is hashed into a 64-bit seed for a std::mt19937_64 engine, so a
/// given tuple reproduces the identical byte sequence on every run and under
/// any thread schedule, and distinct tuples yield independent streams.
/// Normal variates use the Box-Muller transform (trigonometric form, second
/// variate cached) over 53-bit uniforms from the engine.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t setting_key,
            std::uint64_t replicate_id, StreamRole role);

  /// Uniform draw in [0, 1) with 53-bit resolution.
  double next_uniform();

  /// Standard normal draw.
  double next_normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Hash of the data-generating parameters only (sizes, p_rel, p_noise, beta,
/// beta0, sigma2). Deliberately excludes theta and the replicate budget, so
/// settings that differ only in cost scaling draw identical datasets
/// replicate-for-replicate ("matched seeds").
std::uint64_t dataset_signature(const SimConfig& config);

/// Draws n rows: features i.i.d. standard normal, response
/// y_i ~ Normal(beta0 + beta * sum of the first p_rel features, sigma2).
/// Columns are generated in index order, then the response noise.
Dataset draw_dataset(const SimConfig& config, RngStream& stream, std::size_t n, DataRole role);

/// Cost theta for each relevant feature, cost 1 for each noise feature.
CostVector relevant_cost_vector(const SimConfig& config);

}  // namespace costsel
