#include "costsel/simgen.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "costsel/errors.hpp"

namespace costsel {

namespace {

// splitmix64 finalizer; bijective on 64-bit values.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t combine(std::uint64_t h, std::uint64_t v) { return mix64(h ^ v); }

std::uint64_t double_bits(double v) { return std::bit_cast<std::uint64_t>(v); }

}  // namespace

void SimConfig::validate() const {
  std::string problems;
  auto flag = [&problems](const std::string& msg) {
    if (!problems.empty()) problems += "; ";
    problems += msg;
  };

  if (n_train < 2) flag("n_train must be >= 2, got " + std::to_string(n_train));
  if (n_test < 2) flag("n_test must be >= 2, got " + std::to_string(n_test));
  if (p_rel < 1) flag("p_rel must be >= 1");
  if (!(beta >= 0.0) || !std::isfinite(beta)) flag("beta must be finite and >= 0");
  if (!std::isfinite(beta0)) flag("beta0 must be finite");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) flag("sigma2 must be finite and > 0");
  if (!(theta > 0.0) || !std::isfinite(theta)) flag("theta must be finite and > 0");
  if (replicates < 1) flag("replicates must be >= 1");

  if (!problems.empty()) throw ValidationError(problems);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t setting_key,
                     std::uint64_t replicate_id, StreamRole role) {
  std::uint64_t h = combine(0x6D6F64656C73696DULL, master_seed);
  h = combine(h, setting_key);
  h = combine(h, replicate_id);
  h = combine(h, static_cast<std::uint64_t>(role));
  engine_.seed(h);
}

double RngStream::next_uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller, trigonometric form. u1 is shifted into (0, 1] so the log is
  // always finite.
  const double u1 = 1.0 - next_uniform();
  const double u2 = next_uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t dataset_signature(const SimConfig& config) {
  std::uint64_t h = 0x64617461736967ULL;
  h = combine(h, config.n_train);
  h = combine(h, config.n_test);
  h = combine(h, config.p_rel);
  h = combine(h, config.p_noise);
  h = combine(h, double_bits(config.beta));
  h = combine(h, double_bits(config.beta0));
  h = combine(h, double_bits(config.sigma2));
  return h;
}

Dataset draw_dataset(const SimConfig& config, RngStream& stream, std::size_t n, DataRole role) {
  const std::size_t p = config.p();
  std::vector<double> features(n * p);
  for (std::size_t j = 0; j < p; ++j) {
    double* col = features.data() + j * n;
    for (std::size_t i = 0; i < n; ++i) col[i] = stream.next_normal();
  }

  const double sigma = std::sqrt(config.sigma2);
  std::vector<double> response(n);
  for (std::size_t i = 0; i < n; ++i) {
    double signal = config.beta0;
    for (std::size_t j = 0; j < config.p_rel; ++j) {
      signal += config.beta * features[j * n + i];
    }
    response[i] = signal + sigma * stream.next_normal();
  }

  return Dataset(n, p, std::move(features), std::move(response), role);
}

CostVector relevant_cost_vector(const SimConfig& config) {
  std::vector<double> costs(config.p(), 1.0);
  for (std::size_t j = 0; j < config.p_rel; ++j) costs[j] = config.theta;
  return CostVector(std::move(costs));
}

}  // namespace costsel
