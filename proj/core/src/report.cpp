#include "costsel/report.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>
#include <utility>

#include <json.hpp>

#include "costsel/errors.hpp"
#include "costsel/version.hpp"

namespace costsel {

namespace {

using nlohmann::json;

constexpr std::size_t kDefaultBins = 60;
constexpr std::uint64_t kDefaultMasterSeed = 42;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

class Violations {
 public:
  void add(const std::string& msg) { messages_.push_back(msg); }
  bool empty() const { return messages_.empty(); }

  [[noreturn]] void raise(std::string_view source) const {
    std::string joined(source);
    joined += ": ";
    for (std::size_t i = 0; i < messages_.size(); ++i) {
      if (i > 0) joined += "; ";
      joined += messages_[i];
    }
    throw ValidationError(joined);
  }

 private:
  std::vector<std::string> messages_;
};

bool is_unsigned_integer(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

// Reads a scalar field, falling back to `fallback` when absent.
template <typename T>
T scalar_or(const json& root, const char* key, T fallback, Violations& violations,
            bool (*check)(const json&), const char* requirement) {
  if (!root.contains(key)) return fallback;
  const json& v = root.at(key);
  if (!check(v)) {
    violations.add(std::string(key) + ": " + requirement);
    return fallback;
  }
  return v.get<T>();
}

std::vector<double> expand_beta_axis(const json& axis, Violations& violations) {
  std::vector<double> values;
  if (axis.is_object()) {
    for (const auto& [key, _] : axis.items()) {
      if (key != "from" && key != "to" && key != "step") {
        violations.add("grid.beta: unknown range key '" + key + "'");
      }
    }
    if (!axis.contains("from") || !axis.contains("to") || !axis.contains("step")) {
      violations.add("grid.beta: range form requires from, to and step");
      return values;
    }
    if (!axis.at("from").is_number() || !axis.at("to").is_number() ||
        !axis.at("step").is_number()) {
      violations.add("grid.beta: from, to and step must be numbers");
      return values;
    }
    const double from = axis.at("from").get<double>();
    const double to = axis.at("to").get<double>();
    const double step = axis.at("step").get<double>();
    if (!(from >= 0.0) || !std::isfinite(from)) violations.add("grid.beta.from: must be >= 0");
    if (!(step > 0.0) || !std::isfinite(step)) violations.add("grid.beta.step: must be > 0");
    if (!(to >= from) || !std::isfinite(to)) violations.add("grid.beta.to: must be >= from");
    if (!violations.empty()) return values;
    const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
    values.reserve(count);
    for (std::size_t k = 0; k < count; ++k) values.push_back(from + static_cast<double>(k) * step);
    return values;
  }
  if (axis.is_array()) {
    for (std::size_t i = 0; i < axis.size(); ++i) {
      if (!axis[i].is_number() || !(axis[i].get<double>() >= 0.0) ||
          !std::isfinite(axis[i].get<double>())) {
        violations.add("grid.beta[" + std::to_string(i) + "]: must be a finite number >= 0");
        continue;
      }
      values.push_back(axis[i].get<double>());
    }
    if (axis.empty()) violations.add("grid.beta: axis is empty");
    return values;
  }
  violations.add("grid.beta: must be a list or a {from, to, step} range");
  return values;
}

std::vector<double> expand_positive_real_axis(const json& axis, const char* name,
                                              Violations& violations) {
  std::vector<double> values;
  if (!axis.is_array() || axis.empty()) {
    violations.add(std::string(name) + ": must be a non-empty list");
    return values;
  }
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!axis[i].is_number() || !(axis[i].get<double>() > 0.0) ||
        !std::isfinite(axis[i].get<double>())) {
      violations.add(std::string(name) + "[" + std::to_string(i) +
                     "]: must be a finite number > 0");
      continue;
    }
    values.push_back(axis[i].get<double>());
  }
  return values;
}

std::vector<std::size_t> expand_count_axis(const json& axis, const char* name,
                                           std::size_t minimum, Violations& violations) {
  std::vector<std::size_t> values;
  if (!axis.is_array() || axis.empty()) {
    violations.add(std::string(name) + ": must be a non-empty list");
    return values;
  }
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!is_unsigned_integer(axis[i]) || axis[i].get<std::uint64_t>() < minimum) {
      violations.add(std::string(name) + "[" + std::to_string(i) + "]: must be an integer >= " +
                     std::to_string(minimum));
      continue;
    }
    values.push_back(axis[i].get<std::size_t>());
  }
  return values;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::string utc_timestamp_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string config_digest_hex(std::string_view canonical_json) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (const char c : canonical_json) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

ResolvedRun parse_config_text(std::string_view text, std::string_view source_name,
                              const ConfigOverrides& overrides) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(source_name) + ": " + e.what());
  }

  Violations violations;
  if (!root.is_object()) {
    violations.add("top level must be a JSON object");
    violations.raise(source_name);
  }

  static constexpr const char* kKnownKeys[] = {"n_train", "n_test", "replicates", "master_seed",
                                               "grid",    "beta0",  "sigma2",     "bins"};
  for (const auto& [key, _] : root.items()) {
    if (std::find_if(std::begin(kKnownKeys), std::end(kKnownKeys),
                     [&key](const char* k) { return key == k; }) == std::end(kKnownKeys)) {
      violations.add("unknown key '" + key + "'");
    }
  }

  const auto n_train = scalar_or<std::size_t>(
      root, "n_train", 100, violations,
      [](const json& v) { return is_unsigned_integer(v) && v.get<std::uint64_t>() >= 2; },
      "must be an integer >= 2");
  const auto n_test = scalar_or<std::size_t>(
      root, "n_test", 1000, violations,
      [](const json& v) { return is_unsigned_integer(v) && v.get<std::uint64_t>() >= 2; },
      "must be an integer >= 2");
  const auto replicates = scalar_or<std::size_t>(
      root, "replicates", 1000, violations,
      [](const json& v) { return is_unsigned_integer(v) && v.get<std::uint64_t>() >= 1; },
      "must be an integer >= 1");
  auto master_seed = scalar_or<std::uint64_t>(
      root, "master_seed", kDefaultMasterSeed, violations,
      [](const json& v) { return is_unsigned_integer(v); }, "must be a non-negative integer");
  const auto beta0 = scalar_or<double>(
      root, "beta0", 1.0, violations,
      [](const json& v) { return v.is_number() && std::isfinite(v.get<double>()); },
      "must be a finite number");
  const auto sigma2 = scalar_or<double>(
      root, "sigma2", 1.0, violations,
      [](const json& v) {
        return v.is_number() && v.get<double>() > 0.0 && std::isfinite(v.get<double>());
      },
      "must be a finite number > 0");
  auto bins = scalar_or<std::size_t>(
      root, "bins", kDefaultBins, violations,
      [](const json& v) { return is_unsigned_integer(v) && v.get<std::uint64_t>() >= 2; },
      "must be an integer >= 2");

  std::vector<double> thetas;
  std::vector<std::size_t> p_rels;
  std::vector<std::size_t> p_noises;
  std::vector<double> betas;
  if (!root.contains("grid") || !root.at("grid").is_object()) {
    violations.add("grid: required object with axes theta, p_rel, p_noise, beta");
  } else {
    const json& grid = root.at("grid");
    for (const auto& [key, _] : grid.items()) {
      if (key != "theta" && key != "p_rel" && key != "p_noise" && key != "beta") {
        violations.add("grid: unknown axis '" + key + "'");
      }
    }
    if (grid.contains("theta")) {
      thetas = expand_positive_real_axis(grid.at("theta"), "grid.theta", violations);
    } else {
      violations.add("grid.theta: missing axis");
    }
    if (grid.contains("p_rel")) {
      p_rels = expand_count_axis(grid.at("p_rel"), "grid.p_rel", 1, violations);
    } else {
      violations.add("grid.p_rel: missing axis");
    }
    if (grid.contains("p_noise")) {
      p_noises = expand_count_axis(grid.at("p_noise"), "grid.p_noise", 0, violations);
    } else {
      violations.add("grid.p_noise: missing axis");
    }
    if (grid.contains("beta")) {
      betas = expand_beta_axis(grid.at("beta"), violations);
    } else {
      violations.add("grid.beta: missing axis");
    }
  }
  if (violations.empty() && (thetas.empty() || p_rels.empty() || p_noises.empty() || betas.empty())) {
    violations.add("grid axes must all be non-empty");
  }
  if (!violations.empty()) violations.raise(source_name);

  if (overrides.master_seed) master_seed = *overrides.master_seed;
  if (overrides.bins) bins = *overrides.bins;

  ResolvedRun run;
  run.bins = bins;
  run.master_seed = master_seed;
  run.settings.reserve(thetas.size() * p_rels.size() * p_noises.size() * betas.size());
  // Axis declaration order: theta, p_rel, p_noise, beta; beta varies fastest.
  for (const double theta : thetas) {
    for (const std::size_t p_rel : p_rels) {
      for (const std::size_t p_noise : p_noises) {
        for (const double beta : betas) {
          SimConfig cfg;
          cfg.n_train = n_train;
          cfg.n_test = n_test;
          cfg.replicates = replicates;
          cfg.master_seed = master_seed;
          cfg.beta0 = beta0;
          cfg.sigma2 = sigma2;
          cfg.theta = theta;
          cfg.p_rel = p_rel;
          cfg.p_noise = p_noise;
          cfg.beta = beta;
          run.settings.push_back(cfg);
        }
      }
    }
  }

  json resolved;
  resolved["n_train"] = n_train;
  resolved["n_test"] = n_test;
  resolved["replicates"] = replicates;
  resolved["master_seed"] = master_seed;
  resolved["beta0"] = beta0;
  resolved["sigma2"] = sigma2;
  resolved["bins"] = bins;
  resolved["grid"] = {
      {"theta", thetas}, {"p_rel", p_rels}, {"p_noise", p_noises}, {"beta", betas}};
  run.resolved_config_json = resolved.dump();
  run.config_digest = config_digest_hex(run.resolved_config_json);
  return run;
}

ResolvedRun parse_config(const std::filesystem::path& path, const ConfigOverrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open config file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path.string(), overrides);
}

void emit_summary_csv(std::span<const SettingSummary> summaries,
                      const std::filesystem::path& path) {
  std::vector<const SettingSummary*> ordered;
  ordered.reserve(summaries.size());
  for (const auto& s : summaries) ordered.push_back(&s);
  std::sort(ordered.begin(), ordered.end(),
            [](const SettingSummary* a, const SettingSummary* b) {
              return a->setting_id < b->setting_id;
            });

  std::string out = "theta,p_rel,p_noise,beta,n_train,n_test,replicates,p_relevant,p_noise_sel,p_none\n";
  for (const SettingSummary* s : ordered) {
    const SimConfig& c = s->setting;
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.6f,%zu,%zu,%.6f,%zu,%zu,%zu,%.6f,%.6f,%.6f\n",
                  c.theta, c.p_rel, c.p_noise, c.beta, c.n_train, c.n_test, c.replicates,
                  s->p_relevant(), s->p_noise_sel(), s->p_none());
    out += buf;
  }
  write_file(path, out);
}

namespace {

// Panels pool every beta of one (theta, p_rel, p_noise) cell so the histogram
// bins are shared along the beta axis.
using PanelKey = std::tuple<double, std::size_t, std::size_t>;

struct PanelGroupData {
  double lo = 0.0;
  double hi = 0.0;
  bool any = false;

  void include(double v) {
    if (!any) {
      lo = hi = v;
      any = true;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
};

void append_histogram_rows(std::string& out, const SettingSummary& s, const char* group,
                           const std::vector<double>& values, const PanelGroupData& range,
                           std::size_t bins) {
  std::vector<std::size_t> counts(bins, 0);
  const double width = (range.hi - range.lo) / static_cast<double>(bins);
  for (const double v : values) {
    std::size_t bin = 0;
    if (width > 0.0) {
      bin = std::min(bins - 1,
                     static_cast<std::size_t>(std::max(0.0, (v - range.lo) / width)));
    }
    ++counts[bin];
  }
  for (std::size_t b = 0; b < bins; ++b) {
    const double left = range.lo + static_cast<double>(b) * width;
    const double right = (b + 1 == bins) ? range.hi : range.lo + static_cast<double>(b + 1) * width;
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.6f,%zu,%zu,%s,%.6f,%zu,%.6f,%.6f,%zu\n",
                  s.setting.theta, s.setting.p_rel, s.setting.p_noise, group, s.setting.beta, b,
                  left, right, counts[b]);
    out += buf;
  }
}

}  // namespace

void emit_distribution_data(std::span<const SettingSummary> summaries,
                            const std::filesystem::path& distributions_path,
                            const std::filesystem::path& histograms_path, std::size_t bins) {
  if (bins < 2) throw ValidationError("bins must be >= 2, got " + std::to_string(bins));

  std::vector<const SettingSummary*> ordered;
  ordered.reserve(summaries.size());
  for (const auto& s : summaries) ordered.push_back(&s);
  std::sort(ordered.begin(), ordered.end(),
            [](const SettingSummary* a, const SettingSummary* b) {
              return a->setting_id < b->setting_id;
            });

  // Raw per-replicate samples, long format.
  std::string raw =
      "theta,p_rel,p_noise,beta,n_train,n_test,replicates,replicate_id,group,delta_rmse\n";
  for (const SettingSummary* s : ordered) {
    const SimConfig& c = s->setting;
    char prefix[256];
    std::snprintf(prefix, sizeof prefix, "%.6f,%zu,%zu,%.6f,%zu,%zu,%zu,", c.theta, c.p_rel,
                  c.p_noise, c.beta, c.n_train, c.n_test, c.replicates);
    for (std::size_t r = 0; r < s->rel_gain_samples.size(); ++r) {
      raw += prefix;
      raw += std::to_string(r);
      raw += ",rel,";
      raw += fmt(s->rel_gain_samples[r]);
      raw += '\n';
    }
    if (c.p_noise > 0) {
      for (std::size_t r = 0; r < s->noise_gain_samples.size(); ++r) {
        raw += prefix;
        raw += std::to_string(r);
        raw += ",noise,";
        raw += fmt(s->noise_gain_samples[r]);
        raw += '\n';
      }
    }
  }
  write_file(distributions_path, raw);

  // Histogram panels. Relevant gains enter scaled by 1/theta (the value the
  // selection actually compares); noise gains enter raw.
  std::map<PanelKey, std::vector<const SettingSummary*>> panels;
  for (const SettingSummary* s : ordered) {
    panels[{s->setting.theta, s->setting.p_rel, s->setting.p_noise}].push_back(s);
  }

  std::string hist = "theta,p_rel,p_noise,group,beta,bin,bin_left,bin_right,count\n";
  for (auto& [key, members] : panels) {
    std::sort(members.begin(), members.end(),
              [](const SettingSummary* a, const SettingSummary* b) {
                return std::tie(a->setting.beta, a->setting_id) <
                       std::tie(b->setting.beta, b->setting_id);
              });
    PanelGroupData rel_range;
    PanelGroupData noise_range;
    for (const SettingSummary* s : members) {
      for (const double v : s->rel_gain_samples) rel_range.include(v / s->setting.theta);
      if (s->setting.p_noise > 0) {
        for (const double v : s->noise_gain_samples) noise_range.include(v);
      }
    }
    for (const SettingSummary* s : members) {
      std::vector<double> scaled(s->rel_gain_samples.size());
      for (std::size_t r = 0; r < scaled.size(); ++r) {
        scaled[r] = s->rel_gain_samples[r] / s->setting.theta;
      }
      append_histogram_rows(hist, *s, "rel", scaled, rel_range, bins);
    }
    for (const SettingSummary* s : members) {
      if (s->setting.p_noise == 0) continue;
      append_histogram_rows(hist, *s, "noise", s->noise_gain_samples, noise_range, bins);
    }
  }
  write_file(histograms_path, hist);
}

RunManifest make_manifest(const ResolvedRun& run, std::optional<std::string> timestamp_utc) {
  RunManifest manifest;
  manifest.config_digest = run.config_digest;
  manifest.tool_version = std::string(kToolVersion);
  manifest.master_seed = run.master_seed;
  manifest.timestamp_utc = timestamp_utc ? std::move(*timestamp_utc) : utc_timestamp_now();
  manifest.setting_count = run.settings.size();
  return manifest;
}

void write_manifest(const RunManifest& manifest, const ResolvedRun& run,
                    const std::filesystem::path& path) {
  json j;
  j["config_digest"] = manifest.config_digest;
  j["tool_version"] = manifest.tool_version;
  j["master_seed"] = manifest.master_seed;
  j["timestamp"] = manifest.timestamp_utc;
  j["setting_count"] = manifest.setting_count;
  j["resolved_config"] = json::parse(run.resolved_config_json);
  write_file(path, j.dump(2) + "\n");
}

}  // namespace costsel
