#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "costsel/experiment.hpp"
#include "costsel/simgen.hpp"

namespace costsel {

/// Self-describing metadata emitted next to the result files.
struct RunManifest {
  std::string config_digest;   ///< fnv1a-64 hex of the canonical resolved config
  std::string tool_version;
  std::uint64_t master_seed = 0;
  std::string timestamp_utc;   ///< ISO-8601, e.g. 2026-08-10T12:00:00Z
  std::size_t setting_count = 0;
};

/// A parsed and fully expanded run configuration: one SimConfig per grid cell
/// (ordered by setting id), output options, and the canonical resolved-config
/// JSON the digest is computed over.
struct ResolvedRun {
  std::vector<SimConfig> settings;
  std::size_t bins = 60;
  std::uint64_t master_seed = 0;
  std::string resolved_config_json;  ///< compact canonical JSON, digest input
  std::string config_digest;
};

/// Optional command-line overrides applied before resolution (and therefore
/// reflected in the digest).
struct ConfigOverrides {
  std::optional<std::uint64_t> master_seed;
  std::optional<std::size_t> bins;
};

/// Reads and expands a JSON run configuration.
///
/// Grid axes expand in declaration order (theta, p_rel, p_noise, beta) with
/// beta varying fastest; setting ids number the expansion 0..N-1. The beta
/// axis accepts either an explicit list or a {from, to, step} range.
/// Unspecified scalars take the defaults documented in SimConfig. Throws
/// ParseError on malformed JSON and ValidationError (listing every violation)
/// on schema breaches.
ResolvedRun parse_config(const std::filesystem::path& path, const ConfigOverrides& overrides = {});

/// Same as parse_config but over in-memory text; `source_name` labels errors.
ResolvedRun parse_config_text(std::string_view text, std::string_view source_name,
                              const ConfigOverrides& overrides = {});

/// fnv1a-64 hex digest of the canonical resolved-config JSON.
std::string config_digest_hex(std::string_view canonical_json);

/// Writes one row per setting, sorted by setting id. Header:
/// theta,p_rel,p_noise,beta,n_train,n_test,replicates,p_relevant,p_noise_sel,p_none
/// Real-valued columns are printed with fixed 6 decimals; LF line endings.
void emit_summary_csv(std::span<const SettingSummary> summaries,
                      const std::filesystem::path& path);

/// Writes the raw per-replicate gain samples (long format, one row per
/// replicate and group) and fixed-width histogram counts per
/// (theta, p_rel, p_noise) panel.
///
/// Histogram bins are shared across the beta axis of a panel: the relevant
/// group bins cover the pooled range of delta_rel / theta, the noise group the
/// pooled range of raw delta_noise, so the counts render directly as a
/// beta-by-gain heatmap. Settings without noise features emit no noise rows.
void emit_distribution_data(std::span<const SettingSummary> summaries,
                            const std::filesystem::path& distributions_path,
                            const std::filesystem::path& histograms_path,
                            std::size_t bins);

/// Builds the manifest for a resolved run; timestamp is the current UTC time
/// unless an explicit value is supplied (tests pin it).
RunManifest make_manifest(const ResolvedRun& run,
                          std::optional<std::string> timestamp_utc = std::nullopt);

/// Writes manifest.json: the manifest fields plus the embedded resolved
/// config. The digest always equals config_digest_hex of the embedded
/// config's compact dump, so outputs are verifiable after the fact.
void write_manifest(const RunManifest& manifest, const ResolvedRun& run,
                    const std::filesystem::path& path);

}  // namespace costsel
