#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace costsel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;     ///< bad arguments, missing/invalid config
inline constexpr int kExitNumerical = 3;  ///< a setting failed numerically
inline constexpr int kExitIo = 4;         ///< could not read/write result files

struct SimulateOptions {
  std::filesystem::path config_path;
  std::filesystem::path out_dir = ".";
  unsigned threads = 0;  ///< 0 = hardware concurrency
  std::optional<std::uint64_t> seed_override;
  std::optional<std::size_t> bins_override;
};

/// Full pipeline behind `costsel simulate`: parse config, run the grid, emit
/// summary.csv, distributions.csv, histograms.csv and manifest.json into
/// out_dir, and print the manifest summary to `out`. Returns an exit code.
int run_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);

/// Command-line entry point with the `simulate` and `criteria-demo`
/// subcommands. Returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace costsel::cli
