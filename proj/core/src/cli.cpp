#include "costsel/cli.hpp"

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "costsel/criteria.hpp"
#include "costsel/errors.hpp"
#include "costsel/experiment.hpp"
#include "costsel/report.hpp"
#include "costsel/version.hpp"

namespace costsel::cli {

namespace {

TradeoffCriterion make_criterion(const std::string& name, std::optional<double> gamma,
                                 std::optional<double> lambda) {
  if (name == "plain") return TradeoffCriterion::plain_gain();
  if (name == "bcr") return TradeoffCriterion::benefit_cost_ratio();
  if (name == "adapted-bcr") {
    if (!gamma) throw ValidationError("criterion adapted-bcr requires --gamma");
    return TradeoffCriterion::adapted_bcr(*gamma);
  }
  if (name == "weighted-sum") {
    if (!lambda) throw ValidationError("criterion weighted-sum requires --lambda");
    return TradeoffCriterion::weighted_sum(*lambda);
  }
  throw ValidationError("unknown criterion '" + name +
                        "' (expected plain, bcr, adapted-bcr or weighted-sum)");
}

int run_criteria_demo(double gain, double cost, const std::string& name,
                      std::optional<double> gamma, std::optional<double> lambda,
                      std::ostream& out, std::ostream& err) {
  try {
    const TradeoffCriterion criterion = make_criterion(name, gamma, lambda);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", score(criterion, gain, cost));
    out << buf << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "criteria-demo: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace

int run_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
  ResolvedRun run;
  try {
    run = parse_config(options.config_path,
                       ConfigOverrides{options.seed_override, options.bins_override});
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  const std::vector<SettingRun> results = run_grid(run.settings, options.threads);
  std::vector<SettingSummary> summaries;
  summaries.reserve(results.size());
  bool any_failed = false;
  for (const SettingRun& r : results) {
    if (!r.ok()) {
      any_failed = true;
      err << "setting " << r.setting_id << " failed: " << r.error << "\n";
    } else if (!any_failed) {
      summaries.push_back(*r.summary);
    }
  }
  if (any_failed) return kExitNumerical;

  const RunManifest manifest = make_manifest(run);
  try {
    std::filesystem::create_directories(options.out_dir);
    emit_summary_csv(summaries, options.out_dir / "summary.csv");
    emit_distribution_data(summaries, options.out_dir / "distributions.csv",
                           options.out_dir / "histograms.csv", run.bins);
    write_manifest(manifest, run, options.out_dir / "manifest.json");
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }

  out << "settings: " << manifest.setting_count << "  master_seed: " << manifest.master_seed
      << "  tool_version: " << manifest.tool_version << "\n"
      << "config_digest: " << manifest.config_digest << "  timestamp: " << manifest.timestamp_utc
      << "\n"
      << "wrote: summary.csv distributions.csv histograms.csv manifest.json -> "
      << options.out_dir.string() << "\n";
  return kExitOk;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"cost-sensitive feature selection: trade-off criteria and simulation grids"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  SimulateOptions options;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::size_t> bins_override;
  CLI::App* simulate = app.add_subcommand("simulate", "run a simulation grid and emit CSV data");
  simulate->add_option("--config", options.config_path, "JSON run configuration")->required();
  simulate->add_option("--out", options.out_dir, "output directory (default: current)");
  simulate->add_option("--threads", options.threads, "worker threads, 0 = hardware");
  simulate->add_option("--seed", seed_override, "override master_seed");
  simulate->add_option("--bins", bins_override, "override histogram bin count");

  double gain = 0.0;
  double cost = 0.0;
  std::string criterion_name;
  std::optional<double> gamma;
  std::optional<double> lambda;
  CLI::App* demo = app.add_subcommand("criteria-demo", "score one gain/cost pair");
  demo->add_option("--gain", gain, "performance gain")->required();
  demo->add_option("--cost", cost, "feature cost")->required();
  demo->add_option("--criterion", criterion_name, "plain | bcr | adapted-bcr | weighted-sum")
      ->required();
  demo->add_option("--gamma", gamma, "adapted-bcr cost exponent");
  demo->add_option("--lambda", lambda, "weighted-sum cost penalty");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (simulate->parsed()) {
    options.seed_override = seed_override;
    options.bins_override = bins_override;
    return run_simulate(options, std::cout, std::cerr);
  }
  return run_criteria_demo(gain, cost, criterion_name, gamma, lambda, std::cout, std::cerr);
}

}  // namespace costsel::cli
