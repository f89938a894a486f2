#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "collabnet/export.hpp"
#include "collabnet/ingest.hpp"
#include "collabnet/metrics.hpp"
#include "collabnet/stats.hpp"
#include "collabnet/synth.hpp"

namespace collabnet {

struct ExplicitThresholds {
  std::vector<double> values;
};

struct LinspaceThresholds {
  std::size_t count = 6;
};

using ThresholdSpec = std::variant<ExplicitThresholds, LinspaceThresholds>;

// Where the records come from: a CSV path ("-" reads `stdin_source`) or the
// synthetic generator.
using InputSource = std::variant<std::filesystem::path, SynthConfig>;

struct RunConfig {
  InputSource input = SynthConfig{};
  ParseOptions parse;
  bool strict = false;
  std::set<ProjectType> type_filter{std::begin(kAllProjectTypes),
                                    std::end(kAllProjectTypes)};
  ThresholdSpec thresholds = ExplicitThresholds{{0.0, 20.0, 40.0, 60.0, 80.0, 100.0}};
  std::filesystem::path output_dir = "collabnet_out";
  ExportFormat export_format = ExportFormat::JSONGraph;
  bool include_isolated = false;
  std::size_t histogram_bins = kDefaultHistogramBins;
  IcScoreBasis ic_basis = IcScoreBasis::ProjectTotal;
  bool dump_linkage = false;
  std::size_t threads = 0;
};

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "COLLABNET_OUTPUT_DIR";
std::filesystem::path default_output_dir();

struct LoadedInput {
  std::string raw_csv;  // bytes the records were parsed from
  ParseResult parsed;
  Dataset dataset;      // aggregated, before the type filter
};

// Reads and validates the configured input. Throws InputError/ParseError on
// bad data and ConfigError on bad generator settings.
LoadedInput load_input(const RunConfig& config, std::istream* stdin_source = nullptr);

struct StatsResult {
  FeatureSummary contribution;
  std::optional<FeatureSummary> ic;
  Feature preferred = Feature::ContributionPct;
  std::string advisory;
};

StatsResult compute_stats(const std::vector<ContributionRecord>& records,
                          std::size_t n_bins, IcScoreBasis basis);

struct RunResult {
  std::vector<LayerMetricsReport> reports;
  std::vector<std::filesystem::path> artifacts;  // includes the manifest
  std::size_t linkage_pairs = 0;
  std::size_t pairs_visited = 0;
  std::vector<std::string> notes;  // warnings and advisories for stderr
};

// Full build: linkage table, layer stack, per-layer metrics and exports,
// feature statistics and a manifest. On any error the files written so far
// are removed and the exception propagates.
RunResult run_pipeline(const RunConfig& config, std::istream* stdin_source = nullptr);

// Writes only the statistics files (stats.json and histogram CSVs).
std::vector<std::filesystem::path> run_stats(const RunConfig& config,
                                             std::istream* stdin_source = nullptr);

}  // namespace collabnet
