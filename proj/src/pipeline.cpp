#include "collabnet/pipeline.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "collabnet/error.hpp"
#include "collabnet/hash.hpp"
#include "collabnet/layers.hpp"
#include "collabnet/linkage.hpp"
#include "json.hpp"
#include "text_format.hpp"

namespace collabnet {

namespace fs = std::filesystem;

namespace {

// Tracks files written into the output directory and deletes them (and the
// directory, if this run created it) unless commit() is reached.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    if (!fs::exists(dir_, ec)) {
      if (!fs::create_directories(dir_, ec) || ec) {
        throw ConfigError("cannot create output directory " + dir_.string());
      }
      created_dir_ = true;
    } else if (!fs::is_directory(dir_, ec)) {
      throw ConfigError("output path is not a directory: " + dir_.string());
    }
  }

  ArtifactWriter(const ArtifactWriter&) = delete;
  ArtifactWriter& operator=(const ArtifactWriter&) = delete;

  ~ArtifactWriter() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& f : written_) fs::remove(f, ec);
    if (created_dir_) fs::remove(dir_, ec);  // only succeeds when empty
  }

  const fs::path& write(const std::string& name, const std::string& content) {
    const fs::path path = dir_ / name;
    written_.push_back(path);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw InputError("failed to write " + path.string());
    hashes_.push_back(sha256_hex(content));
    return written_.back();
  }

  const std::vector<fs::path>& written() const noexcept { return written_; }
  const std::vector<std::string>& hashes() const noexcept { return hashes_; }
  void commit() noexcept { committed_ = true; }

 private:
  fs::path dir_;
  bool created_dir_ = false;
  bool committed_ = false;
  std::vector<fs::path> written_;
  std::vector<std::string> hashes_;
};

std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

nlohmann::ordered_json synth_to_json(const SynthConfig& c) {
  nlohmann::ordered_json j = {
      {"seed", c.seed},
      {"n_projects", c.n_projects},
      {"n_members", c.n_members},
      {"type_mix", c.type_mix},
      {"team_size_min", c.team_size.min_size},
      {"team_size_max", c.team_size.max_size},
      {"contribution_mean_target", c.contribution_mean_target},
      {"support_fraction", c.support_fraction},
      {"group_size", c.group_size},
      {"department_size", c.department_size},
      {"outsider_probability", c.outsider_probability},
      {"liaison_fraction", c.liaison_fraction},
      {"liaison_probability", c.liaison_probability},
      {"attachment_offset", c.attachment_offset},
      {"role_weights",
       {{"leader", c.leader_weight},
        {"regular", c.regular_weight},
        {"outsider", c.outsider_weight},
        {"liaison", c.liaison_weight}}},
      {"contribution_noise", c.contribution_noise},
      {"ic_mean_target", c.ic_mean_target}};
  if (c.team_size.mean) j["team_size_mean"] = *c.team_size.mean;
  return j;
}

ThresholdSweep resolve_sweep(const ThresholdSpec& spec, const LinkageTable& table) {
  if (const auto* e = std::get_if<ExplicitThresholds>(&spec)) {
    return ThresholdSweep::explicit_list(e->values);
  }
  return make_sweep_linspace(table, std::get<LinspaceThresholds>(spec).count);
}

std::string layer_file_name(std::size_t index, double threshold, ExportFormat format) {
  std::string idx = std::to_string(index);
  if (idx.size() < 2) idx.insert(0, 2 - idx.size(), '0');
  return "layer_" + idx + "_t" + detail::format_real(threshold) + "." +
         std::string(file_extension(format));
}

void write_stats_files(ArtifactWriter& writer, const StatsResult& stats) {
  std::ostringstream hist;
  write_histogram_csv(hist, stats.contribution);
  writer.write("hist_contribution_pct.csv", hist.str());
  std::vector<FeatureSummary> summaries{stats.contribution};
  if (stats.ic) {
    std::ostringstream ic_hist;
    write_histogram_csv(ic_hist, *stats.ic);
    writer.write("hist_ic_score.csv", ic_hist.str());
    summaries.push_back(*stats.ic);
  }
  writer.write("stats.json", summaries_to_json(summaries, stats.advisory));
}

}  // namespace

fs::path default_output_dir() {
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return "collabnet_out";
}

LoadedInput load_input(const RunConfig& config, std::istream* stdin_source) {
  LoadedInput in;
  if (const auto* synth = std::get_if<SynthConfig>(&config.input)) {
    std::ostringstream csv;
    write_records(csv, generate(*synth));
    in.raw_csv = csv.str();
  } else {
    const auto& path = std::get<fs::path>(config.input);
    if (path == "-") {
      if (!stdin_source) throw InputError("no standard input available");
      in.raw_csv = read_all(*stdin_source);
    } else {
      std::ifstream file(path, std::ios::binary);
      if (!file) throw InputError("cannot read input file " + path.string());
      in.raw_csv = read_all(file);
    }
  }
  in.parsed = parse_records_from_string(in.raw_csv, config.parse);
  in.dataset = aggregate(in.parsed.records, AggregateOptions{config.strict});
  return in;
}

StatsResult compute_stats(const std::vector<ContributionRecord>& records,
                          std::size_t n_bins, IcScoreBasis basis) {
  StatsResult out;
  out.contribution = summarize(records, Feature::ContributionPct, n_bins, basis);
  if (!feature_values(records, Feature::ICScore, basis).empty()) {
    out.ic = summarize(records, Feature::ICScore, n_bins, basis);
    out.preferred = select_linkage_feature(out.contribution, *out.ic);
    if (out.preferred == Feature::ICScore) {
      out.advisory =
          "ic_score covers a wider range than contribution_pct; linkage still uses "
          "contribution_pct";
    }
  }
  return out;
}

RunResult run_pipeline(const RunConfig& config, std::istream* stdin_source) {
  const LoadedInput input = load_input(config, stdin_source);
  const Dataset dataset = filter_by_type(input.dataset, config.type_filter);

  LinkageBuildStats build_stats;
  const LinkageTable table = build_linkage_table(dataset, &build_stats);
  const ThresholdSweep sweep = resolve_sweep(config.thresholds, table);
  const auto layers = build_layer_stack(dataset, table, sweep);

  RunResult result;
  result.linkage_pairs = table.size();
  result.pairs_visited = build_stats.candidate_pairs_visited;
  result.notes = dataset.warnings();
  for (const auto& issue : input.parsed.skipped) {
    result.notes.push_back("skipped row " + std::to_string(issue.row) + ": " + issue.reason);
  }

  ArtifactWriter writer(config.output_dir);
  const MetricsOptions metrics_options{config.threads};
  nlohmann::ordered_json layer_entries = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const NetworkLayer& layer = layers[i];
    result.reports.push_back(report(layer, metrics_options));

    const NetworkLayer exported = config.include_isolated ? layer : remove_isolated(layer);
    const auto visuals = assign_visuals(exported, components(exported));
    writer.write(layer_file_name(i, layer.threshold, config.export_format),
                 export_layer(exported, visuals, config.export_format,
                              config.include_isolated));
  }

  std::ostringstream metrics_csv;
  write_metrics_csv(metrics_csv, result.reports);
  writer.write("metrics.csv", metrics_csv.str());
  writer.write("metrics.json", metrics_to_json(result.reports));

  const StatsResult stats =
      compute_stats(to_records(dataset), config.histogram_bins, config.ic_basis);
  if (!stats.advisory.empty()) result.notes.push_back(stats.advisory);
  write_stats_files(writer, stats);

  if (config.dump_linkage) {
    std::ostringstream linkage_csv;
    write_linkage_csv(linkage_csv, table);
    writer.write("linkage.csv", linkage_csv.str());
  }

  nlohmann::ordered_json manifest;
  if (const auto* synth = std::get_if<SynthConfig>(&config.input)) {
    manifest["input"] = {{"source", "synth"}, {"synth", synth_to_json(*synth)}};
  } else {
    manifest["input"] = {{"source", std::get<fs::path>(config.input).string()}};
  }
  manifest["input"]["sha256"] = sha256_hex(input.raw_csv);
  manifest["input"]["records"] = input.parsed.records.size();
  manifest["input"]["skipped_rows"] = input.parsed.skipped.size();

  nlohmann::ordered_json cfg;
  cfg["types"] = describe_type_filter(config.type_filter);
  if (const auto* e = std::get_if<ExplicitThresholds>(&config.thresholds)) {
    cfg["thresholds"] = {{"mode", "explicit"}, {"values", e->values}};
  } else {
    cfg["thresholds"] = {{"mode", "linspace"},
                         {"count", std::get<LinspaceThresholds>(config.thresholds).count}};
  }
  cfg["resolved_thresholds"] = sweep.thresholds();
  cfg["export_format"] = std::string(file_extension(config.export_format));
  cfg["include_isolated"] = config.include_isolated;
  cfg["strict"] = config.strict;
  cfg["lenient"] = config.parse.lenient;
  cfg["delimiter"] = std::string(1, config.parse.delimiter);
  cfg["histogram_bins"] = config.histogram_bins;
  cfg["ic_basis"] = config.ic_basis == IcScoreBasis::ProjectTotal ? "project_total"
                                                                  : "per_member";
  manifest["config"] = std::move(cfg);
  manifest["dataset"] = {{"projects", dataset.size()},
                         {"members", dataset.member_index().size()},
                         {"fingerprint", dataset.fingerprint()},
                         {"linkage_pairs", table.size()}};
  nlohmann::ordered_json artifacts = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < writer.written().size(); ++i) {
    artifacts.push_back({{"file", writer.written()[i].filename().string()},
                         {"sha256", writer.hashes()[i]}});
  }
  manifest["artifacts"] = std::move(artifacts);
  writer.write("manifest.json", manifest.dump(2) + "\n");

  writer.commit();
  result.artifacts = writer.written();
  return result;
}

std::vector<fs::path> run_stats(const RunConfig& config, std::istream* stdin_source) {
  const LoadedInput input = load_input(config, stdin_source);
  const Dataset dataset = filter_by_type(input.dataset, config.type_filter);
  const StatsResult stats =
      compute_stats(to_records(dataset), config.histogram_bins, config.ic_basis);
  ArtifactWriter writer(config.output_dir);
  write_stats_files(writer, stats);
  writer.commit();
  return writer.written();
}

}  // namespace collabnet
