// collabnet: build threshold-swept project networks from collaboration records.
//
//   collabnet synth --seed 42 > records.csv
//   collabnet ingest --input records.csv
//   collabnet stats --input records.csv --out-dir out
//   collabnet build --input records.csv --thresholds 0,20,40,60,80,100 --types ip
//
// Exit codes: 0 success, 1 input error, 2 configuration error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "collabnet/error.hpp"
#include "collabnet/ingest.hpp"
#include "collabnet/pipeline.hpp"
#include "collabnet/synth.hpp"

namespace {

using namespace collabnet;

constexpr int kExitInput = 1;
constexpr int kExitConfig = 2;

struct SynthFlags {
  std::uint64_t seed = 42;
  std::size_t projects = 2300;
  std::size_t members = 1000;
  double contribution_mean = 23.3;
  double attachment_offset = 1.0;
  std::size_t max_team = 15;

  void add_to(CLI::App* cmd, const std::string& prefix) {
    cmd->add_option("--" + prefix + "seed", seed, "Generator seed")->capture_default_str();
    cmd->add_option("--" + prefix + "projects", projects, "Number of projects")
        ->capture_default_str();
    cmd->add_option("--" + prefix + "members", members, "Size of the member pool")
        ->capture_default_str();
    cmd->add_option("--" + prefix + "contribution-mean", contribution_mean,
                    "Target mean contribution percentage")
        ->capture_default_str();
    cmd->add_option("--" + prefix + "attachment-offset", attachment_offset,
                    "Preferential attachment offset (smaller = stronger hubs)")
        ->capture_default_str();
    cmd->add_option("--" + prefix + "max-team", max_team, "Largest team size")
        ->capture_default_str();
  }

  SynthConfig config() const {
    SynthConfig c;
    c.seed = seed;
    c.n_projects = projects;
    c.n_members = members;
    c.contribution_mean_target = contribution_mean;
    c.attachment_offset = attachment_offset;
    c.team_size.max_size = max_team;
    return c;
  }
};

struct InputFlags {
  std::string input;
  bool use_synth = false;
  char delimiter = ',';
  bool lenient = false;
  bool strict = false;
  std::string types = "all";
  SynthFlags synth;

  void add_to(CLI::App* cmd) {
    auto* in = cmd->add_option("-i,--input", input, "Records CSV ('-' for stdin)");
    auto* syn = cmd->add_flag("--synth", use_synth, "Generate the input instead of reading it");
    in->excludes(syn);
    cmd->add_option("--delimiter", delimiter, "Field delimiter")->capture_default_str();
    cmd->add_flag("--lenient", lenient, "Skip malformed rows instead of failing");
    cmd->add_flag("--strict", strict, "Reject projects whose contributions exceed 100%");
    cmd->add_option("--types", types, "Project types: ip,paper,prototype or all")
        ->capture_default_str();
    synth.add_to(cmd, "synth-");
  }

  void apply(RunConfig& cfg) const {
    if (use_synth) {
      cfg.input = synth.config();
    } else if (!input.empty()) {
      cfg.input = std::filesystem::path(input);
    } else {
      throw ConfigError("one of --input or --synth is required");
    }
    cfg.parse.delimiter = delimiter;
    cfg.parse.lenient = lenient;
    cfg.strict = strict;
    cfg.type_filter = parse_project_types(types);
  }
};

std::vector<double> parse_threshold_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad threshold '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty threshold list");
  return out;
}

int report_error(const std::exception& e, int code) {
  std::cerr << "collabnet: error: " << e.what() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold-swept project networks from collaboration records"};
  app.require_subcommand(1);

  // synth
  SynthFlags synth_flags;
  std::string synth_out = "-";
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic records CSV");
  synth_flags.add_to(synth_cmd, "");
  synth_cmd->add_option("-o,--output", synth_out, "Output file ('-' for stdout)")
      ->capture_default_str();

  // ingest
  InputFlags ingest_flags;
  auto* ingest_cmd = app.add_subcommand("ingest", "Validate an input file and summarise it");
  ingest_flags.add_to(ingest_cmd);

  // stats
  InputFlags stats_flags;
  std::string stats_out;
  std::size_t stats_bins = kDefaultHistogramBins;
  bool stats_per_member_ic = false;
  auto* stats_cmd = app.add_subcommand("stats", "Histograms and summary statistics");
  stats_flags.add_to(stats_cmd);
  stats_cmd->add_option("-o,--out-dir", stats_out, "Output directory");
  stats_cmd->add_option("--bins", stats_bins, "Histogram bins")->capture_default_str();
  stats_cmd->add_flag("--per-member-ic", stats_per_member_ic,
                      "ic_score column already holds per-member scores");

  // build
  InputFlags build_flags;
  std::string build_out;
  std::string thresholds;
  std::size_t linspace = 0;
  std::string format = "json";
  bool include_isolated = false;
  bool dump_linkage = false;
  bool build_per_member_ic = false;
  std::size_t build_bins = kDefaultHistogramBins;
  std::size_t threads = 0;
  auto* build_cmd =
      app.add_subcommand("build", "Linkage table, layer stack, metrics and exports");
  build_flags.add_to(build_cmd);
  build_cmd->add_option("-o,--out-dir", build_out, "Output directory");
  build_cmd->add_option("--thresholds", thresholds,
                        "Comma separated thresholds (default 0,20,40,60,80,100)");
  build_cmd->add_option("--linspace", linspace,
                        "Evenly spaced thresholds over the observed linkage range");
  build_cmd->add_option("--format", format, "graphml, dot or json")->capture_default_str();
  build_cmd->add_flag("--include-isolated", include_isolated,
                      "Keep degree-0 nodes in layer exports");
  build_cmd->add_flag("--dump-linkage", dump_linkage, "Also write linkage.csv");
  build_cmd->add_option("--bins", build_bins, "Histogram bins")->capture_default_str();
  build_cmd->add_flag("--per-member-ic", build_per_member_ic,
                      "ic_score column already holds per-member scores");
  build_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (synth_cmd->parsed()) {
      const auto records = generate(synth_flags.config());
      if (synth_out == "-") {
        write_records(std::cout, records);
      } else {
        std::ofstream out(synth_out, std::ios::binary);
        if (!out) throw ConfigError("cannot write " + synth_out);
        write_records(out, records);
      }
      return 0;
    }

    if (ingest_cmd->parsed()) {
      RunConfig cfg;
      ingest_flags.apply(cfg);
      const LoadedInput in = load_input(cfg, &std::cin);
      const Dataset d = filter_by_type(in.dataset, cfg.type_filter);
      for (const auto& issue : in.parsed.skipped) {
        std::cerr << "skipped row " << issue.row << ": " << issue.reason << '\n';
      }
      for (const auto& w : in.dataset.warnings()) std::cerr << "warning: " << w << '\n';
      std::cout << "records " << in.parsed.records.size() << '\n'
                << "skipped " << in.parsed.skipped.size() << '\n'
                << "projects " << d.size() << '\n'
                << "members " << d.member_index().size() << '\n';
      return 0;
    }

    if (stats_cmd->parsed()) {
      RunConfig cfg;
      stats_flags.apply(cfg);
      cfg.output_dir = stats_out.empty() ? default_output_dir() : std::filesystem::path(stats_out);
      cfg.histogram_bins = stats_bins;
      cfg.ic_basis = stats_per_member_ic ? IcScoreBasis::PerMember : IcScoreBasis::ProjectTotal;
      for (const auto& p : run_stats(cfg, &std::cin)) std::cout << p.string() << '\n';
      return 0;
    }

    RunConfig cfg;
    build_flags.apply(cfg);
    cfg.output_dir = build_out.empty() ? default_output_dir() : std::filesystem::path(build_out);
    if (!thresholds.empty()) {
      if (linspace != 0) {
        std::cerr << "collabnet: note: --thresholds overrides --linspace\n";
      }
      cfg.thresholds = ExplicitThresholds{parse_threshold_list(thresholds)};
    } else if (linspace != 0) {
      cfg.thresholds = LinspaceThresholds{linspace};
    }
    cfg.export_format = parse_export_format(format);
    cfg.include_isolated = include_isolated;
    cfg.dump_linkage = dump_linkage;
    cfg.histogram_bins = build_bins;
    cfg.ic_basis = build_per_member_ic ? IcScoreBasis::PerMember : IcScoreBasis::ProjectTotal;
    cfg.threads = threads;

    const RunResult result = run_pipeline(cfg, &std::cin);
    for (const auto& note : result.notes) std::cerr << "note: " << note << '\n';
    for (const auto& p : result.artifacts) std::cout << p.string() << '\n';
    return 0;
  } catch (const ConfigError& e) {
    return report_error(e, kExitConfig);
  } catch (const InputError& e) {
    return report_error(e, kExitInput);
  } catch (const std::exception& e) {
    return report_error(e, kExitInput);
  }
}
