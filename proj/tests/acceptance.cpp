// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "collabnet/export.hpp"
#include "collabnet/layers.hpp"
#include "collabnet/linkage.hpp"
#include "collabnet/metrics.hpp"
#include "collabnet/pipeline.hpp"
#include "collabnet/stats.hpp"
#include "collabnet/synth.hpp"
#include "oracles.hpp"

using namespace collabnet;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

// Layer stacks and reports for the default generator at seeds 1..20.
struct SeedRun {
  std::uint64_t seed;
  std::vector<NetworkLayer> layers;
  std::vector<LayerMetricsReport> reports;
};

const std::vector<SeedRun>& default_runs() {
  static const std::vector<SeedRun> runs = [] {
    std::vector<SeedRun> out;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      SynthConfig c;
      c.seed = seed;
      const Dataset d = aggregate(generate(c));
      SeedRun run{seed, build_layer_stack(d, build_linkage_table(d), default_sweep()), {}};
      for (const auto& layer : run.layers) run.reports.push_back(report(layer));
      out.push_back(std::move(run));
    }
    return out;
  }();
  return runs;
}

Outcome linkage_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1);
  std::size_t mismatches = 0;
  std::size_t pairs = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset d = aggregate(oracle::random_records(rng, 20, 10));
    const auto table = build_linkage_table(d);
    const auto naive = oracle::naive_linkage(d);
    pairs += naive.size();
    if (table.size() != naive.size()) {
      ++mismatches;
      continue;
    }
    for (const auto& p : table.pairs()) {
      const auto it = naive.find({p.project_a, p.project_b});
      if (it == naive.end() ||
          std::abs(p.linkage - it->second) > 1e-12 * std::max(1.0, std::abs(it->second))) {
        ++mismatches;
      }
    }
  }
  const double elapsed = seconds_since(start);
  return {mismatches == 0 && elapsed < 1.0,
          std::to_string(pairs) + " pairs, " + std::to_string(mismatches) + " mismatches, " +
              fmt("%.3f s", elapsed)};
}

Outcome worked_value() {
  const Dataset d = aggregate({{"P1", "M1", 50, {}, ProjectType::IP},
                               {"P1", "M2", 20, {}, ProjectType::IP},
                               {"P2", "M1", 30, {}, ProjectType::IP},
                               {"P2", "M2", 40, {}, ProjectType::IP}});
  const auto link = pair_linkage(d.projects()[0], d.projects()[1]);
  const double value = link ? link->linkage : -1.0;
  return {value == 35.0, fmt("linkage %.17g", value)};
}

Outcome metric_oracles() {
  const auto start = Clock::now();
  std::mt19937_64 rng(3);
  std::size_t failures = 0;
  double worst_bc = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = oracle::random_graph(rng, 8);
    const auto layer = oracle::to_layer(g);
    const auto bc = betweenness(layer);
    const auto ref = oracle::betweenness(g);
    for (std::size_t v = 0; v < g.n; ++v) {
      const auto id = oracle::node_name(v);
      worst_bc = std::max(worst_bc, std::abs(bc.at(id) - ref[v]));
      const double cl = oracle::closeness(g, v);
      if (std::abs(closeness(layer, id) - cl) > 1e-12 * std::max(1.0, cl)) ++failures;
      if (clustering(layer, id) != oracle::clustering(g, v)) ++failures;
    }
    if (components(layer).count != oracle::flood_fill(g).second) ++failures;
    const double n = static_cast<double>(g.n);
    const double dens = g.n < 2 ? 0.0 : 2.0 * static_cast<double>(g.edges()) / (n * (n - 1.0));
    if (density(layer) != dens) ++failures;
  }
  const double elapsed = seconds_since(start);
  return {failures == 0 && worst_bc <= 1e-9 && elapsed < 5.0,
          std::to_string(failures) + " failures, max |dBC| " + fmt("%.3g", worst_bc) + ", " +
              fmt("%.3f s", elapsed)};
}

Outcome layer_nesting() {
  std::size_t ok_runs = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    SynthConfig c;
    c.seed = seed;
    c.n_projects = 300;
    c.n_members = 150;
    const Dataset d = aggregate(generate(c));
    const auto table = build_linkage_table(d);
    bool ok = true;
    for (const auto& sweep : {default_sweep(), make_sweep_linspace(table, 9)}) {
      const auto stack = build_layer_stack(d, table, sweep);
      std::size_t prev_isolated = 0;
      for (std::size_t i = 0; i < stack.size(); ++i) {
        const auto r = report(stack[i]);
        if (i > 0) {
          const auto& prev = stack[i - 1];
          ok &= stack[i].edges.size() <= prev.edges.size();
          ok &= r.n_isolated_removed >= prev_isolated;
          ok &= stack[i].nodes == prev.nodes;
          for (const auto& e : stack[i].edges) {
            ok &= std::binary_search(prev.edges.begin(), prev.edges.end(), e,
                                     [](const Edge& x, const Edge& y) {
                                       return std::tie(x.a, x.b) < std::tie(y.a, y.b);
                                     });
          }
        }
        prev_isolated = r.n_isolated_removed;
      }
    }
    ok_runs += ok;
  }
  return {ok_runs == 100, std::to_string(ok_runs) + "/100 runs nested"};
}

Outcome threshold_trends() {
  std::size_t trend_ok = 0;
  std::size_t component_ok = 0;
  for (const auto& run : default_runs()) {
    const auto& r = run.reports;
    bool ok = true;
    for (std::size_t i = 1; i <= 3; ++i) {  // thresholds 0, 20, 40, 60
      ok &= r[i].avg_degree <= r[i - 1].avg_degree;
      ok &= r[i].n_edges <= r[i - 1].n_edges;
      ok &= r[i].avg_closeness <= r[i - 1].avg_closeness;
      ok &= r[i].avg_betweenness <= r[i - 1].avg_betweenness;
    }
    bool middle = false;
    for (std::size_t i = 1; i + 1 < r.size(); ++i) {
      middle |= r[i].n_components > r.front().n_components &&
                r[i].n_components > r.back().n_components;
    }
    trend_ok += ok;
    component_ok += middle;
  }
  const std::size_t n = default_runs().size();
  return {trend_ok * 10 >= n * 9 && component_ok * 2 >= n,
          "monotone 0..60 in " + std::to_string(trend_ok) + "/" + std::to_string(n) +
              " seeds, component peak in " + std::to_string(component_ok) + "/" +
              std::to_string(n)};
}

Outcome scale_check() {
  const fs::path out = fs::temp_directory_path() / "collabnet_acceptance_scale";
  fs::remove_all(out);
  RunConfig cfg;
  cfg.output_dir = out;
  const auto start = Clock::now();
  const RunResult result = run_pipeline(cfg);
  const double elapsed = seconds_since(start);
  fs::remove_all(out);

  const Dataset d = aggregate(generate(SynthConfig{}));
  const std::size_t co_membered = oracle::naive_linkage(d).size();
  std::size_t records = 0;
  for (const auto& p : d.projects()) records += p.members.size();
  return {elapsed < 10.0 && result.pairs_visited <= co_membered,
          std::to_string(d.size()) + " projects, " + std::to_string(records) +
              " records, " + fmt("%.2f s", elapsed) + ", visited " +
              std::to_string(result.pairs_visited) + " <= " + std::to_string(co_membered)};
}

Outcome statistics() {
  const auto records = generate(SynthConfig{});
  const auto contribution = summarize(records, Feature::ContributionPct);
  const auto ic = summarize(records, Feature::ICScore);
  bool variance_ok = true;
  double worst = 0.0;
  for (const auto& s : {contribution, ic, summarize(records, Feature::ICScore, 20,
                                                    IcScoreBasis::PerMember)}) {
    const double rel =
        s.variance == 0.0 ? 0.0 : std::abs(s.std_dev * s.std_dev - s.variance) / s.variance;
    worst = std::max(worst, rel);
    variance_ok &= rel <= 1e-9;
  }
  const bool mean_ok = std::abs(contribution.mean - 23.30) <= 0.10 * 23.30;
  return {mean_ok && variance_ok,
          fmt("contribution mean %.3f (std %.3f), max |std^2-var|/var %.2g", contribution.mean,
              contribution.std_dev, worst)};
}

Outcome export_integrity() {
  std::size_t layers = 0;
  std::size_t failures = 0;
  for (const auto& run : default_runs()) {
    for (const auto& full : run.layers) {
      ++layers;
      const NetworkLayer layer = remove_isolated(full);
      const auto comp = components(layer);
      const auto visuals = assign_visuals(layer, comp);
      const auto doc = export_layer(layer, visuals, ExportFormat::JSONGraph, false);
      bool ok = doc == export_layer(layer, visuals, ExportFormat::JSONGraph, false);

      const auto back = read_json_graph(doc);
      ok &= back.threshold == layer.threshold;
      ok &= back.nodes == visuals;
      ok &= back.edges.size() == layer.edges.size();
      for (const auto& e : layer.edges) {
        const auto it = back.edges.find({e.a, e.b});
        ok &= it != back.edges.end() && std::abs(it->second - e.weight) <= 5e-7;
      }

      const std::size_t largest = comp.sizes.empty() ? 0 : comp.sizes.front();
      for (const auto& [id, v] : visuals) {
        if (comp.sizes[v.component] == largest) ok &= v.color == ComponentColor::Blue;
      }
      failures += !ok;
    }
  }
  return {failures == 0, std::to_string(layers - failures) + "/" + std::to_string(layers) +
                             " layers round-trip, repeat and colour checks"};
}

Outcome determinism() {
  const fs::path a = fs::temp_directory_path() / "collabnet_acceptance_det_a";
  const fs::path b = fs::temp_directory_path() / "collabnet_acceptance_det_b";
  fs::remove_all(a);
  fs::remove_all(b);
  RunConfig cfg;
  cfg.output_dir = a;
  const auto ra = run_pipeline(cfg);
  cfg.output_dir = b;
  const auto rb = run_pipeline(cfg);
  std::size_t compared = 0;
  bool ok = ra.artifacts.size() == rb.artifacts.size();
  for (std::size_t i = 0; ok && i < ra.artifacts.size(); ++i) {
    const auto name = ra.artifacts[i].filename().string();
    if (name != "metrics.csv" && name.rfind("layer_", 0) != 0) continue;
    ok &= name == rb.artifacts[i].filename().string();
    ok &= slurp(ra.artifacts[i]) == slurp(rb.artifacts[i]);
    ++compared;
  }
  fs::remove_all(a);
  fs::remove_all(b);
  return {ok && compared == 7, std::to_string(compared) + " files byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 linkage index equals naive scan", linkage_oracle},
      {"2 worked linkage value is 35.0", worked_value},
      {"3 metric oracles", metric_oracles},
      {"4 layer nesting", layer_nesting},
      {"5 threshold trends on synthetic data", threshold_trends},
      {"6 scale", scale_check},
      {"7 statistics", statistics},
      {"8 export integrity", export_integrity},
      {"9 end-to-end determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
