#include "collabnet/layers.hpp"

#include <cmath>

#include "collabnet/error.hpp"

namespace collabnet {

ThresholdSweep::ThresholdSweep(std::vector<double> t, SweepSource s)
    : thresholds_(std::move(t)), source_(s) {
  if (thresholds_.empty()) throw ConfigError("threshold sweep is empty");
  for (std::size_t i = 0; i < thresholds_.size(); ++i) {
    if (!std::isfinite(thresholds_[i])) throw ConfigError("threshold is not finite");
    if (i > 0 && !(thresholds_[i - 1] < thresholds_[i])) {
      throw ConfigError("thresholds must be strictly increasing");
    }
  }
}

ThresholdSweep ThresholdSweep::explicit_list(std::vector<double> thresholds) {
  return ThresholdSweep(std::move(thresholds), SweepSource::Explicit);
}

ThresholdSweep ThresholdSweep::linspace(double lo, double hi, std::size_t count) {
  if (count < 2) throw ConfigError("linspace needs at least 2 points");
  if (!(lo < hi)) {
    throw InputError("degenerate linkage range; linspace would not be strictly increasing");
  }
  std::vector<double> t(count);
  const double span = hi - lo;
  const auto steps = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    t[i] = lo + span * static_cast<double>(i) / steps;
  }
  t.back() = hi;
  return ThresholdSweep(std::move(t), SweepSource::Linspace);
}

ThresholdSweep make_sweep_linspace(const LinkageTable& table, std::size_t n_points) {
  if (table.empty()) throw InputError("no co-membered pairs");
  return ThresholdSweep::linspace(*table.min_linkage(), *table.max_linkage(), n_points);
}

ThresholdSweep default_sweep() {
  return ThresholdSweep::explicit_list({0.0, 20.0, 40.0, 60.0, 80.0, 100.0});
}

std::string describe_type_filter(const std::set<ProjectType>& types) {
  std::string out;
  for (ProjectType t : types) {
    if (!out.empty()) out += ',';
    out += to_string(t);
  }
  return out;
}

namespace {

NetworkLayer threshold_layer(const Dataset& d, const LinkageTable& table, double threshold,
                             const Provenance& provenance) {
  NetworkLayer layer;
  layer.threshold = threshold;
  layer.nodes.reserve(d.size());
  for (const auto& p : d.projects()) layer.nodes.push_back(p.id);
  for (const auto& pair : table.pairs()) {
    if (pair.linkage >= threshold) {
      layer.edges.push_back({pair.project_a, pair.project_b, pair.linkage});
    }
  }
  layer.provenance = provenance;
  return layer;
}

Provenance provenance_of(const Dataset& d) {
  return {d.fingerprint(), describe_type_filter(d.type_filter())};
}

}  // namespace

NetworkLayer build_layer(const Dataset& d, const LinkageTable& table, double threshold) {
  return threshold_layer(d, table, threshold, provenance_of(d));
}

std::vector<NetworkLayer> build_layer_stack(const Dataset& d, const LinkageTable& table,
                                            const ThresholdSweep& sweep) {
  const Provenance provenance = provenance_of(d);
  std::vector<NetworkLayer> stack;
  stack.reserve(sweep.size());
  for (double t : sweep.thresholds()) {
    stack.push_back(threshold_layer(d, table, t, provenance));
  }
  return stack;
}

}  // namespace collabnet
