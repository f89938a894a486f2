#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "collabnet/ingest.hpp"
#include "collabnet/linkage.hpp"

namespace collabnet {

enum class SweepSource { Explicit, Linspace };

// Strictly increasing, finite thresholds.
class ThresholdSweep {
 public:
  // Throws ConfigError if `thresholds` is empty, non-finite or not strictly
  // increasing.
  static ThresholdSweep explicit_list(std::vector<double> thresholds);
  // `count` evenly spaced values from lo to hi inclusive. Throws ConfigError
  // for count < 2 and InputError when the range is degenerate.
  static ThresholdSweep linspace(double lo, double hi, std::size_t count);

  const std::vector<double>& thresholds() const noexcept { return thresholds_; }
  SweepSource source() const noexcept { return source_; }
  std::size_t size() const noexcept { return thresholds_.size(); }

 private:
  ThresholdSweep(std::vector<double> t, SweepSource s);

  std::vector<double> thresholds_;
  SweepSource source_;
};

// Linspace over [min linkage, max linkage]. Throws InputError on an empty
// table ("no co-membered pairs") or a degenerate range.
ThresholdSweep make_sweep_linspace(const LinkageTable& table, std::size_t n_points);

// The six-point sweep 0, 20, ..., 100.
ThresholdSweep default_sweep();

struct Edge {
  std::string a;  // a < b
  std::string b;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Provenance {
  std::string dataset_fingerprint;
  std::string type_filter;  // e.g. "ip,paper"

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// One graph of the stack. Nodes ascending; edges in (a, b) order, weight is
// the pair linkage.
struct NetworkLayer {
  double threshold = 0.0;
  std::vector<std::string> nodes;
  std::vector<Edge> edges;
  Provenance provenance;

  friend bool operator==(const NetworkLayer&, const NetworkLayer&) = default;
};

std::string describe_type_filter(const std::set<ProjectType>& types);

// Every project of `d` is a node; a pair is an edge when linkage >= threshold.
NetworkLayer build_layer(const Dataset& d, const LinkageTable& table, double threshold);

// One layer per threshold, in sweep order.
std::vector<NetworkLayer> build_layer_stack(const Dataset& d, const LinkageTable& table,
                                            const ThresholdSweep& sweep);

}  // namespace collabnet
