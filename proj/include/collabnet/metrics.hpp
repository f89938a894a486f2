#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "collabnet/graph.hpp"
#include "collabnet/layers.hpp"

namespace collabnet {

// Layer-level summary. Local metrics are arithmetic means over the nodes
// left after isolated-node removal; global metrics use the same node set.
struct LayerMetricsReport {
  double threshold = 0.0;
  std::size_t n_nodes_retained = 0;
  std::size_t n_edges = 0;
  std::size_t n_isolated_removed = 0;
  double avg_closeness = 0.0;
  double avg_betweenness = 0.0;
  double avg_degree = 0.0;
  double avg_clustering = 0.0;
  double density = 0.0;
  std::size_t n_components = 0;

  friend bool operator==(const LayerMetricsReport&, const LayerMetricsReport&) = default;
};

struct MetricsOptions {
  // 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
  std::size_t threads = 0;
};

struct ComponentResult {
  std::size_t count = 0;
  // Component ids are ranked by size (largest is 0); equal sizes are ordered
  // by their smallest project id.
  std::map<std::string, std::size_t> membership;
  std::vector<std::size_t> sizes;  // sizes[id]
};

NetworkLayer remove_isolated(const NetworkLayer& layer);

// Closeness in harmonic form: sum over u != v of 1/d(v, u), hop distances,
// unreachable nodes add 0. This is not the classical 1/sum(d) closeness.
double closeness(const NetworkLayer& g, std::string_view v);

// Unnormalised betweenness over unordered {s, t} pairs (Brandes).
std::map<std::string, double> betweenness(const NetworkLayer& g,
                                          const MetricsOptions& options = {});

std::size_t degree(const NetworkLayer& g, std::string_view v);

// 2T(v) / (deg(v)(deg(v) - 1)); 0 when deg(v) < 2.
double clustering(const NetworkLayer& g, std::string_view v);

// 2m / (n(n - 1)); 0 when n < 2.
double density(const NetworkLayer& g);

ComponentResult components(const NetworkLayer& g);

LayerMetricsReport report(const NetworkLayer& layer, const MetricsOptions& options = {});

// Vertex-indexed variants used by report().
struct Centralities {
  std::vector<double> closeness;
  std::vector<double> betweenness;
};
Centralities centralities(const Graph& g, const MetricsOptions& options = {});
std::vector<double> clustering_coefficients(const Graph& g);

// One row per report in the given order. Reals are written in shortest
// round-trip form.
void write_metrics_csv(std::ostream& out, const std::vector<LayerMetricsReport>& reports);

// JSON array, one object per report keyed by the field names above.
std::string metrics_to_json(const std::vector<LayerMetricsReport>& reports);

}  // namespace collabnet
