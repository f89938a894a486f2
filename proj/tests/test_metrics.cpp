#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>
#include <sstream>

#include "collabnet/metrics.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace collabnet;

namespace {

NetworkLayer layer_of(std::vector<std::string> nodes,
                      std::vector<std::pair<std::string, std::string>> edges) {
  NetworkLayer layer;
  layer.nodes = std::move(nodes);
  for (auto& [a, b] : edges) layer.edges.push_back({a, b, 50.0});
  return layer;
}

// Path a - b - c plus isolated d.
NetworkLayer path_with_isolate() {
  return layer_of({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}});
}

}  // namespace

TEST_CASE("isolated nodes are removed before reporting") {
  const auto layer = path_with_isolate();
  CHECK(remove_isolated(layer).nodes == std::vector<std::string>{"a", "b", "c"});
  const auto r = report(layer);
  CHECK(r.n_nodes_retained == 3);
  CHECK(r.n_isolated_removed == 1);
  CHECK(r.n_edges == 2);
  CHECK(r.avg_degree == doctest::Approx(4.0 / 3.0));
  CHECK(r.density == doctest::Approx(2.0 / 3.0));
  CHECK(r.n_components == 1);
}

TEST_CASE("path metrics by hand") {
  const auto layer = path_with_isolate();
  CHECK(closeness(layer, "a") == doctest::Approx(1.5));
  CHECK(closeness(layer, "b") == doctest::Approx(2.0));
  CHECK(closeness(layer, "d") == 0.0);
  const auto bc = betweenness(layer);
  CHECK(bc.at("b") == 1.0);
  CHECK(bc.at("a") == 0.0);
  CHECK(degree(layer, "b") == 2);
  CHECK(clustering(layer, "b") == 0.0);
  CHECK(clustering(layer, "a") == 0.0);
}

TEST_CASE("empty and single-node layers") {
  const auto r = report(layer_of({"x"}, {}));
  CHECK(r.n_nodes_retained == 0);
  CHECK(r.n_isolated_removed == 1);
  CHECK(r.density == 0.0);
  CHECK(r.n_components == 0);
  CHECK(density(layer_of({"x"}, {})) == 0.0);
}

TEST_CASE("component ids are ranked by size, ties by smallest id") {
  const auto layer = layer_of({"a", "b", "c", "d", "e", "f", "g"},
                              {{"e", "f"}, {"a", "g"}, {"b", "c"}, {"c", "d"}});
  const auto comp = components(layer);
  CHECK(comp.count == 3);
  CHECK(comp.sizes == std::vector<std::size_t>{3, 2, 2});
  CHECK(comp.membership.at("b") == 0);
  CHECK(comp.membership.at("a") == 1);
  CHECK(comp.membership.at("e") == 2);
}

TEST_CASE("disjoint cliques and complete graphs") {
  const auto cliques =
      layer_of({"a", "b", "c", "d", "e", "f"},
               {{"a", "b"}, {"a", "c"}, {"b", "c"}, {"d", "e"}, {"d", "f"}, {"e", "f"}});
  const auto r = report(cliques);
  CHECK(r.avg_clustering == 1.0);
  CHECK(r.avg_betweenness == 0.0);
  CHECK(r.n_components == 2);
  const auto k3 = layer_of({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}, {"b", "c"}});
  CHECK(density(k3) == 1.0);
}

TEST_CASE("csv and json output") {
  const std::vector<LayerMetricsReport> reports{report(path_with_isolate())};
  std::ostringstream csv;
  write_metrics_csv(csv, reports);
  std::string header;
  std::istringstream in(csv.str());
  std::getline(in, header);
  CHECK(header ==
        "threshold,n_nodes_retained,n_edges,n_isolated_removed,avg_closeness,"
        "avg_betweenness,avg_degree,avg_clustering,density,n_components");
  const auto j = nlohmann::json::parse(metrics_to_json(reports));
  REQUIRE(j.size() == 1);
  CHECK(j[0]["n_edges"] == 2);
  CHECK(j[0]["avg_betweenness"].get<double>() == reports[0].avg_betweenness);
}

TEST_CASE("malformed layers are rejected") {
  CHECK_THROWS_AS(report(layer_of({"a"}, {{"a", "z"}})), std::invalid_argument);
  CHECK_THROWS_AS(report(layer_of({"a", "b"}, {{"a", "a"}})), std::invalid_argument);
  CHECK_THROWS_AS(report(layer_of({"a", "b"}, {{"a", "b"}, {"a", "b"}})),
                  std::invalid_argument);
}

TEST_CASE("property: metrics agree with brute-force oracles") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = oracle::random_graph(rng, 8);
    const auto layer = oracle::to_layer(g);
    const auto bc = betweenness(layer);
    const auto ref_bc = oracle::betweenness(g);
    for (std::size_t v = 0; v < g.n; ++v) {
      const auto id = oracle::node_name(v);
      CHECK(std::abs(bc.at(id) - ref_bc[v]) <= 1e-9);
      CHECK(closeness(layer, id) == doctest::Approx(oracle::closeness(g, v)).epsilon(1e-12));
      CHECK(clustering(layer, id) == oracle::clustering(g, v));
    }
    CHECK(components(layer).count == oracle::flood_fill(g).second);
    const double n = static_cast<double>(g.n);
    const double expected_density =
        g.n < 2 ? 0.0 : 2.0 * static_cast<double>(g.edges()) / (n * (n - 1.0));
    CHECK(density(layer) == expected_density);

    std::size_t degree_sum = 0;
    for (const auto& id : layer.nodes) degree_sum += degree(layer, id);
    CHECK(degree_sum == 2 * layer.edges.size());
  }
}

TEST_CASE("property: thread count does not change results") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto layer = oracle::to_layer(oracle::random_graph(rng, 40));
    const auto one = report(layer, MetricsOptions{1});
    CHECK(report(layer, MetricsOptions{3}) == one);
    CHECK(report(layer, MetricsOptions{8}) == one);
  }
}

TEST_CASE("property: relabeling projects changes no report field") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = oracle::random_graph(rng, 12);
    const auto layer = oracle::to_layer(g);
    std::vector<std::size_t> perm(g.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    oracle::SmallGraph h(g.n);
    for (std::size_t a = 0; a < g.n; ++a)
      for (std::size_t b = a + 1; b < g.n; ++b)
        if (g.adj[a][b]) h.add(perm[a], perm[b]);
    auto relabeled = oracle::to_layer(h);
    for (auto& node : relabeled.nodes) node = "x" + node;
    for (auto& e : relabeled.edges) {
      e.a = "x" + e.a;
      e.b = "x" + e.b;
    }
    const auto r1 = report(layer);
    const auto r2 = report(relabeled);
    CHECK(r1.n_nodes_retained == r2.n_nodes_retained);
    CHECK(r1.n_edges == r2.n_edges);
    CHECK(r1.n_components == r2.n_components);
    CHECK(r1.avg_closeness == doctest::Approx(r2.avg_closeness).epsilon(1e-12));
    CHECK(r1.avg_betweenness == doctest::Approx(r2.avg_betweenness).epsilon(1e-12));
    CHECK(r1.avg_clustering == doctest::Approx(r2.avg_clustering).epsilon(1e-12));
    CHECK(r1.avg_degree == r2.avg_degree);
    CHECK(r1.density == r2.density);
  }
}
