#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "collabnet/error.hpp"
#include "collabnet/export.hpp"
#include "oracles.hpp"

using namespace collabnet;

namespace {

// Components of sizes 3, 2, 2 and 1 (isolated "h").
NetworkLayer sample_layer() {
  NetworkLayer layer;
  layer.threshold = 40;
  layer.nodes = {"a", "b", "c", "d", "e", "f", "g", "h"};
  layer.edges = {{"a", "b", 41.5}, {"b", "c", 60.25}, {"d", "e", 40}, {"f", "g", 99.9999999}};
  layer.provenance = {"abc123", "ip"};
  return layer;
}

}  // namespace

TEST_CASE("colour bands over distinct component sizes") {
  CHECK(color_for_rank(0, 1) == ComponentColor::Blue);
  CHECK(color_for_rank(0, 2) == ComponentColor::Blue);
  CHECK(color_for_rank(1, 2) == ComponentColor::Gray);
  CHECK(color_for_rank(0, 8) == ComponentColor::Blue);
  CHECK(color_for_rank(1, 8) == ComponentColor::Blue);
  CHECK(color_for_rank(2, 8) == ComponentColor::Green);
  CHECK(color_for_rank(4, 8) == ComponentColor::Red);
  CHECK(color_for_rank(6, 8) == ComponentColor::Gray);
  CHECK(color_for_rank(7, 8) == ComponentColor::Gray);
}

TEST_CASE("visual attributes") {
  const auto layer = sample_layer();
  const auto v = assign_visuals(layer, components(layer));
  CHECK(v.at("b").degree == 2);
  CHECK(v.at("a").color == ComponentColor::Blue);
  CHECK(v.at("a").component_rank == 0);
  CHECK(v.at("d").component_rank == 1);
  CHECK(v.at("f").component_rank == 1);
  CHECK(v.at("h").color == ComponentColor::Gray);
  CHECK(v.at("h").degree == 0);
}

TEST_CASE("format names") {
  CHECK(parse_export_format("GraphML") == ExportFormat::GraphML);
  CHECK(parse_export_format("dot") == ExportFormat::DOT);
  CHECK(parse_export_format("json") == ExportFormat::JSONGraph);
  CHECK_THROWS_AS(parse_export_format("gexf"), ConfigError);
  CHECK(file_extension(ExportFormat::DOT) == "dot");
}

TEST_CASE("dot and graphml output") {
  const auto layer = sample_layer();
  const auto v = assign_visuals(layer, components(layer));
  const auto dot = export_layer(layer, v, ExportFormat::DOT, false);
  CHECK(dot.rfind("graph layer {\n", 0) == 0);
  CHECK(dot.find("\"a\" -- \"b\" [weight=41.500000];") != std::string::npos);
  CHECK(dot.find("\"h\"") == std::string::npos);
  CHECK(export_layer(layer, v, ExportFormat::DOT, true).find("\"h\"") != std::string::npos);

  const auto xml = export_layer(layer, v, ExportFormat::GraphML, false);
  CHECK(xml.find("<edge source=\"f\" target=\"g\"><data key=\"weight\">100.000000</data>") !=
        std::string::npos);
  CHECK(xml.find("<node id=\"a\"><data key=\"degree\">1</data>") != std::string::npos);
}

TEST_CASE("json graph round trip") {
  const auto layer = sample_layer();
  const auto v = assign_visuals(layer, components(layer));
  const auto doc = export_layer(layer, v, ExportFormat::JSONGraph, true);
  const auto back = read_json_graph(doc);
  CHECK(back.threshold == 40.0);
  CHECK(back.nodes == v);
  REQUIRE(back.edges.size() == layer.edges.size());
  CHECK(back.edges.at({"f", "g"}) == 100.0);
  CHECK(back.edges.at({"b", "c"}) == 60.25);
  CHECK_THROWS_AS(read_json_graph("{\"graph\": {}}"), InputError);
  CHECK_THROWS_AS(read_json_graph("not json"), InputError);
}

TEST_CASE("property: colours partition nodes; blue holds a largest component") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 100; ++trial) {
    const auto layer = oracle::to_layer(oracle::random_graph(rng, 30));
    const auto comp = components(layer);
    const auto v = assign_visuals(layer, comp);
    REQUIRE(v.size() == layer.nodes.size());
    const std::size_t largest = comp.sizes.empty() ? 0 : comp.sizes.front();
    for (const auto& [id, a] : v) {
      if (comp.sizes[a.component] == largest) CHECK(a.color == ComponentColor::Blue);
      // All nodes of a component share its colour.
      for (const auto& [other, b] : v) {
        if (b.component == a.component) CHECK(b.color == a.color);
      }
    }
  }
}

TEST_CASE("property: json export round-trips and repeats byte for byte") {
  std::mt19937_64 rng(707);
  for (int trial = 0; trial < 50; ++trial) {
    auto layer = oracle::to_layer(oracle::random_graph(rng, 25));
    for (auto& e : layer.edges) e.weight = std::round(rng() % 100000) / 1000.0;
    const auto v = assign_visuals(layer, components(layer));
    const auto doc = export_layer(layer, v, ExportFormat::JSONGraph, true);
    CHECK(doc == export_layer(layer, v, ExportFormat::JSONGraph, true));
    const auto back = read_json_graph(doc);
    CHECK(back.nodes == v);
    REQUIRE(back.edges.size() == layer.edges.size());
    for (const auto& e : layer.edges) CHECK(back.edges.at({e.a, e.b}) == e.weight);
  }
}
