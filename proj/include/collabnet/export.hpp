#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "collabnet/layers.hpp"
#include "collabnet/metrics.hpp"

namespace collabnet {

enum class ComponentColor { Blue, Green, Red, Gray };

std::string_view to_string(ComponentColor c) noexcept;

struct VisualAttributes {
  std::size_t degree = 0;  // node size key; the viewer does the scaling
  ComponentColor color = ComponentColor::Blue;
  std::size_t component = 0;       // component id from components()
  std::size_t component_rank = 0;  // position of the component's size among
                                   // distinct sizes, largest first

  friend bool operator==(const VisualAttributes&, const VisualAttributes&) = default;
};

// Colour for a size rank among `distinct_sizes` distinct component sizes.
// Ranks fall into four equal bands (Blue, Green, Red, Gray); the smallest size
// is always Gray once there are at least two sizes.
ComponentColor color_for_rank(std::size_t rank, std::size_t distinct_sizes);

// `membership` must come from components() on the same layer.
std::map<std::string, VisualAttributes> assign_visuals(const NetworkLayer& layer,
                                                       const ComponentResult& membership);

enum class ExportFormat { GraphML, DOT, JSONGraph };

// "graphml", "dot", "json" (case-insensitive). Throws ConfigError otherwise.
ExportFormat parse_export_format(std::string_view name);
std::string_view file_extension(ExportFormat format) noexcept;

// Serialises the layer. Nodes and edges appear in ascending id order; edge
// weights carry 6 decimals. With include_isolated == false, degree-0 nodes are
// left out. Throws ConfigError for an unknown format value and
// std::invalid_argument when a node has no visuals.
std::string export_layer(const NetworkLayer& layer,
                         const std::map<std::string, VisualAttributes>& visuals,
                         ExportFormat format, bool include_isolated);

// Graph read back from a JSONGraph document.
struct ImportedGraph {
  double threshold = 0.0;
  std::map<std::string, VisualAttributes> nodes;
  std::map<std::pair<std::string, std::string>, double> edges;  // canonical key
};

// Throws InputError on a malformed document.
ImportedGraph read_json_graph(std::string_view document);

}  // namespace collabnet
