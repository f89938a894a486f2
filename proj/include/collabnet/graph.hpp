#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "collabnet/layers.hpp"

namespace collabnet {

// Immutable undirected simple graph in compressed adjacency form. Vertex i
// corresponds to layer.nodes[i]; neighbour lists are ascending.
class Graph {
 public:
  using Vertex = std::uint32_t;

  // Throws std::invalid_argument on an edge with an unknown endpoint, a
  // self-loop, a duplicate edge or a duplicate node id.
  static Graph from_layer(const NetworkLayer& layer);

  // Move-only: the id index views into ids_.
  Graph(Graph&&) noexcept = default;
  Graph& operator=(Graph&&) noexcept = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  std::size_t vertex_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  const std::string& id(Vertex v) const noexcept { return ids_[v]; }
  // Throws std::invalid_argument for an unknown id.
  Vertex vertex_of(std::string_view id) const;

 private:
  Graph() = default;

  std::vector<std::string> ids_;
  std::unordered_map<std::string_view, Vertex> index_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
};

}  // namespace collabnet
