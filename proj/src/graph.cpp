#include "collabnet/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace collabnet {

Graph Graph::from_layer(const NetworkLayer& layer) {
  Graph g;
  g.ids_ = layer.nodes;
  g.index_.reserve(g.ids_.size());
  for (std::size_t i = 0; i < g.ids_.size(); ++i) {
    if (!g.index_.emplace(g.ids_[i], static_cast<Vertex>(i)).second) {
      throw std::invalid_argument("duplicate node " + g.ids_[i]);
    }
  }

  std::vector<std::pair<Vertex, Vertex>> arcs;
  arcs.reserve(layer.edges.size() * 2);
  for (const auto& e : layer.edges) {
    const Vertex a = g.vertex_of(e.a);
    const Vertex b = g.vertex_of(e.b);
    if (a == b) throw std::invalid_argument("self-loop on " + e.a);
    arcs.emplace_back(a, b);
    arcs.emplace_back(b, a);
  }
  std::sort(arcs.begin(), arcs.end());
  if (std::adjacent_find(arcs.begin(), arcs.end()) != arcs.end()) {
    throw std::invalid_argument("duplicate edge in layer");
  }

  g.offsets_.assign(g.ids_.size() + 1, 0);
  for (const auto& [from, to] : arcs) ++g.offsets_[from + 1];
  for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
  g.targets_.reserve(arcs.size());
  for (const auto& [from, to] : arcs) g.targets_.push_back(to);
  return g;
}

Graph::Vertex Graph::vertex_of(std::string_view id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) throw std::invalid_argument("unknown node " + std::string(id));
  return it->second;
}

}  // namespace collabnet
