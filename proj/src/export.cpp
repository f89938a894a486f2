#include "collabnet/export.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "collabnet/error.hpp"
#include "json.hpp"
#include "text_format.hpp"

namespace collabnet {

namespace {

using detail::format_fixed6;
using detail::format_real;

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

double round6(double v) { return std::round(v * 1e6) / 1e6; }

struct ExportView {
  std::vector<const std::string*> nodes;
  std::vector<const Edge*> edges;
};

ExportView select(const NetworkLayer& layer,
                  const std::map<std::string, VisualAttributes>& visuals,
                  bool include_isolated) {
  ExportView view;
  for (const auto& id : layer.nodes) {
    const auto it = visuals.find(id);
    if (it == visuals.end()) throw std::invalid_argument("no visual attributes for " + id);
    if (include_isolated || it->second.degree > 0) view.nodes.push_back(&id);
  }
  std::sort(view.nodes.begin(), view.nodes.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });
  for (const auto& e : layer.edges) view.edges.push_back(&e);
  std::sort(view.edges.begin(), view.edges.end(), [](const Edge* x, const Edge* y) {
    return std::tie(x->a, x->b) < std::tie(y->a, y->b);
  });
  return view;
}

std::string to_graphml(const NetworkLayer& layer, const ExportView& view,
                       const std::map<std::string, VisualAttributes>& visuals) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"threshold\" for=\"graph\" attr.name=\"threshold\" "
         "attr.type=\"double\"/>\n"
      << "  <key id=\"degree\" for=\"node\" attr.name=\"degree\" attr.type=\"int\"/>\n"
      << "  <key id=\"component\" for=\"node\" attr.name=\"component\" "
         "attr.type=\"int\"/>\n"
      << "  <key id=\"color\" for=\"node\" attr.name=\"color\" attr.type=\"string\"/>\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
      << "  <graph id=\"layer\" edgedefault=\"undirected\">\n"
      << "    <data key=\"threshold\">" << format_real(layer.threshold) << "</data>\n";
  for (const std::string* id : view.nodes) {
    const auto& v = visuals.at(*id);
    out << "    <node id=\"" << xml_escape(*id) << "\">"
        << "<data key=\"degree\">" << v.degree << "</data>"
        << "<data key=\"component\">" << v.component << "</data>"
        << "<data key=\"color\">" << to_string(v.color) << "</data></node>\n";
  }
  for (const Edge* e : view.edges) {
    out << "    <edge source=\"" << xml_escape(e->a) << "\" target=\"" << xml_escape(e->b)
        << "\"><data key=\"weight\">" << format_fixed6(e->weight) << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

std::string to_dot(const NetworkLayer& layer, const ExportView& view,
                   const std::map<std::string, VisualAttributes>& visuals) {
  std::ostringstream out;
  out << "graph layer {\n"
      << "  graph [threshold=" << dot_quote(format_real(layer.threshold)) << "];\n";
  for (const std::string* id : view.nodes) {
    const auto& v = visuals.at(*id);
    out << "  " << dot_quote(*id) << " [degree=" << v.degree << ", component="
        << v.component << ", color=" << to_string(v.color) << "];\n";
  }
  for (const Edge* e : view.edges) {
    out << "  " << dot_quote(e->a) << " -- " << dot_quote(e->b)
        << " [weight=" << format_fixed6(e->weight) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_json_graph(const NetworkLayer& layer, const ExportView& view,
                          const std::map<std::string, VisualAttributes>& visuals) {
  using json = nlohmann::ordered_json;
  json nodes = json::array();
  for (const std::string* id : view.nodes) {
    const auto& v = visuals.at(*id);
    nodes.push_back({{"id", *id},
                     {"degree", v.degree},
                     {"component", v.component},
                     {"component_rank", v.component_rank},
                     {"color", to_string(v.color)}});
  }
  json edges = json::array();
  for (const Edge* e : view.edges) {
    edges.push_back({{"source", e->a}, {"target", e->b}, {"weight", round6(e->weight)}});
  }
  json doc = {{"graph",
               {{"directed", false},
                {"threshold", layer.threshold},
                {"dataset_fingerprint", layer.provenance.dataset_fingerprint},
                {"type_filter", layer.provenance.type_filter},
                {"nodes", std::move(nodes)},
                {"edges", std::move(edges)}}}};
  return doc.dump(2) + "\n";
}

std::optional<ComponentColor> parse_color(std::string_view s) {
  for (auto c : {ComponentColor::Blue, ComponentColor::Green, ComponentColor::Red,
                 ComponentColor::Gray}) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(ComponentColor c) noexcept {
  switch (c) {
    case ComponentColor::Blue: return "blue";
    case ComponentColor::Green: return "green";
    case ComponentColor::Red: return "red";
    case ComponentColor::Gray: return "gray";
  }
  return "gray";
}

ComponentColor color_for_rank(std::size_t rank, std::size_t distinct_sizes) {
  if (distinct_sizes <= 1 || rank == 0) return ComponentColor::Blue;
  if (rank + 1 >= distinct_sizes) return ComponentColor::Gray;
  switch (4 * rank / distinct_sizes) {
    case 0: return ComponentColor::Blue;
    case 1: return ComponentColor::Green;
    case 2: return ComponentColor::Red;
    default: return ComponentColor::Gray;
  }
}

std::map<std::string, VisualAttributes> assign_visuals(const NetworkLayer& layer,
                                                       const ComponentResult& membership) {
  const Graph g = Graph::from_layer(layer);

  std::set<std::size_t, std::greater<>> distinct(membership.sizes.begin(),
                                                 membership.sizes.end());
  std::map<std::size_t, std::size_t> rank_of_size;
  for (std::size_t size : distinct) rank_of_size.emplace(size, rank_of_size.size());

  std::map<std::string, VisualAttributes> out;
  for (Graph::Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto it = membership.membership.find(g.id(v));
    if (it == membership.membership.end() || it->second >= membership.sizes.size()) {
      throw std::invalid_argument("node " + g.id(v) + " has no component");
    }
    VisualAttributes a;
    a.degree = g.degree(v);
    a.component = it->second;
    a.component_rank = rank_of_size.at(membership.sizes[it->second]);
    a.color = color_for_rank(a.component_rank, distinct.size());
    out.emplace(g.id(v), a);
  }
  return out;
}

ExportFormat parse_export_format(std::string_view name) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (key == "graphml") return ExportFormat::GraphML;
  if (key == "dot") return ExportFormat::DOT;
  if (key == "json" || key == "jsongraph") return ExportFormat::JSONGraph;
  throw ConfigError("unsupported export format '" + std::string(name) + "'");
}

std::string_view file_extension(ExportFormat format) noexcept {
  switch (format) {
    case ExportFormat::GraphML: return "graphml";
    case ExportFormat::DOT: return "dot";
    case ExportFormat::JSONGraph: return "json";
  }
  return "out";
}

std::string export_layer(const NetworkLayer& layer,
                         const std::map<std::string, VisualAttributes>& visuals,
                         ExportFormat format, bool include_isolated) {
  const ExportView view = select(layer, visuals, include_isolated);
  switch (format) {
    case ExportFormat::GraphML: return to_graphml(layer, view, visuals);
    case ExportFormat::DOT: return to_dot(layer, view, visuals);
    case ExportFormat::JSONGraph: return to_json_graph(layer, view, visuals);
  }
  throw ConfigError("unsupported export format");
}

ImportedGraph read_json_graph(std::string_view document) {
  try {
    const auto doc = nlohmann::json::parse(document);
    const auto& graph = doc.at("graph");
    ImportedGraph out;
    out.threshold = graph.at("threshold").get<double>();
    for (const auto& n : graph.at("nodes")) {
      VisualAttributes a;
      a.degree = n.at("degree").get<std::size_t>();
      a.component = n.at("component").get<std::size_t>();
      a.component_rank = n.at("component_rank").get<std::size_t>();
      const auto color = parse_color(n.at("color").get<std::string>());
      if (!color) throw InputError("unknown node color");
      a.color = *color;
      if (!out.nodes.emplace(n.at("id").get<std::string>(), a).second) {
        throw InputError("duplicate node in JSON graph");
      }
    }
    for (const auto& e : graph.at("edges")) {
      auto a = e.at("source").get<std::string>();
      auto b = e.at("target").get<std::string>();
      if (!out.nodes.contains(a) || !out.nodes.contains(b)) {
        throw InputError("edge endpoint missing from node list");
      }
      if (b < a) std::swap(a, b);
      out.edges[{std::move(a), std::move(b)}] = e.at("weight").get<double>();
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed JSON graph: ") + e.what());
  }
}

}  // namespace collabnet
