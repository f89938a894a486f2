#include "collabnet/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "collabnet/union_find.hpp"
#include "text_format.hpp"

namespace collabnet {

namespace {

using Vertex = Graph::Vertex;

// Sources are split into this many fixed blocks. Each block accumulates into
// its own buffer and buffers are summed in block order.
constexpr std::size_t kSourceBlocks = 64;

struct BrandesScratch {
  explicit BrandesScratch(std::size_t n) : dist(n), sigma(n), delta(n) {
    order.reserve(n);
  }
  std::vector<std::int64_t> dist;
  std::vector<double> sigma;
  std::vector<double> delta;
  std::vector<Vertex> order;
};

// Single-source pass: returns the harmonic closeness of s and adds the
// dependencies of s into `between`.
double accumulate_source(const Graph& g, Vertex s, BrandesScratch& w,
                         std::vector<double>& between) {
  std::fill(w.dist.begin(), w.dist.end(), -1);
  std::fill(w.sigma.begin(), w.sigma.end(), 0.0);
  std::fill(w.delta.begin(), w.delta.end(), 0.0);
  w.order.clear();

  w.dist[s] = 0;
  w.sigma[s] = 1.0;
  w.order.push_back(s);
  double harmonic = 0.0;
  for (std::size_t head = 0; head < w.order.size(); ++head) {
    const Vertex v = w.order[head];
    for (Vertex u : g.neighbors(v)) {
      if (w.dist[u] < 0) {
        w.dist[u] = w.dist[v] + 1;
        harmonic += 1.0 / static_cast<double>(w.dist[u]);
        w.order.push_back(u);
      }
      if (w.dist[u] == w.dist[v] + 1) w.sigma[u] += w.sigma[v];
    }
  }

  for (std::size_t k = w.order.size(); k-- > 1;) {
    const Vertex x = w.order[k];
    const double share = (1.0 + w.delta[x]) / w.sigma[x];
    for (Vertex v : g.neighbors(x)) {
      if (w.dist[v] == w.dist[x] - 1) w.delta[v] += w.sigma[v] * share;
    }
    between[x] += w.delta[x];
  }
  return harmonic;
}

std::size_t resolve_threads(std::size_t requested) {
  if (requested != 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

template <class T>
double mean(const std::vector<T>& values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (const T& v : values) sum += static_cast<double>(v);
  return sum / static_cast<double>(values.size());
}

std::vector<std::size_t> triangle_counts(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> triangles(n, 0);
  std::vector<std::size_t> mark(n, n);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : g.neighbors(v)) mark[u] = v;
    std::size_t t = 0;
    for (Vertex u : g.neighbors(v)) {
      for (Vertex x : g.neighbors(u)) {
        if (x > u && mark[x] == v) ++t;
      }
    }
    triangles[v] = t;
  }
  return triangles;
}

}  // namespace

Centralities centralities(const Graph& g, const MetricsOptions& options) {
  const std::size_t n = g.vertex_count();
  Centralities out;
  out.closeness.assign(n, 0.0);
  out.betweenness.assign(n, 0.0);
  if (n == 0) return out;

  const std::size_t blocks = std::min(kSourceBlocks, n);
  std::vector<std::vector<double>> partial(blocks);
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    BrandesScratch scratch(n);
    for (std::size_t b = next++; b < blocks; b = next++) {
      auto& acc = partial[b];
      acc.assign(n, 0.0);
      const std::size_t lo = b * n / blocks;
      const std::size_t hi = (b + 1) * n / blocks;
      for (std::size_t s = lo; s < hi; ++s) {
        out.closeness[s] = accumulate_source(g, static_cast<Vertex>(s), scratch, acc);
      }
    }
  };

  const std::size_t workers = std::min(resolve_threads(options.threads), blocks);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
  }

  for (const auto& acc : partial) {
    for (std::size_t v = 0; v < n; ++v) out.betweenness[v] += acc[v];
  }
  // Every unordered pair was counted from both ends.
  for (double& b : out.betweenness) b /= 2.0;
  return out;
}

std::vector<double> clustering_coefficients(const Graph& g) {
  const auto triangles = triangle_counts(g);
  std::vector<double> cc(g.vertex_count(), 0.0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto d = static_cast<double>(g.degree(v));
    if (g.degree(v) >= 2) cc[v] = 2.0 * static_cast<double>(triangles[v]) / (d * (d - 1.0));
  }
  return cc;
}

NetworkLayer remove_isolated(const NetworkLayer& layer) {
  const Graph g = Graph::from_layer(layer);
  NetworkLayer out;
  out.threshold = layer.threshold;
  out.provenance = layer.provenance;
  out.edges = layer.edges;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) > 0) out.nodes.push_back(layer.nodes[v]);
  }
  return out;
}

double closeness(const NetworkLayer& layer, std::string_view v) {
  const Graph g = Graph::from_layer(layer);
  const Vertex s = g.vertex_of(v);
  BrandesScratch scratch(g.vertex_count());
  std::vector<double> unused(g.vertex_count(), 0.0);
  return accumulate_source(g, s, scratch, unused);
}

std::map<std::string, double> betweenness(const NetworkLayer& layer,
                                          const MetricsOptions& options) {
  const Graph g = Graph::from_layer(layer);
  const auto c = centralities(g, options);
  std::map<std::string, double> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) out.emplace(g.id(v), c.betweenness[v]);
  return out;
}

std::size_t degree(const NetworkLayer& layer, std::string_view v) {
  const Graph g = Graph::from_layer(layer);
  return g.degree(g.vertex_of(v));
}

double clustering(const NetworkLayer& layer, std::string_view v) {
  const Graph g = Graph::from_layer(layer);
  return clustering_coefficients(g)[g.vertex_of(v)];
}

double density(const NetworkLayer& layer) {
  const auto n = static_cast<double>(layer.nodes.size());
  if (layer.nodes.size() < 2) return 0.0;
  return 2.0 * static_cast<double>(layer.edges.size()) / (n * (n - 1.0));
}

ComponentResult components(const NetworkLayer& layer) {
  const Graph g = Graph::from_layer(layer);
  const std::size_t n = g.vertex_count();
  UnionFind uf(n);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : g.neighbors(v)) {
      if (u > v) uf.unite(u, v);
    }
  }

  struct Group {
    std::size_t root;
    std::size_t size;
    const std::string* smallest;
  };
  std::vector<Group> groups;
  std::vector<std::size_t> group_of_root(n, n);
  for (Vertex v = 0; v < n; ++v) {
    const std::size_t r = uf.find(v);
    if (group_of_root[r] == n) {
      group_of_root[r] = groups.size();
      groups.push_back({r, 0, &g.id(v)});
    }
    Group& grp = groups[group_of_root[r]];
    ++grp.size;
    if (g.id(v) < *grp.smallest) grp.smallest = &g.id(v);
  }
  std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) {
    if (a.size != b.size) return a.size > b.size;
    return *a.smallest < *b.smallest;
  });

  ComponentResult out;
  out.count = groups.size();
  std::vector<std::size_t> rank_of_root(n, 0);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    rank_of_root[groups[i].root] = i;
    out.sizes.push_back(groups[i].size);
  }
  for (Vertex v = 0; v < n; ++v) out.membership.emplace(g.id(v), rank_of_root[uf.find(v)]);
  return out;
}

LayerMetricsReport report(const NetworkLayer& layer, const MetricsOptions& options) {
  const NetworkLayer retained = remove_isolated(layer);
  LayerMetricsReport r;
  r.threshold = layer.threshold;
  r.n_nodes_retained = retained.nodes.size();
  r.n_edges = retained.edges.size();
  r.n_isolated_removed = layer.nodes.size() - retained.nodes.size();
  if (retained.nodes.empty()) return r;

  const Graph g = Graph::from_layer(retained);
  const auto c = centralities(g, options);
  std::vector<std::size_t> degrees(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) degrees[v] = g.degree(v);

  r.avg_closeness = mean(c.closeness);
  r.avg_betweenness = mean(c.betweenness);
  r.avg_degree = mean(degrees);
  r.avg_clustering = mean(clustering_coefficients(g));
  r.density = density(retained);
  r.n_components = components(retained).count;
  return r;
}

void write_metrics_csv(std::ostream& out, const std::vector<LayerMetricsReport>& reports) {
  using detail::format_real;
  out << "threshold,n_nodes_retained,n_edges,n_isolated_removed,avg_closeness,"
         "avg_betweenness,avg_degree,avg_clustering,density,n_components\n";
  for (const auto& r : reports) {
    out << format_real(r.threshold) << ',' << r.n_nodes_retained << ',' << r.n_edges << ','
        << r.n_isolated_removed << ',' << format_real(r.avg_closeness) << ','
        << format_real(r.avg_betweenness) << ',' << format_real(r.avg_degree) << ','
        << format_real(r.avg_clustering) << ',' << format_real(r.density) << ','
        << r.n_components << '\n';
  }
}

std::string metrics_to_json(const std::vector<LayerMetricsReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    arr.push_back({{"threshold", r.threshold},
                   {"n_nodes_retained", r.n_nodes_retained},
                   {"n_edges", r.n_edges},
                   {"n_isolated_removed", r.n_isolated_removed},
                   {"avg_closeness", r.avg_closeness},
                   {"avg_betweenness", r.avg_betweenness},
                   {"avg_degree", r.avg_degree},
                   {"avg_clustering", r.avg_clustering},
                   {"density", r.density},
                   {"n_components", r.n_components}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace collabnet
