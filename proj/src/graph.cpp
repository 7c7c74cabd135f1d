#include "mrw/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>

namespace mrw {

bool WeightedGraph::unit_weights() const {
  for (const auto& nbrs : adjacency)
    for (const auto& e : nbrs)
      if (e.weight != 1.0) return false;
  return true;
}

std::size_t WeightedGraph::edge_count() const {
  std::size_t half = 0;
  for (const auto& nbrs : adjacency) half += nbrs.size();
  return half / 2;
}

double WeightedGraph::min_weighted_degree() const {
  double m = weighted_degree.empty() ? 0.0 : weighted_degree[0];
  for (double d : weighted_degree) m = std::min(m, d);
  return m;
}

WeightedGraph make_graph(int n, const std::vector<EdgeTriple>& edges) {
  if (n <= 0) throw std::invalid_argument("make_graph: n must be positive");
  std::map<std::pair<int, int>, double> acc;
  for (const auto& [u, v, w] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("make_graph: vertex id out of range");
    if (u == v) throw std::invalid_argument("make_graph: self-loops are not allowed");
    if (!(w > 0.0)) throw std::invalid_argument("make_graph: edge weights must be positive");
    acc[{std::min(u, v), std::max(u, v)}] += w;
  }
  WeightedGraph g;
  g.n = n;
  g.adjacency.assign(n, {});
  g.weighted_degree.assign(n, 0.0);
  for (const auto& [uv, w] : acc) {
    const auto [u, v] = uv;
    g.adjacency[u].push_back({v, w});
    g.adjacency[v].push_back({u, w});
    g.weighted_degree[u] += w;
    g.weighted_degree[v] += w;
    g.total_edge_weight += w;
  }
  for (auto& nbrs : g.adjacency)
    std::sort(nbrs.begin(), nbrs.end(),
              [](const WeightedGraph::Edge& a, const WeightedGraph::Edge& b) { return a.to < b.to; });
  if (!is_connected(g)) throw std::invalid_argument("make_graph: graph is not connected");
  return g;
}

bool is_connected(const WeightedGraph& g) {
  if (g.n == 0) return false;
  std::vector<char> seen(g.n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (const auto& e : g.adjacency[u]) {
      if (!seen[e.to]) {
        seen[e.to] = 1;
        ++reached;
        q.push(e.to);
      }
    }
  }
  return reached == g.n;
}

Eigen::VectorXd stationary_distribution(const WeightedGraph& g) {
  Eigen::VectorXd pi(g.n);
  const double total = 2.0 * g.total_edge_weight;
  if (total == 0.0) {
    // single isolated vertex: point mass
    pi.setOnes();
    return pi;
  }
  for (int v = 0; v < g.n; ++v) pi[v] = g.weighted_degree[v] / total;
  return pi;
}

void write_edge_list(std::ostream& os, const WeightedGraph& g) {
  os << g.n << ' ' << g.edge_count() << '\n';
  char buf[40];
  for (int u = 0; u < g.n; ++u) {
    for (const auto& e : g.adjacency[u]) {
      if (e.to < u) continue;
      std::snprintf(buf, sizeof(buf), "%.17g", e.weight);
      os << u << ' ' << e.to << ' ' << buf << '\n';
    }
  }
}

WeightedGraph read_edge_list(std::istream& is) {
  int n = 0;
  std::size_t m = 0;
  if (!(is >> n >> m)) throw std::invalid_argument("read_edge_list: bad header");
  std::vector<EdgeTriple> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    int u, v;
    double w;
    if (!(is >> u >> v >> w)) throw std::invalid_argument("read_edge_list: truncated edge list");
    edges.emplace_back(u, v, w);
  }
  return make_graph(n, edges);
}

std::vector<int> bfs_distances(const WeightedGraph& g, int source) {
  std::vector<int> dist(g.n, -1);
  std::queue<int> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (const auto& e : g.adjacency[u]) {
      if (dist[e.to] < 0) {
        dist[e.to] = dist[u] + 1;
        q.push(e.to);
      }
    }
  }
  return dist;
}

}  // namespace mrw
