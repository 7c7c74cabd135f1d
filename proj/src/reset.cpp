#include "mrw/reset.hpp"

namespace mrw {

ResetGraph build_reset_graph(const WeightedGraph& base, double x) {
  if (!(x > 0.0) || !(x < 1.0))
    throw std::invalid_argument("build_reset_graph: x must lie in (0,1)");
  if (!base.unit_weights())
    throw std::invalid_argument("build_reset_graph: base graph must have unit weights");
  const int z = base.n;
  std::vector<EdgeTriple> edges;
  for (int u = 0; u < base.n; ++u) {
    for (const auto& e : base.adjacency[u])
      if (u < e.to) edges.emplace_back(u, e.to, 1.0);
    edges.emplace_back(u, z, x * base.weighted_degree[u] / (1.0 - x));
  }
  ResetGraph rg;
  rg.graph = make_graph(base.n + 1, edges);
  rg.reset_rate = x;
  rg.z = z;
  return rg;
}

}  // namespace mrw
