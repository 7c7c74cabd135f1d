#include "mrw/graph_enum.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_set>

namespace mrw {

WeightedGraph SmallGraph::to_weighted() const {
  std::vector<EdgeTriple> edges;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (has_edge(i, j)) edges.emplace_back(i, j, 1.0);
  return make_graph(n, edges);
}

bool SmallGraph::connected() const {
  if (n == 0) return false;
  std::uint32_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    for (int v = 0; v < n; ++v) {
      if (!((frontier >> v) & 1u)) continue;
      for (int w = 0; w < n; ++w)
        if (w != v && has_edge(v, w)) next |= 1u << w;
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (1u << n) - 1u;
}

namespace {

// 1-WL style color refinement; color ids are assigned from sorted signatures
// so the final coloring is isomorphism-invariant.
std::vector<int> refine_colors(int n, const std::uint32_t* rows) {
  std::vector<int> color(n);
  for (int v = 0; v < n; ++v) color[v] = std::popcount(rows[v]);
  // normalize to 0..c-1 by sorted value
  for (int round = 0; round < n; ++round) {
    std::map<std::vector<int>, int> sig_ids;
    std::vector<std::vector<int>> sigs(n);
    for (int v = 0; v < n; ++v) {
      auto& s = sigs[v];
      s.push_back(color[v]);
      std::vector<int> nbr;
      for (int w = 0; w < n; ++w)
        if ((rows[v] >> w) & 1u) nbr.push_back(color[w]);
      std::sort(nbr.begin(), nbr.end());
      s.insert(s.end(), nbr.begin(), nbr.end());
      sig_ids.emplace(s, 0);
    }
    int next_id = 0;
    for (auto& [sig, id] : sig_ids) id = next_id++;
    std::vector<int> fresh(n);
    for (int v = 0; v < n; ++v) fresh[v] = sig_ids[sigs[v]];
    if (fresh == color) break;
    color = std::move(fresh);
  }
  return color;
}

std::uint32_t code_for_order(int n, const std::uint32_t* rows, const std::vector<int>& order) {
  std::uint32_t code = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if ((rows[order[i]] >> order[j]) & 1u) code |= 1u << SmallGraph::pair_index(i, j);
  return code;
}

}  // namespace

std::uint32_t canonical_code(int n, std::uint32_t edge_bits) {
  if (n <= 1) return 0;
  std::uint32_t rows[8] = {0};
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if ((edge_bits >> SmallGraph::pair_index(i, j)) & 1u) {
        rows[i] |= 1u << j;
        rows[j] |= 1u << i;
      }
  const std::vector<int> color = refine_colors(n, rows);
  // group vertices by color; orderings permute within classes only
  std::vector<std::vector<int>> classes;
  for (int c = 0;; ++c) {
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if (color[v] == c) members.push_back(v);
    if (members.empty()) break;
    classes.push_back(std::move(members));
  }
  std::uint32_t best = ~0u;
  std::vector<int> order;
  order.reserve(n);
  // iterate the product of per-class permutations
  auto rec = [&](auto&& self, std::size_t ci) -> void {
    if (ci == classes.size()) {
      best = std::min(best, code_for_order(n, rows, order));
      return;
    }
    std::vector<int>& cls = classes[ci];
    std::sort(cls.begin(), cls.end());
    do {
      const std::size_t base = order.size();
      order.insert(order.end(), cls.begin(), cls.end());
      self(self, ci + 1);
      order.resize(base);
    } while (std::next_permutation(cls.begin(), cls.end()));
  };
  rec(rec, 0);
  return best;
}

const std::vector<SmallGraph>& all_graphs_up_to_iso(int n) {
  if (n < 1 || n > 8) throw std::invalid_argument("all_graphs_up_to_iso: need 1 <= n <= 8");
  static std::vector<std::vector<SmallGraph>> levels = [] {
    std::vector<std::vector<SmallGraph>> lv(9);
    lv[1] = {SmallGraph{1, 0}};
    for (int m = 2; m <= 8; ++m) {
      std::unordered_set<std::uint32_t> seen;
      for (const SmallGraph& g : lv[m - 1]) {
        for (std::uint32_t mask = 0; mask < (1u << (m - 1)); ++mask) {
          std::uint32_t bits = g.edge_bits;
          for (int i = 0; i < m - 1; ++i)
            if ((mask >> i) & 1u) bits |= 1u << SmallGraph::pair_index(i, m - 1);
          const std::uint32_t canon = canonical_code(m, bits);
          if (seen.insert(canon).second) lv[m].push_back(SmallGraph{m, canon});
        }
      }
      std::sort(lv[m].begin(), lv[m].end(),
                [](const SmallGraph& a, const SmallGraph& b) { return a.edge_bits < b.edge_bits; });
    }
    return lv;
  }();
  return levels[n];
}

std::vector<SmallGraph> connected_graphs_up_to_iso(int n) {
  std::vector<SmallGraph> out;
  for (const SmallGraph& g : all_graphs_up_to_iso(n))
    if (g.connected()) out.push_back(g);
  return out;
}

}  // namespace mrw
