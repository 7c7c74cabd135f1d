#pragma once

#include <cstdint>
#include <vector>

#include "mrw/graph.hpp"

namespace mrw {

/// Graphs on up to 8 vertices packed as an upper-triangle bitmask:
/// bit index of edge {i,j} (i < j) is j*(j-1)/2 + i.
struct SmallGraph {
  int n = 0;
  std::uint32_t edge_bits = 0;

  static int pair_index(int i, int j) {
    if (i > j) std::swap(i, j);
    return j * (j - 1) / 2 + i;
  }
  bool has_edge(int i, int j) const { return (edge_bits >> pair_index(i, j)) & 1u; }
  WeightedGraph to_weighted() const;
  bool connected() const;
};

/// Canonical representative of the isomorphism class: the minimum edge code
/// over all vertex orderings consistent with iterated degree refinement.
std::uint32_t canonical_code(int n, std::uint32_t edge_bits);

/// All graphs on exactly n vertices up to isomorphism (n <= 8), generated by
/// vertex augmentation with canonical deduplication.
const std::vector<SmallGraph>& all_graphs_up_to_iso(int n);

std::vector<SmallGraph> connected_graphs_up_to_iso(int n);

}  // namespace mrw
