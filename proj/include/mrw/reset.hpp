#pragma once

#include "mrw/graph.hpp"

namespace mrw {

/// Geometric reset graph: the unit-weight base graph plus one extra vertex z
/// wired so that a non-lazy walk jumps to z with probability exactly x each
/// step and re-enters from the base stationary distribution.
struct ResetGraph {
  WeightedGraph graph;
  double reset_rate = 0.0;
  int z = 0;  // always id n of the base graph
};

ResetGraph build_reset_graph(const WeightedGraph& base, double x);

}  // namespace mrw
