#include "mrw/family.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>

#include "mrw/rng.hpp"

namespace mrw {

std::string family_name(Family f) {
  switch (f) {
    case Family::cycle: return "cycle";
    case Family::torus: return "torus";
    case Family::binary_tree: return "binary_tree";
    case Family::hypercube: return "hypercube";
    case Family::clique: return "clique";
    case Family::barbell: return "barbell";
    case Family::random_regular: return "random_regular";
    case Family::preferential_attachment: return "preferential_attachment";
  }
  return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
  for (Family f : {Family::cycle, Family::torus, Family::binary_tree, Family::hypercube,
                   Family::clique, Family::barbell, Family::random_regular,
                   Family::preferential_attachment})
    if (family_name(f) == name) return f;
  return std::nullopt;
}

FamilySpec FamilySpec::cycle(int n) {
  FamilySpec s;
  s.family = Family::cycle;
  s.n = n;
  return s;
}
FamilySpec FamilySpec::torus(int dim, int side) {
  FamilySpec s;
  s.family = Family::torus;
  s.dim = dim;
  s.side = side;
  s.n = s.resolved_n();
  return s;
}
FamilySpec FamilySpec::binary_tree(int height) {
  FamilySpec s;
  s.family = Family::binary_tree;
  s.height = height;
  s.n = s.resolved_n();
  return s;
}
FamilySpec FamilySpec::hypercube(int dim) {
  FamilySpec s;
  s.family = Family::hypercube;
  s.dim = dim;
  s.n = s.resolved_n();
  return s;
}
FamilySpec FamilySpec::clique(int n) {
  FamilySpec s;
  s.family = Family::clique;
  s.n = n;
  return s;
}
FamilySpec FamilySpec::barbell(int n) {
  FamilySpec s;
  s.family = Family::barbell;
  s.n = n;
  return s;
}
FamilySpec FamilySpec::random_regular(int n, int degree, std::uint64_t seed) {
  FamilySpec s;
  s.family = Family::random_regular;
  s.n = n;
  s.degree = degree;
  s.seed = seed;
  return s;
}
FamilySpec FamilySpec::preferential_attachment(int n, int links, std::uint64_t seed) {
  FamilySpec s;
  s.family = Family::preferential_attachment;
  s.n = n;
  s.links = links;
  s.seed = seed;
  return s;
}

int FamilySpec::resolved_n() const {
  switch (family) {
    case Family::torus: {
      long long p = 1;
      for (int i = 0; i < dim; ++i) p *= side;
      return static_cast<int>(p);
    }
    case Family::binary_tree: return (1 << (height + 1)) - 1;
    case Family::hypercube: return 1 << dim;
    default: return n;
  }
}

std::string FamilySpec::name() const {
  switch (family) {
    case Family::cycle: return "cycle{n=" + std::to_string(n) + "}";
    case Family::torus:
      return "torus{d=" + std::to_string(dim) + ",side=" + std::to_string(side) + "}";
    case Family::binary_tree: return "binary_tree{h=" + std::to_string(height) + "}";
    case Family::hypercube: return "hypercube{d=" + std::to_string(dim) + "}";
    case Family::clique: return "clique{n=" + std::to_string(n) + "}";
    case Family::barbell: return "barbell{n=" + std::to_string(n) + "}";
    case Family::random_regular:
      return "random_regular{n=" + std::to_string(n) + ",d=" + std::to_string(degree) +
             ",seed=" + std::to_string(seed) + "}";
    case Family::preferential_attachment:
      return "preferential_attachment{n=" + std::to_string(n) + ",m=" + std::to_string(links) +
             ",seed=" + std::to_string(seed) + "}";
  }
  return "?";
}

namespace {

WeightedGraph build_cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle: need n >= 3");
  std::vector<EdgeTriple> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n, 1.0);
  return make_graph(n, edges);
}

WeightedGraph build_torus(int dim, int side) {
  if (dim < 1) throw std::invalid_argument("torus: need dim >= 1");
  if (side < 3) throw std::invalid_argument("torus: need side >= 3 (smaller sides collapse edges)");
  long long nn = 1;
  for (int i = 0; i < dim; ++i) {
    nn *= side;
    if (nn > (1 << 26)) throw std::invalid_argument("torus: too large");
  }
  const int n = static_cast<int>(nn);
  std::vector<EdgeTriple> edges;
  for (int v = 0; v < n; ++v) {
    int stride = 1;
    for (int d = 0; d < dim; ++d) {
      const int coord = (v / stride) % side;
      const int up = v + ((coord + 1) % side - coord) * stride;
      edges.emplace_back(v, up, 1.0);
      stride *= side;
    }
  }
  return make_graph(n, edges);
}

WeightedGraph build_binary_tree(int height) {
  if (height < 1) throw std::invalid_argument("binary_tree: need height >= 1");
  const int n = (1 << (height + 1)) - 1;
  std::vector<EdgeTriple> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v, tree_parent(v), 1.0);
  return make_graph(n, edges);
}

WeightedGraph build_hypercube(int dim) {
  if (dim < 1) throw std::invalid_argument("hypercube: need dim >= 1");
  if (dim > 24) throw std::invalid_argument("hypercube: too large");
  const int n = 1 << dim;
  std::vector<EdgeTriple> edges;
  for (int v = 0; v < n; ++v)
    for (int b = 0; b < dim; ++b)
      if (v < (v ^ (1 << b))) edges.emplace_back(v, v ^ (1 << b), 1.0);
  return make_graph(n, edges);
}

WeightedGraph build_clique(int n) {
  if (n < 2) throw std::invalid_argument("clique: need n >= 2");
  std::vector<EdgeTriple> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v, 1.0);
  return make_graph(n, edges);
}

WeightedGraph build_barbell(int n) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("barbell: need an even n >= 4 (two cliques on n/2 vertices)");
  const int h = n / 2;
  std::vector<EdgeTriple> edges;
  for (int u = 0; u < h; ++u)
    for (int v = u + 1; v < h; ++v) edges.emplace_back(u, v, 1.0);
  for (int u = h; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v, 1.0);
  edges.emplace_back(0, h, 1.0);  // the bridge
  return make_graph(n, edges);
}

WeightedGraph build_random_regular(int n, int degree, std::uint64_t seed) {
  if (n < 2 || degree < 1 || degree >= n)
    throw std::invalid_argument("random_regular: need 1 <= d < n");
  if ((static_cast<long long>(n) * degree) % 2 != 0)
    throw std::invalid_argument("random_regular: n*d must be even");
  Rng rng = Rng::for_trial(seed, 0x7e67, 0);
  const int retry_budget = 1000;
  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * degree);
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < degree; ++i) stubs.push_back(v);
    for (std::size_t i = stubs.size() - 1; i > 0; --i)
      std::swap(stubs[i], stubs[rng.below(static_cast<std::uint32_t>(i + 1))]);
    bool simple = true;
    std::set<std::pair<int, int>> seen;
    std::vector<EdgeTriple> edges;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) {
        simple = false;
        break;
      }
      auto key = std::minmax(u, v);
      if (!seen.insert({key.first, key.second}).second) {
        simple = false;
        break;
      }
      edges.emplace_back(u, v, 1.0);
    }
    if (!simple) continue;
    try {
      return make_graph(n, edges);  // throws if disconnected
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
  throw std::runtime_error("random_regular: rejection-sampling retry budget exhausted");
}

WeightedGraph build_preferential_attachment(int n, int links, std::uint64_t seed) {
  if (links < 1) throw std::invalid_argument("preferential_attachment: need m >= 1");
  if (n < links + 2)
    throw std::invalid_argument("preferential_attachment: need n >= m + 2");
  Rng rng = Rng::for_trial(seed, 0x9a17, 0);
  // seed graph: clique on m+1 vertices
  std::vector<EdgeTriple> edges;
  for (int u = 0; u <= links; ++u)
    for (int v = u + 1; v <= links; ++v) edges.emplace_back(u, v, 1.0);
  std::vector<double> wdeg(n, 0.0);
  for (int v = 0; v <= links; ++v) wdeg[v] = links;
  double total = static_cast<double>(links) * (links + 1);  // sum of degrees so far
  std::vector<double> cum;
  for (int v = links + 1; v < n; ++v) {
    // degree-proportional draws with replacement against the pre-arrival state
    cum.assign(v, 0.0);
    double run = 0.0;
    for (int u = 0; u < v; ++u) {
      run += wdeg[u];
      cum[u] = run;
    }
    std::vector<int> draws(links);
    for (int i = 0; i < links; ++i) {
      const double r = rng.next_double() * run;
      draws[i] = static_cast<int>(std::lower_bound(cum.begin(), cum.end(), r,
                                                   [](double c, double x) { return c <= x; }) -
                                  cum.begin());
    }
    for (int target : draws) {
      edges.emplace_back(v, target, 1.0);  // repeats accumulate as weight
      wdeg[v] += 1.0;
      wdeg[target] += 1.0;
      total += 2.0;
    }
  }
  return make_graph(n, edges);
}

}  // namespace

WeightedGraph build_family(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::cycle: return build_cycle(spec.n);
    case Family::torus: return build_torus(spec.dim, spec.side);
    case Family::binary_tree: return build_binary_tree(spec.height);
    case Family::hypercube: return build_hypercube(spec.dim);
    case Family::clique: return build_clique(spec.n);
    case Family::barbell: return build_barbell(spec.n);
    case Family::random_regular: return build_random_regular(spec.n, spec.degree, spec.seed);
    case Family::preferential_attachment:
      return build_preferential_attachment(spec.n, spec.links, spec.seed);
  }
  throw std::invalid_argument("build_family: unknown family");
}

namespace {

HardSet finish_hard_set(const WeightedGraph& g, std::string name, std::vector<int> members,
                        int anchor) {
  HardSet hs;
  hs.name = std::move(name);
  hs.anchor = anchor;
  std::sort(members.begin(), members.end());
  hs.members = std::move(members);
  std::vector<char> in(g.n, 0);
  for (int v : hs.members) in[v] = 1;
  const double total = 2.0 * g.total_edge_weight;
  for (int v : hs.members) {
    hs.pi_mass += g.weighted_degree[v] / total;
    for (const auto& e : g.adjacency[v]) {
      if (!in[e.to]) {
        hs.boundary.push_back(v);
        break;
      }
    }
  }
  return hs;
}

}  // namespace

std::vector<HardSet> canonical_hard_sets(const WeightedGraph& g, const FamilySpec& spec,
                                         std::string* diagnostic) {
  std::vector<HardSet> out;
  switch (spec.family) {
    case Family::cycle: {
      const int n = g.n;
      const int r = n / 4;
      std::vector<int> far;
      for (int v = 0; v < n; ++v)
        if (std::min(v, n - v) >= r) far.push_back(v);
      out.push_back(finish_hard_set(g, "far_half_arc", std::move(far), 0));
      break;
    }
    case Family::torus: {
      const int r = spec.side / 4;
      std::vector<int> far;
      for (int v = 0; v < g.n; ++v) {
        const int c = v % spec.side;
        if (std::min(c, spec.side - c) >= r) far.push_back(v);
      }
      out.push_back(finish_hard_set(g, "opposite_half_sub_torus", std::move(far), 0));
      break;
    }
    case Family::binary_tree: {
      const int n = g.n;
      std::vector<int> leaves;
      for (int v = (n - 1) / 2; v < n; ++v) leaves.push_back(v);
      out.push_back(finish_hard_set(g, "leaves", std::move(leaves), 0));
      // right subtree, anchored at the leftmost leaf of the left subtree
      std::vector<int> right;
      std::vector<int> stack{2};
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        right.push_back(v);
        if (tree_left(v) < n) stack.push_back(tree_left(v));
        if (tree_right(v) < n) stack.push_back(tree_right(v));
      }
      int leftmost_leaf = 0;
      while (tree_left(leftmost_leaf) < n) leftmost_leaf = tree_left(leftmost_leaf);
      out.push_back(finish_hard_set(g, "right_subtree", std::move(right), leftmost_leaf));
      break;
    }
    case Family::hypercube: {
      const int d = spec.dim;
      const int half = (d + 1) / 2;
      std::vector<int> far;
      for (int v = 0; v < g.n; ++v)
        if (std::popcount(static_cast<unsigned>(v)) >= half) far.push_back(v);
      out.push_back(finish_hard_set(g, "half_hamming_ball", std::move(far), 0));
      break;
    }
    case Family::barbell: {
      std::vector<int> farclique;
      for (int v = g.n / 2; v < g.n; ++v) farclique.push_back(v);
      const int anchor = g.n >= 4 ? 1 : 0;  // in the near clique, away from the bridge
      out.push_back(finish_hard_set(g, "far_clique", std::move(farclique), anchor));
      break;
    }
    default:
      if (diagnostic)
        *diagnostic = "canonical_hard_sets: no catalog for family " + family_name(spec.family);
      return {};
  }
  return out;
}

std::vector<int> worst_case_start_representatives(const WeightedGraph& g, const FamilySpec& spec) {
  switch (spec.family) {
    case Family::cycle:
    case Family::torus:
    case Family::hypercube:
    case Family::clique:
      return {0};  // vertex-transitive
    case Family::binary_tree: {
      std::vector<int> reps;
      int v = 0;
      while (true) {
        reps.push_back(v);
        if (tree_left(v) >= g.n) break;
        v = tree_left(v);
      }
      return reps;  // one vertex per depth
    }
    case Family::barbell:
      return {0, 1};  // bridge endpoint, bridge-far clique vertex
    default: {
      // no symmetry to exploit; use extreme-degree vertices plus vertex 0
      int lo = 0, hi = 0;
      for (int v = 1; v < g.n; ++v) {
        if (g.weighted_degree[v] < g.weighted_degree[lo]) lo = v;
        if (g.weighted_degree[v] > g.weighted_degree[hi]) hi = v;
      }
      std::vector<int> reps{0, lo, hi};
      std::sort(reps.begin(), reps.end());
      reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
      return reps;
    }
  }
}

}  // namespace mrw
