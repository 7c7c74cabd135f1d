#include <doctest.h>

#include <cmath>
#include <memory>
#include <set>
#include <sstream>

#include "mrw/family.hpp"
#include "mrw/graph.hpp"
#include "mrw/reset.hpp"
#include "mrw/rng.hpp"

using namespace mrw;

namespace {

// small Erdos-Renyi-ish connected graph for randomized checks
WeightedGraph random_connected(int n, double p, std::uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<EdgeTriple> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.next_double() < p) edges.emplace_back(u, v, 1.0);
    try {
      return make_graph(n, edges);
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::runtime_error("random_connected failed");
}

}  // namespace

TEST_CASE("cycle family structure") {
  const WeightedGraph g = build_family(FamilySpec::cycle(4));
  CHECK(g.n == 4);
  CHECK(g.edge_count() == 4);
  for (int v = 0; v < 4; ++v) CHECK(g.adjacency[v].size() == 2);
}

TEST_CASE("binary tree degree profile") {
  const WeightedGraph g = build_family(FamilySpec::binary_tree(2));
  CHECK(g.n == 7);
  int deg1 = 0, deg2 = 0, deg3 = 0;
  for (int v = 0; v < g.n; ++v) {
    const auto d = g.adjacency[v].size();
    deg1 += d == 1;
    deg2 += d == 2;
    deg3 += d == 3;
  }
  CHECK(deg2 == 1);  // root
  CHECK(deg3 == 2);  // internal
  CHECK(deg1 == 4);  // leaves
}

TEST_CASE("hypercube and torus sizes") {
  const WeightedGraph h = build_family(FamilySpec::hypercube(3));
  CHECK(h.n == 8);
  CHECK(h.edge_count() == 12);
  for (int v = 0; v < h.n; ++v) CHECK(h.adjacency[v].size() == 3);

  const WeightedGraph t = build_family(FamilySpec::torus(2, 4));
  CHECK(t.n == 16);
  for (int v = 0; v < t.n; ++v) CHECK(t.adjacency[v].size() == 4);
}

TEST_CASE("barbell is two cliques plus a bridge") {
  const WeightedGraph g = build_family(FamilySpec::barbell(8));
  CHECK(g.n == 8);
  CHECK(g.edge_count() == 13);  // 2*C(4,2) + 1
  CHECK_THROWS_AS(build_family(FamilySpec::barbell(7)), std::invalid_argument);
}

TEST_CASE("random regular validity and determinism") {
  CHECK_THROWS_AS(build_family(FamilySpec::random_regular(5, 3, 1)), std::invalid_argument);
  const FamilySpec spec = FamilySpec::random_regular(64, 3, 42);
  const WeightedGraph a = build_family(spec);
  const WeightedGraph b = build_family(spec);
  for (int v = 0; v < a.n; ++v) {
    CHECK(a.adjacency[v].size() == 3);
    REQUIRE(a.adjacency[v].size() == b.adjacency[v].size());
    for (std::size_t i = 0; i < a.adjacency[v].size(); ++i)
      CHECK(a.adjacency[v][i].to == b.adjacency[v][i].to);
  }
}

TEST_CASE("preferential attachment weighted degree identity") {
  const int n = 200, m = 2;
  const WeightedGraph g = build_family(FamilySpec::preferential_attachment(n, m, 5));
  double total = 0.0;
  for (double d : g.weighted_degree) total += d;
  // seed clique K_{m+1} contributes m(m+1); each arrival adds weight m twice
  CHECK(total == doctest::Approx(2.0 * m * (n - (m + 1)) + m * (m + 1)));
  CHECK(g.min_weighted_degree() >= m);
}

TEST_CASE("stationary distribution is degree proportional") {
  const WeightedGraph clique = build_family(FamilySpec::clique(5));
  const Eigen::VectorXd pi = stationary_distribution(clique);
  for (int v = 0; v < 5; ++v) CHECK(pi[v] == doctest::Approx(0.2).epsilon(1e-14));

  const WeightedGraph path = make_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  const Eigen::VectorXd pp = stationary_distribution(path);
  CHECK(pp[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(pp[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pp[2] == doctest::Approx(0.25).epsilon(1e-14));

  // exact rational identity on unit-weight graphs: pi(v) * 2m == deg(v)
  for (const auto& spec : {FamilySpec::cycle(9), FamilySpec::binary_tree(3)}) {
    const WeightedGraph g = build_family(spec);
    const Eigen::VectorXd p = stationary_distribution(g);
    double sum = 0.0;
    for (int v = 0; v < g.n; ++v) {
      sum += p[v];
      CHECK(p[v] * 2.0 * g.total_edge_weight ==
            doctest::Approx(g.weighted_degree[v]).epsilon(1e-14));
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("reset graph weights and jump probability") {
  const WeightedGraph k2 = build_family(FamilySpec::clique(2));
  const ResetGraph rg = build_reset_graph(k2, 0.5);
  CHECK(rg.z == 2);
  // z-edges have weight x*deg/(1-x) = 1: K2 plus z is the unit triangle
  for (int u = 0; u < 2; ++u) {
    bool found = false;
    for (const auto& e : rg.graph.adjacency[u])
      if (e.to == rg.z) {
        found = true;
        CHECK(e.weight == doctest::Approx(1.0));
      }
    CHECK(found);
  }
  const Eigen::VectorXd pi = stationary_distribution(rg.graph);
  for (int v = 0; v < 3; ++v) CHECK(pi[v] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

  // small reset rate: z-edge weight ~ x, jump probability exactly x
  const ResetGraph tiny = build_reset_graph(k2, 1e-3);
  for (const auto& e : tiny.graph.adjacency[0])
    if (e.to == tiny.z) CHECK(e.weight == doctest::Approx(1e-3 / (1.0 - 1e-3)));

  CHECK_THROWS_AS(build_reset_graph(k2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_reset_graph(k2, 1.0), std::invalid_argument);
  const ResetGraph wg = build_reset_graph(k2, 0.3);
  CHECK_THROWS_AS(build_reset_graph(wg.graph, 0.5), std::invalid_argument);  // non-unit base
}

TEST_CASE("reset graph stationary structure on random bases") {
  // The z jump probability is exactly x from every base vertex; the
  // stationary mass of z is therefore x/(1+x) (z is never lazy), and the
  // restriction to the base stays proportional to the base degrees.
  int idx = 0;
  for (double x : {0.1, 0.25, 0.5, 0.9}) {
    for (int rep = 0; rep < 5; ++rep) {
      const WeightedGraph base = random_connected(10 + rep, 0.4, 1000 + ++idx);
      const ResetGraph rg = build_reset_graph(base, x);
      const Eigen::VectorXd pi = stationary_distribution(rg.graph);
      CHECK(std::fabs(pi[rg.z] - x / (1.0 + x)) <= 1e-12);
      for (int v = 0; v < base.n; ++v)
        CHECK(pi[v] * 2.0 * base.total_edge_weight * (1.0 + x) ==
              doctest::Approx(base.weighted_degree[v]).epsilon(1e-10));
      // non-lazy jump probability to z is exactly x
      for (int v = 0; v < base.n; ++v) {
        double wz = 0.0;
        for (const auto& e : rg.graph.adjacency[v])
          if (e.to == rg.z) wz = e.weight;
        CHECK(wz / rg.graph.weighted_degree[v] == doctest::Approx(x).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("edge list round trip with deterministic ordering") {
  const WeightedGraph g = build_family(FamilySpec::binary_tree(3));
  std::ostringstream os1, os2;
  write_edge_list(os1, g);
  std::istringstream is1(os1.str());
  const WeightedGraph h = read_edge_list(is1);
  write_edge_list(os2, h);
  CHECK(os1.str() == os2.str());
  CHECK(h.n == g.n);
  CHECK(h.edge_count() == g.edge_count());
  // header and sortedness
  std::istringstream is(os1.str());
  int n, m;
  is >> n >> m;
  CHECK(n == g.n);
  CHECK(m == static_cast<int>(g.edge_count()));
  int pu = -1, pv = -1;
  for (int i = 0; i < m; ++i) {
    int u, v;
    double w;
    is >> u >> v >> w;
    CHECK(u < v);
    CHECK(std::make_pair(u, v) > std::make_pair(pu, pv));
    pu = u;
    pv = v;
  }
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(make_graph(2, {{0, 0, 1.0}}), std::invalid_argument);   // self loop
  CHECK_THROWS_AS(make_graph(2, {{0, 1, -1.0}}), std::invalid_argument);  // weight
  CHECK_THROWS_AS(make_graph(3, {{0, 1, 1.0}}), std::invalid_argument);   // disconnected
  const WeightedGraph g = make_graph(2, {{0, 1, 1.0}, {1, 0, 2.0}});      // accumulates
  CHECK(g.total_edge_weight == doctest::Approx(3.0));
}

TEST_CASE("canonical hard sets") {
  SUBCASE("cycle far arc") {
    const FamilySpec spec = FamilySpec::cycle(8);
    const auto sets = canonical_hard_sets(build_family(spec), spec);
    REQUIRE(sets.size() == 1);
    const auto& hs = sets[0];
    CHECK(hs.anchor == 0);
    CHECK(hs.members.size() >= 4);
    for (int v : hs.members) CHECK(std::min(v, 8 - v) >= 2);
    CHECK(hs.pi_mass >= 0.25);
  }
  SUBCASE("binary tree leaves and right subtree") {
    const FamilySpec spec = FamilySpec::binary_tree(3);
    const WeightedGraph g = build_family(spec);
    const auto sets = canonical_hard_sets(g, spec);
    REQUIRE(sets.size() == 2);
    CHECK(sets[0].name == "leaves");
    CHECK(sets[0].members.size() == 8);
    CHECK(sets[0].pi_mass == doctest::Approx(8.0 / 28.0));
    CHECK(sets[0].pi_mass >= 0.25);
    CHECK(sets[1].name == "right_subtree");
    CHECK(sets[1].boundary == std::vector<int>{2});
    // anchor is a leaf of the left subtree
    CHECK(sets[1].anchor >= (g.n - 1) / 2);
  }
  SUBCASE("barbell far clique") {
    const FamilySpec spec = FamilySpec::barbell(8);
    const auto sets = canonical_hard_sets(build_family(spec), spec);
    REQUIRE(sets.size() == 1);
    CHECK(sets[0].pi_mass == doctest::Approx(0.5).epsilon(0.05));
    CHECK(sets[0].boundary == std::vector<int>{4});
    CHECK(sets[0].anchor == 1);
  }
  SUBCASE("hypercube half ball") {
    const FamilySpec spec = FamilySpec::hypercube(4);
    const auto sets = canonical_hard_sets(build_family(spec), spec);
    REQUIRE(sets.size() == 1);
    CHECK(sets[0].pi_mass >= 0.25);
    CHECK(sets[0].anchor == 0);
  }
  SUBCASE("unsupported family yields diagnostic") {
    const FamilySpec spec = FamilySpec::clique(6);
    std::string diag;
    const auto sets = canonical_hard_sets(build_family(spec), spec, &diag);
    CHECK(sets.empty());
    CHECK(!diag.empty());
  }
}

TEST_CASE("boundary of hard sets is correct") {
  const FamilySpec spec = FamilySpec::cycle(12);
  const WeightedGraph g = build_family(spec);
  const auto sets = canonical_hard_sets(g, spec);
  const auto& hs = sets[0];
  std::set<int> members(hs.members.begin(), hs.members.end());
  for (int v : hs.members) {
    bool has_out = false;
    for (const auto& e : g.adjacency[v]) has_out |= !members.count(e.to);
    const bool in_boundary =
        std::find(hs.boundary.begin(), hs.boundary.end(), v) != hs.boundary.end();
    CHECK(in_boundary == has_out);
  }
}
