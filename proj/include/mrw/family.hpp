#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrw/graph.hpp"

namespace mrw {

enum class Family {
  cycle,
  torus,
  binary_tree,
  hypercube,
  clique,
  barbell,
  random_regular,
  preferential_attachment,
};

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

/// Parameters identifying one member of a graph family. `n` is the resolved
/// vertex count (derived for torus/binary_tree/hypercube).
struct FamilySpec {
  Family family = Family::cycle;
  int n = 0;       // cycle, clique, barbell, random_regular, preferential_attachment
  int dim = 0;     // torus
  int side = 0;    // torus
  int height = 0;  // binary_tree
  int degree = 0;  // random_regular
  int links = 0;   // preferential_attachment: initial links m
  std::uint64_t seed = 0;

  static FamilySpec cycle(int n);
  static FamilySpec torus(int dim, int side);
  static FamilySpec binary_tree(int height);
  static FamilySpec hypercube(int dim);
  static FamilySpec clique(int n);
  static FamilySpec barbell(int n);
  static FamilySpec random_regular(int n, int degree, std::uint64_t seed);
  static FamilySpec preferential_attachment(int n, int links, std::uint64_t seed);

  bool randomized() const {
    return family == Family::random_regular || family == Family::preferential_attachment;
  }
  std::string name() const;
  int resolved_n() const;
};

WeightedGraph build_family(const FamilySpec& spec);

/// A candidate "hard to hit" set together with the start vertex the paper's
/// lower-bound argument pairs it with.
struct HardSet {
  std::string name;
  std::vector<int> members;
  std::vector<int> boundary;  // {x in S : exists y outside S with xy in E}
  int anchor = 0;             // far start vertex
  double pi_mass = 0.0;
};

/// Family-specific candidate sets with pi(S) >= 1/4: far half-arc (cycle),
/// opposite half-sub-torus (torus), leaf set and right subtree (binary tree),
/// half Hamming ball (hypercube), far clique (barbell). Unsupported families
/// yield an empty list and a diagnostic.
std::vector<HardSet> canonical_hard_sets(const WeightedGraph& g, const FamilySpec& spec,
                                         std::string* diagnostic = nullptr);

// binary_tree vertex helpers (heap-style ids, root = 0)
inline int tree_parent(int v) { return (v - 1) / 2; }
inline int tree_left(int v) { return 2 * v + 1; }
inline int tree_right(int v) { return 2 * v + 2; }

/// One start vertex per symmetry class, used when approximating worst-case
/// cover times by a max over single-vertex starts.
std::vector<int> worst_case_start_representatives(const WeightedGraph& g, const FamilySpec& spec);

}  // namespace mrw
