#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace mrw {

struct AllAtVertex {
  int v = 0;
};
struct StationaryProduct {};
struct ExplicitTuple {
  std::vector<int> vertices;
};
/// Start each walk from a distribution supported on the boundary of S
/// (or a point mass).
struct DistributionOnSet {
  enum class Kind { uniform_boundary, point_mass };
  std::vector<int> set;
  Kind kind = Kind::uniform_boundary;
  int point = -1;
};

struct StartSpec {
  std::variant<AllAtVertex, StationaryProduct, ExplicitTuple, DistributionOnSet> v;

  static StartSpec all_at(int vertex) { return {AllAtVertex{vertex}}; }
  static StartSpec stationary() { return {StationaryProduct{}}; }
  static StartSpec tuple(std::vector<int> vs) { return {ExplicitTuple{std::move(vs)}}; }
  static StartSpec boundary_uniform(std::vector<int> S) {
    return {DistributionOnSet{std::move(S), DistributionOnSet::Kind::uniform_boundary, -1}};
  }
  static StartSpec point_on_set(std::vector<int> S, int p) {
    return {DistributionOnSet{std::move(S), DistributionOnSet::Kind::point_mass, p}};
  }

  std::string describe() const;
};

struct EstimateWithCI {
  double mean = 0.0;
  double std_error = 0.0;
  int trials = 0;
  std::uint64_t master_seed = 0;
  int truncated = 0;      // horizon-truncated trials, included at the horizon value
  bool unreliable = false;  // more than 1% of trials truncated
};

}  // namespace mrw
