#pragma once

#include <cstdint>
#include <vector>

#include "mrw/chain.hpp"
#include "mrw/graph.hpp"
#include "mrw/rng.hpp"
#include "mrw/simulate_types.hpp"
#include "mrw/stats.hpp"

namespace mrw {

/// Flattened adjacency prepared for fast stepping: unit-degree vertices use
/// direct indexing, weighted vertices binary-search a cumulative array.
class WalkSampler {
 public:
  explicit WalkSampler(const WeightedGraph& g);

  int n() const { return n_; }
  int step(int u, Laziness laziness, Rng& rng) const {
    if (laziness == Laziness::lazy && rng.coin()) return u;
    return neighbor(u, rng);
  }
  int neighbor(int u, Rng& rng) const;
  int sample_stationary(Rng& rng) const;

 private:
  int n_;
  std::vector<std::int64_t> offset_;
  std::vector<int> nbr_;
  std::vector<double> cumw_;  // per-segment cumulative weights
  std::vector<char> uniform_;
  std::vector<double> wdeg_;
  std::vector<double> pi_cum_;
};

/// Materialized start distribution: one tuple sample per trial.
class StartSampler {
 public:
  StartSampler(const WeightedGraph& g, const StartSpec& spec, int k);
  void sample(const WalkSampler& ws, Rng& rng, std::vector<int>& out) const;
  bool fallback_uniform_on_set() const { return fallback_uniform_on_set_; }

 private:
  int k_;
  const StartSpec spec_;
  std::vector<int> support_;  // for DistributionOnSet
  bool fallback_uniform_on_set_ = false;
};

struct CoverSample {
  std::uint64_t t = 0;
  bool truncated = false;
};

std::uint64_t default_horizon(int n, int k);

/// One sample of tau_cov^(k); positions at t = 0 count as covered.
CoverSample sample_cover_time(const WalkSampler& ws, int k, const StartSampler& start,
                              Laziness laziness, std::uint64_t horizon, Rng& rng);

/// One sample of tau_S^(k) (first time any walk is inside S).
CoverSample sample_set_hitting(const WalkSampler& ws, int k, const StartSampler& start,
                               const std::vector<int>& S, Laziness laziness,
                               std::uint64_t horizon, Rng& rng);

/// One sample of tau_cov^(k)(S): every vertex of S visited; walks roam freely.
CoverSample sample_set_cover(const WalkSampler& ws, int k, const StartSampler& start,
                             const std::vector<int>& S, Laziness laziness, std::uint64_t horizon,
                             Rng& rng);

struct EstimateOptions {
  int trials = 400;
  std::uint64_t horizon = 0;  // 0: use default_horizon
  std::uint64_t master_seed = 1;
  int threads = 1;
};

EstimateWithCI estimate_cover_time(const WeightedGraph& g, int k, const StartSpec& start,
                                   Laziness laziness, const EstimateOptions& opt);

EstimateWithCI estimate_set_hitting(const WeightedGraph& g, int k, const StartSpec& start,
                                    const std::vector<int>& S, Laziness laziness,
                                    const EstimateOptions& opt);

/// Expected time for ktilde walks started from mu on the boundary of S to
/// visit every vertex of S. When S has no boundary (S = V), mu falls back to
/// uniform on S and the estimate is flagged.
struct SetCoverEstimate {
  EstimateWithCI estimate;
  bool boundary_fallback = false;
};
SetCoverEstimate estimate_set_cover(const WeightedGraph& g, int ktilde, const std::vector<int>& S,
                                    const StartSpec& mu, Laziness laziness,
                                    const EstimateOptions& opt);

/// Compares occupancy at time T of (a) the non-lazy walk on the reset graph
/// G_hat(x) with z-steps contracted against (b) the walk on G with
/// probability-x restarts from pi. The two processes have identical law;
/// the chi-square statistic quantifies the sampled divergence.
ChiSquareResult reset_walk_equivalence(const WeightedGraph& g, double x, long T, int trials,
                                       std::uint64_t seed, int threads = 1);

/// Deterministic parallel map over trial indices: results identical at any
/// thread count.
std::vector<double> run_trials(int trials, int threads,
                               const std::function<double(int)>& trial_fn);

}  // namespace mrw
