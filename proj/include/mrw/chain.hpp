#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "mrw/family.hpp"
#include "mrw/graph.hpp"

namespace mrw {

enum class Laziness { lazy, nonlazy };

inline const char* laziness_name(Laziness l) { return l == Laziness::lazy ? "lazy" : "nonlazy"; }

constexpr int kDenseGuard = 4096;         // largest n for dense matrix work
constexpr int kExhaustiveHitGuard = 16;   // subset scans for large-hit
constexpr int kExhaustiveCutGuard = 20;   // subset scans for conductance

/// Row-stochastic matrix of the walk on g. Lazy: stay with probability 1/2,
/// otherwise move weight-proportionally. Guarded at kDenseGuard.
Eigen::MatrixXd transition_matrix(const WeightedGraph& g, Laziness laziness,
                                  int dense_guard = kDenseGuard);

double reversibility_residual(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi);

/// Exact total-variation / separation curves for t = 0..t_max.
struct DistanceProfile {
  Eigen::VectorXd tv;   // d(t)
  Eigen::VectorXd sep;  // s(t)

  long t_max() const { return tv.size() - 1; }
  /// First t with d(t) <= eps; nullopt when not reached within the profile.
  std::optional<long> first_tv_below(double eps) const;
  std::optional<long> first_sep_below(double eps) const;
};

DistanceProfile distance_profile(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi, long t_max);

double tv_from_power(const Eigen::MatrixXd& Pt, const Eigen::VectorXd& pi);
double sep_from_power(const Eigen::MatrixXd& Pt, const Eigen::VectorXd& pi);

/// Smallest t >= 1 with s(t) <= 1 - ktilde/k, read off a stored profile.
std::optional<long> partial_mixing_time(const DistanceProfile& profile, int ktilde, int k);

/// Shared cache of repeated squarings of P, used by the crossing searches so
/// several thresholds on the same chain reuse matrix products.
class PowerCache {
 public:
  explicit PowerCache(Eigen::MatrixXd P) { pow2_.push_back(std::move(P)); }
  const Eigen::MatrixXd& pow2(int j);

 private:
  std::vector<Eigen::MatrixXd> pow2_;
};

/// Smallest t >= 1 with metric(P^t) <= target, assuming the metric is
/// non-increasing in t. Doubles t to bracket the crossing, then walks the
/// binary representation so each probe costs one matrix product.
std::optional<long> first_crossing_time(
    PowerCache& cache, const std::function<double(const Eigen::MatrixXd&)>& metric, double target,
    long t_cap);

std::optional<long> mixing_time_search(PowerCache& cache, const Eigen::VectorXd& pi, double eps,
                                       long t_cap);
std::optional<long> separation_time_search(PowerCache& cache, const Eigen::VectorXd& pi,
                                           double target, long t_cap);
/// Matrix-power route for t_mix^(ktilde,k) on chains whose profile would be
/// too long to tabulate.
std::optional<long> partial_mixing_time_search(PowerCache& cache, const Eigen::VectorXd& pi,
                                               int ktilde, int k, long t_cap);

/// P_u(tau_S <= t) for every start u. Hitting at t = 0 counts: entries for
/// u in S are 1.
Eigen::VectorXd hit_probability_within(const Eigen::MatrixXd& P, const std::vector<int>& S,
                                       long t);

enum class Provenance { exact, estimated, catalog_bound };

const char* provenance_name(Provenance p);

struct LargeHitResult {
  std::optional<long> t;
  Provenance provenance = Provenance::exact;
};

struct StartSetPair {
  int start;
  std::vector<int> set;
};

/// t_large-hit^(ktilde,k) over an explicit list of (start, set) pairs.
LargeHitResult large_hit_time_pairs(const Eigen::MatrixXd& P, const std::vector<StartSetPair>& pairs,
                                    int ktilde, int k, long t_cap);

/// Exhaustive minimum over all S with pi(S) >= 1/4 and all starts (n <= 16).
LargeHitResult large_hit_time_exhaustive(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi,
                                         int ktilde, int k, long t_cap);

/// Catalog mode: restricts the minimum to the canonical hard-set pairs, so
/// the reported time lower-bounds the true large-hit time.
LargeHitResult large_hit_time_catalog(const Eigen::MatrixXd& P, const std::vector<HardSet>& catalog,
                                      int ktilde, int k, long t_cap);

struct SpectralSummary {
  double lambda2 = 0.0;
  double t_rel = 1.0;
  double residual = 0.0;
};

/// lambda2 via the pi-symmetrized matrix: dense eigensolve for n <= 512,
/// shifted power iteration with the known top eigenvector deflated above.
SpectralSummary relaxation_time(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi);

/// sum_{i=0}^{t} P^i(v,v) by iterated row propagation.
double return_sum(const Eigen::MatrixXd& P, int v, long t);

/// Prefix sums R(t') = sum_{i<=t'} P^i(v,v) for all t' <= t.
std::vector<double> return_sum_prefix(const Eigen::MatrixXd& P, int v, long t);

struct HittingExpectation {
  Eigen::VectorXd from;       // E_u[tau_v] for every u
  double from_stationary;     // E_pi[tau_v]
};

HittingExpectation hitting_expectation(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi, int v);

/// E_pi[tau_v] for every v at once, via the fundamental matrix. Independent
/// of the per-target absorbing solve above; the two are cross-checked in
/// tests.
Eigen::VectorXd stationary_hitting_all(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi);

/// Phi(S) = Q(S, S^c) / pi(S); requires 0 < pi(S) <= 1/2.
double conductance_of_set(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi,
                          const std::vector<int>& S);

/// Minimum of Phi(S) over all S with 0 < pi(S) <= 1/2, via Gray-code subset
/// enumeration with incremental cut updates (n <= 20).
double conductance_exhaustive(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi);

}  // namespace mrw
