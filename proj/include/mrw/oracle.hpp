#pragma once

#include <cstdint>
#include <vector>

#include "mrw/chain.hpp"
#include "mrw/graph.hpp"
#include "mrw/simulate_types.hpp"

namespace mrw {
namespace oracle {

constexpr std::uint64_t kProductStateGuard = 1000000;  // n^k * 2^n

/// Exact expected cover time of k synchronous independent walks, by linear
/// solves over the product chain (positions tuple, covered mask). Masks are
/// processed largest-first so each solve only couples states with equal mask.
double exact_multiwalk_cover_expectation(const WeightedGraph& g, int k, const StartSpec& start,
                                         Laziness laziness);

/// Exact P(tau_cov^(k) > t) by t-step propagation of the product chain.
double exact_cover_tail(const WeightedGraph& g, int k, const StartSpec& start, Laziness laziness,
                        long t);

/// Exact P_{pi^k}(tau_cov^(k) > t) via inclusion-exclusion over unvisited
/// sets; needs only single-walk avoidance probabilities, so it scales to
/// n <= ~12 and any k. Independent route against exact_cover_tail.
double stationary_cover_tail_ie(const WeightedGraph& g, int k, Laziness laziness, long t);

/// Single-walk P_pi(walk of length t avoids U entirely), all t' <= t.
std::vector<double> stationary_avoidance_curve(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi,
                                               std::uint32_t avoid_mask, long t);

/// True t_large-hit^(ktilde,k) by substochastic-power enumeration over all
/// sets with pi(S) >= 1/4 (independent of the absorbing-chain route in
/// chain-exact).
std::optional<long> exhaustive_large_hit(const WeightedGraph& g, Laziness laziness, int ktilde,
                                         int k, long t_cap);

/// True Phi(G) by direct per-subset edge summation (independent of the
/// Gray-code route in chain-exact).
double exhaustive_conductance(const WeightedGraph& g, Laziness laziness);

}  // namespace oracle
}  // namespace mrw
