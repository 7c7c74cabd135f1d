#include "mrw/chain.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>

namespace mrw {

Eigen::MatrixXd transition_matrix(const WeightedGraph& g, Laziness laziness, int dense_guard) {
  if (g.n > dense_guard)
    throw guard_error("transition_matrix: n = " + std::to_string(g.n) +
                      " exceeds the dense guard (" + std::to_string(dense_guard) +
                      "); use the Monte-Carlo path");
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(g.n, g.n);
  if (g.n == 1) {
    P(0, 0) = 1.0;
    return P;
  }
  const double hold = laziness == Laziness::lazy ? 0.5 : 0.0;
  const double move = 1.0 - hold;
  for (int u = 0; u < g.n; ++u) {
    P(u, u) = hold;
    for (const auto& e : g.adjacency[u]) P(u, e.to) = move * e.weight / g.weighted_degree[u];
  }
  return P;
}

double reversibility_residual(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi) {
  const Eigen::MatrixXd Q = pi.asDiagonal() * P;
  return (Q - Q.transpose()).cwiseAbs().maxCoeff();
}

double tv_from_power(const Eigen::MatrixXd& Pt, const Eigen::VectorXd& pi) {
  return 0.5 * (Pt.rowwise() - pi.transpose()).cwiseAbs().rowwise().sum().maxCoeff();
}

double sep_from_power(const Eigen::MatrixXd& Pt, const Eigen::VectorXd& pi) {
  const double ratio_min =
      (Pt.array().rowwise() / pi.transpose().array()).minCoeff();
  return 1.0 - ratio_min;
}

std::optional<long> DistanceProfile::first_tv_below(double eps) const {
  for (long t = 0; t < tv.size(); ++t)
    if (tv[t] <= eps) return t;
  return std::nullopt;
}

std::optional<long> DistanceProfile::first_sep_below(double eps) const {
  for (long t = 0; t < sep.size(); ++t)
    if (sep[t] <= eps) return t;
  return std::nullopt;
}

DistanceProfile distance_profile(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi, long t_max) {
  if (t_max < 1) throw std::invalid_argument("distance_profile: t_max must be >= 1");
  DistanceProfile prof;
  prof.tv.resize(t_max + 1);
  prof.sep.resize(t_max + 1);
  Eigen::MatrixXd Pt = Eigen::MatrixXd::Identity(P.rows(), P.cols());
  for (long t = 0; t <= t_max; ++t) {
    prof.tv[t] = tv_from_power(Pt, pi);
    prof.sep[t] = sep_from_power(Pt, pi);
    if (t < t_max) Pt = Pt * P;
  }
  return prof;
}

std::optional<long> partial_mixing_time(const DistanceProfile& profile, int ktilde, int k) {
  if (ktilde < 1 || ktilde >= k)
    throw std::invalid_argument("partial_mixing_time: need 1 <= ktilde < k");
  const double target = 1.0 - static_cast<double>(ktilde) / k;
  for (long t = 1; t <= profile.t_max(); ++t)
    if (profile.sep[t] <= target) return t;
  return std::nullopt;
}

const Eigen::MatrixXd& PowerCache::pow2(int j) {
  while (static_cast<int>(pow2_.size()) <= j) {
    const Eigen::MatrixXd& last = pow2_.back();
    pow2_.push_back(last * last);
  }
  return pow2_[j];
}

std::optional<long> first_crossing_time(
    PowerCache& cache, const std::function<double(const Eigen::MatrixXd&)>& metric, double target,
    long t_cap) {
  if (metric(cache.pow2(0)) <= target) return 1;
  // bracket: find smallest j with metric(P^(2^j)) <= target
  int j = 0;
  while (true) {
    ++j;
    if ((1L << j) > t_cap && metric(cache.pow2(j)) > target) return std::nullopt;
    if (metric(cache.pow2(j)) <= target) break;
  }
  // walk bits downward keeping the invariant metric(P^t) > target
  long t = 1L << (j - 1);
  Eigen::MatrixXd M = cache.pow2(j - 1);
  for (int b = j - 2; b >= 0; --b) {
    Eigen::MatrixXd cand = M * cache.pow2(b);
    if (metric(cand) > target) {
      M = std::move(cand);
      t += 1L << b;
    }
  }
  return (t + 1 <= t_cap) ? std::optional<long>(t + 1) : std::nullopt;
}

std::optional<long> mixing_time_search(PowerCache& cache, const Eigen::VectorXd& pi, double eps,
                                       long t_cap) {
  return first_crossing_time(
      cache, [&pi](const Eigen::MatrixXd& Pt) { return tv_from_power(Pt, pi); }, eps, t_cap);
}

std::optional<long> separation_time_search(PowerCache& cache, const Eigen::VectorXd& pi,
                                           double target, long t_cap) {
  return first_crossing_time(
      cache, [&pi](const Eigen::MatrixXd& Pt) { return sep_from_power(Pt, pi); }, target, t_cap);
}

std::optional<long> partial_mixing_time_search(PowerCache& cache, const Eigen::VectorXd& pi,
                                               int ktilde, int k, long t_cap) {
  if (ktilde < 1 || ktilde >= k)
    throw std::invalid_argument("partial_mixing_time_search: need 1 <= ktilde < k");
  return separation_time_search(cache, pi, 1.0 - static_cast<double>(ktilde) / k, t_cap);
}

Eigen::VectorXd hit_probability_within(const Eigen::MatrixXd& P, const std::vector<int>& S,
                                       long t) {
  if (S.empty()) throw std::invalid_argument("hit_probability_within: S must be nonempty");
  if (t < 0) throw std::invalid_argument("hit_probability_within: t must be >= 0");
  Eigen::VectorXd q = Eigen::VectorXd::Zero(P.rows());
  for (int v : S) q[v] = 1.0;
  for (long step = 0; step < t; ++step) {
    q = P * q;
    for (int v : S) q[v] = 1.0;  // absorbing
  }
  return q;
}

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::exact: return "exact";
    case Provenance::estimated: return "estimated";
    case Provenance::catalog_bound: return "catalog-upper-bound";
  }
  return "?";
}

namespace {

// First t at which min over tracked entries of P_u(tau_S <= t) reaches the
// threshold; the absorbing vector is advanced one step at a time.
std::optional<long> first_threshold_time(const Eigen::MatrixXd& P, const std::vector<int>& S,
                                         const std::vector<int>& starts, double threshold,
                                         long t_cap) {
  Eigen::VectorXd q = Eigen::VectorXd::Zero(P.rows());
  for (int v : S) q[v] = 1.0;
  auto min_over_starts = [&]() {
    double m = 1.0;
    for (int u : starts) m = std::min(m, q[u]);
    return m;
  };
  for (long t = 1; t <= t_cap; ++t) {
    q = P * q;
    for (int v : S) q[v] = 1.0;
    if (min_over_starts() >= threshold) return t;
  }
  return std::nullopt;
}

}  // namespace

LargeHitResult large_hit_time_pairs(const Eigen::MatrixXd& P, const std::vector<StartSetPair>& pairs,
                                    int ktilde, int k, long t_cap) {
  if (ktilde < 1 || ktilde >= k)
    throw std::invalid_argument("large_hit_time: need 1 <= ktilde < k");
  if (pairs.empty()) throw std::invalid_argument("large_hit_time: empty pair list");
  const double threshold = static_cast<double>(ktilde) / k;
  long worst = 1;
  for (const auto& pr : pairs) {
    auto t = first_threshold_time(P, pr.set, {pr.start}, threshold, t_cap);
    if (!t) return {std::nullopt, Provenance::exact};
    worst = std::max(worst, *t);
  }
  return {worst, Provenance::exact};
}

LargeHitResult large_hit_time_exhaustive(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi,
                                         int ktilde, int k, long t_cap) {
  const int n = static_cast<int>(P.rows());
  if (n > kExhaustiveHitGuard)
    throw guard_error("large_hit_time: exhaustive mode guarded at n <= " +
                      std::to_string(kExhaustiveHitGuard));
  if (ktilde < 1 || ktilde >= k)
    throw std::invalid_argument("large_hit_time: need 1 <= ktilde < k");
  const double threshold = static_cast<double>(ktilde) / k;
  std::vector<int> all(n);
  for (int v = 0; v < n; ++v) all[v] = v;
  long worst = 1;
  std::vector<int> members;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    double pmass = 0.0;
    members.clear();
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) {
        pmass += pi[v];
        members.push_back(v);
      }
    if (pmass < 0.25 - 1e-12) continue;
    auto t = first_threshold_time(P, members, all, threshold, t_cap);
    if (!t) return {std::nullopt, Provenance::exact};
    worst = std::max(worst, *t);
  }
  return {worst, Provenance::exact};
}

LargeHitResult large_hit_time_catalog(const Eigen::MatrixXd& P, const std::vector<HardSet>& catalog,
                                      int ktilde, int k, long t_cap) {
  if (catalog.empty()) throw std::invalid_argument("large_hit_time: empty catalog");
  std::vector<StartSetPair> pairs;
  for (const auto& hs : catalog) pairs.push_back({hs.anchor, hs.members});
  auto r = large_hit_time_pairs(P, pairs, ktilde, k, t_cap);
  r.provenance = Provenance::catalog_bound;
  return r;
}

SpectralSummary relaxation_time(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi) {
  const int n = static_cast<int>(P.rows());
  SpectralSummary out;
  if (n == 1) return out;
  const Eigen::VectorXd sq = pi.cwiseSqrt();
  const Eigen::MatrixXd A =
      sq.asDiagonal() * P * sq.cwiseInverse().asDiagonal();
  if (n <= 1024) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    out.lambda2 = es.eigenvalues()[n - 2];
    const Eigen::VectorXd v = es.eigenvectors().col(n - 2);
    out.residual = (A * v - out.lambda2 * v).cwiseAbs().maxCoeff();
  } else {
    // top eigenvector of A is sqrt(pi); deflate it, then shift so that the
    // second-largest eigenvalue dominates in modulus even for non-lazy chains
    const Eigen::VectorXd v1 = sq / sq.norm();
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = std::sin(1.0 + i);  // not aligned with v1
    v -= v1 * v1.dot(v);
    v.normalize();
    // iteration budget keeps the matvec cost bounded
    const long maxit =
        std::max<long>(500, 2'000'000'000 / (2L * static_cast<long>(n) * n));
    double mu = 0.0;
    for (long it = 0; it < maxit; ++it) {
      Eigen::VectorXd w = 0.5 * (A * v + v);  // (A + I)/2
      w -= v1 * v1.dot(w);
      w -= v1 * v1.dot(w);
      const double norm = w.norm();
      if (norm < 1e-300) break;
      w /= norm;
      mu = w.dot(0.5 * (A * w + w));
      const double res = (0.5 * (A * w + w) - mu * w).cwiseAbs().maxCoeff();
      v = w;
      if (res < 1e-12) break;
    }
    out.lambda2 = 2.0 * mu - 1.0;
    out.residual = (A * v - out.lambda2 * v).cwiseAbs().maxCoeff();
  }
  if (out.residual > 1e-8 || out.lambda2 >= 1.0 - 1e-14)
    throw std::runtime_error("relaxation_time: eigen-iteration residual " +
                             std::to_string(out.residual) + " exceeds 1e-8");
  out.t_rel = 1.0 / (1.0 - out.lambda2);
  return out;
}

double return_sum(const Eigen::MatrixXd& P, int v, long t) {
  return return_sum_prefix(P, v, t).back();
}

std::vector<double> return_sum_prefix(const Eigen::MatrixXd& P, int v, long t) {
  if (t < 0) throw std::invalid_argument("return_sum: t must be >= 0");
  std::vector<double> prefix;
  prefix.reserve(t + 1);
  Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(P.cols());
  r[v] = 1.0;
  double acc = 1.0;
  prefix.push_back(acc);
  for (long i = 1; i <= t; ++i) {
    r = r * P;
    acc += r[v];
    prefix.push_back(acc);
  }
  return prefix;
}

HittingExpectation hitting_expectation(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi, int v) {
  const int n = static_cast<int>(P.rows());
  HittingExpectation out;
  out.from = Eigen::VectorXd::Zero(n);
  if (n == 1) {
    out.from_stationary = 0.0;
    return out;
  }
  std::vector<int> rest;
  rest.reserve(n - 1);
  for (int u = 0; u < n; ++u)
    if (u != v) rest.push_back(u);
  const int m = n - 1;
  Eigen::MatrixXd A(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) A(i, j) = (i == j ? 1.0 : 0.0) - P(rest[i], rest[j]);
  const Eigen::VectorXd b = Eigen::VectorXd::Ones(m);
  const Eigen::VectorXd h = A.partialPivLu().solve(b);
  const double res = (A * h - b).cwiseAbs().maxCoeff();
  if (!(res < 1e-6))
    throw std::runtime_error("hitting_expectation: singular absorbing system (residual " +
                             std::to_string(res) + ")");
  for (int i = 0; i < m; ++i) out.from[rest[i]] = h[i];
  out.from_stationary = pi.dot(out.from);
  return out;
}

Eigen::VectorXd stationary_hitting_all(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi) {
  const int n = static_cast<int>(P.rows());
  // Kemeny-Snell fundamental matrix: E_pi[tau_v] = Z(v,v)/pi(v) - 1
  const Eigen::MatrixXd Pi = Eigen::VectorXd::Ones(n) * pi.transpose();
  const Eigen::MatrixXd Z =
      (Eigen::MatrixXd::Identity(n, n) - P + Pi).partialPivLu().inverse();
  Eigen::VectorXd out(n);
  for (int v = 0; v < n; ++v) out[v] = Z(v, v) / pi[v] - 1.0;
  return out;
}

double conductance_of_set(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi,
                          const std::vector<int>& S) {
  const int n = static_cast<int>(P.rows());
  std::vector<char> in(n, 0);
  double pmass = 0.0;
  for (int v : S) {
    if (v < 0 || v >= n) throw std::invalid_argument("conductance_of_set: vertex out of range");
    if (!in[v]) pmass += pi[v];
    in[v] = 1;
  }
  if (!(pmass > 0.0) || pmass > 0.5 + 1e-12)
    throw std::invalid_argument("conductance_of_set: need 0 < pi(S) <= 1/2");
  double cut = 0.0;
  for (int a = 0; a < n; ++a) {
    if (!in[a]) continue;
    for (int b = 0; b < n; ++b)
      if (!in[b]) cut += pi[a] * P(a, b);
  }
  return cut / pmass;
}

double conductance_exhaustive(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi) {
  const int n = static_cast<int>(P.rows());
  if (n > kExhaustiveCutGuard)
    throw guard_error("conductance: exhaustive mode guarded at n <= " +
                      std::to_string(kExhaustiveCutGuard));
  if (n < 2) throw std::invalid_argument("conductance: need n >= 2");
  // q(u,v) = pi(u) P(u,v) is symmetric for reversible chains; the cut is the
  // sum over cross pairs. Gray-code iteration flips one vertex per step.
  Eigen::MatrixXd Q = pi.asDiagonal() * P;
  std::vector<char> in(n, 0);
  double cut = 0.0, pmass = 0.0;
  double best = std::numeric_limits<double>::infinity();
  const std::uint32_t total = 1u << n;
  std::uint32_t code = 0;
  for (std::uint32_t i = 1; i < total; ++i) {
    const std::uint32_t next = i ^ (i >> 1);
    const int v = std::countr_zero(code ^ next);
    const bool entering = !in[v];
    // toggling v flips the cross status of every pair {v,w}
    double delta = 0.0;
    for (int w = 0; w < n; ++w) {
      if (w == v) continue;
      const double q = Q(v, w);
      if (q == 0.0) continue;
      delta += in[w] ? -q : q;
    }
    if (entering) {
      cut += delta;
      pmass += pi[v];
      in[v] = 1;
    } else {
      cut -= delta;
      pmass -= pi[v];
      in[v] = 0;
    }
    code = next;
    if (pmass > 1e-15 && pmass <= 0.5 + 1e-12) best = std::min(best, cut / pmass);
  }
  return best;
}

}  // namespace mrw
