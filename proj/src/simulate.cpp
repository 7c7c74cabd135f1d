#include "mrw/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "mrw/reset.hpp"

namespace mrw {

std::string StartSpec::describe() const {
  struct Visitor {
    std::string operator()(const AllAtVertex& a) const {
      return "all_at(" + std::to_string(a.v) + ")";
    }
    std::string operator()(const StationaryProduct&) const { return "stationary"; }
    std::string operator()(const ExplicitTuple& t) const {
      std::string s = "tuple(";
      for (std::size_t i = 0; i < t.vertices.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(t.vertices[i]);
      }
      return s + ")";
    }
    std::string operator()(const DistributionOnSet& d) const {
      if (d.kind == DistributionOnSet::Kind::point_mass)
        return "point_on_set(" + std::to_string(d.point) + ")";
      return "boundary_uniform(|S|=" + std::to_string(d.set.size()) + ")";
    }
  };
  return std::visit(Visitor{}, v);
}

WalkSampler::WalkSampler(const WeightedGraph& g) : n_(g.n) {
  offset_.assign(n_ + 1, 0);
  wdeg_ = g.weighted_degree;
  for (int u = 0; u < n_; ++u) offset_[u + 1] = offset_[u] + static_cast<int>(g.adjacency[u].size());
  nbr_.resize(offset_[n_]);
  cumw_.resize(offset_[n_]);
  uniform_.assign(n_, 1);
  for (int u = 0; u < n_; ++u) {
    double run = 0.0;
    const auto& nbrs = g.adjacency[u];
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      nbr_[offset_[u] + i] = nbrs[i].to;
      run += nbrs[i].weight;
      cumw_[offset_[u] + i] = run;
      if (nbrs[i].weight != nbrs[0].weight) uniform_[u] = 0;
    }
  }
  pi_cum_.resize(n_);
  double run = 0.0;
  for (int v = 0; v < n_; ++v) {
    run += g.weighted_degree[v];
    pi_cum_[v] = run;
  }
}

int WalkSampler::neighbor(int u, Rng& rng) const {
  const auto deg = static_cast<std::uint32_t>(offset_[u + 1] - offset_[u]);
  if (deg == 0) return u;  // single-vertex graph
  if (uniform_[u]) return nbr_[offset_[u] + rng.below(deg)];
  const double r = rng.next_double() * wdeg_[u];
  const auto first = cumw_.begin() + offset_[u];
  const auto last = cumw_.begin() + offset_[u + 1];
  const auto it = std::upper_bound(first, last, r);
  return nbr_[offset_[u] + std::min<std::int64_t>(it - first, deg - 1)];
}

int WalkSampler::sample_stationary(Rng& rng) const {
  const double r = rng.next_double() * pi_cum_.back();
  const auto it = std::upper_bound(pi_cum_.begin(), pi_cum_.end(), r);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - pi_cum_.begin(), n_ - 1));
}

StartSampler::StartSampler(const WeightedGraph& g, const StartSpec& spec, int k)
    : k_(k), spec_(spec) {
  if (const auto* t = std::get_if<ExplicitTuple>(&spec.v)) {
    if (static_cast<int>(t->vertices.size()) != k)
      throw std::invalid_argument("StartSpec: explicit tuple length must equal k");
  }
  if (const auto* d = std::get_if<DistributionOnSet>(&spec.v)) {
    if (d->kind == DistributionOnSet::Kind::point_mass) {
      support_ = {d->point};
    } else {
      std::vector<char> in(g.n, 0);
      for (int v : d->set) in[v] = 1;
      for (int v : d->set)
        for (const auto& e : g.adjacency[v])
          if (!in[e.to]) {
            support_.push_back(v);
            break;
          }
      if (support_.empty()) {
        support_ = d->set;  // S = V: no boundary, fall back to uniform on S
        fallback_uniform_on_set_ = true;
      }
    }
  }
}

void StartSampler::sample(const WalkSampler& ws, Rng& rng, std::vector<int>& out) const {
  out.resize(k_);
  struct Visitor {
    const StartSampler* self;
    const WalkSampler* ws;
    Rng* rng;
    std::vector<int>* out;
    void operator()(const AllAtVertex& a) const { std::fill(out->begin(), out->end(), a.v); }
    void operator()(const StationaryProduct&) const {
      for (auto& p : *out) p = ws->sample_stationary(*rng);
    }
    void operator()(const ExplicitTuple& t) const { *out = t.vertices; }
    void operator()(const DistributionOnSet&) const {
      const auto& sup = self->support_;
      for (auto& p : *out)
        p = sup[sup.size() == 1 ? 0 : rng->below(static_cast<std::uint32_t>(sup.size()))];
    }
  };
  std::visit(Visitor{this, &ws, &rng, &out}, spec_.v);
}

std::uint64_t default_horizon(int n, int k) {
  // 64 n^3 / k, never below 64 n
  const double h = 64.0 * std::pow(static_cast<double>(n), 3.0) / std::max(1, k);
  const double floor = 64.0 * n;
  const double v = std::max(h, floor);
  if (v > 9e18) return static_cast<std::uint64_t>(9e18);
  return static_cast<std::uint64_t>(v);
}

CoverSample sample_cover_time(const WalkSampler& ws, int, const StartSampler& start,
                              Laziness laziness, std::uint64_t horizon, Rng& rng) {
  thread_local std::vector<int> pos;
  thread_local std::vector<char> covered;
  start.sample(ws, rng, pos);
  covered.assign(ws.n(), 0);
  int remaining = ws.n();
  for (int p : pos) {
    if (!covered[p]) {
      covered[p] = 1;
      --remaining;
    }
  }
  for (std::uint64_t t = 1; remaining > 0; ++t) {
    if (t > horizon) return {horizon, true};
    for (auto& p : pos) {
      p = ws.step(p, laziness, rng);
      if (!covered[p]) {
        covered[p] = 1;
        --remaining;
      }
    }
    if (remaining == 0) return {t, false};
  }
  return {0, false};  // covered at start
}

CoverSample sample_set_hitting(const WalkSampler& ws, int, const StartSampler& start,
                               const std::vector<int>& S, Laziness laziness,
                               std::uint64_t horizon, Rng& rng) {
  if (S.empty()) throw std::invalid_argument("sample_set_hitting: S must be nonempty");
  thread_local std::vector<int> pos;
  thread_local std::vector<char> in_set;
  in_set.assign(ws.n(), 0);
  for (int v : S) in_set[v] = 1;
  start.sample(ws, rng, pos);
  for (int p : pos)
    if (in_set[p]) return {0, false};
  for (std::uint64_t t = 1;; ++t) {
    if (t > horizon) return {horizon, true};
    for (auto& p : pos) {
      p = ws.step(p, laziness, rng);
      if (in_set[p]) return {t, false};
    }
  }
}

CoverSample sample_set_cover(const WalkSampler& ws, int, const StartSampler& start,
                             const std::vector<int>& S, Laziness laziness, std::uint64_t horizon,
                             Rng& rng) {
  if (S.empty()) throw std::invalid_argument("sample_set_cover: S must be nonempty");
  thread_local std::vector<int> pos;
  thread_local std::vector<char> want;
  want.assign(ws.n(), 0);
  int remaining = 0;
  for (int v : S)
    if (!want[v]) {
      want[v] = 1;
      ++remaining;
    }
  start.sample(ws, rng, pos);
  for (int p : pos)
    if (want[p]) {
      want[p] = 0;
      --remaining;
    }
  for (std::uint64_t t = 1; remaining > 0; ++t) {
    if (t > horizon) return {horizon, true};
    for (auto& p : pos) {
      p = ws.step(p, laziness, rng);
      if (want[p]) {
        want[p] = 0;
        --remaining;
      }
    }
    if (remaining == 0) return {t, false};
  }
  return {0, false};
}

std::vector<double> run_trials(int trials, int threads,
                               const std::function<double(int)>& trial_fn) {
  std::vector<double> results(trials);
  threads = std::max(1, threads);
  if (threads == 1) {
    for (int i = 0; i < trials; ++i) results[i] = trial_fn(i);
    return results;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= trials) return;
        results[i] = trial_fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
  return results;
}

namespace {

constexpr std::uint64_t kStreamCover = 0x636f76;
constexpr std::uint64_t kStreamHit = 0x686974;
constexpr std::uint64_t kStreamSetCover = 0x736376;
constexpr std::uint64_t kStreamReset = 0x727374;

EstimateWithCI summarize(const std::vector<double>& samples, int truncated,
                         const EstimateOptions& opt) {
  const MeanSe ms = mean_and_se(samples);
  EstimateWithCI est;
  est.mean = ms.mean;
  est.std_error = ms.std_error;
  est.trials = static_cast<int>(samples.size());
  est.master_seed = opt.master_seed;
  est.truncated = truncated;
  est.unreliable = truncated > 0.01 * static_cast<double>(samples.size());
  return est;
}

template <typename SampleFn>
EstimateWithCI estimate_generic(std::uint64_t stream, const EstimateOptions& opt,
                                const SampleFn& one_sample) {
  if (opt.trials < 2) throw std::invalid_argument("estimate: need trials >= 2");
  std::atomic<int> truncated{0};
  auto samples = run_trials(opt.trials, opt.threads, [&](int trial) {
    Rng rng = Rng::for_trial(opt.master_seed, stream, static_cast<std::uint64_t>(trial));
    const CoverSample cs = one_sample(rng);
    if (cs.truncated) truncated.fetch_add(1);
    return static_cast<double>(cs.t);
  });
  return summarize(samples, truncated.load(), opt);
}

}  // namespace

EstimateWithCI estimate_cover_time(const WeightedGraph& g, int k, const StartSpec& start,
                                   Laziness laziness, const EstimateOptions& opt) {
  if (k < 1) throw std::invalid_argument("estimate_cover_time: need k >= 1");
  const WalkSampler ws(g);
  const StartSampler ss(g, start, k);
  const std::uint64_t horizon = opt.horizon ? opt.horizon : default_horizon(g.n, k);
  return estimate_generic(kStreamCover, opt, [&](Rng& rng) {
    return sample_cover_time(ws, k, ss, laziness, horizon, rng);
  });
}

EstimateWithCI estimate_set_hitting(const WeightedGraph& g, int k, const StartSpec& start,
                                    const std::vector<int>& S, Laziness laziness,
                                    const EstimateOptions& opt) {
  if (k < 1) throw std::invalid_argument("estimate_set_hitting: need k >= 1");
  const WalkSampler ws(g);
  const StartSampler ss(g, start, k);
  const std::uint64_t horizon = opt.horizon ? opt.horizon : default_horizon(g.n, k);
  return estimate_generic(kStreamHit, opt, [&](Rng& rng) {
    return sample_set_hitting(ws, k, ss, S, laziness, horizon, rng);
  });
}

SetCoverEstimate estimate_set_cover(const WeightedGraph& g, int ktilde, const std::vector<int>& S,
                                    const StartSpec& mu, Laziness laziness,
                                    const EstimateOptions& opt) {
  if (ktilde < 1) throw std::invalid_argument("estimate_set_cover: need ktilde >= 1");
  const WalkSampler ws(g);
  const StartSampler ss(g, mu, ktilde);
  const std::uint64_t horizon = opt.horizon ? opt.horizon : default_horizon(g.n, ktilde);
  SetCoverEstimate out;
  out.boundary_fallback = ss.fallback_uniform_on_set();
  out.estimate = estimate_generic(kStreamSetCover, opt, [&](Rng& rng) {
    return sample_set_cover(ws, ktilde, ss, S, laziness, horizon, rng);
  });
  return out;
}

ChiSquareResult reset_walk_equivalence(const WeightedGraph& g, double x, long T, int trials,
                                       std::uint64_t seed, int threads) {
  if (!(x > 0.0) || !(x < 1.0))
    throw std::invalid_argument("reset_walk_equivalence: x must lie in (0,1)");
  const ResetGraph rg = build_reset_graph(g, x);
  const WalkSampler base_ws(g);
  const WalkSampler reset_ws(rg.graph);
  const int z = rg.z;

  // per-thread histograms would lose determinism of nothing (counts commute);
  // still, collect per-trial outcomes and histogram serially
  auto occupancy_a = run_trials(trials, threads, [&](int trial) {
    Rng rng = Rng::for_trial(seed, kStreamReset, static_cast<std::uint64_t>(trial));
    int p = base_ws.sample_stationary(rng);
    for (long t = 0; t < T; ++t) {
      p = reset_ws.neighbor(p, rng);
      if (p == z) p = reset_ws.neighbor(p, rng);  // contract the z step
    }
    return static_cast<double>(p);
  });
  auto occupancy_b = run_trials(trials, threads, [&](int trial) {
    Rng rng = Rng::for_trial(seed, kStreamReset + 1, static_cast<std::uint64_t>(trial));
    int p = base_ws.sample_stationary(rng);
    for (long t = 0; t < T; ++t) {
      if (rng.bernoulli(x))
        p = base_ws.sample_stationary(rng);
      else
        p = base_ws.neighbor(p, rng);
    }
    return static_cast<double>(p);
  });
  std::vector<std::uint64_t> ha(g.n, 0), hb(g.n, 0);
  for (double v : occupancy_a) ++ha[static_cast<int>(v)];
  for (double v : occupancy_b) ++hb[static_cast<int>(v)];
  return chi_square_two_sample(ha, hb);
}

}  // namespace mrw
