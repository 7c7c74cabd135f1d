#include "mrw/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

namespace mrw {
namespace oracle {

namespace {

struct Move {
  int to;
  double p;
};

std::vector<std::vector<Move>> move_table(const Eigen::MatrixXd& P) {
  const int n = static_cast<int>(P.rows());
  std::vector<std::vector<Move>> moves(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (P(u, v) > 0.0) moves[u].push_back({v, P(u, v)});
  return moves;
}

void check_product_guard(int n, int k) {
  if (n >= 31) throw guard_error("oracle: product chain needs n < 31");
  double states = std::pow(static_cast<double>(n), k) * std::pow(2.0, n);
  if (states > static_cast<double>(kProductStateGuard))
    throw guard_error("oracle: product state space n^k * 2^n = " + std::to_string(states) +
                      " exceeds the guard");
  if (std::pow(static_cast<double>(n), k) > 4096.0)
    throw guard_error("oracle: per-mask linear system n^k > 4096");
}

// tuple index within mask-member space
struct MaskSpace {
  std::vector<int> members;       // sorted vertex ids in mask
  std::vector<int> vtx_to_idx;    // n entries, -1 when absent
  int size_pow_k = 0;
};

MaskSpace mask_space(std::uint32_t mask, int n, int k) {
  MaskSpace ms;
  ms.vtx_to_idx.assign(n, -1);
  for (int v = 0; v < n; ++v)
    if (mask & (1u << v)) {
      ms.vtx_to_idx[v] = static_cast<int>(ms.members.size());
      ms.members.push_back(v);
    }
  int p = 1;
  for (int i = 0; i < k; ++i) p *= static_cast<int>(ms.members.size());
  ms.size_pow_k = p;
  return ms;
}

void decode_tuple(int idx, const MaskSpace& ms, int k, std::vector<int>& out) {
  const int base = static_cast<int>(ms.members.size());
  out.resize(k);
  for (int i = 0; i < k; ++i) {
    out[i] = ms.members[idx % base];
    idx /= base;
  }
}

int encode_tuple(const std::vector<int>& tuple, const MaskSpace& ms) {
  const int base = static_cast<int>(ms.members.size());
  int idx = 0;
  for (int i = static_cast<int>(tuple.size()) - 1; i >= 0; --i)
    idx = idx * base + ms.vtx_to_idx[tuple[i]];
  return idx;
}

std::uint32_t tuple_mask(const std::vector<int>& tuple) {
  std::uint32_t m = 0;
  for (int v : tuple) m |= 1u << v;
  return m;
}

// enumerate joint moves of the k walks recursively
template <typename Fn>
void for_each_joint_move(const std::vector<std::vector<Move>>& moves, const std::vector<int>& from,
                         int walk, double prob, std::vector<int>& scratch, const Fn& fn) {
  if (walk == static_cast<int>(from.size())) {
    fn(scratch, prob);
    return;
  }
  for (const Move& mv : moves[from[walk]]) {
    scratch[walk] = mv.to;
    for_each_joint_move(moves, from, walk + 1, prob * mv.p, scratch, fn);
  }
}

// start tuples with their weights
template <typename Fn>
void for_each_start_tuple(const WeightedGraph& g, const StartSpec& start, int k, const Fn& fn) {
  struct Visitor {
    const WeightedGraph* g;
    int k;
    const Fn* fn;
    void operator()(const AllAtVertex& a) const {
      std::vector<int> tpl(k, a.v);
      (*fn)(tpl, 1.0);
    }
    void operator()(const ExplicitTuple& t) const {
      if (static_cast<int>(t.vertices.size()) != k)
        throw std::invalid_argument("oracle: explicit tuple length must equal k");
      (*fn)(t.vertices, 1.0);
    }
    void operator()(const StationaryProduct&) const {
      const Eigen::VectorXd pi = stationary_distribution(*g);
      std::vector<int> tpl(k, 0);
      iterate(tpl, 0, 1.0, pi);
    }
    void operator()(const DistributionOnSet& d) const {
      std::vector<char> in(g->n, 0);
      for (int v : d.set) in[v] = 1;
      std::vector<int> support;
      if (d.kind == DistributionOnSet::Kind::point_mass) {
        support = {d.point};
      } else {
        for (int v : d.set)
          for (const auto& e : g->adjacency[v])
            if (!in[e.to]) {
              support.push_back(v);
              break;
            }
        if (support.empty()) support = d.set;
      }
      Eigen::VectorXd mu = Eigen::VectorXd::Zero(g->n);
      for (int v : support) mu[v] = 1.0 / static_cast<double>(support.size());
      std::vector<int> tpl(k, 0);
      iterate(tpl, 0, 1.0, mu);
    }
    void iterate(std::vector<int>& tpl, int i, double w, const Eigen::VectorXd& mu) const {
      if (i == k) {
        (*fn)(tpl, w);
        return;
      }
      for (int v = 0; v < g->n; ++v) {
        if (mu[v] == 0.0) continue;
        tpl[i] = v;
        iterate(tpl, i + 1, w * mu[v], mu);
      }
    }
  };
  std::visit(Visitor{&g, k, &fn}, start.v);
}

}  // namespace

double exact_multiwalk_cover_expectation(const WeightedGraph& g, int k, const StartSpec& start,
                                         Laziness laziness) {
  check_product_guard(g.n, k);
  const Eigen::MatrixXd P = transition_matrix(g, laziness);
  const auto moves = move_table(P);
  const int n = g.n;
  const std::uint32_t full = (n == 31) ? 0x7fffffffu : ((1u << n) - 1);

  // masks in decreasing popcount order: transitions only enlarge the mask
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m <= full; ++m) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa > pb : a < b;
  });

  std::map<std::uint32_t, std::vector<double>> expect;  // mask -> E per tuple index
  std::vector<int> tuple, moved;
  for (std::uint32_t mask : masks) {
    const MaskSpace ms = mask_space(mask, n, k);
    auto& table = expect[mask];
    if (mask == full) {
      table.assign(ms.size_pow_k, 0.0);
      continue;
    }
    const int dim = ms.size_pow_k;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd rhs = Eigen::VectorXd::Ones(dim);
    moved.resize(k);
    for (int idx = 0; idx < dim; ++idx) {
      decode_tuple(idx, ms, k, tuple);
      for_each_joint_move(moves, tuple, 0, 1.0, moved, [&](const std::vector<int>& to, double p) {
        const std::uint32_t nmask = mask | tuple_mask(to);
        if (nmask == mask) {
          A(idx, encode_tuple(to, ms)) += p;
        } else {
          const MaskSpace nms = mask_space(nmask, n, k);
          rhs[idx] += p * expect.at(nmask)[encode_tuple(to, nms)];
        }
      });
    }
    const Eigen::MatrixXd M = Eigen::MatrixXd::Identity(dim, dim) - A;
    table.resize(dim);
    Eigen::Map<Eigen::VectorXd>(table.data(), dim) = M.partialPivLu().solve(rhs);
  }

  double total = 0.0;
  for_each_start_tuple(g, start, k, [&](const std::vector<int>& tpl, double w) {
    const std::uint32_t mask = tuple_mask(tpl);
    const MaskSpace ms = mask_space(mask, n, k);
    total += w * expect.at(mask)[encode_tuple(tpl, ms)];
  });
  return total;
}

double exact_cover_tail(const WeightedGraph& g, int k, const StartSpec& start, Laziness laziness,
                        long t) {
  check_product_guard(g.n, k);
  if (t < 0) throw std::invalid_argument("exact_cover_tail: t must be >= 0");
  const Eigen::MatrixXd P = transition_matrix(g, laziness);
  const auto moves = move_table(P);
  const int n = g.n;
  const std::uint32_t full = (1u << n) - 1;

  // sparse distribution over (mask, tuple); all-covered states collapse
  using State = std::pair<std::uint32_t, std::uint64_t>;  // (mask, packed tuple)
  auto pack = [&](const std::vector<int>& tpl) {
    std::uint64_t x = 0;
    for (int i = static_cast<int>(tpl.size()) - 1; i >= 0; --i)
      x = x * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(tpl[i]);
    return x;
  };
  auto unpack = [&](std::uint64_t x, std::vector<int>& tpl) {
    tpl.resize(k);
    for (int i = 0; i < k; ++i) {
      tpl[i] = static_cast<int>(x % n);
      x /= n;
    }
  };

  std::map<State, double> dist;
  double absorbed = 0.0;
  for_each_start_tuple(g, start, k, [&](const std::vector<int>& tpl, double w) {
    const std::uint32_t mask = tuple_mask(tpl);
    if (mask == full)
      absorbed += w;
    else
      dist[{mask, pack(tpl)}] += w;
  });

  std::vector<int> tuple, moved(k);
  for (long step = 0; step < t && !dist.empty(); ++step) {
    std::map<State, double> next;
    for (const auto& [state, p0] : dist) {
      unpack(state.second, tuple);
      for_each_joint_move(moves, tuple, 0, p0, moved, [&](const std::vector<int>& to, double p) {
        const std::uint32_t nmask = state.first | tuple_mask(to);
        if (nmask == full)
          absorbed += p;
        else
          next[{nmask, pack(to)}] += p;
      });
    }
    dist.swap(next);
  }
  double tail = 0.0;
  for (const auto& [state, p] : dist) tail += p;
  return tail;
}

std::vector<double> stationary_avoidance_curve(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi,
                                               std::uint32_t avoid_mask, long t) {
  const int n = static_cast<int>(P.rows());
  Eigen::VectorXd s(n);
  for (int v = 0; v < n; ++v) s[v] = (avoid_mask & (1u << v)) ? 0.0 : pi[v];
  std::vector<double> curve;
  curve.reserve(t + 1);
  curve.push_back(s.sum());
  for (long i = 1; i <= t; ++i) {
    s = P.transpose() * s;
    for (int v = 0; v < n; ++v)
      if (avoid_mask & (1u << v)) s[v] = 0.0;
    curve.push_back(s.sum());
  }
  return curve;
}

double stationary_cover_tail_ie(const WeightedGraph& g, int k, Laziness laziness, long t) {
  if (g.n > 20) throw guard_error("stationary_cover_tail_ie: guarded at n <= 20");
  const Eigen::MatrixXd P = transition_matrix(g, laziness);
  const Eigen::VectorXd pi = stationary_distribution(g);
  const std::uint32_t full = (1u << g.n) - 1;
  double tail = 0.0;
  for (std::uint32_t U = 1; U <= full; ++U) {
    const double a = stationary_avoidance_curve(P, pi, U, t).back();
    const double term = std::pow(a, k);
    tail += (std::popcount(U) % 2 == 1) ? term : -term;
  }
  return tail;
}

std::optional<long> exhaustive_large_hit(const WeightedGraph& g, Laziness laziness, int ktilde,
                                         int k, long t_cap) {
  if (g.n > kExhaustiveHitGuard)
    throw guard_error("exhaustive_large_hit: guarded at n <= " +
                      std::to_string(kExhaustiveHitGuard));
  if (ktilde < 1 || ktilde >= k)
    throw std::invalid_argument("exhaustive_large_hit: need 1 <= ktilde < k");
  const Eigen::MatrixXd P = transition_matrix(g, laziness);
  const Eigen::VectorXd pi = stationary_distribution(g);
  const double threshold = static_cast<double>(ktilde) / k;
  const int n = g.n;
  long worst = 1;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    double pmass = 0.0;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) pmass += pi[v];
    if (pmass < 0.25 - 1e-12) continue;
    // survival outside S: r_t(u) = P_u(walk stays off S through step t)
    std::vector<int> outside;
    for (int v = 0; v < n; ++v)
      if (!(mask & (1u << v))) outside.push_back(v);
    if (outside.empty()) continue;  // S = V is hit at t = 0 from everywhere
    const int m = static_cast<int>(outside.size());
    Eigen::MatrixXd R(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) R(i, j) = P(outside[i], outside[j]);
    Eigen::VectorXd r = Eigen::VectorXd::Ones(m);
    bool crossed = false;
    for (long t = 1; t <= t_cap; ++t) {
      r = R * r;
      if (1.0 - r.maxCoeff() >= threshold) {
        worst = std::max(worst, t);
        crossed = true;
        break;
      }
    }
    if (!crossed) return std::nullopt;
  }
  return worst;
}

double exhaustive_conductance(const WeightedGraph& g, Laziness laziness) {
  if (g.n > kExhaustiveCutGuard)
    throw guard_error("exhaustive_conductance: guarded at n <= " +
                      std::to_string(kExhaustiveCutGuard));
  const Eigen::MatrixXd P = transition_matrix(g, laziness);
  const Eigen::VectorXd pi = stationary_distribution(g);
  const int n = g.n;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    double pmass = 0.0;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) pmass += pi[v];
    if (!(pmass > 0.0) || pmass > 0.5 + 1e-12) continue;
    double cut = 0.0;
    for (int u = 0; u < n; ++u) {
      const bool uin = (mask >> u) & 1;
      for (const auto& e : g.adjacency[u]) {
        const bool vin = (mask >> e.to) & 1;
        if (uin && !vin) cut += pi[u] * P(u, e.to);
      }
    }
    best = std::min(best, cut / pmass);
  }
  return best;
}

}  // namespace oracle
}  // namespace mrw
