#include "mrw/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace mrw {

namespace {

double ln_clamped(double x) { return std::max(std::log(x), 1.0); }

BoundReport base_report(const GraphQuantities& q, std::string id, int k, int ktilde = -1) {
  BoundReport r;
  r.id = std::move(id);
  r.family = q.family_label;
  r.n = q.n;
  r.k = k;
  r.ktilde = ktilde;
  return r;
}

BoundReport not_evaluable(BoundReport r, const std::string& why) {
  r.evaluable = false;
  r.pass = true;
  r.margin = 0.0;
  r.note = why;
  return r;
}

// measured <= bound, with 3-sigma Monte-Carlo slack on the measurement
void finish_upper(BoundReport& r, const Quantity& measured, double bound) {
  r.lhs = measured.value;
  r.rhs = bound;
  const double slack = 3.0 * measured.std_error;
  r.pass = measured.value <= bound + slack;
  r.margin = measured.value > 0.0 ? (bound + slack) / measured.value : 1.0;
  if (measured.provenance != Provenance::exact) r.note += "[lhs " +
      std::string(provenance_name(measured.provenance)) + "]";
}

// measured >= bound, with 3-sigma slack
void finish_lower(BoundReport& r, const Quantity& measured, double bound) {
  r.lhs = measured.value;
  r.rhs = bound;
  const double slack = 3.0 * measured.std_error;
  r.pass = measured.value + slack >= bound;
  r.margin = bound > 0.0 ? (measured.value + slack) / bound : 1.0;
  if (measured.provenance != Provenance::exact) r.note += "[lhs " +
      std::string(provenance_name(measured.provenance)) + "]";
}

}  // namespace

std::vector<BoundReport> eval_stationary_upper(const GraphQuantities& q, int k,
                                               const BoundConstants& c) {
  std::vector<BoundReport> out;
  const double lnn = std::log(static_cast<double>(q.n));

  {
    BoundReport r = base_report(q, "thm3.1", k);
    r.constant = c.thm31_C;
    if (!q.stat_cover_k) {
      out.push_back(not_evaluable(std::move(r), "missing stationary cover estimate"));
    } else {
      const double rhs = std::pow(q.m / (k * q.d_min), 2.0) * lnn * lnn;
      finish_upper(r, *q.stat_cover_k, c.thm31_C * rhs);
      out.push_back(std::move(r));
    }
  }
  {
    BoundReport r = base_report(q, "thm3.2", k);
    r.constant = c.thm32_C;
    if (!q.stat_cover_k || !q.max_hit_pi) {
      out.push_back(not_evaluable(std::move(r), "missing hitting/cover inputs"));
    } else {
      const double rhs = q.max_hit_pi->value * lnn / k;
      finish_upper(r, *q.stat_cover_k, c.thm32_C * rhs);
      out.push_back(std::move(r));
    }
  }
  {
    BoundReport r = base_report(q, "cor3.3", k);
    r.constant = c.cor33_C;
    if (!q.stat_cover_k || !q.t_rel) {
      out.push_back(not_evaluable(std::move(r), "missing relaxation time"));
    } else {
      const double rhs = (q.m / (k * q.d_min)) * std::sqrt(q.t_rel->value) * lnn;
      finish_upper(r, *q.stat_cover_k, c.cor33_C * rhs);
      out.push_back(std::move(r));
    }
  }
  {
    // constant-return graphs: Theta((n/k) log n), gates checked numerically
    BoundReport r = base_report(q, "lem3.4", k);
    r.constant = c.lem34_C;
    if (!q.stat_cover_k || !q.t_mix || !q.t_rel || !q.max_return_sum_trel) {
      out.push_back(not_evaluable(std::move(r), "missing return-sum/mixing inputs"));
    } else if (q.n * q.pi_min < c.lem34_gate_pimin) {
      out.push_back(not_evaluable(std::move(r), "gate: pi_min not Omega(1/n)"));
    } else if (q.t_mix->value > c.lem34_gate_mix * q.n) {
      out.push_back(not_evaluable(std::move(r), "gate: t_mix not O(n)"));
    } else if (*q.max_return_sum_trel >
               c.lem34_gate_return * (1.0 + q.t_rel->value * q.pi_max)) {
      out.push_back(not_evaluable(std::move(r), "gate: return sums not O(1 + t pi(v))"));
    } else {
      const double ref = (static_cast<double>(q.n) / k) * lnn;
      BoundReport upper = r;
      upper.id = "lem3.4.upper";
      finish_upper(upper, *q.stat_cover_k, c.lem34_C * ref);
      out.push_back(std::move(upper));
      BoundReport lower = std::move(r);
      lower.id = "lem3.4.lower";
      lower.constant = c.lem34_c;
      finish_lower(lower, *q.stat_cover_k, c.lem34_c * ref);
      out.push_back(std::move(lower));
    }
  }
  {
    // sub-harmonic return graphs
    BoundReport r = base_report(q, "lem3.5", k);
    r.constant = c.lem35_C;
    const double klimit = q.n * lnn / 3.0;
    if (!q.stat_cover_k || !q.t_mix || q.return_sum_samples.empty()) {
      out.push_back(not_evaluable(std::move(r), "missing return-sum samples"));
    } else if (k > klimit) {
      out.push_back(not_evaluable(std::move(r), "gate: k > n log n / 3"));
    } else if (q.t_mix->value > c.lem35_gate_mix * q.n) {
      out.push_back(not_evaluable(std::move(r), "gate: t_mix not O(n)"));
    } else {
      bool sub_harmonic = true;
      for (const auto& [t, rs] : q.return_sum_samples)
        if (rs > c.lem35_gate_return *
                     (static_cast<double>(t) / q.n + std::log(static_cast<double>(t)) + 1.0))
          sub_harmonic = false;
      if (!sub_harmonic) {
        out.push_back(not_evaluable(std::move(r), "gate: return sums not O(t/n + log t)"));
      } else {
        const double nl = q.n * lnn / k;
        finish_upper(r, *q.stat_cover_k, c.lem35_C * nl * ln_clamped(nl));
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

BoundReport eval_stationary_lower(const GraphQuantities& q, int k, double constant) {
  BoundReport r = base_report(q, "thm3.6", k);
  r.constant = constant;
  const double lnn = std::log(static_cast<double>(q.n));
  if (k > constant * q.n * lnn)
    return not_evaluable(std::move(r), "regime guard: k > c n log n");
  if (!q.stat_cover_k) return not_evaluable(std::move(r), "missing stationary cover estimate");
  finish_lower(r, *q.stat_cover_k, constant * (static_cast<double>(q.n) / k) * lnn);
  return r;
}

BoundReport eval_char_upper(const GraphQuantities& q, int k, const BoundConstants& c) {
  BoundReport r = base_report(q, "thm4.7", k);
  r.constant = c.thm47_C;
  if (!q.worst_cover_k) return not_evaluable(std::move(r), "missing worst-case cover estimate");
  double best = std::numeric_limits<double>::infinity();
  int best_kt = -1;
  bool any = false;
  for (const auto& [kt, pm] : q.partial_mix) {
    const auto it = q.stat_cover.find(kt);
    if (it == q.stat_cover.end()) continue;
    any = true;
    const double cover_hi = it->second.value + 3.0 * it->second.std_error;
    const double cand = std::max(pm.value, cover_hi);
    if (cand < best) {
      best = cand;
      best_kt = kt;
    }
  }
  if (!any) return not_evaluable(std::move(r), "empty ktilde grid");
  r.ktilde = best_kt;
  finish_upper(r, *q.worst_cover_k, c.thm47_C * best);
  r.note += " minimizing ktilde=" + std::to_string(best_kt);
  return r;
}

BoundReport eval_char_lower(const GraphQuantities& q, int k, CharLowerVariant variant,
                            const BoundConstants& c) {
  const char* id = variant == CharLowerVariant::hit       ? "thm4.8"
                   : variant == CharLowerVariant::regular ? "thm4.8.regular"
                                                          : "thm4.9";
  BoundReport r = base_report(q, id, k);
  if (!q.worst_cover_k) return not_evaluable(std::move(r), "missing worst-case cover estimate");
  const double lnn = std::log(static_cast<double>(q.n));
  double best = 0.0;
  int best_kt = -1;
  bool any = false;
  bool catalog = false;
  for (const auto& [kt, lh] : q.large_hit) {
    double second = 0.0;
    switch (variant) {
      case CharLowerVariant::hit:
        second = 1.0 / (kt * q.pi_max);
        break;
      case CharLowerVariant::regular:
        if (!q.regular) return not_evaluable(std::move(r), "gate: graph is not regular");
        if (kt < std::pow(static_cast<double>(q.n), c.thm48_reg_delta)) continue;
        second = q.n * lnn / kt;
        break;
      case CharLowerVariant::cycle: {
        const auto it = q.large_cov.find(kt);
        if (it == q.large_cov.end()) continue;
        second = it->second.value;
        break;
      }
    }
    any = true;
    if (lh.provenance == Provenance::catalog_bound) catalog = true;
    const double cand = std::min(lh.value, second);
    if (cand > best) {
      best = cand;
      best_kt = kt;
    }
  }
  if (!any) return not_evaluable(std::move(r), "empty ktilde grid");
  const double C = variant == CharLowerVariant::hit       ? c.thm48_C
                   : variant == CharLowerVariant::regular ? c.thm48_reg_C
                                                          : c.thm49_C;
  r.constant = C;
  r.ktilde = best_kt;
  r.advisory = catalog || variant == CharLowerVariant::regular;
  if (catalog) r.note += "[large-hit from catalog: reported time lower-bounds the true value]";
  finish_lower(r, *q.worst_cover_k, C * best);
  return r;
}

std::vector<BoundReport> eval_partial_mixing_bounds(const GraphQuantities& q, int ktilde, int k,
                                                    const BoundConstants& c) {
  std::vector<BoundReport> out;
  const auto pm = q.partial_mix.find(ktilde);
  const auto lh = q.large_hit.find(ktilde);

  {
    // t_mix^(kt,k) <= 2 t_mix ceil(log4(4k/(k-kt))), base 4 as in the proof
    BoundReport r = base_report(q, "lem4.2i", k, ktilde);
    if (pm == q.partial_mix.end() || !q.t_mix) {
      out.push_back(not_evaluable(std::move(r), "missing partial mixing inputs"));
    } else {
      const double ell =
          std::ceil(std::log(4.0 * k / (k - ktilde)) / std::log(4.0) - 1e-12);
      finish_upper(r, pm->second, 2.0 * q.t_mix->value * ell);
      out.push_back(std::move(r));
    }
  }
  {
    // t_large-hit^(kt,k) <= C t_mix ceil(log2(k/(k-kt)))
    BoundReport r = base_report(q, "lem4.2ii", k, ktilde);
    r.constant = c.lem42ii_C;
    r.advisory = true;  // the constant is not explicit in the paper
    if (lh == q.large_hit.end() || !q.t_mix) {
      out.push_back(not_evaluable(std::move(r), "missing large-hit inputs"));
    } else {
      const double ell = std::max(
          std::ceil(std::log2(static_cast<double>(k) / (k - ktilde)) - 1e-12), 1.0);
      finish_upper(r, lh->second, c.lem42ii_C * q.t_mix->value * ell);
      out.push_back(std::move(r));
    }
  }
  {
    // t_mix^(kt,k) >= t_mix(1 - kt/k)
    BoundReport r = base_report(q, "lem4.3", k, ktilde);
    const auto tv = q.tv_mix_threshold.find(ktilde);
    if (pm == q.partial_mix.end() || tv == q.tv_mix_threshold.end()) {
      out.push_back(not_evaluable(std::move(r), "missing threshold mixing time"));
    } else {
      finish_lower(r, pm->second, tv->second.value);
      out.push_back(std::move(r));
    }
  }
  {
    // t_mix^(kt,k) >= c (kt/k) t_mix and the same for t_large-hit
    BoundReport r = base_report(q, "lem4.4i", k, ktilde);
    r.constant = c.lem44_c;
    r.advisory = true;
    if (pm == q.partial_mix.end() || !q.t_mix) {
      out.push_back(not_evaluable(std::move(r), "missing partial mixing inputs"));
    } else {
      finish_lower(r, pm->second, c.lem44_c * ktilde * q.t_mix->value / k);
      out.push_back(std::move(r));
    }
    BoundReport r2 = base_report(q, "lem4.4ii", k, ktilde);
    r2.constant = c.lem44_c;
    r2.advisory = true;
    if (lh == q.large_hit.end() || !q.t_mix) {
      out.push_back(not_evaluable(std::move(r2), "missing large-hit inputs"));
    } else {
      finish_lower(r2, lh->second, c.lem44_c * ktilde * q.t_mix->value / k);
      out.push_back(std::move(r2));
    }
  }
  if (4 * ktilde < k) {
    // t_large-hit^(kt,k) <= 2 t_mix^(4kt,k)
    BoundReport r = base_report(q, "lem4.6", k, ktilde);
    const auto pm4 = q.partial_mix.find(4 * ktilde);
    if (lh == q.large_hit.end() || pm4 == q.partial_mix.end()) {
      out.push_back(not_evaluable(std::move(r), "missing t_mix^(4kt,k)"));
    } else {
      finish_upper(r, lh->second, 2.0 * pm4->second.value);
      out.push_back(std::move(r));
    }
  }
  if (q.family == Family::cycle) {
    // cycle shape: t_mix^(kt,k) <= C n^2 / log(k/kt)
    BoundReport r = base_report(q, "lem5.3", k, ktilde);
    r.constant = c.lem53_C;
    if (pm == q.partial_mix.end() || ktilde >= k) {
      out.push_back(not_evaluable(std::move(r), "missing partial mixing inputs"));
    } else {
      const double rhs = c.lem53_C * static_cast<double>(q.n) * q.n /
                         ln_clamped(static_cast<double>(k) / ktilde);
      finish_upper(r, pm->second, rhs);
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<BoundReport> eval_geometric_bounds(const GraphQuantities& q, int ktilde, int k,
                                               const GeometricInputs& in,
                                               const BoundConstants& c) {
  std::vector<BoundReport> out;
  const auto pm = q.partial_mix.find(ktilde);
  const auto lh = q.large_hit.find(ktilde);
  const double lnn = std::log(static_cast<double>(q.n));

  {
    // conductance bound: t_large-hit >= (kt/k) 2/Phi
    BoundReport r = base_report(q, "lem4.10", k, ktilde);
    if (lh == q.large_hit.end() || !q.conductance) {
      out.push_back(not_evaluable(std::move(r), "missing conductance or large-hit"));
    } else {
      if (lh->second.provenance == Provenance::catalog_bound) {
        r.advisory = true;
        r.note += "[catalog large-hit]";
      }
      finish_lower(r, lh->second,
                   (static_cast<double>(ktilde) / k) * 2.0 / q.conductance->value);
      out.push_back(std::move(r));
    }
  }
  if (in.displacement_freq) {
    // torus displacement: P(max dist >= D in t) <= 2d exp(-D^2/(2 t d^2))
    BoundReport r = base_report(q, "lem4.11", k, ktilde);
    const int dim = q.family == Family::cycle ? 1 : std::max(1, q.torus_dim);
    const double D = in.displacement_D;
    const double t = static_cast<double>(in.displacement_t);
    const double bound =
        2.0 * dim * std::exp(-D * D / (2.0 * t * dim * dim)) + 3.0 * in.displacement_freq_se;
    Quantity freq{*in.displacement_freq, Provenance::estimated, 0.0};
    r.note = "D=" + std::to_string(in.displacement_D) + " t=" + std::to_string(in.displacement_t);
    finish_upper(r, freq, bound);
    out.push_back(std::move(r));
  }
  if (in.oblivious_t && in.oblivious_set_cover) {
    // oblivious set-cover: expected cover of S from mu is >= t/5 whenever
    // returns satisfy sum_{s<=t} P_uu >= 32 t pi(u) k
    BoundReport r = base_report(q, "lem4.12", k, ktilde);
    if (k < 100) {
      out.push_back(not_evaluable(std::move(r), "gate: k < 100"));
    } else {
      finish_lower(r, *in.oblivious_set_cover, static_cast<double>(*in.oblivious_t) / 5.0);
      out.push_back(std::move(r));
    }
  }
  if (q.family == Family::binary_tree) {
    BoundReport r = base_report(q, "lem5.7", k, ktilde);
    r.constant = c.lem57_C;
    if (pm == q.partial_mix.end()) {
      out.push_back(not_evaluable(std::move(r), "missing partial mixing"));
    } else {
      const double rhs =
          c.lem57_C * ((static_cast<double>(ktilde) / k) * q.n + std::log2(q.n));
      finish_upper(r, pm->second, rhs);
      out.push_back(std::move(r));
    }
    if (!in.leaf_root_hit.empty()) {
      BoundReport r2 = base_report(q, "lem5.8", k, ktilde);
      r2.constant = c.lem58_C;
      double worst = 0.0;
      long worst_t = 0;
      for (const auto& [t, p] : in.leaf_root_hit) {
        const double scaled = p * q.n / static_cast<double>(t);
        if (scaled > worst) {
          worst = scaled;
          worst_t = t;
        }
      }
      Quantity lhs{worst, Provenance::exact, 0.0};
      r2.note = "max over t grid at t=" + std::to_string(worst_t);
      finish_upper(r2, lhs, c.lem58_C);
      out.push_back(std::move(r2));
    }
  }
  if (q.family == Family::torus && q.torus_dim > 0) {
    BoundReport r = base_report(q, "lem5.10", k, ktilde);
    r.constant = c.lem510_C;
    if (pm == q.partial_mix.end()) {
      out.push_back(not_evaluable(std::move(r), "missing partial mixing"));
    } else {
      const double rhs = c.lem510_C * std::pow(static_cast<double>(q.n), 2.0 / q.torus_dim) /
                         ln_clamped(static_cast<double>(k) / ktilde);
      finish_upper(r, pm->second, rhs);
      out.push_back(std::move(r));
    }
  }
  if (q.family == Family::hypercube && lh != q.large_hit.end()) {
    BoundReport r = base_report(q, "lem5.16", k, ktilde);
    r.constant = c.lem516_c;
    if (lh->second.provenance == Provenance::catalog_bound) r.note += "[catalog large-hit]";
    const double rhs = c.lem516_c * lnn * std::log(lnn);
    finish_lower(r, lh->second, rhs);
    out.push_back(std::move(r));
  }
  return out;
}

Table1Reference table1_reference(Family family, int n, int k, int torus_dim) {
  if (k < 1) throw std::invalid_argument("table1_reference: need k >= 1");
  Table1Reference ref;
  const double nn = n;
  const double lnn = std::log(nn);
  const double lnk = std::log(static_cast<double>(k));
  switch (family) {
    case Family::cycle:
      ref.single_cover = nn * nn;
      ref.single_hit = nn * nn;
      ref.single_mix = nn * nn;
      if (k == 1) {
        ref.worst_k = nn * nn;
        ref.stationary_k = nn * nn;
        ref.regime = "k=1";
      } else {
        ref.worst_k = nn * nn / lnk;
        ref.stationary_k = std::pow(nn / k, 2.0) * lnk * lnk;
        ref.regime = "k>=2";
      }
      break;
    case Family::binary_tree: {
      ref.single_cover = nn * lnn * lnn;
      ref.single_hit = nn * lnn;
      ref.single_mix = nn;
      const double threshold = lnn * lnn;
      if (k <= threshold) {
        ref.worst_k = (nn / k) * lnn * lnn;
        ref.regime = "k<=log^2 n";
      } else {
        ref.worst_k = (nn / std::sqrt(static_cast<double>(k))) * lnn;
        ref.regime = "k>=log^2 n";
      }
      const double a = nn * lnn / k;
      ref.stationary_k = a * ln_clamped(a);
      break;
    }
    case Family::torus: {
      if (torus_dim <= 0) throw std::invalid_argument("table1_reference: torus needs dim");
      if (torus_dim == 2) {
        ref.single_cover = nn * lnn * lnn;
        ref.single_hit = nn * lnn;
        ref.single_mix = nn;
        const double threshold = lnn * lnn;
        if (k <= threshold) {
          ref.worst_k = (nn / k) * lnn * lnn;
          ref.regime = "k<=log^2 n";
        } else {
          ref.worst_k = nn / ln_clamped(static_cast<double>(k) / threshold);
          ref.regime = "k>=log^2 n";
        }
        const double a = nn * lnn / k;
        ref.stationary_k = a * ln_clamped(a);
      } else {
        const double mix = std::pow(nn, 2.0 / torus_dim);
        ref.single_cover = nn * lnn;
        ref.single_hit = nn;
        ref.single_mix = mix;
        const double threshold = std::pow(nn, 1.0 - 2.0 / torus_dim) * lnn;
        if (k <= threshold) {
          ref.worst_k = (nn / k) * lnn;
          ref.regime = "k<=n^{1-2/d} log n";
        } else {
          ref.worst_k = mix / ln_clamped(static_cast<double>(k) / threshold);
          ref.regime = "k>=n^{1-2/d} log n";
        }
        ref.stationary_k = (nn / k) * lnn;
      }
      break;
    }
    case Family::hypercube: {
      const double lnlnn = std::log(lnn);
      ref.single_cover = nn * lnn;
      ref.single_hit = nn;
      ref.single_mix = lnn * lnlnn;
      const double threshold = nn / lnlnn;
      if (k <= threshold) {
        ref.worst_k = (nn / k) * lnn;
        ref.regime = "k<=n/loglog n";
      } else {
        ref.worst_k = lnn * lnlnn;
        ref.regime = "k>=n/loglog n";
      }
      ref.stationary_k = (nn / k) * lnn;
      break;
    }
    case Family::random_regular:
    case Family::preferential_attachment:
      ref.single_cover = nn * lnn;
      ref.single_hit = nn;
      ref.single_mix = lnn;
      ref.worst_k = (nn / k) * lnn;
      ref.stationary_k = (nn / k) * lnn;
      ref.regime = "all k";
      break;
    case Family::barbell:
      ref.single_cover = nn * nn;
      ref.single_hit = nn * nn;
      ref.single_mix = nn * nn;
      ref.worst_k = nn * nn / k;
      ref.stationary_k = std::pow(2.0, -static_cast<double>(std::min(k, 1000))) * nn * nn / k +
                         nn * lnn / k;
      ref.regime = "all k";
      break;
    case Family::clique:
      throw std::invalid_argument("table1_reference: clique is not a Table 1 family");
  }
  return ref;
}

double aldous_t_star(const Eigen::VectorXd& pi) {
  const auto f = [&](double t) {
    double s = 0.0;
    for (int i = 0; i < pi.size(); ++i) s += std::exp(-t * pi[i]);
    return s - 1.0;
  };
  double lo = 0.0, hi = 1.0;
  while (f(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e18) break;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

BoundReport eval_second_moment_tail(const SecondMomentInputs& in, const BoundConstants& c) {
  BoundReport r;
  r.id = "lem3.9";
  r.n = in.n;
  r.k = in.k;
  r.constant = c.thm39_C;
  r.advisory = true;
  if (in.p_v.empty() || in.p_v.size() != in.pi_v.size())
    return not_evaluable(std::move(r), "missing hypothesis inputs");
  const double p = *std::max_element(in.p_v.begin(), in.p_v.end());
  const double pmin_hit = *std::min_element(in.p_v.begin(), in.p_v.end());
  const double eps = p > 0.0 ? 1.0 - pmin_hit / p : 0.0;
  const double lnn = std::log(static_cast<double>(in.n));
  const double S = static_cast<double>(in.p_v.size());
  const double min_pi = *std::min_element(in.pi_v.begin(), in.pi_v.end());
  if (p > in.alpha * lnn / in.k)
    return not_evaluable(std::move(r), "hypothesis p <= alpha log n / k fails");
  if (min_pi * S < 0.25) return not_evaluable(std::move(r), "hypothesis min pi(v) = Omega(1/|S|) fails");
  if (p * p * in.k > 0.5) return not_evaluable(std::move(r), "hypothesis p^2 k = o(1) fails");
  const double rhs =
      c.thm39_C * lnn * lnn * std::pow(static_cast<double>(in.n), in.alpha * (1.0 + eps)) / in.k;
  Quantity lhs{in.exact_tail_lt, Provenance::exact, 0.0};
  r.note = "eps=" + std::to_string(eps);
  finish_upper(r, lhs, rhs);
  return r;
}

}  // namespace mrw
