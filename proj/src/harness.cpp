#include "mrw/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mrw/oracle.hpp"

namespace mrw {

namespace {

std::string fmt9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace

json family_spec_to_json(const FamilySpec& spec) {
  json j;
  j["family"] = family_name(spec.family);
  switch (spec.family) {
    case Family::torus:
      j["dim"] = spec.dim;
      j["side"] = spec.side;
      break;
    case Family::binary_tree:
      j["height"] = spec.height;
      break;
    case Family::hypercube:
      j["dim"] = spec.dim;
      break;
    case Family::random_regular:
      j["n"] = spec.n;
      j["degree"] = spec.degree;
      j["seed"] = spec.seed;
      break;
    case Family::preferential_attachment:
      j["n"] = spec.n;
      j["links"] = spec.links;
      j["seed"] = spec.seed;
      break;
    default:
      j["n"] = spec.n;
  }
  return j;
}

FamilySpec family_spec_from_json(const json& j) {
  const auto fam = family_from_name(j.at("family").get<std::string>());
  if (!fam) throw std::invalid_argument("unknown family: " + j.at("family").dump());
  switch (*fam) {
    case Family::cycle: return FamilySpec::cycle(j.at("n").get<int>());
    case Family::torus: return FamilySpec::torus(j.at("dim").get<int>(), j.at("side").get<int>());
    case Family::binary_tree: return FamilySpec::binary_tree(j.at("height").get<int>());
    case Family::hypercube: return FamilySpec::hypercube(j.at("dim").get<int>());
    case Family::clique: return FamilySpec::clique(j.at("n").get<int>());
    case Family::barbell: return FamilySpec::barbell(j.at("n").get<int>());
    case Family::random_regular:
      return FamilySpec::random_regular(j.at("n").get<int>(), j.at("degree").get<int>(),
                                        j.value("seed", 1ull));
    case Family::preferential_attachment:
      return FamilySpec::preferential_attachment(j.at("n").get<int>(), j.at("links").get<int>(),
                                                 j.value("seed", 1ull));
  }
  throw std::invalid_argument("unknown family");
}

json ExperimentConfig::to_json() const {
  json j;
  j["families"] = json::array();
  for (const auto& f : families) j["families"].push_back(family_spec_to_json(f));
  j["k_grid"] = k_grid;
  j["ktilde_grid"] = ktilde_grid;
  j["lazy"] = lazy;
  j["trials"] = trials;
  j["horizon_factor"] = horizon_factor;
  j["master_seed"] = master_seed;
  j["suites"] = suites;
  j["threads"] = threads;
  j["out_dir"] = out_dir;
  j["exact_profile_guard"] = exact_profile_guard;
  json w = json::object();
  for (const auto& [key, win] : slope_windows) w[key] = {win.first, win.second};
  j["slope_windows"] = w;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  for (const auto& f : j.at("families")) c.families.push_back(family_spec_from_json(f));
  c.k_grid = j.at("k_grid").get<std::vector<int>>();
  c.ktilde_grid = j.value("ktilde_grid", std::vector<int>{});
  c.lazy = j.value("lazy", true);
  c.trials = j.value("trials", 400);
  c.horizon_factor = j.value("horizon_factor", 64.0);
  c.master_seed = j.at("master_seed").get<std::uint64_t>();
  c.suites = j.value("suites", c.suites);
  c.threads = j.value("threads", 1);
  c.out_dir = j.value("out_dir", std::string("out"));
  c.exact_profile_guard = j.value("exact_profile_guard", 512);
  if (j.contains("slope_windows"))
    for (const auto& [key, win] : j.at("slope_windows").items())
      c.slope_windows[key] = {win.at(0).get<double>(), win.at(1).get<double>()};
  if (c.k_grid.empty()) throw std::invalid_argument("config: k_grid must be nonempty");
  return c;
}

bool ReportBundle::any_required_failure() const {
  for (const auto& b : bounds)
    if (b.evaluable && !b.advisory && !b.pass) return true;
  for (const auto& s : slopes)
    if (s.windowed && !s.pass) return true;
  return false;
}

void ReportBundle::sort_rows() {
  std::sort(estimates.begin(), estimates.end(), [](const EstimateRecord& a, const EstimateRecord& b) {
    return std::tie(a.family, a.n, a.quantity, a.k, a.start) <
           std::tie(b.family, b.n, b.quantity, b.k, b.start);
  });
  std::sort(bounds.begin(), bounds.end(), [](const BoundReport& a, const BoundReport& b) {
    return std::tie(a.family, a.n, a.id, a.k, a.ktilde) <
           std::tie(b.family, b.n, b.id, b.k, b.ktilde);
  });
  std::sort(slopes.begin(), slopes.end(), [](const SlopeRecord& a, const SlopeRecord& b) {
    return std::tie(a.family, a.quantity) < std::tie(b.family, b.quantity);
  });
}

ExactAnalysis analyze_graph(const WeightedGraph& g, const FamilySpec* spec,
                            const AnalysisOptions& opt) {
  ExactAnalysis out;
  GraphQuantities& q = out.q;
  q.family_label = spec ? spec->name() : "adhoc";
  if (spec) {
    q.family = spec->family;
    if (spec->family == Family::torus) q.torus_dim = spec->dim;
  }
  q.n = g.n;
  q.m = g.total_edge_weight;
  q.d_min = g.min_weighted_degree();
  q.k = opt.k;
  const Eigen::VectorXd pi = stationary_distribution(g);
  q.pi_max = pi.maxCoeff();
  q.pi_min = pi.minCoeff();
  q.regular = true;
  for (double d : g.weighted_degree)
    if (d != g.weighted_degree[0]) q.regular = false;

  Eigen::MatrixXd P;
  try {
    P = transition_matrix(g, opt.laziness);
  } catch (const guard_error& e) {
    out.skipped.push_back(std::string("exact analysis: ") + e.what());
    return out;
  }

  try {
    const SpectralSummary sp = relaxation_time(P, pi);
    q.t_rel = Quantity{sp.t_rel, Provenance::exact, 0.0};
  } catch (const std::exception& e) {
    out.skipped.push_back(std::string("t_rel: ") + e.what());
  }

  if (g.n <= 1024) {
    const Eigen::VectorXd hits = stationary_hitting_all(P, pi);
    q.max_hit_pi = Quantity{hits.maxCoeff(), Provenance::exact, 0.0};
  } else {
    out.skipped.push_back("max_hit_pi: n exceeds dense hitting guard (1024)");
  }

  // return sums at a few vertices and times, within a flop budget
  if (q.t_rel) {
    const long trel = std::max<long>(1, static_cast<long>(std::ceil(q.t_rel->value)));
    const long t_far = std::min<long>(4L * g.n, 64L * trel);
    const long t_need = std::max(trel, t_far);
    const long budget = 2'000'000'000 / (static_cast<long>(g.n) * g.n);
    if (t_need > budget) {
      out.skipped.push_back("return sums: t = " + std::to_string(t_need) +
                            " exceeds the flop budget");
    } else {
      std::vector<int> sample_vs{0};
      int lo = 0, hi = 0;
      for (int v = 1; v < g.n; ++v) {
        if (g.weighted_degree[v] < g.weighted_degree[lo]) lo = v;
        if (g.weighted_degree[v] > g.weighted_degree[hi]) hi = v;
      }
      sample_vs.push_back(lo);
      sample_vs.push_back(hi);
      std::sort(sample_vs.begin(), sample_vs.end());
      sample_vs.erase(std::unique(sample_vs.begin(), sample_vs.end()), sample_vs.end());
      double max_trel = 0.0;
      std::vector<std::pair<long, double>> samples;
      for (int v : sample_vs) {
        const auto prefix = return_sum_prefix(P, v, t_need);
        max_trel = std::max(max_trel, prefix[trel]);
        for (long t : {trel, std::min<long>(g.n, t_far), t_far}) {
          if (t >= 1 && t < static_cast<long>(prefix.size())) {
            bool found = false;
            for (auto& s : samples)
              if (s.first == t) {
                s.second = std::max(s.second, prefix[t]);
                found = true;
              }
            if (!found) samples.emplace_back(t, prefix[t]);
          }
        }
      }
      q.max_return_sum_trel = max_trel;
      q.return_sum_samples = samples;
    }
  }

  // conductance: exhaustive within the guard, otherwise catalog set bound
  try {
    q.conductance = Quantity{conductance_exhaustive(P, pi), Provenance::exact, 0.0};
  } catch (const guard_error&) {
    if (spec) {
      const auto sets = canonical_hard_sets(g, *spec);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& hs : sets) {
        std::vector<int> S = hs.members;
        double mass = hs.pi_mass;
        if (mass > 0.5) {
          // use the complement when the catalog set is too heavy
          std::vector<char> in(g.n, 0);
          for (int v : S) in[v] = 1;
          S.clear();
          for (int v = 0; v < g.n; ++v)
            if (!in[v]) S.push_back(v);
        }
        if (S.empty()) continue;
        best = std::min(best, conductance_of_set(P, pi, S));
      }
      if (std::isfinite(best))
        q.conductance = Quantity{best, Provenance::catalog_bound, 0.0};
      else
        out.skipped.push_back("conductance: no catalog set available");
    } else {
      out.skipped.push_back("conductance: exhaustive guard exceeded, no catalog");
    }
  }

  // separation / tv crossing searches
  if (g.n <= opt.exact_profile_guard) {
    PowerCache cache(P);
    const long cap = opt.sep_cap_factor * static_cast<long>(g.n) * g.n;
    if (auto t = mixing_time_search(cache, pi, 0.25, cap))
      q.t_mix = Quantity{static_cast<double>(*t), Provenance::exact, 0.0};
    else
      out.skipped.push_back("t_mix: crossing not reached within cap");
    for (int kt : opt.ktilde_grid) {
      if (kt < 1 || kt >= opt.k) continue;
      if (auto t = partial_mixing_time_search(cache, pi, kt, opt.k, cap))
        q.partial_mix[kt] = Quantity{static_cast<double>(*t), Provenance::exact, 0.0};
      else
        out.skipped.push_back("partial_mix ktilde=" + std::to_string(kt) + ": cap reached");
      if (auto t = mixing_time_search(cache, pi, 1.0 - static_cast<double>(kt) / opt.k, cap))
        q.tv_mix_threshold[kt] = Quantity{static_cast<double>(*t), Provenance::exact, 0.0};
      // also make sure lem4.6 has t_mix^(4kt,k) available
      const int kt4 = 4 * kt;
      if (kt4 < opt.k && !q.partial_mix.count(kt4)) {
        if (auto t = partial_mixing_time_search(cache, pi, kt4, opt.k, cap))
          q.partial_mix[kt4] = Quantity{static_cast<double>(*t), Provenance::exact, 0.0};
      }
    }
  } else {
    out.skipped.push_back("distance profile: n exceeds exact profile guard (" +
                          std::to_string(opt.exact_profile_guard) + ")");
  }

  // large-hit: exhaustive within guard, catalog otherwise
  for (int kt : opt.ktilde_grid) {
    if (kt < 1 || kt >= opt.k) continue;
    const long cap =
        std::min(opt.hit_cap_factor * static_cast<long>(g.n) * g.n,
                 2'000'000'000 / (static_cast<long>(g.n) * g.n) + 1);
    if (g.n <= kExhaustiveHitGuard) {
      const auto r = large_hit_time_exhaustive(P, pi, kt, opt.k, 1 << 20);
      if (r.t) q.large_hit[kt] = Quantity{static_cast<double>(*r.t), Provenance::exact, 0.0};
    } else if (spec) {
      const auto sets = canonical_hard_sets(g, *spec);
      if (!sets.empty()) {
        const auto r = large_hit_time_catalog(P, sets, kt, opt.k, cap);
        if (r.t)
          q.large_hit[kt] = Quantity{static_cast<double>(*r.t), Provenance::catalog_bound, 0.0};
        else
          out.skipped.push_back("large_hit ktilde=" + std::to_string(kt) +
                                ": crossing beyond the flop budget");
      } else {
        out.skipped.push_back("large_hit: no catalog for this family");
      }
    } else {
      out.skipped.push_back("large_hit: exhaustive guard exceeded, no catalog");
    }
  }
  return out;
}

EstimateRecord make_estimate_record(const std::string& family, int n, int k,
                                    const std::string& start, Laziness laziness,
                                    const std::string& quantity, const EstimateWithCI& est) {
  EstimateRecord rec;
  rec.family = family;
  rec.n = n;
  rec.k = k;
  rec.start = start;
  rec.laziness = laziness_name(laziness);
  rec.quantity = quantity;
  rec.mean = est.mean;
  rec.std_error = est.std_error;
  rec.trials = est.trials;
  rec.truncated = est.truncated;
  rec.seed = est.master_seed;
  return rec;
}

EstimateWithCI estimate_worst_case_cover(const WeightedGraph& g, const FamilySpec& spec, int k,
                                         Laziness laziness, const EstimateOptions& opt,
                                         std::string* arg_start) {
  const auto reps = worst_case_start_representatives(g, spec);
  EstimateWithCI best;
  bool first = true;
  for (int v : reps) {
    const EstimateWithCI est = estimate_cover_time(g, k, StartSpec::all_at(v), laziness, opt);
    if (first || est.mean > best.mean) {
      best = est;
      if (arg_start) *arg_start = "all_at(" + std::to_string(v) + ")";
      first = false;
    }
  }
  return best;
}

DisplacementTail displacement_tail(const FamilySpec& torus_spec, int D, long t, int trials,
                                   std::uint64_t seed, int threads) {
  if (torus_spec.family != Family::torus && torus_spec.family != Family::cycle)
    throw std::invalid_argument("displacement_tail: need a torus or cycle");
  const WeightedGraph g = build_family(torus_spec);
  const WalkSampler ws(g);
  const int dim = torus_spec.family == Family::cycle ? 1 : torus_spec.dim;
  const int side = torus_spec.family == Family::cycle ? torus_spec.n : torus_spec.side;
  auto coord_dist = [&](int a, int b) {
    int total = 0;
    for (int d = 0; d < dim; ++d) {
      const int ca = a % side, cb = b % side;
      a /= side;
      b /= side;
      const int diff = std::abs(ca - cb);
      total += std::min(diff, side - diff);
    }
    return total;
  };
  auto hits = run_trials(trials, threads, [&](int trial) {
    Rng rng = Rng::for_trial(seed, 0xd15b, static_cast<std::uint64_t>(trial));
    const int start = 0;
    int p = start;
    for (long s = 1; s <= t; ++s) {
      p = ws.step(p, Laziness::lazy, rng);
      if (coord_dist(start, p) >= D) return 1.0;
    }
    return 0.0;
  });
  const MeanSe ms = mean_and_se(hits);
  DisplacementTail out;
  out.frequency = ms.mean;
  // binomial standard error
  out.std_error = std::sqrt(std::max(ms.mean * (1.0 - ms.mean), 1e-12) / trials);
  return out;
}

ReportBundle run_experiment(const ExperimentConfig& config) {
  ReportBundle bundle;
  const Laziness laz = config.lazy ? Laziness::lazy : Laziness::nonlazy;
  const auto has_suite = [&](const char* s) {
    return std::find(config.suites.begin(), config.suites.end(), s) != config.suites.end();
  };

  for (const auto& spec : config.families) {
    WeightedGraph g;
    try {
      g = build_family(spec);
    } catch (const std::exception& e) {
      bundle.skipped.push_back(spec.name() + ": " + e.what());
      continue;
    }
    const std::string fam = spec.name();
    std::map<int, EstimateWithCI> stat_cover_by_k;

    // stationary cover estimates across the union of k and ktilde grids
    std::vector<int> all_k = config.k_grid;
    for (int kt : config.ktilde_grid) all_k.push_back(kt);
    std::sort(all_k.begin(), all_k.end());
    all_k.erase(std::unique(all_k.begin(), all_k.end()), all_k.end());
    for (int k : all_k) {
      if (k < 1) continue;
      EstimateOptions opt;
      opt.trials = config.trials;
      opt.master_seed = mix_seed(config.master_seed, static_cast<std::uint64_t>(k));
      opt.threads = config.threads;
      opt.horizon = static_cast<std::uint64_t>(
          std::min(9e18, config.horizon_factor * std::pow(g.n, 3.0) / k));
      const EstimateWithCI est = estimate_cover_time(g, k, StartSpec::stationary(), laz, opt);
      stat_cover_by_k[k] = est;
      bundle.estimates.push_back(
          make_estimate_record(fam, g.n, k, "stationary", laz, "cover_pi", est));
    }

    for (int k : config.k_grid) {
      EstimateOptions opt;
      opt.trials = config.trials;
      opt.master_seed = mix_seed(config.master_seed, 0x77 + static_cast<std::uint64_t>(k));
      opt.threads = config.threads;
      opt.horizon = static_cast<std::uint64_t>(
          std::min(9e18, config.horizon_factor * std::pow(g.n, 3.0) / k));
      std::string start_label;
      const EstimateWithCI worst = estimate_worst_case_cover(g, spec, k, laz, opt, &start_label);
      bundle.estimates.push_back(
          make_estimate_record(fam, g.n, k, start_label, laz, "cover_worst_single_source", worst));

      AnalysisOptions aopt;
      aopt.laziness = laz;
      aopt.k = k;
      aopt.ktilde_grid = config.ktilde_grid;
      aopt.exact_profile_guard = config.exact_profile_guard;
      ExactAnalysis ea = analyze_graph(g, &spec, aopt);
      for (auto& s : ea.skipped) bundle.skipped.push_back(fam + " k=" + std::to_string(k) + ": " + s);
      GraphQuantities& q = ea.q;
      if (auto it = stat_cover_by_k.find(k); it != stat_cover_by_k.end())
        q.stat_cover_k =
            Quantity{it->second.mean, Provenance::estimated, it->second.std_error};
      q.worst_cover_k = Quantity{worst.mean, Provenance::estimated, worst.std_error};
      for (int kt : config.ktilde_grid)
        if (auto it = stat_cover_by_k.find(kt); it != stat_cover_by_k.end() && kt < k)
          q.stat_cover[kt] = Quantity{it->second.mean, Provenance::estimated, it->second.std_error};

      if (has_suite("stationary")) {
        for (auto& r : eval_stationary_upper(q, k, config.constants)) bundle.bounds.push_back(r);
        bundle.bounds.push_back(eval_stationary_lower(q, k, config.constants.thm36_c));
      }
      if (has_suite("char")) {
        bundle.bounds.push_back(eval_char_upper(q, k, config.constants));
        bundle.bounds.push_back(eval_char_lower(q, k, CharLowerVariant::hit, config.constants));
        if (q.regular)
          bundle.bounds.push_back(
              eval_char_lower(q, k, CharLowerVariant::regular, config.constants));
      }
      if (has_suite("partial_mixing")) {
        for (int kt : config.ktilde_grid) {
          if (kt < 1 || kt >= k) continue;
          for (auto& r : eval_partial_mixing_bounds(q, kt, k, config.constants))
            bundle.bounds.push_back(r);
        }
      }
      if (has_suite("geometric")) {
        for (int kt : config.ktilde_grid) {
          if (kt < 1 || kt >= k) continue;
          GeometricInputs gi;
          if (spec.family == Family::binary_tree && g.n <= config.exact_profile_guard) {
            const Eigen::MatrixXd P = transition_matrix(g, laz);
            int leaf = 0;
            while (tree_left(leaf) < g.n) leaf = tree_left(leaf);
            for (long t : {g.n / 4, g.n / 2, static_cast<int>(g.n)}) {
              if (t < 1) continue;
              const Eigen::VectorXd h = hit_probability_within(P, {0}, t);
              gi.leaf_root_hit.emplace_back(t, h[leaf]);
            }
          }
          for (auto& r : eval_geometric_bounds(q, kt, k, gi, config.constants))
            bundle.bounds.push_back(r);
        }
      }
      if (has_suite("table1") && spec.family != Family::clique) {
        try {
          const Table1Reference ref = table1_reference(spec.family, g.n, k, spec.dim);
          BoundReport r;
          r.id = "table1.reference";
          r.family = fam;
          r.n = g.n;
          r.k = k;
          r.rhs = ref.stationary_k;
          r.lhs = q.stat_cover_k ? q.stat_cover_k->value : 0.0;
          r.constant = 0.0;
          r.pass = true;
          r.advisory = true;
          r.note = "regime " + ref.regime + "; worst_ref=" + fmt9(ref.worst_k);
          bundle.bounds.push_back(r);
        } catch (const std::exception& e) {
          bundle.skipped.push_back(fam + ": table1: " + e.what());
        }
      }
    }

    if (has_suite("slopes") && config.k_grid.size() >= 3) {
      std::vector<std::pair<double, double>> pts;
      for (int k : config.k_grid)
        if (auto it = stat_cover_by_k.find(k); it != stat_cover_by_k.end())
          pts.emplace_back(static_cast<double>(k), it->second.mean);
      if (pts.size() >= 3) {
        SlopeRecord rec;
        rec.family = fam;
        rec.quantity = "cover_pi";
        rec.fit = fit_loglog_slope(pts);
        const auto key = family_name(spec.family) + std::string(":cover_pi");
        if (auto it = config.slope_windows.find(key); it != config.slope_windows.end()) {
          rec.windowed = true;
          rec.window_lo = it->second.first;
          rec.window_hi = it->second.second;
          rec.pass = rec.fit.slope >= rec.window_lo && rec.fit.slope <= rec.window_hi;
        }
        bundle.slopes.push_back(rec);
      }
    }
  }

  bundle.sort_rows();
  return bundle;
}

std::string estimates_csv(const std::vector<EstimateRecord>& rows) {
  std::string out = "family,n,k,start,laziness,quantity,mean,std_error,trials,truncated,seed\n";
  for (const auto& r : rows) {
    out += r.family + "," + std::to_string(r.n) + "," + std::to_string(r.k) + "," + r.start + "," +
           r.laziness + "," + r.quantity + "," + fmt9(r.mean) + "," + fmt9(r.std_error) + "," +
           std::to_string(r.trials) + "," + std::to_string(r.truncated) + "," +
           std::to_string(r.seed) + "\n";
  }
  return out;
}

std::string bounds_csv(const std::vector<BoundReport>& rows) {
  std::string out = "bound_id,family,n,k,k_tilde,rhs,lhs,constant,pass\n";
  for (const auto& r : rows) {
    out += r.id + "," + r.family + "," + std::to_string(r.n) + "," + std::to_string(r.k) + "," +
           std::to_string(r.ktilde) + "," + fmt9(r.rhs) + "," + fmt9(r.lhs) + "," +
           fmt9(r.constant) + "," + (r.evaluable ? (r.pass ? "1" : "0") : "skipped") + "\n";
  }
  return out;
}

std::string slopes_csv(const std::vector<SlopeRecord>& rows) {
  std::string out = "family,quantity,slope,intercept,residual_rms,points,window_lo,window_hi,pass\n";
  for (const auto& r : rows) {
    out += r.family + "," + r.quantity + "," + fmt9(r.fit.slope) + "," + fmt9(r.fit.intercept) +
           "," + fmt9(r.fit.residual_rms) + "," + std::to_string(r.fit.points) + "," +
           (r.windowed ? fmt9(r.window_lo) : "") + "," + (r.windowed ? fmt9(r.window_hi) : "") +
           "," + (r.pass ? "1" : "0") + "\n";
  }
  return out;
}

json bundle_json(const ReportBundle& bundle, const ExperimentConfig& config) {
  json j;
  j["config"] = config.to_json();
  j["estimates"] = json::array();
  for (const auto& r : bundle.estimates) {
    json e;
    e["family"] = r.family;
    e["n"] = r.n;
    e["k"] = r.k;
    e["start"] = r.start;
    e["laziness"] = r.laziness;
    e["quantity"] = r.quantity;
    e["mean"] = r.mean;
    e["std_error"] = r.std_error;
    e["trials"] = r.trials;
    e["truncated"] = r.truncated;
    e["seed"] = r.seed;
    e["provenance"] = r.provenance;
    j["estimates"].push_back(e);
  }
  j["bounds"] = json::array();
  for (const auto& r : bundle.bounds) {
    json b;
    b["bound_id"] = r.id;
    b["family"] = r.family;
    b["n"] = r.n;
    b["k"] = r.k;
    b["k_tilde"] = r.ktilde;
    b["rhs"] = r.rhs;
    b["lhs"] = r.lhs;
    b["constant"] = r.constant;
    b["pass"] = r.pass;
    b["evaluable"] = r.evaluable;
    b["advisory"] = r.advisory;
    b["margin"] = r.margin;
    b["note"] = r.note;
    j["bounds"].push_back(b);
  }
  j["slopes"] = json::array();
  for (const auto& r : bundle.slopes) {
    json s;
    s["family"] = r.family;
    s["quantity"] = r.quantity;
    s["slope"] = r.fit.slope;
    s["intercept"] = r.fit.intercept;
    s["residual_rms"] = r.fit.residual_rms;
    s["points"] = r.fit.points;
    s["pass"] = r.pass;
    j["slopes"].push_back(s);
  }
  j["skipped"] = bundle.skipped;
  return j;
}

void write_bundle(const ReportBundle& bundle, const ExperimentConfig& config) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  const auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream os(fs::path(config.out_dir) / name, std::ios::binary);
    os << content;
  };
  write("estimates.csv", estimates_csv(bundle.estimates));
  write("bounds.csv", bounds_csv(bundle.bounds));
  write("slopes.csv", slopes_csv(bundle.slopes));
  write("bundle.json", bundle_json(bundle, config).dump(2) + "\n");
  // gnuplot-friendly two-column series: k vs stationary cover mean
  std::map<std::string, std::string> series;
  for (const auto& r : bundle.estimates)
    if (r.quantity == "cover_pi")
      series[r.family] += std::to_string(r.k) + " " + fmt9(r.mean) + "\n";
  for (const auto& [fam, data] : series) {
    std::string safe = fam;
    for (auto& ch : safe)
      if (ch == '{' || ch == '}' || ch == '=' || ch == ',') ch = '_';
    write("cover_pi_" + safe + ".dat", data);
  }
}

}  // namespace mrw
