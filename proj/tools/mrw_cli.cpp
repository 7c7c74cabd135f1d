#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "mrw/acceptance.hpp"
#include "mrw/harness.hpp"
#include "mrw/oracle.hpp"
#include "mrw/reset.hpp"

namespace {

using namespace mrw;

struct FamilyArgs {
  std::string family;
  int n = 0, dim = 0, side = 0, height = 0, degree = 0, links = 0;
  std::uint64_t seed = 1;

  FamilySpec to_spec() const {
    const auto fam = family_from_name(family);
    if (!fam) throw CLI::ValidationError("--family", "unknown family '" + family + "'");
    switch (*fam) {
      case Family::cycle: return FamilySpec::cycle(n);
      case Family::torus: return FamilySpec::torus(dim, side);
      case Family::binary_tree: return FamilySpec::binary_tree(height);
      case Family::hypercube: return FamilySpec::hypercube(dim);
      case Family::clique: return FamilySpec::clique(n);
      case Family::barbell: return FamilySpec::barbell(n);
      case Family::random_regular: return FamilySpec::random_regular(n, degree, seed);
      case Family::preferential_attachment:
        return FamilySpec::preferential_attachment(n, links, seed);
    }
    throw CLI::ValidationError("--family", "unknown family");
  }
};

void add_family_options(CLI::App* cmd, FamilyArgs& args) {
  cmd->add_option("--family", args.family,
                  "cycle|torus|binary_tree|hypercube|clique|barbell|random_regular|"
                  "preferential_attachment")
      ->required();
  cmd->add_option("--n", args.n, "vertex count (families parameterized by n)");
  cmd->add_option("--dim", args.dim, "dimension (torus, hypercube)");
  cmd->add_option("--side", args.side, "side length (torus)");
  cmd->add_option("--height", args.height, "height (binary_tree)");
  cmd->add_option("--degree", args.degree, "degree (random_regular)");
  cmd->add_option("--links", args.links, "initial links m (preferential_attachment)");
  cmd->add_option("--seed", args.seed, "generator seed (random families)");
}

StartSpec parse_start(const std::string& s, int) {
  if (s == "stationary") return StartSpec::stationary();
  if (s.rfind("all_at:", 0) == 0) return StartSpec::all_at(std::stoi(s.substr(7)));
  throw CLI::ValidationError("--start", "expected 'stationary' or 'all_at:<v>'");
}

int cmd_generate(const FamilyArgs& fa, const std::string& out) {
  const WeightedGraph g = build_family(fa.to_spec());
  if (out.empty()) {
    write_edge_list(std::cout, g);
  } else {
    std::ofstream os(out, std::ios::binary);
    write_edge_list(os, g);
  }
  return 0;
}

int cmd_analyze(const FamilyArgs& fa, bool lazy, int k, std::vector<int> ktilde,
                const std::string& out, const std::string& profile_csv, long profile_tmax) {
  const FamilySpec spec = fa.to_spec();
  const WeightedGraph g = build_family(spec);
  AnalysisOptions opt;
  opt.laziness = lazy ? Laziness::lazy : Laziness::nonlazy;
  opt.k = k;
  opt.ktilde_grid = std::move(ktilde);
  const ExactAnalysis ea = analyze_graph(g, &spec, opt);
  json j;
  j["family"] = spec.name();
  j["n"] = g.n;
  j["m"] = g.total_edge_weight;
  j["d_min"] = g.min_weighted_degree();
  j["pi_max"] = ea.q.pi_max;
  j["regular"] = ea.q.regular;
  if (ea.q.t_rel) j["t_rel"] = ea.q.t_rel->value;
  if (ea.q.t_mix) j["t_mix"] = ea.q.t_mix->value;
  if (ea.q.max_hit_pi) j["max_hit_pi"] = ea.q.max_hit_pi->value;
  if (ea.q.conductance) {
    j["conductance"] = ea.q.conductance->value;
    j["conductance_provenance"] = provenance_name(ea.q.conductance->provenance);
  }
  for (const auto& [kt, v] : ea.q.partial_mix)
    j["partial_mix"][std::to_string(kt)] = v.value;
  for (const auto& [kt, v] : ea.q.large_hit) {
    j["large_hit"][std::to_string(kt)] = v.value;
    j["large_hit_provenance"][std::to_string(kt)] = provenance_name(v.provenance);
  }
  j["skipped"] = ea.skipped;
  if (!profile_csv.empty()) {
    const Eigen::MatrixXd P = transition_matrix(g, opt.laziness);
    const Eigen::VectorXd pi = stationary_distribution(g);
    const DistanceProfile prof = distance_profile(P, pi, profile_tmax);
    std::ofstream os(profile_csv, std::ios::binary);
    os << "t,d,s\n";
    char buf[64];
    for (long t = 0; t <= prof.t_max(); ++t) {
      std::snprintf(buf, sizeof(buf), "%ld,%.9g,%.9g\n", t, prof.tv[t], prof.sep[t]);
      os << buf;
    }
  }
  if (out.empty())
    std::cout << j.dump(2) << std::endl;
  else {
    std::ofstream os(out, std::ios::binary);
    os << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_estimate(const FamilyArgs& fa, bool lazy, int k, const std::string& start_str,
                 const std::string& quantity, int trials, std::uint64_t seed, int threads,
                 const std::string& out) {
  const FamilySpec spec = fa.to_spec();
  const WeightedGraph g = build_family(spec);
  const Laziness laz = lazy ? Laziness::lazy : Laziness::nonlazy;
  EstimateOptions opt;
  opt.trials = trials;
  opt.master_seed = seed;
  opt.threads = threads;
  EstimateWithCI est;
  std::string start_label = start_str;
  if (quantity == "cover_worst_single_source") {
    est = estimate_worst_case_cover(g, spec, k, laz, opt, &start_label);
  } else {
    const StartSpec start = parse_start(start_str, g.n);
    est = estimate_cover_time(g, k, start, laz, opt);
  }
  const EstimateRecord rec =
      make_estimate_record(spec.name(), g.n, k, start_label, laz, quantity, est);
  json j;
  j["graph"] = family_spec_to_json(spec);
  j["family"] = rec.family;
  j["n"] = rec.n;
  j["k"] = rec.k;
  j["start"] = rec.start;
  j["laziness"] = rec.laziness;
  j["quantity"] = rec.quantity;
  j["mean"] = rec.mean;
  j["std_error"] = rec.std_error;
  j["trials"] = rec.trials;
  j["truncated"] = rec.truncated;
  j["seed"] = rec.seed;
  if (out.empty())
    std::cout << j.dump(2) << std::endl;
  else {
    std::ofstream os(out, std::ios::binary);
    os << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir, std::uint64_t seed,
              bool seed_set, int threads) {
  std::ifstream is(config_path);
  if (!is) {
    std::cerr << "cannot open config: " << config_path << "\n";
    return 2;
  }
  json j;
  is >> j;
  ExperimentConfig config = ExperimentConfig::from_json(j);
  if (!out_dir.empty()) config.out_dir = out_dir;
  if (seed_set) config.master_seed = seed;
  if (threads > 0) config.threads = threads;
  const ReportBundle bundle = run_experiment(config);
  write_bundle(bundle, config);
  std::cout << "estimates: " << bundle.estimates.size() << ", bounds: " << bundle.bounds.size()
            << ", slopes: " << bundle.slopes.size() << ", skipped: " << bundle.skipped.size()
            << "\n";
  return bundle.any_required_failure() ? 1 : 0;
}

int cmd_report(const std::vector<std::string>& dirs, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  for (const char* name : {"estimates.csv", "bounds.csv", "slopes.csv"}) {
    std::vector<std::string> rows;
    std::string header;
    for (const auto& dir : dirs) {
      std::ifstream is(fs::path(dir) / name);
      if (!is) continue;
      std::string line;
      bool first = true;
      while (std::getline(is, line)) {
        if (first) {
          header = line;
          first = false;
        } else if (!line.empty()) {
          rows.push_back(line);
        }
      }
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::ofstream os(fs::path(out_dir) / name, std::ios::binary);
    os << header << "\n";
    for (const auto& r : rows) os << r << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiple-random-walk cover time toolkit"};
  app.require_subcommand(1);

  FamilyArgs fa_gen, fa_ana, fa_est;
  std::string out, profile_csv, start_str = "stationary", quantity = "cover_pi";
  std::string config_path, out_dir;
  std::vector<std::string> merge_dirs;
  std::vector<int> ktilde;
  bool lazy = true, nonlazy = false;
  int k = 1, trials = 400, threads = 1;
  long profile_tmax = 64;
  std::uint64_t seed = 1;
  std::string suite = "all";

  auto* gen = app.add_subcommand("generate", "write a family graph as an edge list");
  add_family_options(gen, fa_gen);
  gen->add_option("--out", out, "output path (stdout when omitted)");

  auto* ana = app.add_subcommand("analyze", "exact chain quantities (within guards)");
  add_family_options(ana, fa_ana);
  ana->add_flag("--nonlazy", nonlazy, "analyze the non-lazy walk");
  ana->add_option("--k", k, "walk count for partial mixing");
  ana->add_option("--ktilde", ktilde, "ktilde grid")->delimiter(',');
  ana->add_option("--out", out, "output JSON path");
  ana->add_option("--profile-csv", profile_csv, "write the (t,d,s) profile as CSV");
  ana->add_option("--profile-tmax", profile_tmax, "profile horizon");

  auto* est = app.add_subcommand("estimate", "Monte-Carlo estimates");
  add_family_options(est, fa_est);
  est->add_flag("--nonlazy", nonlazy, "simulate the non-lazy walk");
  est->add_option("--k", k, "number of walks");
  est->add_option("--start", start_str, "stationary | all_at:<v>");
  est->add_option("--quantity", quantity, "cover_pi | cover | cover_worst_single_source");
  est->add_option("--trials", trials, "trial count");
  est->add_option("--seed", seed, "master seed");
  est->add_option("--threads", threads, "worker threads (results are thread-count invariant)");
  est->add_option("--out", out, "output JSON path");

  auto* sweep = app.add_subcommand("sweep", "run an experiment config");
  sweep->add_option("--config", config_path, "experiment config JSON")->required();
  sweep->add_option("--out", out_dir, "output directory override");
  auto* seed_opt = sweep->add_option("--seed", seed, "master seed override");
  sweep->add_option("--threads", threads, "worker threads");

  auto* verify = app.add_subcommand("verify", "acceptance suites");
  verify->add_option("--suite", suite, "suite name or 'all' (see README)");
  verify->add_option("--seed", seed, "master seed");
  verify->add_option("--threads", threads, "worker threads");
  verify->add_option("--out", out_dir, "directory for the suite report");

  auto* report = app.add_subcommand("report", "merge report bundles");
  report->add_option("--merge", merge_dirs, "bundle directories")->required()->delimiter(',');
  report->add_option("--out", out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);
  lazy = !nonlazy;

  try {
    if (gen->parsed()) return cmd_generate(fa_gen, out);
    if (ana->parsed()) return cmd_analyze(fa_ana, lazy, k, ktilde, out, profile_csv, profile_tmax);
    if (est->parsed())
      return cmd_estimate(fa_est, lazy, k, start_str, quantity, trials, seed, threads, out);
    if (sweep->parsed()) return cmd_sweep(config_path, out_dir, seed, seed_opt->count() > 0, threads);
    if (verify->parsed()) {
      acceptance::Options opt;
      opt.master_seed = seed;
      opt.threads = threads;
      opt.out_dir = out_dir;
      return acceptance::run_suites(suite, opt, std::cout) ? 0 : 1;
    }
    if (report->parsed()) return cmd_report(merge_dirs, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
