#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "mrw/harness.hpp"

using namespace mrw;

TEST_CASE("slope fitting") {
  std::vector<std::pair<double, double>> sq, inv;
  for (double x : {1.0, 2.0, 4.0, 8.0}) {
    sq.emplace_back(x, x * x);
    inv.emplace_back(x, 3.0 / x);
  }
  CHECK(fit_loglog_slope(sq).slope == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(fit_loglog_slope(inv).slope == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(fit_loglog_slope(sq).residual_rms == doctest::Approx(0.0).epsilon(1e-9));
  CHECK_THROWS_AS(fit_loglog_slope({{1.0, 1.0}, {2.0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_loglog_slope({{1.0, 1.0}, {1.0, 2.0}, {1.0, 3.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(fit_loglog_slope({{1.0, -1.0}, {2.0, 2.0}, {3.0, 3.0}}),
                  std::invalid_argument);
}

TEST_CASE("chi-square survival function") {
  // known quantiles: P(chi2_1 >= 3.841) ~ 0.05, P(chi2_10 >= 18.307) ~ 0.05
  CHECK(chi_square_sf(3.841, 1) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(chi_square_sf(18.307, 10) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(chi_square_sf(0.0, 3) == doctest::Approx(1.0));
}

TEST_CASE("config round trip") {
  ExperimentConfig c;
  c.families = {FamilySpec::cycle(64), FamilySpec::torus(2, 8),
                FamilySpec::random_regular(32, 3, 9)};
  c.k_grid = {1, 4};
  c.ktilde_grid = {1, 2};
  c.trials = 100;
  c.master_seed = 99;
  c.slope_windows["cycle:cover_pi"] = {-2.3, -1.6};
  const json j = c.to_json();
  const ExperimentConfig d = ExperimentConfig::from_json(j);
  CHECK(d.to_json() == j);
  CHECK(d.families.size() == 3);
  CHECK(d.families[2].degree == 3);
  CHECK(d.slope_windows.at("cycle:cover_pi").first == doctest::Approx(-2.3));
}

TEST_CASE("analyze_graph fills exact quantities within guards") {
  const FamilySpec spec = FamilySpec::cycle(16);
  const WeightedGraph g = build_family(spec);
  AnalysisOptions opt;
  opt.k = 4;
  opt.ktilde_grid = {1, 2};
  const ExactAnalysis ea = analyze_graph(g, &spec, opt);
  CHECK(ea.q.t_rel.has_value());
  CHECK(ea.q.t_mix.has_value());
  CHECK(ea.q.max_hit_pi.has_value());
  CHECK(ea.q.conductance.has_value());
  CHECK(ea.q.conductance->provenance == Provenance::exact);
  CHECK(ea.q.partial_mix.count(1) == 1);
  CHECK(ea.q.partial_mix.count(2) == 1);
  CHECK(ea.q.large_hit.count(1) == 1);
  CHECK(ea.q.regular);

  // beyond the exhaustive guards the analysis downgrades to catalog values
  const FamilySpec big = FamilySpec::cycle(48);
  const ExactAnalysis eb = analyze_graph(build_family(big), &big, opt);
  CHECK(eb.q.conductance.has_value());
  CHECK(eb.q.conductance->provenance == Provenance::catalog_bound);
  CHECK(eb.q.large_hit.at(1).provenance == Provenance::catalog_bound);
}

TEST_CASE("run_experiment produces a deterministic bundle") {
  ExperimentConfig c;
  c.families = {FamilySpec::cycle(64)};
  c.k_grid = {1, 4};
  c.ktilde_grid = {1, 2};
  c.trials = 100;
  c.master_seed = 4242;
  c.threads = 2;
  c.out_dir = "test_out_a";
  const ReportBundle a = run_experiment(c);
  CHECK(a.estimates.size() >= 2);
  bool has_stat_bound = false;
  for (const auto& b : a.bounds) has_stat_bound |= b.id == "thm3.1";
  CHECK(has_stat_bound);

  // identical config and seed reproduce byte-identical CSV at any threads
  ExperimentConfig c2 = c;
  c2.threads = 1;
  c2.out_dir = "test_out_b";
  const ReportBundle b = run_experiment(c2);
  CHECK(estimates_csv(a.estimates) == estimates_csv(b.estimates));
  CHECK(bounds_csv(a.bounds) == bounds_csv(b.bounds));

  write_bundle(a, c);
  namespace fs = std::filesystem;
  CHECK(fs::exists(fs::path(c.out_dir) / "estimates.csv"));
  CHECK(fs::exists(fs::path(c.out_dir) / "bounds.csv"));
  CHECK(fs::exists(fs::path(c.out_dir) / "bundle.json"));
  std::error_code ec;
  fs::remove_all(c.out_dir, ec);
  fs::remove_all(c2.out_dir, ec);
}

TEST_CASE("guard refusals downgrade to skips") {
  ExperimentConfig c;
  c.families = {FamilySpec::cycle(2048)};  // beyond the exact profile guard
  c.k_grid = {2};
  c.ktilde_grid = {1};
  c.trials = 4;  // keep the Monte-Carlo part tiny
  c.master_seed = 1;
  c.suites = {"stationary"};
  const ReportBundle b = run_experiment(c);
  CHECK(!b.skipped.empty());
  CHECK(!b.estimates.empty());  // Monte-Carlo still ran
}

TEST_CASE("displacement tail estimator") {
  const DisplacementTail tail = displacement_tail(FamilySpec::torus(2, 16), 40, 8, 2000, 3);
  CHECK(tail.frequency == doctest::Approx(0.0));  // cannot move 40 in 8 steps
  const DisplacementTail sure = displacement_tail(FamilySpec::torus(2, 16), 1, 64, 2000, 3);
  CHECK(sure.frequency > 0.9);
}
