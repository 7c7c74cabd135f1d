#include <doctest.h>

#include <cmath>

#include "mrw/oracle.hpp"
#include "mrw/simulate.hpp"

using namespace mrw;

namespace {

double harmonic(int n) {
  double h = 0.0;
  for (int i = 1; i <= n; ++i) h += 1.0 / i;
  return h;
}

}  // namespace

TEST_CASE("cover time samples on deterministic cases") {
  const WeightedGraph k2 = build_family(FamilySpec::clique(2));
  EstimateOptions opt;
  opt.trials = 50;
  opt.master_seed = 9;

  // both vertices occupied at t = 0
  const EstimateWithCI both =
      estimate_cover_time(k2, 2, StartSpec::tuple({0, 1}), Laziness::lazy, opt);
  CHECK(both.mean == doctest::Approx(0.0));
  CHECK(both.std_error == doctest::Approx(0.0));

  // non-lazy K2 from one vertex: deterministic alternation covers at t = 1
  const EstimateWithCI one =
      estimate_cover_time(k2, 1, StartSpec::all_at(0), Laziness::nonlazy, opt);
  CHECK(one.mean == doctest::Approx(1.0));
  CHECK(one.std_error == doctest::Approx(0.0));
}

TEST_CASE("cover estimates match exact oracle values") {
  EstimateOptions opt;
  opt.trials = 400;
  opt.master_seed = 11;

  const WeightedGraph k2 = build_family(FamilySpec::clique(2));
  const EstimateWithCI geo = estimate_cover_time(k2, 1, StartSpec::all_at(0), Laziness::lazy, opt);
  CHECK(std::fabs(geo.mean - 2.0) <= 3.0 * geo.std_error);

  const WeightedGraph c3 = build_family(FamilySpec::cycle(3));
  const EstimateWithCI t3 = estimate_cover_time(c3, 1, StartSpec::all_at(0), Laziness::lazy, opt);
  CHECK(std::fabs(t3.mean - 6.0) <= 3.0 * t3.std_error);

  const WeightedGraph c4 = build_family(FamilySpec::cycle(4));
  const double exact =
      oracle::exact_multiwalk_cover_expectation(c4, 1, StartSpec::all_at(0), Laziness::lazy);
  const EstimateWithCI t4 = estimate_cover_time(c4, 1, StartSpec::all_at(0), Laziness::lazy, opt);
  CHECK(std::fabs(t4.mean - exact) <= 3.0 * t4.std_error);
}

TEST_CASE("clique coupon-collector sanity") {
  const WeightedGraph g = build_family(FamilySpec::clique(64));
  EstimateOptions opt;
  opt.trials = 400;
  opt.master_seed = 12;
  const EstimateWithCI est =
      estimate_cover_time(g, 1, StartSpec::stationary(), Laziness::lazy, opt);
  const double expect = 2.0 * 63.0 * harmonic(63);  // lazy doubles (n-1) H_{n-1}
  CHECK(std::fabs(est.mean - expect) / expect <= 0.10);
}

TEST_CASE("set hitting") {
  const WeightedGraph c4 = build_family(FamilySpec::cycle(4));
  EstimateOptions opt;
  opt.trials = 400;
  opt.master_seed = 13;
  const EstimateWithCI zero =
      estimate_set_hitting(c4, 1, StartSpec::all_at(2), {2, 3}, Laziness::lazy, opt);
  CHECK(zero.mean == doctest::Approx(0.0));

  const EstimateWithCI anti =
      estimate_set_hitting(c4, 1, StartSpec::all_at(0), {2}, Laziness::lazy, opt);
  CHECK(std::fabs(anti.mean - 8.0) <= 3.0 * anti.std_error);

  // min of two iid walks is dominated by one walk
  const EstimateWithCI two =
      estimate_set_hitting(c4, 2, StartSpec::all_at(0), {2}, Laziness::lazy, opt);
  CHECK(two.mean <= anti.mean + 3.0 * std::hypot(two.std_error, anti.std_error));
}

TEST_CASE("set cover of an arc scales like its squared size") {
  EstimateOptions opt;
  opt.trials = 300;
  opt.master_seed = 14;

  const auto arc_cover = [&](int n) {
    const FamilySpec spec = FamilySpec::cycle(n);
    const WeightedGraph g = build_family(spec);
    const auto sets = canonical_hard_sets(g, spec);
    const auto& hs = sets[0];
    const SetCoverEstimate est = estimate_set_cover(
        g, 1, hs.members, StartSpec::boundary_uniform(hs.members), Laziness::lazy, opt);
    CHECK(!est.boundary_fallback);
    return std::pair<double, double>(est.estimate.mean, hs.members.size());
  };
  const auto [t64, s64] = arc_cover(64);
  const auto [t128, s128] = arc_cover(128);
  const double expected_ratio = (s128 / s64) * (s128 / s64);
  CHECK(t128 / t64 >= 0.6 * expected_ratio);
  CHECK(t128 / t64 <= 1.4 * expected_ratio);

  // single vertex, point mass: tau = 0
  const WeightedGraph c8 = build_family(FamilySpec::cycle(8));
  const SetCoverEstimate point =
      estimate_set_cover(c8, 1, {3}, StartSpec::point_on_set({3}, 3), Laziness::lazy, opt);
  CHECK(point.estimate.mean == doctest::Approx(0.0));

  // S = V has no boundary: falls back to uniform on S, flagged
  std::vector<int> all{0, 1, 2, 3, 4, 5, 6, 7};
  const SetCoverEstimate fb =
      estimate_set_cover(c8, 2, all, StartSpec::boundary_uniform(all), Laziness::lazy, opt);
  CHECK(fb.boundary_fallback);

  // barbell far clique from the bridge endpoint: covered well before n^2
  const FamilySpec bspec = FamilySpec::barbell(32);
  const WeightedGraph bb = build_family(bspec);
  const auto bsets = canonical_hard_sets(bb, bspec);
  const SetCoverEstimate bcov = estimate_set_cover(
      bb, 4, bsets[0].members, StartSpec::boundary_uniform(bsets[0].members), Laziness::lazy, opt);
  CHECK(bcov.estimate.mean < 32.0 * 32.0);
}

TEST_CASE("monotonicity in k") {
  EstimateOptions opt;
  opt.trials = 300;
  opt.master_seed = 15;
  for (const auto& spec : {FamilySpec::cycle(32), FamilySpec::binary_tree(4)}) {
    const WeightedGraph g = build_family(spec);
    double prev_mean = 0.0, prev_se = 0.0;
    bool first = true;
    for (int k : {1, 2, 4, 8}) {
      const EstimateWithCI est =
          estimate_cover_time(g, k, StartSpec::stationary(), Laziness::lazy, opt);
      if (!first)
        CHECK(est.mean <= prev_mean + 3.0 * std::hypot(est.std_error, prev_se));
      prev_mean = est.mean;
      prev_se = est.std_error;
      first = false;
    }
  }
}

TEST_CASE("laziness doubling on vertex-transitive graphs") {
  EstimateOptions opt;
  opt.trials = 400;
  opt.master_seed = 16;
  for (const auto& spec : {FamilySpec::cycle(16), FamilySpec::hypercube(4)}) {
    const WeightedGraph g = build_family(spec);
    const EstimateWithCI lazy =
        estimate_cover_time(g, 1, StartSpec::all_at(0), Laziness::lazy, opt);
    const EstimateWithCI nonlazy =
        estimate_cover_time(g, 1, StartSpec::all_at(0), Laziness::nonlazy, opt);
    const double ratio = lazy.mean / nonlazy.mean;
    CHECK(ratio >= 1.8);
    CHECK(ratio <= 2.2);
    const EstimateWithCI hl =
        estimate_set_hitting(g, 1, StartSpec::all_at(0), {g.n / 2}, Laziness::lazy, opt);
    const EstimateWithCI hn =
        estimate_set_hitting(g, 1, StartSpec::all_at(0), {g.n / 2}, Laziness::nonlazy, opt);
    const double hratio = hl.mean / hn.mean;
    CHECK(hratio >= 1.8);
    CHECK(hratio <= 2.2);
  }
}

TEST_CASE("determinism across thread counts") {
  const WeightedGraph g = build_family(FamilySpec::torus(2, 8));
  EstimateOptions a;
  a.trials = 64;
  a.master_seed = 17;
  a.threads = 1;
  EstimateOptions b = a;
  b.threads = 4;
  const EstimateWithCI ea = estimate_cover_time(g, 3, StartSpec::stationary(), Laziness::lazy, a);
  const EstimateWithCI eb = estimate_cover_time(g, 3, StartSpec::stationary(), Laziness::lazy, b);
  CHECK(ea.mean == eb.mean);          // bit identical
  CHECK(ea.std_error == eb.std_error);
  CHECK(ea.truncated == eb.truncated);
}

TEST_CASE("horizon truncation is reported") {
  const WeightedGraph g = build_family(FamilySpec::cycle(64));
  EstimateOptions opt;
  opt.trials = 50;
  opt.master_seed = 18;
  opt.horizon = 8;  // absurdly small
  const EstimateWithCI est = estimate_cover_time(g, 1, StartSpec::all_at(0), Laziness::lazy, opt);
  CHECK(est.truncated == 50);
  CHECK(est.unreliable);
  CHECK(est.mean == doctest::Approx(8.0));
  CHECK_THROWS_AS(([&] {
                    EstimateOptions bad;
                    bad.trials = 1;
                    estimate_cover_time(g, 1, StartSpec::all_at(0), Laziness::lazy, bad);
                  })(),
                  std::invalid_argument);
}

TEST_CASE("stationarity preservation") {
  // after T steps from stationary starts, occupancy stays pi-distributed
  const FamilySpec spec = FamilySpec::binary_tree(4);
  const WeightedGraph g = build_family(spec);
  const WalkSampler ws(g);
  const Eigen::VectorXd pi = stationary_distribution(g);
  const int trials = 40000;
  std::vector<std::uint64_t> occupancy(g.n, 0);
  std::vector<std::uint64_t> reference(g.n, 0);
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::for_trial(19, 0xabc, trial);
    int p = ws.sample_stationary(rng);
    for (int t = 0; t < 24; ++t) p = ws.step(p, Laziness::lazy, rng);
    ++occupancy[p];
    ++reference[ws.sample_stationary(rng)];
  }
  const ChiSquareResult r = chi_square_two_sample(occupancy, reference);
  CHECK(r.p_value > 0.001);
}

TEST_CASE("reset walk equivalence") {
  const WeightedGraph k2 = build_family(FamilySpec::clique(2));
  const ChiSquareResult a = reset_walk_equivalence(k2, 0.5, 10, 20000, 20);
  CHECK(a.p_value > 0.01);
  const WeightedGraph c16 = build_family(FamilySpec::cycle(16));
  const ChiSquareResult b = reset_walk_equivalence(c16, 0.1, 50, 20000, 21);
  CHECK(b.p_value > 0.01);
  CHECK_THROWS_AS(reset_walk_equivalence(k2, 1.0, 10, 100, 22), std::invalid_argument);
}

TEST_CASE("start spec validation") {
  const WeightedGraph g = build_family(FamilySpec::cycle(4));
  CHECK_THROWS_AS(StartSampler(g, StartSpec::tuple({0, 1}), 3), std::invalid_argument);
  CHECK(StartSpec::all_at(2).describe() == "all_at(2)");
  CHECK(StartSpec::stationary().describe() == "stationary");
}
