#pragma once

#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mrw/bounds.hpp"
#include "mrw/chain.hpp"
#include "mrw/family.hpp"
#include "mrw/simulate.hpp"
#include "mrw/stats.hpp"

namespace mrw {

using json = nlohmann::json;

json family_spec_to_json(const FamilySpec& spec);
FamilySpec family_spec_from_json(const json& j);

struct ExperimentConfig {
  std::vector<FamilySpec> families;
  std::vector<int> k_grid;
  std::vector<int> ktilde_grid;
  bool lazy = true;
  int trials = 400;
  double horizon_factor = 64.0;
  std::uint64_t master_seed = 1;
  std::vector<std::string> suites = {"stationary", "char", "partial_mixing", "geometric",
                                     "table1", "slopes"};
  int threads = 1;
  std::string out_dir = "out";
  int exact_profile_guard = 512;
  // "family:quantity" -> accepted slope interval
  std::map<std::string, std::pair<double, double>> slope_windows;
  BoundConstants constants;

  json to_json() const;
  static ExperimentConfig from_json(const json& j);
};

struct EstimateRecord {
  std::string family;
  int n = 0;
  int k = 0;
  std::string start;
  std::string laziness;
  std::string quantity;
  double mean = 0.0;
  double std_error = 0.0;
  int trials = 0;
  int truncated = 0;
  std::uint64_t seed = 0;
  std::string provenance = "estimated";
};

struct SlopeRecord {
  std::string family;
  std::string quantity;
  SlopeFit fit;
  double window_lo = 0.0;
  double window_hi = 0.0;
  bool windowed = false;
  bool pass = true;
};

struct ReportBundle {
  std::vector<EstimateRecord> estimates;
  std::vector<BoundReport> bounds;
  std::vector<SlopeRecord> slopes;
  std::vector<std::string> skipped;

  bool any_required_failure() const;
  void sort_rows();
};

/// Exact per-graph analysis within the dense guards; refusals are recorded
/// as skips, never thrown.
struct AnalysisOptions {
  Laziness laziness = Laziness::lazy;
  int k = 1;
  std::vector<int> ktilde_grid;
  int exact_profile_guard = 512;
  long sep_cap_factor = 64;  // search cap = factor * n^2
  long hit_cap_factor = 64;  // large-hit cap = factor * n^3
};

struct ExactAnalysis {
  GraphQuantities q;
  std::vector<std::string> skipped;
};

ExactAnalysis analyze_graph(const WeightedGraph& g, const FamilySpec* spec,
                            const AnalysisOptions& opt);

ReportBundle run_experiment(const ExperimentConfig& config);

std::string estimates_csv(const std::vector<EstimateRecord>& rows);
std::string bounds_csv(const std::vector<BoundReport>& rows);
std::string slopes_csv(const std::vector<SlopeRecord>& rows);
json bundle_json(const ReportBundle& bundle, const ExperimentConfig& config);

/// Writes estimates.csv, bounds.csv, slopes.csv, bundle.json and two-column
/// gnuplot data files under out_dir.
void write_bundle(const ReportBundle& bundle, const ExperimentConfig& config);

EstimateRecord make_estimate_record(const std::string& family, int n, int k,
                                    const std::string& start, Laziness laziness,
                                    const std::string& quantity, const EstimateWithCI& est);

/// Max-over-representatives single-source estimate; the returned record is
/// labeled "cover_worst_single_source".
EstimateWithCI estimate_worst_case_cover(const WeightedGraph& g, const FamilySpec& spec, int k,
                                         Laziness laziness, const EstimateOptions& opt,
                                         std::string* arg_start = nullptr);

/// Empirical tail of the max displacement of a single lazy walk on a torus.
struct DisplacementTail {
  double frequency = 0.0;
  double std_error = 0.0;
};
DisplacementTail displacement_tail(const FamilySpec& torus_spec, int D, long t, int trials,
                                   std::uint64_t seed, int threads = 1);

}  // namespace mrw
