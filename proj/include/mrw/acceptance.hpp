#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mrw {
namespace acceptance {

struct Options {
  std::uint64_t master_seed = 0x5eed2024;
  int threads = 4;
  std::string out_dir;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

/// Suite names: oracle(1), inequalities(2), cycle_stationary(3),
/// cycle_worst(4), general_lower(5), minmax_upper(6),
/// hypercube_expander(7), tree_crossover(8), reset_coupling(9),
/// displacement(10), barbell_contrast(11), or "all".
std::vector<int> suite_ids(const std::string& suite);

CriterionResult run_criterion(int id, const Options& opt);

/// Runs the named suites, printing one PASS/FAIL line per criterion.
/// Returns true iff every criterion passed.
bool run_suites(const std::string& suite, const Options& opt, std::ostream& log);

}  // namespace acceptance
}  // namespace mrw
