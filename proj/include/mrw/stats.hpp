#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mrw {

struct MeanSe {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};

MeanSe mean_and_se(const std::vector<double>& xs);

/// Upper tail P(X >= x) of a chi-square distribution with `dof` degrees of
/// freedom, via the regularized incomplete gamma function.
double chi_square_sf(double x, int dof);

/// Two-sample chi-square homogeneity test on equal-length count histograms.
struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};
ChiSquareResult chi_square_two_sample(const std::vector<std::uint64_t>& a,
                                      const std::vector<std::uint64_t>& b);

/// Least squares on (ln x, ln y).
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  int points = 0;
};
SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points);

}  // namespace mrw
