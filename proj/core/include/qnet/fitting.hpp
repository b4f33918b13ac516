#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qnet/metrics.hpp"

namespace qnet {

struct PoissonFit {
  double lambda = 0.0;      // MLE, the sample mean
  double chi_square = 0.0;
  int dof = 0;
  double p_value = 0.0;
  int bins_used = 0;        // after pooling low-expectation bins
};

// Chi-square goodness of fit of raw degree counts against Poisson(lambda),
// lambda = sample mean. Adjacent bins are pooled until every expected
// count is >= 5; dof = bins - 2 (one for the total, one for lambda).
PoissonFit fit_poisson(const DegreeHistogram& hist);

struct GaussianPeak {
  double amplitude = 0.0;
  double mean = 0.0;
  double sigma = 0.0;
};

struct SingleGaussianFit {
  GaussianPeak g;
  double residual = 0.0;  // sum of squared residuals on the binned density
  bool converged = false;
  int iterations = 0;
};

struct TwoGaussianFit {
  GaussianPeak g1, g2;    // ordered by mean
  double residual = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Least-squares Gaussian fits to the binned degree density (bin centers as
// x). Damped Gauss-Newton, data-driven start (moment split at the weighted
// median for two peaks) plus one quartile-split restart if the first
// attempt stalls. residual lets callers compare one- vs two-peak models on
// identical data.
SingleGaussianFit fit_single_gaussian(const DegreeHistogram& hist);
TwoGaussianFit fit_two_gaussian(const DegreeHistogram& hist);

struct PowerLawFit {
  double exponent = 0.0;   // delta in y = a * x^delta
  double prefactor = 0.0;  // a
  double r_squared = 0.0;
  int n_points = 0;
};

// OLS on (ln x, ln y). Requires >= 2 points with x > 0, y > 0 (DataError).
PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points);

}  // namespace qnet
