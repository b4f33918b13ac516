#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "qnet/errors.hpp"
#include "qnet/fitting.hpp"
#include "qnet/mathutil.hpp"
#include "qnet/metrics.hpp"

using namespace qnet;

namespace {

// Degree histogram straight from a counts vector; binning is recomputed by
// the pooling path so the fit sees the same bins production would.
DegreeHistogram hist_from_counts(std::vector<int64_t> counts, int num_bins) {
  DegreeHistogram raw;
  raw.n_nodes = 0;
  for (const int64_t c : counts) raw.n_nodes += c;
  raw.counts = std::move(counts);
  return pool_degree_histograms({raw}, num_bins);
}

std::vector<int64_t> poisson_counts(double lambda, int64_t n, int width) {
  std::vector<int64_t> counts(width, 0);
  double pmf = std::exp(-lambda);
  for (int k = 0; k < width; ++k) {
    counts[k] = static_cast<int64_t>(std::llround(pmf * static_cast<double>(n)));
    pmf *= lambda / (k + 1);
  }
  return counts;
}

}  // namespace

TEST_SUITE("fitting") {

TEST_CASE("compensated summation survives cancellation") {
  CompensatedSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);
  CHECK(s.error_estimate() > 0.0);
}

TEST_CASE("harmonic numbers") {
  CHECK(harmonic(1) == 1.0);
  CHECK(harmonic(2) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(harmonic(10) == doctest::Approx(2.9289682539682538).epsilon(1e-14));
}

TEST_CASE("chi-square p-values against closed forms") {
  // dof = 2: p = exp(-chi2 / 2).
  CHECK(chi_square_p_value(2.0, 2) ==
        doctest::Approx(0.36787944117144233).epsilon(1e-12));
  // dof = 1: p = erfc(sqrt(chi2 / 2)).
  CHECK(chi_square_p_value(1.0, 1) ==
        doctest::Approx(0.31731050786291415).epsilon(1e-10));
  CHECK(chi_square_p_value(0.0, 5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(chi_square_p_value(100.0, 2) < 1e-20);
}

TEST_CASE("linear solver") {
  std::vector<double> a = {2, 1, 1, 3};  // [[2,1],[1,3]]
  std::vector<double> b = {5, 10};
  REQUIRE(solve_linear(a, b, 2));
  CHECK(b[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b[1] == doctest::Approx(3.0).epsilon(1e-12));

  std::vector<double> sing = {1, 2, 2, 4};
  std::vector<double> rhs = {1, 2};
  CHECK_FALSE(solve_linear(sing, rhs, 2));
}

TEST_CASE("poisson fit recovers lambda and accepts poisson data") {
  const DegreeHistogram h = hist_from_counts(poisson_counts(5.0, 200000, 24), 24);
  const PoissonFit fit = fit_poisson(h);
  CHECK(fit.lambda == doctest::Approx(5.0).epsilon(1e-3));
  CHECK(fit.p_value > 0.5);  // data is the pmf itself, chi2 ~ rounding only
  CHECK(fit.dof >= 1);
}

TEST_CASE("poisson fit on a point mass") {
  std::vector<int64_t> counts(6, 0);
  counts[3] = 500;
  const DegreeHistogram h = hist_from_counts(counts, 6);
  const PoissonFit fit = fit_poisson(h);
  CHECK(fit.lambda == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.p_value < 1e-6);  // nothing poissonian about a spike
}

TEST_CASE("single gaussian fit recovers a clean peak") {
  std::vector<int64_t> counts(30, 0);
  for (int k = 0; k < 30; ++k) {
    const double x = k + 0.5;
    counts[k] = static_cast<int64_t>(
        std::llround(4000.0 * std::exp(-0.5 * (x - 12.0) * (x - 12.0) / 9.0)));
  }
  const DegreeHistogram h = hist_from_counts(counts, 30);
  const SingleGaussianFit fit = fit_single_gaussian(h);
  CHECK(fit.converged);
  CHECK(fit.g.mean == doctest::Approx(12.0).epsilon(0.02));
  CHECK(fit.g.sigma == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("two gaussian fit splits a bimodal histogram") {
  std::vector<int64_t> counts(36, 0);
  for (int k = 0; k < 36; ++k) {
    const double x = k + 0.5;
    const double y1 = 3000.0 * std::exp(-0.5 * (x - 7.0) * (x - 7.0) / 4.0);
    const double y2 = 2000.0 * std::exp(-0.5 * (x - 22.0) * (x - 22.0) / 9.0);
    counts[k] = static_cast<int64_t>(std::llround(y1 + y2));
  }
  const DegreeHistogram h = hist_from_counts(counts, 36);
  const TwoGaussianFit two = fit_two_gaussian(h);
  const SingleGaussianFit one = fit_single_gaussian(h);
  CHECK(two.converged);
  CHECK(two.g1.mean == doctest::Approx(7.0).epsilon(0.07));
  CHECK(two.g2.mean == doctest::Approx(22.0).epsilon(0.05));
  CHECK(two.g1.mean < two.g2.mean);  // ordered output
  CHECK(two.residual < 0.2 * one.residual);
}

TEST_CASE("power law fit is exact on exact data") {
  std::vector<std::pair<double, double>> pts;
  for (const double x : {100.0, 300.0, 700.0, 1500.0, 2000.0}) {
    pts.emplace_back(x, 2.0 * std::pow(x, 0.4));
  }
  const PowerLawFit fit = fit_power_law(pts);
  CHECK(fit.exponent == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(fit.prefactor == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.n_points == 5);
}

TEST_CASE("power law fit on constant data") {
  std::vector<std::pair<double, double>> pts = {{10, 3}, {100, 3}, {1000, 3}};
  const PowerLawFit fit = fit_power_law(pts);
  CHECK(fit.exponent == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("power law fit input validation") {
  std::vector<std::pair<double, double>> one = {{10, 3}};
  CHECK_THROWS_AS(fit_power_law(one), DataError);
  std::vector<std::pair<double, double>> neg = {{10, 3}, {20, -1}};
  CHECK_THROWS_AS(fit_power_law(neg), DataError);
  std::vector<std::pair<double, double>> samex = {{10, 3}, {10, 4}};
  CHECK_THROWS_AS(fit_power_law(samex), DataError);
}

}  // TEST_SUITE
