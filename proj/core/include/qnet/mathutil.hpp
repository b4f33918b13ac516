#pragma once

#include <cstddef>
#include <vector>

namespace qnet {

// Neumaier variant of Kahan summation. Tracks a crude rounding-error
// estimate (machine epsilon times the running sum of |terms|) so callers
// can tell when cancellation ate the result.
class CompensatedSum {
 public:
  void add(double term);
  double value() const { return sum_ + comp_; }
  double error_estimate() const;

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_sum_ = 0.0;
};

// H_m = 1 + 1/2 + ... + 1/m.
double harmonic(int m);

// Regularized incomplete gamma functions, Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

// Upper-tail p-value of a chi-square statistic with dof degrees of freedom.
double chi_square_p_value(double chi2, int dof);

// Solves A x = b in place (row-major n x n), Gaussian elimination with
// partial pivoting. Returns false on a (numerically) singular matrix.
bool solve_linear(std::vector<double>& a, std::vector<double>& b, int n);

}  // namespace qnet
