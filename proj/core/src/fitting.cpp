#include "qnet/fitting.hpp"

#include <algorithm>
#include <cmath>

#include "qnet/errors.hpp"
#include "qnet/mathutil.hpp"

namespace qnet {

PoissonFit fit_poisson(const DegreeHistogram& hist) {
  if (hist.n_nodes < 1) throw DataError("fit_poisson: empty histogram");
  PoissonFit fit;
  fit.lambda = hist.mean_degree;
  const double n = static_cast<double>(hist.n_nodes);

  // Poisson pmf over 0..k_max, remainder mass folded into the last cell.
  const size_t k_max = hist.counts.size() - 1;
  std::vector<double> expected(k_max + 1, 0.0);
  double pmf = std::exp(-fit.lambda);
  double cumulative = 0.0;
  for (size_t k = 0; k <= k_max; ++k) {
    if (k > 0) pmf *= fit.lambda / static_cast<double>(k);
    expected[k] = n * pmf;
    cumulative += pmf;
  }
  expected[k_max] += n * std::max(0.0, 1.0 - cumulative);

  // Pool adjacent cells until each expected count reaches 5.
  std::vector<double> obs_pooled, exp_pooled;
  double obs_acc = 0.0, exp_acc = 0.0;
  for (size_t k = 0; k <= k_max; ++k) {
    obs_acc += static_cast<double>(hist.counts[k]);
    exp_acc += expected[k];
    if (exp_acc >= 5.0) {
      obs_pooled.push_back(obs_acc);
      exp_pooled.push_back(exp_acc);
      obs_acc = exp_acc = 0.0;
    }
  }
  if (exp_acc > 0.0 || obs_acc > 0.0) {
    if (!exp_pooled.empty()) {
      obs_pooled.back() += obs_acc;
      exp_pooled.back() += exp_acc;
    } else {
      obs_pooled.push_back(obs_acc);
      exp_pooled.push_back(exp_acc);
    }
  }

  fit.bins_used = static_cast<int>(obs_pooled.size());
  for (size_t b = 0; b < obs_pooled.size(); ++b) {
    const double diff = obs_pooled[b] - exp_pooled[b];
    fit.chi_square += diff * diff / exp_pooled[b];
  }
  fit.dof = std::max(1, fit.bins_used - 2);
  fit.p_value = chi_square_p_value(fit.chi_square, fit.dof);
  return fit;
}

namespace {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
};

Series binned_series(const DegreeHistogram& hist) {
  Series s;
  for (const DegreeHistogram::Bin& b : hist.bins) {
    s.x.push_back(0.5 * (b.lo + b.hi));
    s.y.push_back(b.density);
  }
  return s;
}

double gaussian(double x, const GaussianPeak& g) {
  const double t = (x - g.mean) / g.sigma;
  return g.amplitude * std::exp(-0.5 * t * t);
}

double residual_sum(const Series& s, std::span<const GaussianPeak> peaks) {
  double ssr = 0.0;
  for (size_t i = 0; i < s.x.size(); ++i) {
    double f = 0.0;
    for (const GaussianPeak& g : peaks) f += gaussian(s.x[i], g);
    const double r = s.y[i] - f;
    ssr += r * r;
  }
  return ssr;
}

// Damped Gauss-Newton over packed parameters [A, mu, sigma] per peak.
// Returns final SSR; sets converged when the relative SSR improvement and
// step size fall under 1e-10.
double gauss_newton(const Series& s, std::vector<GaussianPeak>& peaks,
                    bool* converged, int* iterations) {
  const int np = static_cast<int>(peaks.size());
  const int dim = 3 * np;
  const double x_span = s.x.empty() ? 1.0 : std::max(1e-12, s.x.back() - s.x.front());
  const double sigma_floor = 1e-4 * x_span;

  double ssr = residual_sum(s, peaks);
  double damping = 1e-3;
  *converged = false;
  bool done = false;
  int iter = 0;
  for (; iter < 500 && !done; ++iter) {
    // Normal equations J^T J + damping * diag, J^T r.
    std::vector<double> jtj(dim * dim, 0.0);
    std::vector<double> jtr(dim, 0.0);
    std::vector<double> row(dim, 0.0);
    for (size_t i = 0; i < s.x.size(); ++i) {
      double f = 0.0;
      for (int pk = 0; pk < np; ++pk) {
        const GaussianPeak& g = peaks[pk];
        const double t = (s.x[i] - g.mean) / g.sigma;
        const double e = std::exp(-0.5 * t * t);
        row[3 * pk + 0] = e;
        row[3 * pk + 1] = g.amplitude * e * t / g.sigma;
        row[3 * pk + 2] = g.amplitude * e * t * t / g.sigma;
        f += g.amplitude * e;
      }
      const double r = s.y[i] - f;
      for (int a = 0; a < dim; ++a) {
        jtr[a] += row[a] * r;
        for (int b = a; b < dim; ++b) jtj[a * dim + b] += row[a] * row[b];
      }
    }
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < a; ++b) jtj[a * dim + b] = jtj[b * dim + a];
    }

    bool improved = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      std::vector<double> lhs = jtj;
      std::vector<double> step = jtr;
      for (int a = 0; a < dim; ++a) {
        lhs[a * dim + a] += damping * std::max(jtj[a * dim + a], 1e-12);
      }
      if (!solve_linear(lhs, step, dim)) {
        damping *= 10.0;
        continue;
      }
      std::vector<GaussianPeak> trial = peaks;
      double step_norm = 0.0, param_norm = 0.0;
      for (int pk = 0; pk < np; ++pk) {
        trial[pk].amplitude += step[3 * pk + 0];
        trial[pk].mean += step[3 * pk + 1];
        trial[pk].sigma += step[3 * pk + 2];
        if (std::abs(trial[pk].sigma) < sigma_floor) {
          trial[pk].sigma = trial[pk].sigma < 0.0 ? -sigma_floor : sigma_floor;
        }
        for (int c = 0; c < 3; ++c) {
          step_norm += step[3 * pk + c] * step[3 * pk + c];
        }
        param_norm += trial[pk].amplitude * trial[pk].amplitude +
                      trial[pk].mean * trial[pk].mean + trial[pk].sigma * trial[pk].sigma;
      }
      const double trial_ssr = residual_sum(s, trial);
      if (trial_ssr <= ssr) {
        const bool tiny_step = step_norm <= 1e-20 * std::max(param_norm, 1e-300);
        const bool tiny_gain = ssr - trial_ssr <= 1e-10 * std::max(ssr, 1e-300);
        peaks.swap(trial);
        ssr = trial_ssr;
        damping = std::max(damping * 0.3, 1e-12);
        improved = true;
        if (tiny_step || tiny_gain) {
          *converged = true;
          done = true;
        }
        break;
      }
      damping *= 10.0;
    }
    if (!improved) {
      *converged = ssr < 1e-30;  // flat zero data fits exactly
      break;
    }
  }
  *iterations = iter;
  for (GaussianPeak& g : peaks) g.sigma = std::abs(g.sigma);
  return ssr;
}

// Amplitude/mean/sigma from zeroth to second moments of a slice.
GaussianPeak moment_seed(const Series& s, size_t lo, size_t hi) {
  double w = 0.0, wx = 0.0;
  double peak = 0.0;
  for (size_t i = lo; i < hi; ++i) {
    w += s.y[i];
    wx += s.y[i] * s.x[i];
    peak = std::max(peak, s.y[i]);
  }
  GaussianPeak g;
  if (w <= 0.0) {
    g.amplitude = peak;
    g.mean = 0.5 * (s.x[lo] + s.x[hi - 1]);
    g.sigma = std::max(1e-3, 0.25 * (s.x[hi - 1] - s.x[lo]));
    return g;
  }
  g.mean = wx / w;
  double wv = 0.0;
  for (size_t i = lo; i < hi; ++i) {
    wv += s.y[i] * (s.x[i] - g.mean) * (s.x[i] - g.mean);
  }
  g.sigma = std::sqrt(std::max(wv / w, 1e-6));
  g.amplitude = peak > 0.0 ? peak : 1.0;
  return g;
}

// Index splitting the series mass into [0, split) and [split, n).
size_t mass_split(const Series& s, double fraction) {
  double total = 0.0;
  for (const double y : s.y) total += y;
  if (total <= 0.0) return s.y.size() / 2;
  double acc = 0.0;
  for (size_t i = 0; i < s.y.size(); ++i) {
    acc += s.y[i];
    if (acc >= fraction * total) return std::clamp<size_t>(i + 1, 1, s.y.size() - 1);
  }
  return s.y.size() / 2;
}

}  // namespace

SingleGaussianFit fit_single_gaussian(const DegreeHistogram& hist) {
  if (hist.bins.empty()) throw DataError("fit_single_gaussian: empty histogram");
  const Series s = binned_series(hist);
  std::vector<GaussianPeak> peaks{moment_seed(s, 0, s.x.size())};
  SingleGaussianFit fit;
  fit.residual = gauss_newton(s, peaks, &fit.converged, &fit.iterations);
  fit.g = peaks[0];
  return fit;
}

TwoGaussianFit fit_two_gaussian(const DegreeHistogram& hist) {
  if (hist.bins.empty()) throw DataError("fit_two_gaussian: empty histogram");
  const Series s = binned_series(hist);

  TwoGaussianFit best;
  bool have_best = false;
  for (const double fraction : {0.5, 0.25}) {
    const size_t split = mass_split(s, fraction);
    std::vector<GaussianPeak> peaks{moment_seed(s, 0, split),
                                    moment_seed(s, split, s.x.size())};
    TwoGaussianFit fit;
    fit.residual = gauss_newton(s, peaks, &fit.converged, &fit.iterations);
    fit.g1 = peaks[0];
    fit.g2 = peaks[1];
    if (fit.g1.mean > fit.g2.mean) std::swap(fit.g1, fit.g2);
    if (!have_best || fit.residual < best.residual) {
      best = fit;
      have_best = true;
    }
    if (best.converged && fraction == 0.5) break;  // good enough, skip restart
  }
  return best;
}

PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw DataError("fit_power_law: need at least 2 points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(points.size());
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) {
      throw DataError("fit_power_law: points must be positive");
    }
    const double lx = std::log(x);
    const double ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-12) throw DataError("fit_power_law: degenerate x values");
  PowerLawFit fit;
  fit.n_points = static_cast<int>(points.size());
  fit.exponent = (n * sxy - sx * sy) / denom;
  fit.prefactor = std::exp((sy - fit.exponent * sx) / n);

  const double mean_ly = sy / n;
  double ss_res = 0.0, ss_tot = 0.0;
  for (const auto& [x, y] : points) {
    const double pred = std::log(fit.prefactor) + fit.exponent * std::log(x);
    const double ly = std::log(y);
    ss_res += (ly - pred) * (ly - pred);
    ss_tot += (ly - mean_ly) * (ly - mean_ly);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace qnet
