#include "debeam/stats.hpp"

#include <cmath>

namespace debeam::stats {

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double linear_fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int dominant_frequency_bin(const std::vector<double>& series) {
  const int n = static_cast<int>(series.size());
  const double mu = mean(series);
  int best = 1;
  double best_mag = -1.0;
  for (int k = 1; k <= n / 2; ++k) {
    // phasor recurrence instead of per-sample trig calls
    double ang = -2.0 * M_PI * k / n;
    double wr = std::cos(ang), wi = std::sin(ang);
    double cr = 1.0, ci = 0.0;
    double re = 0.0, im = 0.0;
    for (int j = 0; j < n; ++j) {
      double v = series[j] - mu;
      re += v * cr;
      im += v * ci;
      double nr = cr * wr - ci * wi;
      ci = cr * wi + ci * wr;
      cr = nr;
    }
    double mag = re * re + im * im;
    if (mag > best_mag) {
      best_mag = mag;
      best = k;
    }
  }
  return best;
}

}  // namespace debeam::stats
