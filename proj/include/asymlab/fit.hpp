#pragma once

// Ordinary least squares on (log n, log value) pairs, for scaling exponents.

#include <cmath>
#include <limits>
#include <vector>

namespace asymlab {

struct LineFit {
  double slope = std::numeric_limits<double>::quiet_NaN();
  double intercept = std::numeric_limits<double>::quiet_NaN();
  int points = 0;
};

inline LineFit ols(const std::vector<double>& xs, const std::vector<double>& ys) {
  LineFit fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    ++m;
  }
  fit.points = m;
  if (m < 2) return fit;
  double denom = m * sxx - sx * sx;
  if (denom == 0) return fit;
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  return fit;
}

// Fit of log(value) against log(n); non-positive values are skipped.
inline LineFit ols_loglog(const std::vector<double>& ns, const std::vector<double>& values) {
  std::vector<double> xs, ys;
  for (size_t i = 0; i < ns.size() && i < values.size(); ++i) {
    if (!(ns[i] > 0) || !(values[i] > 0)) continue;
    xs.push_back(std::log(ns[i]));
    ys.push_back(std::log(values[i]));
  }
  return ols(xs, ys);
}

}  // namespace asymlab
