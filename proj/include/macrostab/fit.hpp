#pragma once

#include <span>
#include <vector>

namespace macrostab {

// One (system size, measured value) sample of a finite-size sweep.
struct SizePoint {
  int n_sites = 0;
  double value = 0.0;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS deviation of the fitted line
};

// Unweighted least-squares line through (x, y). Needs >= 2 distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Fit of ln(value) against ln(n_sites). Values must be > 0.
LineFit fit_log_log(std::span<const SizePoint> points);

// Number of distinct sizes in a sweep.
int distinct_sizes(std::span<const SizePoint> points);

}  // namespace macrostab
