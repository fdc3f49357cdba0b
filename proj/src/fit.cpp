#include "macrostab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "macrostab/error.hpp"

namespace macrostab {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    fail(ErrorKind::kArgument, "line fit needs at least two (x, y) pairs");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) fail(ErrorKind::kArgument, "line fit needs distinct x values");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

LineFit fit_log_log(std::span<const SizePoint> points) {
  std::vector<double> lx, ly;
  lx.reserve(points.size());
  ly.reserve(points.size());
  for (const SizePoint& p : points) {
    if (!(p.value > 0.0) || p.n_sites <= 0) {
      fail(ErrorKind::kArgument, "log-log fit needs positive sizes and values");
    }
    lx.push_back(std::log(static_cast<double>(p.n_sites)));
    ly.push_back(std::log(p.value));
  }
  return fit_line(lx, ly);
}

int distinct_sizes(std::span<const SizePoint> points) {
  std::set<int> sizes;
  for (const SizePoint& p : points) sizes.insert(p.n_sites);
  return static_cast<int>(sizes.size());
}

}  // namespace macrostab
