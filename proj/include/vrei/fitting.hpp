#pragma once

#include <span>

namespace vrei {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_err = 0.0;
  double intercept_err = 0.0;
  double r_squared = 0.0;
  double rss = 0.0;  // residual sum of squares
  std::size_t n = 0;
};

// Ordinary least squares y = intercept + slope * x. Needs n >= 2 distinct x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

}  // namespace vrei
