#include "vrei/fitting.hpp"

#include <cmath>

#include "vrei/errors.hpp"

namespace vrei {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw FitError("linear fit needs equally sized x and y");
  const std::size_t n = x.size();
  if (n < 2) throw FitError("linear fit needs at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw FitError("linear fit needs at least two distinct x values");

  LinearFit fit;
  fit.n = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double res = y[i] - (fit.intercept + fit.slope * x[i]);
    rss += res * res;
  }
  fit.rss = rss;
  fit.r_squared = syy > 0.0 ? 1.0 - rss / syy : 1.0;
  if (n > 2) {
    const double sigma2 = rss / static_cast<double>(n - 2);
    fit.slope_err = std::sqrt(sigma2 / sxx);
    fit.intercept_err = std::sqrt(sigma2 * (1.0 / n + mx * mx / sxx));
  }
  return fit;
}

}  // namespace vrei
