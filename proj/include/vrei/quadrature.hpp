#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "vrei/errors.hpp"

namespace vrei {

struct QuadratureOptions {
  double tol = 1e-10;          // absolute error target (max-norm for vector integrands)
  double max_width = 0.0;      // initial panel width cap, 0 = none
  double min_width = 1e-8 * std::numbers::pi;  // panels narrower than this are not split
  std::size_t max_panels = 400000;
  std::vector<double> breakpoints;  // forced panel boundaries inside (a, b)
};

template <class T>
struct QuadratureResult {
  T value;
  double error = 0.0;
  std::size_t panels = 0;
  std::size_t evaluations = 0;
};

namespace detail {

inline double quad_norm(double x) { return std::abs(x); }
inline double quad_norm(const std::complex<double>& x) { return std::abs(x); }
template <class Derived>
double quad_norm(const Eigen::ArrayBase<Derived>& x) {
  return x.size() == 0 ? 0.0 : x.abs().maxCoeff();
}

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F, class T = std::decay_t<std::invoke_result_t<F&, double>>>
Panel<T> gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T fc = f(center);
  T kronrod = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    T pair = f(center - dx) + f(center + dx);
    kronrod = kronrod + pair * kKronrodWeights[j];
    if (j % 2 == 1) gauss = gauss + pair * kGaussWeights[j / 2];
  }
  T value = kronrod * half;
  const double error = quad_norm((kronrod - gauss) * half);
  return {a, b, std::move(value), error};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration of f over [a, b]. The panel
// with the largest error estimate is bisected until the summed estimate
// drops below the tolerance.
template <class F>
auto adaptive_integrate(F&& f, double a, double b, const QuadratureOptions& options)
    -> QuadratureResult<std::decay_t<std::invoke_result_t<F&, double>>> {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  if (!(b > a)) throw DomainError("integration interval must satisfy b > a");

  std::vector<double> edges{a};
  std::vector<double> cuts = options.breakpoints;
  std::sort(cuts.begin(), cuts.end());
  for (double c : cuts) {
    if (c > edges.back() && c < b) edges.push_back(c);
  }
  edges.push_back(b);

  std::priority_queue<detail::Panel<T>> queue;
  QuadratureResult<T> out;
  bool have_value = false;
  double total_error = 0.0;
  auto push = [&](detail::Panel<T>&& p) {
    out.evaluations += 15;
    total_error += p.error;
    if (!have_value) {
      out.value = p.value;
      have_value = true;
    } else {
      out.value = out.value + p.value;
    }
    queue.push(std::move(p));
  };
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double width = edges[i + 1] - edges[i];
    std::size_t pieces = 1;
    if (options.max_width > 0.0 && width > options.max_width) {
      pieces = static_cast<std::size_t>(std::ceil(width / options.max_width));
    }
    for (std::size_t j = 0; j < pieces; ++j) {
      const double lo = edges[i] + width * static_cast<double>(j) / pieces;
      const double hi = (j + 1 == pieces) ? edges[i + 1]
                                          : edges[i] + width * static_cast<double>(j + 1) / pieces;
      push(detail::gauss_kronrod_15(f, lo, hi));
    }
  }

  double frozen_error = 0.0;  // panels at the minimum width
  std::vector<detail::Panel<T>> frozen;
  auto target = [&] {
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * detail::quad_norm(out.value);
    return std::max(options.tol, floor);
  };
  while (total_error > target()) {
    if (queue.empty()) break;
    if (queue.size() + frozen.size() >= options.max_panels) {
      throw ConvergenceError("adaptive quadrature exhausted its panel budget (error estimate " +
                             std::to_string(total_error) + ")");
    }
    detail::Panel<T> worst = queue.top();
    queue.pop();
    if (worst.b - worst.a < options.min_width) {
      frozen_error += worst.error;
      frozen.push_back(std::move(worst));
      if (frozen_error > target()) {
        throw ConvergenceError("adaptive quadrature cannot refine below the minimum panel width");
      }
      continue;
    }
    total_error -= worst.error;
    out.value = out.value - worst.value;
    const double mid = 0.5 * (worst.a + worst.b);
    push(detail::gauss_kronrod_15(f, worst.a, mid));
    push(detail::gauss_kronrod_15(f, mid, worst.b));
  }

  // Re-sum from the panels to shed accumulated add/subtract rounding.
  bool first = true;
  auto accumulate = [&](const detail::Panel<T>& p) {
    if (first) {
      out.value = p.value;
      first = false;
    } else {
      out.value = out.value + p.value;
    }
  };
  out.panels = queue.size() + frozen.size();
  out.error = total_error;
  while (!queue.empty()) {
    accumulate(queue.top());
    queue.pop();
  }
  for (const auto& p : frozen) accumulate(p);
  return out;
}

// Brillouin-zone integral over [0, pi] with a forced boundary at the
// crossover momentum pi/Z and a panel width of at most pi/(4 max(r, 1)), so
// cos(kr) and sin(kr) get at least four panels per period.
template <class F>
auto integrate_brillouin(F&& f, int r, int coordination, double tol,
                         std::vector<double> extra_breakpoints = {}) {
  QuadratureOptions options;
  options.tol = tol;
  options.max_width = std::numbers::pi / (4.0 * std::max(r, 1));
  options.breakpoints = std::move(extra_breakpoints);
  if (coordination > 1) {
    const double kz = std::numbers::pi / coordination;
    options.breakpoints.push_back(kz);
    // graded panels toward k = 0 where the critical integrands are sharpest
    for (double edge = kz / 16.0; edge > 1e-8 * std::numbers::pi; edge /= 16.0) {
      options.breakpoints.push_back(edge);
    }
  }
  return adaptive_integrate(std::forward<F>(f), 0.0, std::numbers::pi, options);
}

}  // namespace vrei
