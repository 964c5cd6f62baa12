#include "hardymeans/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hardymeans::optimize {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const NelderMeadOptions& opts) {
  const std::size_t n = start.size();
  int evals = 0;
  auto f = [&](const std::vector<double>& x) {
    ++evals;
    const double v = objective(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  std::vector<std::vector<double>> pts(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opts.initial_step;
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  bool converged = false;

  auto point_along = [&](const std::vector<double>& from, double t, std::vector<double>& out) {
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + t * (from[j] - centroid[j]);
  };

  while (evals < opts.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      double d = 0.0;
      for (std::size_t j = 0; j < n; ++j) d = std::max(d, std::abs(pts[i][j] - pts[best][j]));
      diameter = std::max(diameter, d);
    }
    if (std::abs(vals[worst] - vals[best]) <= opts.f_tolerance && diameter <= opts.x_tolerance) {
      converged = true;
      break;
    }
    if (diameter <= opts.x_tolerance * 1e-3) {
      converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    point_along(pts[worst], -1.0, trial);  // reflection
    const double fr = f(trial);
    if (fr < vals[best]) {
      point_along(pts[worst], -2.0, trial2);  // expansion
      const double fe = f(trial2);
      if (fe < fr) {
        pts[worst] = trial2;
        vals[worst] = fe;
      } else {
        pts[worst] = trial;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = trial;
      vals[worst] = fr;
      continue;
    }
    // Contraction: outside if the reflection improved on the worst point.
    const bool outside = fr < vals[worst];
    point_along(pts[worst], outside ? -0.5 : 0.5, trial2);
    const double fc = f(trial2);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = trial2;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {  // shrink toward the best point
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
      vals[i] = f(pts[i]);
    }
  }

  const auto best = static_cast<std::size_t>(
      std::min_element(vals.begin(), vals.end()) - vals.begin());
  return {pts[best], vals[best], evals, converged};
}

}  // namespace hardymeans::optimize
