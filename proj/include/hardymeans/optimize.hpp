#pragma once

#include <functional>
#include <vector>

namespace hardymeans::optimize {

struct NelderMeadOptions {
  int max_evaluations = 4000;
  double initial_step = 1.0;
  double f_tolerance = 1e-14;  // spread of simplex values
  double x_tolerance = 1e-10;  // simplex diameter
};

struct NelderMeadResult {
  std::vector<double> x;
  double value;
  int evaluations;
  bool converged;
};

// Minimizes `objective` from `start` with the standard Nelder-Mead moves
// (reflection 1, expansion 2, contraction 1/2, shrink 1/2). Objective values
// that are not finite are treated as +inf.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const NelderMeadOptions& opts = {});

}  // namespace hardymeans::optimize
