#pragma once

#include <vector>

#include "hardymeans/mean_expr.hpp"
#include "hardymeans/sample.hpp"

namespace hardymeans {

struct GaussConfig {
  double tolerance = 1e-13;  // relative (max - min) / max gap
  int max_iterations = 10000;

  void validate() const;
};

// (M_1(v), ..., M_N(v)).
SampleVector gauss_step(const std::vector<MeanExpr>& means, const SampleVector& v);

struct GaussTrace {
  double value;
  int iterations;
  double final_gap;
  // min and max of each iterate, starting with v itself.
  std::vector<double> mins;
  std::vector<double> maxs;
};

// Common limit of the iterates of gauss_step, returned as the midpoint of the
// final [min, max] bracket. Throws MeanError(non_convergence) with the final
// gap when the bracket does not close within cfg.max_iterations.
double gauss_product(const std::vector<MeanExpr>& means, const SampleVector& v,
                     const GaussConfig& cfg = {});

GaussTrace gauss_product_trace(const std::vector<MeanExpr>& means,
                               const SampleVector& v, const GaussConfig& cfg = {});

// Iterates from an already computed first step.
double gauss_iterate(const std::vector<MeanExpr>& means, SampleVector first_step,
                     const GaussConfig& cfg = {});

}  // namespace hardymeans
