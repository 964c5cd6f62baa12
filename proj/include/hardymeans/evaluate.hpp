#pragma once

#include <memory>

#include "hardymeans/mean_expr.hpp"
#include "hardymeans/sample.hpp"

namespace hardymeans {

// M(x) for the mean described by expr. The result lies in [min x, max x].
// Inner solver failures surface as MeanError(non_convergence) or
// MeanError(no_sign_change).
double evaluate(const MeanExpr& expr, const SampleVector& x);

// Streams M(x_1), M(x_1, x_2), ... over a growing prefix. Families with
// sufficient statistics (power sums, generator sums) update in O(1) per push;
// deviation means re-solve over the stored prefix.
class PrefixEvaluator {
 public:
  virtual ~PrefixEvaluator() = default;

  virtual void push(double x) = 0;
  // Mean of everything pushed so far. Requires at least one push.
  virtual double value() const = 0;
  virtual std::size_t size() const = 0;
  // True when push/value avoid re-reading the whole prefix.
  virtual bool incremental() const = 0;
};

std::unique_ptr<PrefixEvaluator> make_prefix_evaluator(const MeanExpr& expr);

}  // namespace hardymeans
