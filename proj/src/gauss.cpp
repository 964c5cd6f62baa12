#include "hardymeans/gauss.hpp"

#include <algorithm>
#include <sstream>

#include "hardymeans/error.hpp"
#include "hardymeans/evaluate.hpp"

namespace hardymeans {

void GaussConfig::validate() const {
  if (!(tolerance > 0.0) || max_iterations < 1) {
    throw MeanError(ErrorCode::invalid_input,
                    "Gauss config needs tolerance > 0 and max_iterations >= 1");
  }
}

SampleVector gauss_step(const std::vector<MeanExpr>& means, const SampleVector& v) {
  if (means.size() < 2) {
    throw MeanError(ErrorCode::arity_error, "a Gaussian product needs at least two means");
  }
  std::vector<double> next;
  next.reserve(means.size());
  for (const auto& m : means) next.push_back(evaluate(m, v));
  return SampleVector(std::move(next));
}

namespace {

// Iterates until the bracket closes. `trace` may be null.
double iterate(const std::vector<MeanExpr>& means, SampleVector current, int done,
               const GaussConfig& cfg, GaussTrace* trace) {
  cfg.validate();
  for (int k = done;; ++k) {
    const double lo = current.min();
    const double hi = current.max();
    if (trace) {
      trace->mins.push_back(lo);
      trace->maxs.push_back(hi);
    }
    const double gap = (hi - lo) / hi;
    if (gap < cfg.tolerance) {
      const double value = lo + 0.5 * (hi - lo);
      if (trace) {
        trace->value = value;
        trace->iterations = k;
        trace->final_gap = gap;
      }
      return value;
    }
    if (k >= cfg.max_iterations) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "Gaussian product did not converge after " << k
          << " iterations; final relative gap " << gap;
      throw MeanError(ErrorCode::non_convergence, msg.str());
    }
    current = gauss_step(means, current);
  }
}

}  // namespace

double gauss_product(const std::vector<MeanExpr>& means, const SampleVector& v,
                     const GaussConfig& cfg) {
  if (means.size() < 2) {
    throw MeanError(ErrorCode::arity_error, "a Gaussian product needs at least two means");
  }
  return iterate(means, v, 0, cfg, nullptr);
}

GaussTrace gauss_product_trace(const std::vector<MeanExpr>& means, const SampleVector& v,
                               const GaussConfig& cfg) {
  if (means.size() < 2) {
    throw MeanError(ErrorCode::arity_error, "a Gaussian product needs at least two means");
  }
  GaussTrace trace{};
  iterate(means, v, 0, cfg, &trace);
  return trace;
}

double gauss_iterate(const std::vector<MeanExpr>& means, SampleVector first_step,
                     const GaussConfig& cfg) {
  return iterate(means, std::move(first_step), 1, cfg, nullptr);
}

}  // namespace hardymeans
