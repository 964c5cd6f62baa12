#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <span>
#include <vector>

namespace hardymeans {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) noexcept;
  double value() const noexcept { return sum_ + comp_; }
  void scale(double factor) noexcept {
    sum_ *= factor;
    comp_ *= factor;
  }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> values) noexcept;

// Running value of log(sum_i x_i^p) for positive x_i, p != 0.
//
// Terms are stored relative to a scale element m as (x/m)^p. A batch caller
// passes the max-shift scale up front (the x maximizing x^p) so every term is
// at most 1; a streaming caller lets the first element set the scale and the
// accumulator rescales whenever a term grows past 2^500.
class LogPowerSum {
 public:
  explicit LogPowerSum(double p) noexcept : p_(p) {}
  LogPowerSum(double p, double scale) noexcept : p_(p), scale_(scale) {}

  void add(double x) noexcept;
  double log_value() const noexcept;
  double exponent() const noexcept { return p_; }
  double scale() const noexcept { return scale_; }
  // log(sum_i (x_i / scale)^p)
  double log_scaled_sum() const noexcept;

 private:
  double p_;
  double scale_ = 0.0;  // 0 until the first add when no scale was given
  CompensatedSum sum_;
};

// Running x^p-weighted average of log(x), the p = q Gini branch.
class LogWeightedLogMean {
 public:
  explicit LogWeightedLogMean(double p) noexcept : p_(p) {}
  LogWeightedLogMean(double p, double scale) noexcept : p_(p), scale_(scale) {}

  void add(double x) noexcept;
  double value() const noexcept { return num_.value() / den_.value(); }

 private:
  double p_;
  double scale_ = 0.0;
  CompensatedSum num_;
  CompensatedSum den_;
};

struct BisectionResult {
  double root;
  int iterations;
};

// Finds the sign change of a continuous strictly monotone `fn` on [lo, hi].
// Bisection runs until the bracket collapses to adjacent doubles; it fails with
// ErrorCode::non_convergence if after `max_iterations` the bracket is still
// wider than `rel_tol` relative, and with ErrorCode::no_sign_change if fn has
// the same strict sign at both ends.
BisectionResult bisect(const std::function<double(double)>& fn, double lo,
                       double hi, double rel_tol = 1e-13,
                       int max_iterations = 200);

// Deterministic 64-bit generator with a portable double mapping; the standard
// distributions are implementation-defined, so they are avoided.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next() noexcept;
  double uniform() noexcept;  // [0, 1)
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi) noexcept;
  // Integer in [lo, hi].
  int integer(int lo, int hi) noexcept;
  double normal() noexcept;

 private:
  std::uint64_t state_[4];
};

bool close_rel(double a, double b, double rel_tol) noexcept;

}  // namespace hardymeans

namespace hardymeans {

// Shortest decimal string that parses back to exactly `v`.
std::string format_number(double v);

}  // namespace hardymeans
