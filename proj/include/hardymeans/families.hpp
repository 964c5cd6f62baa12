#pragma once

#include "hardymeans/generator.hpp"
#include "hardymeans/numeric.hpp"
#include "hardymeans/mean_expr.hpp"
#include "hardymeans/sample.hpp"

namespace hardymeans {

// ((sum x_i^p)/n)^(1/p), or the geometric mean at p == 0. Power sums are
// evaluated in the log domain after factoring out the dominant term.
double power_mean(double p, const SampleVector& x);

// f^{-1}((f(x_1) + ... + f(x_n)) / n).
double quasi_arithmetic_mean(const GeneratorSpec& f, const SampleVector& x);

// ((sum x^p)/(sum x^q))^(1/(p-q)) for p != q;
// exp(sum x^p ln x / sum x^p) for p == q.
double gini_mean(double p, double q, const SampleVector& x);

// (f/g)^{-1}(sum f(x_i) / sum g(x_i)); the inverse is found by bisection on
// [min x, max x].
double bajraktarevic_mean(const GeneratorSpec& f, const GeneratorSpec& g,
                          const SampleVector& x);

// Root y in [min x, max x] of sum_i E(x_i, y) = 0.
double deviation_mean(const DeviationSpec& e, const SampleVector& x);

namespace detail {

double clamp_to(double v, double lo, double hi) noexcept;

// Shared finishing steps, also used by the streaming evaluators.
// Power mean from a power sum over n entries.
double power_from_sum(const LogPowerSum& s, std::size_t n);
// Gini mean (p != q) from the two power sums.
double gini_from_sums(const LogPowerSum& sp, const LogPowerSum& sq);
// Solves (f/g)(y) = target on [lo, hi].
double invert_ratio(const GeneratorSpec& f, const GeneratorSpec& g, double target,
                    double lo, double hi);

}  // namespace detail

}  // namespace hardymeans

namespace hardymeans::detail {

// +1 / -1 for increasing / decreasing f/g, 0 when not strictly monotone.
int ratio_direction(const GeneratorSpec& f, const GeneratorSpec& g);
void require_bajraktarevic_pair(const GeneratorSpec& f, const GeneratorSpec& g);

}  // namespace hardymeans::detail
