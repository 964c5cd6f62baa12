#include "hardymeans/families.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hardymeans/error.hpp"
#include "hardymeans/numeric.hpp"

namespace hardymeans {

namespace detail {

double clamp_to(double v, double lo, double hi) noexcept { return std::clamp(v, lo, hi); }

double power_from_sum(const LogPowerSum& s, std::size_t n) {
  const double p = s.exponent();
  return s.scale() * std::exp((s.log_scaled_sum() - std::log(static_cast<double>(n))) / p);
}

double gini_from_sums(const LogPowerSum& sp, const LogPowerSum& sq) {
  const double p = sp.exponent();
  const double q = sq.exponent();
  const double log_scale = (p * std::log(sp.scale()) - q * std::log(sq.scale())) / (p - q);
  return std::exp(log_scale + (sp.log_scaled_sum() - sq.log_scaled_sum()) / (p - q));
}

double invert_ratio(const GeneratorSpec& f, const GeneratorSpec& g, double target, double lo,
                    double hi) {
  const int dir = ratio_direction(f, g);
  auto h = [&](double y) { return f(y) / g(y); };
  if (lo == hi) return lo;
  // Roundoff can push a target that sits on an endpoint just outside the
  // range of f/g over [lo, hi].
  const double h_lo = h(lo);
  const double h_hi = h(hi);
  const double slack = 1e-12 * std::max(std::abs(h_lo), std::abs(h_hi));
  if (dir * (target - h_lo) <= 0.0 && std::abs(target - h_lo) <= slack) return lo;
  if (dir * (target - h_hi) >= 0.0 && std::abs(target - h_hi) <= slack) return hi;
  return bisect([&](double y) { return h(y) - target; }, lo, hi).root;
}

}  // namespace detail

double power_mean(double p, const SampleVector& x) {
  const double lo = x.min();
  const double hi = x.max();
  if (lo == hi) return lo;
  const std::size_t n = x.size();
  if (p == 0.0) {
    CompensatedSum logs;
    for (double v : x.values()) logs.add(std::log(v / hi));
    return detail::clamp_to(hi * std::exp(logs.value() / static_cast<double>(n)), lo, hi);
  }
  // Max-shift: the largest x^p becomes 1.
  LogPowerSum s(p, p > 0.0 ? hi : lo);
  for (double v : x.values()) s.add(v);
  return detail::clamp_to(detail::power_from_sum(s, n), lo, hi);
}

double quasi_arithmetic_mean(const GeneratorSpec& f, const SampleVector& x) {
  if (!f.strictly_monotone()) {
    throw MeanError(ErrorCode::invalid_generator,
                    "quasi-arithmetic generator " + f.to_string() + " is not strictly monotone");
  }
  const double lo = x.min();
  const double hi = x.max();
  if (lo == hi) return lo;
  CompensatedSum s;
  if (f.kind() == GeneratorSpec::Kind::exp) {
    // log-sum-exp, shifted by the maximum
    for (double v : x.values()) s.add(std::exp(v - hi));
    return detail::clamp_to(hi + std::log(s.value() / static_cast<double>(x.size())), lo, hi);
  }
  for (double v : x.values()) s.add(f(v));
  return detail::clamp_to(f.inverse(s.value() / static_cast<double>(x.size())), lo, hi);
}

double gini_mean(double p, double q, const SampleVector& x) {
  const double lo = x.min();
  const double hi = x.max();
  if (lo == hi) return lo;
  // One code path for (p, q) and (q, p).
  if (p < q) std::swap(p, q);
  if (p == q) {
    LogWeightedLogMean m(p, p >= 0.0 ? hi : lo);
    for (double v : x.values()) m.add(v);
    return detail::clamp_to(std::exp(m.value()), lo, hi);
  }
  LogPowerSum sp(p, p >= 0.0 ? hi : lo);
  LogPowerSum sq(q, q >= 0.0 ? hi : lo);
  for (double v : x.values()) {
    sp.add(v);
    sq.add(v);
  }
  return detail::clamp_to(detail::gini_from_sums(sp, sq), lo, hi);
}

double bajraktarevic_mean(const GeneratorSpec& f, const GeneratorSpec& g, const SampleVector& x) {
  detail::require_bajraktarevic_pair(f, g);
  const double lo = x.min();
  const double hi = x.max();
  if (lo == hi) return lo;
  CompensatedSum sf;
  CompensatedSum sg;
  for (double v : x.values()) {
    sf.add(f(v));
    sg.add(g(v));
  }
  return detail::clamp_to(detail::invert_ratio(f, g, sf.value() / sg.value(), lo, hi), lo, hi);
}

double deviation_mean(const DeviationSpec& e, const SampleVector& x) {
  const double lo = x.min();
  const double hi = x.max();
  if (lo == hi) return lo;
  double magnitude = 0.0;
  auto total = [&](double y) {
    CompensatedSum s;
    magnitude = 0.0;
    for (double v : x.values()) {
      const double d = e(v, y);
      s.add(d);
      magnitude += std::abs(d);
    }
    return s.value();
  };
  const double at_lo = total(lo);
  const double mag_lo = magnitude;
  const double at_hi = total(hi);
  const double mag_hi = magnitude;
  if (at_lo != 0.0 && at_hi != 0.0 && std::signbit(at_lo) == std::signbit(at_hi)) {
    // A root sitting on an endpoint can lose its sign change to roundoff.
    if (std::abs(at_lo) <= 1e-12 * mag_lo) return lo;
    if (std::abs(at_hi) <= 1e-12 * mag_hi) return hi;
  }
  return detail::clamp_to(bisect(total, lo, hi).root, lo, hi);
}

}  // namespace hardymeans
