#pragma once

#include <string>

namespace hardymeans {

// The fixed catalogue of generating functions on the positive half-line.
// pow(p) is x^p; neg_pow(p) is -x^p. pow(0) is the constant 1, which is a valid
// Bajraktarevic denominator but not a quasi-arithmetic generator.
class GeneratorSpec {
 public:
  enum class Kind { identity, log, exp, pow, neg_pow };

  static GeneratorSpec identity() { return GeneratorSpec(Kind::identity, 1.0); }
  static GeneratorSpec log() { return GeneratorSpec(Kind::log, 0.0); }
  static GeneratorSpec exp() { return GeneratorSpec(Kind::exp, 0.0); }
  static GeneratorSpec pow(double p);
  static GeneratorSpec neg_pow(double p);

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return exponent_; }

  // f(x). Throws MeanError(overflow) when the result is not finite.
  double operator()(double x) const;
  // f^{-1}(y). Throws MeanError(invalid_generator) when y is outside the range
  // of f on the positive half-line or f is not invertible.
  double inverse(double y) const;

  bool strictly_monotone() const noexcept;
  // +1 increasing, -1 decreasing, 0 constant.
  int direction() const noexcept;
  bool positive() const noexcept { return kind_ == Kind::pow || kind_ == Kind::exp; }
  // x^p scales homogeneously; identity is pow(1).
  bool is_power() const noexcept { return kind_ == Kind::pow || kind_ == Kind::identity; }

  std::string to_string() const;

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;

 private:
  GeneratorSpec(Kind kind, double exponent) : kind_(kind), exponent_(exponent) {}

  double raw_inverse(double y) const;

  Kind kind_;
  double exponent_;
};

}  // namespace hardymeans
