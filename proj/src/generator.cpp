#include "hardymeans/generator.hpp"

#include <cmath>
#include <sstream>

#include "hardymeans/error.hpp"
#include "hardymeans/numeric.hpp"

namespace hardymeans {

GeneratorSpec GeneratorSpec::pow(double p) {
  if (!std::isfinite(p)) {
    throw MeanError(ErrorCode::invalid_input, "pow generator exponent must be finite");
  }
  return GeneratorSpec(Kind::pow, p);
}

GeneratorSpec GeneratorSpec::neg_pow(double p) {
  if (!std::isfinite(p)) {
    throw MeanError(ErrorCode::invalid_input, "negpow generator exponent must be finite");
  }
  return GeneratorSpec(Kind::neg_pow, p);
}

double GeneratorSpec::operator()(double x) const {
  double y = 0.0;
  switch (kind_) {
    case Kind::identity: y = x; break;
    case Kind::log: y = std::log(x); break;
    case Kind::exp: y = std::exp(x); break;
    case Kind::pow: y = std::pow(x, exponent_); break;
    case Kind::neg_pow: y = -std::pow(x, exponent_); break;
  }
  if (!std::isfinite(y)) {
    std::ostringstream msg;
    msg << "generator " << to_string() << " overflows at x=" << x;
    throw MeanError(ErrorCode::overflow, msg.str());
  }
  return y;
}

double GeneratorSpec::inverse(double y) const {
  const double x = raw_inverse(y);
  if (std::isinf(x)) {
    throw MeanError(ErrorCode::overflow, "inverse of generator " + to_string() + " overflows");
  }
  if (!(x > 0.0)) {
    std::ostringstream msg;
    msg << "value " << y << " is outside the range of generator " << to_string();
    throw MeanError(ErrorCode::invalid_generator, msg.str());
  }
  return x;
}

double GeneratorSpec::raw_inverse(double y) const {
  auto out_of_range = [&] {
    std::ostringstream msg;
    msg << "value " << y << " is outside the range of generator " << to_string();
    return MeanError(ErrorCode::invalid_generator, msg.str());
  };
  switch (kind_) {
    case Kind::identity:
      if (!(y > 0.0)) throw out_of_range();
      return y;
    case Kind::log: return std::exp(y);
    case Kind::exp:
      if (!(y > 1.0)) throw out_of_range();
      return std::log(y);
    case Kind::pow:
    case Kind::neg_pow: {
      if (exponent_ == 0.0) {
        throw MeanError(ErrorCode::invalid_generator,
                        "constant generator " + to_string() + " has no inverse");
      }
      const double base = kind_ == Kind::pow ? y : -y;
      if (!(base > 0.0)) throw out_of_range();
      return std::pow(base, 1.0 / exponent_);
    }
  }
  throw out_of_range();
}

bool GeneratorSpec::strictly_monotone() const noexcept { return direction() != 0; }

int GeneratorSpec::direction() const noexcept {
  switch (kind_) {
    case Kind::identity:
    case Kind::log:
    case Kind::exp: return 1;
    case Kind::pow: return exponent_ > 0.0 ? 1 : (exponent_ < 0.0 ? -1 : 0);
    case Kind::neg_pow: return exponent_ > 0.0 ? -1 : (exponent_ < 0.0 ? 1 : 0);
  }
  return 0;
}

std::string GeneratorSpec::to_string() const {
  switch (kind_) {
    case Kind::identity: return "id";
    case Kind::log: return "log";
    case Kind::exp: return "exp";
    case Kind::pow: return "pow:" + format_number(exponent_);
    case Kind::neg_pow: return "negpow:" + format_number(exponent_);
  }
  return "?";
}

}  // namespace hardymeans
