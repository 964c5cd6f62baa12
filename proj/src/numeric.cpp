#include "hardymeans/numeric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "hardymeans/error.hpp"

namespace hardymeans {

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_input: return "E_INVALID_INPUT";
    case ErrorCode::invalid_generator: return "E_INVALID_GENERATOR";
    case ErrorCode::overflow: return "E_OVERFLOW";
    case ErrorCode::non_convergence: return "E_NON_CONVERGENCE";
    case ErrorCode::no_sign_change: return "E_NO_SIGN_CHANGE";
    case ErrorCode::out_of_range: return "E_OUT_OF_RANGE";
    case ErrorCode::parse_error: return "E_PARSE";
    case ErrorCode::arity_error: return "E_ARITY";
    case ErrorCode::unknown_generator: return "E_UNKNOWN_GENERATOR";
  }
  return "E_UNKNOWN";
}

void CompensatedSum::add(double v) noexcept {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    comp_ += (sum_ - t) + v;
  } else {
    comp_ += (v - t) + sum_;
  }
  sum_ = t;
}

double compensated_sum(std::span<const double> values) noexcept {
  CompensatedSum s;
  for (double v : values) s.add(v);
  return s.value();
}

namespace {
// Terms above this are folded into a new scale.
constexpr double kRescaleAbove = 0x1p500;
}  // namespace

void LogPowerSum::add(double x) noexcept {
  if (scale_ == 0.0) scale_ = x;
  double term = std::pow(x / scale_, p_);
  if (term > kRescaleAbove) {
    sum_.scale(1.0 / term);
    scale_ = x;
    term = 1.0;
  }
  sum_.add(term);
}

double LogPowerSum::log_value() const noexcept {
  return p_ * std::log(scale_) + log_scaled_sum();
}

double LogPowerSum::log_scaled_sum() const noexcept { return std::log(sum_.value()); }

void LogWeightedLogMean::add(double x) noexcept {
  if (scale_ == 0.0) scale_ = x;
  double w = std::pow(x / scale_, p_);
  if (w > kRescaleAbove) {
    num_.scale(1.0 / w);
    den_.scale(1.0 / w);
    scale_ = x;
    w = 1.0;
  }
  num_.add(w * std::log(x));
  den_.add(w);
}

BisectionResult bisect(const std::function<double(double)>& fn, double lo, double hi,
                       double rel_tol, int max_iterations) {
  if (!(lo <= hi)) {
    throw MeanError(ErrorCode::invalid_input, "bisect: empty bracket");
  }
  double f_lo = fn(lo);
  if (f_lo == 0.0) return {lo, 0};
  double f_hi = fn(hi);
  if (f_hi == 0.0) return {hi, 0};
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    std::ostringstream msg;
    msg << "no sign change on [" << lo << ", " << hi << "]: f(lo)=" << f_lo
        << ", f(hi)=" << f_hi;
    throw MeanError(ErrorCode::no_sign_change, msg.str());
  }
  int it = 0;
  for (; it < max_iterations; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // adjacent doubles
    const double f_mid = fn(mid);
    if (f_mid == 0.0) return {mid, it + 1};
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  if (hi - lo > rel_tol * std::max(std::abs(lo), std::abs(hi))) {
    std::ostringstream msg;
    msg << "bisection did not converge after " << it << " iterations; bracket ["
        << lo << ", " << hi << "]";
    throw MeanError(ErrorCode::non_convergence, msg.str());
  }
  return {lo + 0.5 * (hi - lo), it};
}

namespace {

std::uint64_t splitmix64(std::uint64_t& s) noexcept {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

// xoshiro256**
Rng::Rng(std::uint64_t seed) {
  std::uint64_t s = seed;
  for (auto& w : state_) w = splitmix64(s);
}

std::uint64_t Rng::next() noexcept {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform() noexcept {
  return static_cast<double>(next() >> 11) * 0x1p-53;
}

double Rng::log_uniform(double lo, double hi) noexcept {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

int Rng::integer(int lo, int hi) noexcept {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next() % span);
}

double Rng::normal() noexcept {
  // Box-Muller; u1 in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

bool close_rel(double a, double b, double rel_tol) noexcept {
  return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace hardymeans
