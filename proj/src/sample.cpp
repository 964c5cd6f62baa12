#include "hardymeans/sample.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hardymeans/error.hpp"

namespace hardymeans {

SampleVector::SampleVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw MeanError(ErrorCode::invalid_input, "sample vector must be nonempty");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const double v = entries_[i];
    if (!(std::isfinite(v) && v > 0.0)) {
      std::ostringstream msg;
      msg << "sample entry " << i << " must be positive and finite, got " << v;
      throw MeanError(ErrorCode::invalid_input, msg.str());
    }
  }
}

double SampleVector::min() const noexcept {
  return *std::min_element(entries_.begin(), entries_.end());
}

double SampleVector::max() const noexcept {
  return *std::max_element(entries_.begin(), entries_.end());
}

SampleVector SampleVector::prefix(std::size_t k) const {
  if (k == 0 || k > entries_.size()) {
    throw MeanError(ErrorCode::invalid_input, "prefix length out of range");
  }
  return SampleVector(std::vector<double>(entries_.begin(), entries_.begin() + k));
}

SampleVector SampleVector::scaled(double t) const {
  std::vector<double> out(entries_);
  for (double& v : out) v *= t;
  return SampleVector(std::move(out));
}

SampleVector SampleVector::repeated_blockwise(std::size_t m) const {
  std::vector<double> out;
  out.reserve(entries_.size() * m);
  for (double v : entries_) out.insert(out.end(), m, v);
  return SampleVector(std::move(out));
}

SampleVector SampleVector::appended(double v) const {
  std::vector<double> out(entries_);
  out.push_back(v);
  return SampleVector(std::move(out));
}

}  // namespace hardymeans
