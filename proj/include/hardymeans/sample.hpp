#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hardymeans {

// Nonempty tuple of strictly positive finite reals; the argument of every mean.
class SampleVector {
 public:
  // Throws MeanError(invalid_input) if empty or if any entry is not a
  // positive finite number.
  explicit SampleVector(std::vector<double> entries);
  SampleVector(std::initializer_list<double> entries)
      : SampleVector(std::vector<double>(entries)) {}

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const noexcept { return entries_[i]; }
  std::span<const double> values() const noexcept { return entries_; }
  const std::vector<double>& entries() const noexcept { return entries_; }

  double min() const noexcept;
  double max() const noexcept;
  bool is_constant() const noexcept { return min() == max(); }

  // First k entries, 1 <= k <= size().
  SampleVector prefix(std::size_t k) const;
  SampleVector scaled(double t) const;
  // Each entry repeated m times in place: (x1,..,x1, x2,..,x2, ...).
  SampleVector repeated_blockwise(std::size_t m) const;
  SampleVector appended(double v) const;

  friend bool operator==(const SampleVector&, const SampleVector&) = default;

 private:
  std::vector<double> entries_;
};

}  // namespace hardymeans
