#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hardymeans/mean_expr.hpp"

namespace hardymeans {

enum class Property {
  symmetry,
  mean_value,
  repetition_invariance,
  homogeneity,
  increasing,
  jensen_concavity,
  jensen_convexity,
  min_diminishing,
  strictness,
};

inline constexpr std::array<Property, 9> kAllProperties = {
    Property::symmetry,         Property::mean_value,       Property::repetition_invariance,
    Property::homogeneity,      Property::increasing,       Property::jensen_concavity,
    Property::jensen_convexity, Property::min_diminishing,  Property::strictness,
};

std::string_view property_name(Property p) noexcept;

struct ProbeConfig {
  int samples = 200;
  int min_dim = 1;
  int max_dim = 8;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;  // relative
  // Entries are drawn log-uniformly from [entry_lo, entry_hi].
  double entry_lo = 1e-3;
  double entry_hi = 1e3;

  void validate() const;
};

struct Counterexample {
  std::vector<std::vector<double>> inputs;
  std::vector<double> observed;
  // How far past the tolerance the defining relation failed, relative to the
  // magnitude of the compared values. Always positive.
  double margin;
  std::string relation;
};

// "holds" means no violation was found on the sampled inputs; sampling can only
// refute a property, never prove it.
struct PropertyVerdict {
  Property property;
  bool holds;
  int trials;  // inputs on which the relation was actually tested
  std::optional<Counterexample> counterexample;
};

struct PropertyReport {
  std::vector<PropertyVerdict> verdicts;

  const PropertyVerdict& at(Property p) const;
  bool holds(Property p) const { return at(p).holds; }
};

// Evaluates the defining relation of each property on pseudo-random inputs.
// Deterministic for a fixed cfg. A MeanError raised while evaluating a trial
// marks that property violated, with an infinite margin and the error text as
// the relation. Strict relations (min-diminishing, strictness) count as
// violated when the required strict gap is not resolvable at the tolerance.
PropertyReport probe_properties(const MeanExpr& expr, const ProbeConfig& cfg = {});

}  // namespace hardymeans
