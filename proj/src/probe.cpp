#include "hardymeans/probe.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "hardymeans/error.hpp"
#include "hardymeans/evaluate.hpp"
#include "hardymeans/numeric.hpp"

namespace hardymeans {

std::string_view property_name(Property p) noexcept {
  switch (p) {
    case Property::symmetry: return "symmetry";
    case Property::mean_value: return "mean_value";
    case Property::repetition_invariance: return "repetition_invariance";
    case Property::homogeneity: return "homogeneity";
    case Property::increasing: return "increasing";
    case Property::jensen_concavity: return "jensen_concavity";
    case Property::jensen_convexity: return "jensen_convexity";
    case Property::min_diminishing: return "min_diminishing";
    case Property::strictness: return "strictness";
  }
  return "unknown";
}

void ProbeConfig::validate() const {
  if (samples < 1 || !(tolerance > 0.0) || min_dim < 1 || max_dim < min_dim ||
      !(entry_lo > 0.0) || !(entry_hi >= entry_lo) || !std::isfinite(entry_hi)) {
    throw MeanError(ErrorCode::invalid_input,
                    "probe config needs samples >= 1, tolerance > 0, 1 <= min_dim <= max_dim "
                    "and 0 < entry_lo <= entry_hi");
  }
}

const PropertyVerdict& PropertyReport::at(Property p) const {
  for (const auto& v : verdicts) {
    if (v.property == p) return v;
  }
  throw MeanError(ErrorCode::invalid_input, "property missing from report");
}

namespace {

// Outcome of one trial: nullopt when the relation held.
using Trial = std::optional<Counterexample>;

class Prober {
 public:
  Prober(const MeanExpr& expr, const ProbeConfig& cfg) : expr_(expr), cfg_(cfg) {}

  PropertyVerdict run(Property prop) {
    // Each property draws from its own stream so verdicts do not depend on
    // which other properties were probed.
    Rng rng(cfg_.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(prop) + 1);
    PropertyVerdict verdict{prop, true, 0, std::nullopt};
    for (int t = 0; t < cfg_.samples; ++t) {
      Trial outcome;
      std::vector<std::vector<double>> inputs;
      try {
        outcome = trial(prop, rng, t, inputs);
      } catch (const MeanError& e) {
        outcome = Counterexample{inputs, {}, std::numeric_limits<double>::infinity(),
                                 std::string("evaluation error: ") + e.what()};
      }
      ++verdict.trials;
      if (outcome) {
        verdict.holds = false;
        verdict.counterexample = std::move(outcome);
        break;
      }
    }
    return verdict;
  }

 private:
  std::vector<double> draw(Rng& rng, int min_dim) {
    const int lo = std::max(cfg_.min_dim, min_dim);
    const int hi = std::max(cfg_.max_dim, lo);
    const int n = rng.integer(lo, hi);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = rng.log_uniform(cfg_.entry_lo, cfg_.entry_hi);
    return x;
  }

  std::vector<double> draw_nonconstant(Rng& rng) {
    for (;;) {
      auto x = draw(rng, 2);
      if (*std::min_element(x.begin(), x.end()) != *std::max_element(x.begin(), x.end())) {
        return x;
      }
    }
  }

  double m(const std::vector<double>& x) { return evaluate(expr_, SampleVector(x)); }

  Trial trial(Property prop, Rng& rng, int index, std::vector<std::vector<double>>& inputs) {
    const double tol = cfg_.tolerance;
    switch (prop) {
      case Property::symmetry: {
        auto x = draw(rng, 1);
        auto perm = x;
        for (std::size_t i = perm.size(); i > 1; --i) {
          std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.integer(0, static_cast<int>(i) - 1))]);
        }
        inputs = {x, perm};
        const double a = m(x), b = m(perm);
        return equal_or(a, b, inputs, "M(x) == M(permuted x)");
      }
      case Property::mean_value: {
        auto x = draw(rng, 1);
        inputs = {x};
        const double a = m(x);
        const double lo = *std::min_element(x.begin(), x.end());
        const double hi = *std::max_element(x.begin(), x.end());
        const double excess = std::max((lo - a) / lo, (a - hi) / hi);
        if (excess > tol) return Counterexample{inputs, {a, lo, hi}, excess - tol, "min x <= M(x) <= max x"};
        return std::nullopt;
      }
      case Property::repetition_invariance: {
        auto x = draw(rng, 1);
        const std::size_t reps = index % 2 == 0 ? 2 : 3;
        auto rep = SampleVector(x).repeated_blockwise(reps).entries();
        inputs = {x, rep};
        return equal_or(m(x), m(rep), inputs, "M(x repeated blockwise) == M(x)");
      }
      case Property::homogeneity: {
        auto x = draw(rng, 1);
        const double t = rng.log_uniform(1e-2, 1e2);
        auto tx = SampleVector(x).scaled(t).entries();
        inputs = {x, tx, {t}};
        return equal_or(m(tx), t * m(x), inputs, "M(t x) == t M(x)");
      }
      case Property::increasing: {
        auto x = draw(rng, 1);
        auto bumped = x;
        bumped[static_cast<std::size_t>(rng.integer(0, static_cast<int>(x.size()) - 1))] *= 1.1;
        inputs = {x, bumped};
        const double a = m(x), b = m(bumped);
        const double drop = (a - b) / a;
        if (drop > tol) return Counterexample{inputs, {a, b}, drop - tol, "M(bumped x) >= M(x)"};
        return std::nullopt;
      }
      case Property::jensen_concavity:
      case Property::jensen_convexity: {
        auto u = draw(rng, 1);
        std::vector<double> v(u.size());
        for (double& e : v) e = rng.log_uniform(cfg_.entry_lo, cfg_.entry_hi);
        std::vector<double> mid(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) mid[i] = 0.5 * (u[i] + v[i]);
        inputs = {u, v, mid};
        const double mu = m(u), mv = m(v), mm = m(mid);
        const double avg = 0.5 * (mu + mv);
        const bool concave = prop == Property::jensen_concavity;
        const double shortfall = (concave ? avg - mm : mm - avg) / avg;
        if (shortfall > tol) {
          return Counterexample{inputs, {mu, mv, mm}, shortfall - tol,
                                concave ? "M((u+v)/2) >= (M(u)+M(v))/2"
                                        : "M((u+v)/2) <= (M(u)+M(v))/2"};
        }
        return std::nullopt;
      }
      case Property::min_diminishing: {
        auto x = draw_nonconstant(rng);
        auto ext = x;
        ext.push_back(*std::min_element(x.begin(), x.end()));
        inputs = {x, ext};
        const double a = m(x), b = m(ext);
        const double decrease = (a - b) / a;
        if (decrease <= tol) {
          return Counterexample{inputs, {a, b}, tol - decrease, "M(x, min x) < M(x)"};
        }
        return std::nullopt;
      }
      case Property::strictness: {
        auto x = draw_nonconstant(rng);
        inputs = {x};
        const double a = m(x);
        const double lo = *std::min_element(x.begin(), x.end());
        const double hi = *std::max_element(x.begin(), x.end());
        const double room = std::min(a - lo, hi - a) / (hi - lo);
        if (room <= tol) return Counterexample{inputs, {a, lo, hi}, tol - room, "min x < M(x) < max x"};
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  Trial equal_or(double a, double b, const std::vector<std::vector<double>>& inputs,
                 const char* relation) {
    const double dev = std::abs(a - b) / std::max(std::abs(a), std::abs(b));
    if (dev > cfg_.tolerance) return Counterexample{inputs, {a, b}, dev - cfg_.tolerance, relation};
    return std::nullopt;
  }

  const MeanExpr& expr_;
  const ProbeConfig& cfg_;
};

}  // namespace

PropertyReport probe_properties(const MeanExpr& expr, const ProbeConfig& cfg) {
  cfg.validate();
  Prober prober(expr, cfg);
  PropertyReport report;
  for (Property p : kAllProperties) report.verdicts.push_back(prober.run(p));
  return report;
}

}  // namespace hardymeans
