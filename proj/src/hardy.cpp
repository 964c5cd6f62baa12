#include "hardymeans/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hardymeans/error.hpp"
#include "hardymeans/evaluate.hpp"
#include "hardymeans/gauss.hpp"
#include "hardymeans/numeric.hpp"
#include "hardymeans/optimize.hpp"
#include "hardymeans/probe.hpp"

namespace hardymeans {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

PnSequence pn_sequence(const MeanExpr& expr, std::size_t n_max) {
  if (n_max < 1) throw MeanError(ErrorCode::invalid_input, "pn_sequence needs n_max >= 1");
  PnSequence seq;
  seq.values.reserve(n_max);
  auto prefix = make_prefix_evaluator(expr);
  seq.incremental = prefix->incremental();
  for (std::size_t n = 1; n <= n_max; ++n) {
    prefix->push(1.0 / static_cast<double>(n));
    seq.values.push_back(static_cast<double>(n) * prefix->value());
    if (n >= 2) {
      const double drop = seq.values[n - 2] - seq.values[n - 1];
      if (drop > seq.max_decrease) {
        seq.max_decrease = drop;
        seq.max_decrease_at = n;
      }
    }
  }
  return seq;
}

namespace {

std::optional<ClosedForm> power_registry(double p) {
  if (p >= 1.0) {
    return ClosedForm{kInf, ReferenceKind::not_hardy,
                      "power mean with p >= 1 is not a Hardy mean"};
  }
  if (p == 0.0) return ClosedForm{std::numbers::e, ReferenceKind::closed_form, "Carleman constant e"};
  return ClosedForm{std::pow(1.0 - p, -1.0 / p), ReferenceKind::closed_form,
                    "power mean constant (1-p)^(-1/p)"};
}

std::optional<ClosedForm> gini_registry(double p, double q) {
  const double lo = std::min(p, q);
  const double hi = std::max(p, q);
  if (lo > 0.0 || hi >= 1.0) {
    return ClosedForm{kInf, ReferenceKind::not_hardy,
                      "Gini mean needs min(p,q) <= 0 and max(p,q) < 1 to be a Hardy mean"};
  }
  // Hardy but outside the concave range: no registered constant.
  if (hi < 0.0) return std::nullopt;
  if (p == q) return ClosedForm{std::numbers::e, ReferenceKind::closed_form, "Gini constant e at p = q = 0"};
  return ClosedForm{std::pow((1.0 - q) / (1.0 - p), 1.0 / (p - q)), ReferenceKind::closed_form,
                    "Gini constant ((1-q)/(1-p))^(1/(p-q))"};
}

}  // namespace

std::optional<ClosedForm> closed_form_hardy(const MeanExpr& expr) {
  const auto& n = expr.node();
  if (auto* p = std::get_if<node::Power>(&n)) return power_registry(p->p);
  if (std::holds_alternative<node::Arith>(n)) return power_registry(1.0);
  if (std::holds_alternative<node::Geom>(n)) return power_registry(0.0);
  if (std::holds_alternative<node::Harm>(n)) return power_registry(-1.0);
  if (auto* q = std::get_if<node::QuasiArithmetic>(&n)) {
    // Power and logarithmic generators give power means.
    using K = GeneratorSpec::Kind;
    if (q->f.kind() == K::identity) return power_registry(1.0);
    if (q->f.kind() == K::log) return power_registry(0.0);
    if (q->f.kind() == K::pow || q->f.kind() == K::neg_pow) return power_registry(q->f.exponent());
    return std::nullopt;
  }
  if (auto* g = std::get_if<node::Gini>(&n)) return gini_registry(g->p, g->q);
  if (auto* b = std::get_if<node::Bajraktarevic>(&n)) {
    // Power generators give Gini means.
    if (b->f.is_power() && b->g.is_power()) {
      auto exponent = [](const GeneratorSpec& s) {
        return s.kind() == GeneratorSpec::Kind::identity ? 1.0 : s.exponent();
      };
      return gini_registry(exponent(b->f), exponent(b->g));
    }
    return std::nullopt;
  }
  if (auto* d = std::get_if<node::Deviation>(&n)) {
    if (d->e.kind() == DeviationSpec::Kind::arithmetic) return power_registry(1.0);
    return closed_form_hardy(MeanExpr::bajraktarevic(d->e.f(), d->e.g()));
  }
  if (auto* gs = std::get_if<node::Gauss>(&n)) {
    std::vector<double> constants;
    bool all_powers = true;
    bool any_not_hardy = false;
    for (const auto& c : gs->children) {
      all_powers = all_powers && (c.as<node::Power>() || c.as<node::Arith>() ||
                                  c.as<node::Geom>() || c.as<node::Harm>());
      auto r = closed_form_hardy(c);
      if (!r) return std::nullopt;
      if (r->kind == ReferenceKind::not_hardy) {
        any_not_hardy = true;
      } else {
        constants.push_back(r->value);
      }
    }
    if (any_not_hardy) {
      if (all_powers) {
        return ClosedForm{kInf, ReferenceKind::not_hardy,
                          "Gaussian product of power means with some p >= 1 is not a Hardy mean"};
      }
      return std::nullopt;
    }
    return ClosedForm{gauss_product(gs->children, SampleVector(constants)),
                      ReferenceKind::gauss_of_constants,
                      "Gaussian product evaluated at the children's Hardy constants"};
  }
  return std::nullopt;
}

double published_tolerance(const MeanExpr& expr) {
  constexpr double tight = 0.005;
  constexpr double loose = 0.015;
  const auto& n = expr.node();
  if (auto* p = std::get_if<node::Power>(&n)) return p->p <= 0.0 ? tight : loose;
  if (std::holds_alternative<node::Geom>(n) || std::holds_alternative<node::Harm>(n)) return tight;
  if (auto* g = std::get_if<node::Gini>(&n)) return std::max(g->p, g->q) <= 0.0 ? tight : loose;
  if (auto* gs = std::get_if<node::Gauss>(&n)) {
    double tol = 0.0;
    for (const auto& c : gs->children) tol = std::max(tol, published_tolerance(c));
    return tol;
  }
  return loose;
}

std::vector<double> YGrid::values() const {
  if (!(lo > 0.0) || !(hi >= lo) || points < 1) {
    throw MeanError(ErrorCode::invalid_input, "y-grid needs 0 < lo <= hi and points >= 1");
  }
  std::vector<double> ys(static_cast<std::size_t>(points));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < points; ++i) {
    ys[static_cast<std::size_t>(i)] =
        points == 1 ? lo : std::exp(a + (b - a) * i / static_cast<double>(points - 1));
  }
  return ys;
}

namespace {

std::vector<GrowthPoint> doubling_trace(const std::vector<double>& values) {
  std::vector<GrowthPoint> trace;
  for (std::size_t n = 1; n <= values.size(); n *= 2) trace.push_back({n, values[n - 1]});
  if (trace.back().n != values.size()) trace.push_back({values.size(), values.back()});
  return trace;
}

// Growth over the last two doublings: d1 = s(N) - s(N/2), d0 = s(N/2) - s(N/4).
// Convergent sequences with error ~ n^-a have d1/d0 ~ 2^-a < 1; logarithmic
// growth gives d1/d0 >= 1.
bool growth_suggests_divergence(double at_quarter, double at_half, double at_full,
                                double threshold) {
  const double d0 = at_half - at_quarter;
  const double d1 = at_full - at_half;
  return d0 > 0.0 && d1 > 0.0 && d1 / d0 >= threshold;
}

// Returns whether every hypothesis of the limit formula survived probing.
bool annotate_probes(const MeanExpr& expr, const HardyConfig& cfg, HardyEstimate& est,
                     bool& homogeneous) {
  ProbeConfig pc;
  pc.seed = cfg.probe_seed;
  pc.samples = cfg.probe_samples;
  const auto report = probe_properties(expr, pc);
  homogeneous = report.holds(Property::homogeneity);
  bool all_hold = true;
  for (Property p : {Property::increasing, Property::symmetry, Property::repetition_invariance,
                     Property::jensen_concavity}) {
    if (!report.holds(p)) {
      est.notes.push_back("probe refuted " + std::string(property_name(p)) +
                          "; the limit formula is not guaranteed to equal the Hardy constant");
      all_hold = false;
    }
  }
  return all_hold;
}

}  // namespace

HardyEstimate hardy_constant(const MeanExpr& expr, const HardyConfig& cfg) {
  if (cfg.n_max < 1) throw MeanError(ErrorCode::invalid_input, "hardy needs n_max >= 1");
  HardyEstimate est{};
  est.n_max = cfg.n_max;
  est.reference = closed_form_hardy(expr);
  est.tolerance = published_tolerance(expr);
  for (auto& w : expr.warnings()) est.notes.push_back(w);

  bool homogeneous = false;
  const bool hypotheses_hold = annotate_probes(expr, cfg, est, homogeneous);

  const std::size_t N = cfg.n_max;
  double at_quarter = 0.0, at_half = 0.0, at_full = 0.0;
  std::optional<std::size_t> ceiling_witness;

  if (homogeneous) {
    est.method = HardyMethod::homogeneous_limit;
    est.sequence = pn_sequence(expr, N);
    const auto& v = est.sequence.values;
    for (std::size_t n = 1; n <= N; ++n) {
      if (v[n - 1] > cfg.divergence_ceiling) {
        ceiling_witness = n;
        break;
      }
    }
    est.estimate = est.sequence.final_value();
    est.growth_trace = doubling_trace(v);
    if (N >= 16) {
      at_quarter = v[N / 4 - 1];
      at_half = v[N / 2 - 1];
      at_full = v[N - 1];
    }
    est.notes.push_back(hypotheses_hold
                            ? "certified-from-below: p_n is nondecreasing with limit the Hardy constant"
                            : "estimate (uncertified): p_n at n_max; probes refuted a hypothesis");
  } else {
    est.method = HardyMethod::sup_liminf_grid;
    est.y_grid = cfg.y_grid.values();
    est.estimate = 0.0;
    const std::size_t window_start = std::max<std::size_t>(1, N / 2);
    std::vector<double> best_values;
    for (double y : est.y_grid) {
      auto prefix = make_prefix_evaluator(expr);
      std::vector<double> values;
      values.reserve(N);
      double window_min = kInf;
      for (std::size_t n = 1; n <= N; ++n) {
        prefix->push(y / static_cast<double>(n));
        const double r = static_cast<double>(n) / y * prefix->value();
        values.push_back(r);
        if (r > cfg.divergence_ceiling && !ceiling_witness) ceiling_witness = n;
        if (n >= window_start) window_min = std::min(window_min, r);
      }
      if (window_min > est.estimate || best_values.empty()) {
        est.estimate = std::max(est.estimate, window_min);
        best_values = std::move(values);
      }
    }
    est.growth_trace = doubling_trace(best_values);
    if (N >= 16) {
      at_quarter = best_values[N / 4 - 1];
      at_half = best_values[N / 2 - 1];
      at_full = best_values[N - 1];
    }
    est.notes.push_back(
        "estimate (uncertified): sup over a finite y-grid of a tail-window liminf");
  }

  if (est.reference && est.reference->kind == ReferenceKind::not_hardy) {
    est.divergent = true;
    est.notes.push_back("not a Hardy mean: " + est.reference->provenance);
  }
  if (ceiling_witness) {
    est.divergent = true;
    est.divergence_witness = ceiling_witness;
    std::ostringstream msg;
    msg << "non-Hardy at this scale: value exceeded the ceiling " << cfg.divergence_ceiling
        << " at n=" << *ceiling_witness;
    est.notes.push_back(msg.str());
  }
  if (N >= 16 &&
      growth_suggests_divergence(at_quarter, at_half, at_full, cfg.growth_ratio_threshold)) {
    est.divergent = true;
    if (!est.divergence_witness) est.divergence_witness = N;
    std::ostringstream msg;
    msg << "growth over the last doubling did not slow down (increments "
        << (at_half - at_quarter) << " then " << (at_full - at_half)
        << "); read as divergence";
    est.notes.push_back(msg.str());
  }
  if (est.divergent) est.estimate = kInf;
  return est;
}

double hardy_ratio(const MeanExpr& expr, const SampleVector& x) {
  CompensatedSum means;
  for (std::size_t k = 1; k <= x.size(); ++k) means.add(evaluate(expr, x.prefix(k)));
  return means.value() / compensated_sum(x.values());
}

HardySeqBound hardy_sequence_bound(const MeanExpr& expr, std::size_t n,
                                   const HardySeqConfig& cfg) {
  if (n < 1) throw MeanError(ErrorCode::invalid_input, "hardy_sequence_bound needs n >= 1");
  if (cfg.restarts < 1 || cfg.budget < 1) {
    throw MeanError(ErrorCode::invalid_input, "hardy_sequence_bound needs restarts, budget >= 1");
  }
  HardySeqBound out{n, 1.0, {1.0}, 0, 0, {}, false};
  if (n == 1) {
    out.best_trace = {1.0};
    return out;
  }

  ProbeConfig pc;
  pc.seed = cfg.seed;
  pc.samples = 50;
  const bool simplex = [&] {
    try {
      return probe_properties(expr, pc).holds(Property::homogeneity);
    } catch (const MeanError&) {
      return false;
    }
  }();
  out.simplex_search = simplex;

  // Homogeneous: z in R^{n-1}, x = softmax(z, 0). Otherwise x = exp(z).
  constexpr double kZLimit = 40.0;
  const std::size_t dim = simplex ? n - 1 : n;
  auto to_x = [&](const std::vector<double>& z) {
    std::vector<double> x(n);
    double zmax = simplex ? 0.0 : -kInf;
    for (double zi : z) zmax = std::max(zmax, std::clamp(zi, -kZLimit, kZLimit));
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double zi = i < dim ? std::clamp(z[i], -kZLimit, kZLimit) : 0.0;
      x[i] = simplex ? std::exp(zi - zmax) : std::exp(zi);
      total += x[i];
    }
    if (simplex) {
      for (double& v : x) v /= total;
    }
    return x;
  };
  auto objective = [&](const std::vector<double>& z) {
    try {
      return -hardy_ratio(expr, SampleVector(to_x(z)));
    } catch (const MeanError&) {
      return kInf;
    }
  };

  Rng rng(cfg.seed);
  const int per_restart = std::max(1, cfg.budget / cfg.restarts);
  double best = -kInf;
  std::vector<double> best_x;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<double> z(dim, 0.0);
    if (r == 1) {
      for (std::size_t i = 0; i < dim; ++i) z[i] = 0.7 * static_cast<double>(dim - i);
    } else if (r > 1) {
      for (double& zi : z) zi = 3.0 * rng.normal();
    }
    // Two passes: the second restarts the simplex around the first optimum.
    int used = 0;
    optimize::NelderMeadOptions opts;
    opts.max_evaluations = per_restart / 2;
    auto res = optimize::nelder_mead(objective, z, opts);
    used += res.evaluations;
    opts.max_evaluations = std::max(1, per_restart - used);
    opts.initial_step = 0.25;
    auto polish = optimize::nelder_mead(objective, res.x, opts);
    used += polish.evaluations;
    if (polish.value <= res.value) res = polish;
    out.evaluations += used;
    ++out.restarts_run;
    if (std::isfinite(res.value) && -res.value > best) {
      best = -res.value;
      best_x = to_x(res.x);
    }
    out.best_trace.push_back(best);
  }
  if (best_x.empty()) {
    throw MeanError(ErrorCode::non_convergence,
                    "hardy_sequence_bound: no feasible evaluation within the budget");
  }
  out.maximizer = best_x;
  out.estimate = hardy_ratio(expr, SampleVector(best_x));
  return out;
}

double non_l1_term(NonL1Sequence seq, std::size_t n) {
  const auto v = static_cast<double>(n);
  switch (seq) {
    case NonL1Sequence::harmonic: return 1.0 / v;
    case NonL1Sequence::constant: return 1.0;
    case NonL1Sequence::sqrt: return 1.0 / std::sqrt(v);
  }
  return 1.0;
}

double liminf_ratio(const MeanExpr& expr, NonL1Sequence seq, std::size_t n_max) {
  if (n_max < 2) throw MeanError(ErrorCode::invalid_input, "liminf_ratio needs n_max >= 2");
  auto prefix = make_prefix_evaluator(expr);
  double result = kInf;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double x = non_l1_term(seq, n);
    prefix->push(x);
    if (n >= n_max / 2) result = std::min(result, prefix->value() / x);
  }
  return result;
}

PartialHardyReport hardy_partial_check(const MeanExpr& expr, const SampleVector& x,
                                       double constant) {
  if (!(constant > 0.0)) {
    throw MeanError(ErrorCode::invalid_input, "reference constant must be positive");
  }
  const double ratio = hardy_ratio(expr, x);
  return {ratio, ratio < constant};
}

}  // namespace hardymeans
