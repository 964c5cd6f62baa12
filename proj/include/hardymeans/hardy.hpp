#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hardymeans/mean_expr.hpp"
#include "hardymeans/sample.hpp"

namespace hardymeans {

// p_n = n M(1, 1/2, ..., 1/n) for n = 1..n_max.
struct PnSequence {
  std::vector<double> values;  // values[n-1] = p_n
  double max_decrease = 0.0;   // largest p_n - p_{n+1} observed, >= 0
  std::size_t max_decrease_at = 0;
  bool incremental = false;

  std::size_t n_max() const noexcept { return values.size(); }
  double final_value() const { return values.back(); }
};

PnSequence pn_sequence(const MeanExpr& expr, std::size_t n_max);

enum class ReferenceKind { closed_form, gauss_of_constants, not_hardy };

// Hardy constant from the closed-form registry: power means, Gini means in the
// Hardy range, and Gaussian products of registry members. not_hardy entries
// carry value +inf.
struct ClosedForm {
  double value;
  ReferenceKind kind;
  std::string provenance;
};

std::optional<ClosedForm> closed_form_hardy(const MeanExpr& expr);

// Relative tolerance at n_max = 1e4 for the p_n limit of a registry mean:
// 0.5% when every power/Gini parameter is <= 0, 1.5% when the largest lies in
// (0, 1). Other means get the looser value.
double published_tolerance(const MeanExpr& expr);

enum class HardyMethod { homogeneous_limit, sup_liminf_grid };

struct YGrid {
  double lo = 1e-3;
  double hi = 1e3;
  int points = 41;

  std::vector<double> values() const;
};

struct HardyConfig {
  std::size_t n_max = 10000;
  YGrid y_grid;
  double divergence_ceiling = 1e6;
  // Last-doubling increment ratio at or above which growth of p_n is read as
  // divergence (log-like or faster growth has ratio >= 1).
  double growth_ratio_threshold = 0.98;
  std::uint64_t probe_seed = 1;
  int probe_samples = 200;
};

struct GrowthPoint {
  std::size_t n;
  double value;
};

struct HardyEstimate {
  HardyMethod method;
  double estimate;  // +inf when divergent
  std::size_t n_max;
  std::vector<double> y_grid;  // sup-liminf only
  std::optional<ClosedForm> reference;
  double tolerance;  // relative, against the reference
  bool divergent = false;
  std::optional<std::size_t> divergence_witness;
  std::vector<GrowthPoint> growth_trace;  // p_n at n = 1, 2, 4, ..., n_max
  std::vector<std::string> notes;
  PnSequence sequence;  // homogeneous-limit only
};

HardyEstimate hardy_constant(const MeanExpr& expr, const HardyConfig& cfg = {});

struct HardySeqConfig {
  int restarts = 8;
  std::uint64_t seed = 1;
  int budget = 20000;  // objective evaluations across all restarts
};

struct HardySeqBound {
  std::size_t n;
  double estimate;  // lower estimate of Hc_n
  std::vector<double> maximizer;
  int restarts_run;
  int evaluations;
  std::vector<double> best_trace;  // best value after each restart
  bool simplex_search;             // homogeneous: search on the unit simplex
};

// (M(x_1) + ... + M(x_1..x_n)) / (x_1 + ... + x_n).
double hardy_ratio(const MeanExpr& expr, const SampleVector& x);

HardySeqBound hardy_sequence_bound(const MeanExpr& expr, std::size_t n,
                                   const HardySeqConfig& cfg = {});

enum class NonL1Sequence { harmonic, constant, sqrt };

double non_l1_term(NonL1Sequence seq, std::size_t n);

// min over n in [n_max/2, n_max] of M(x_1..x_n) / x_n.
double liminf_ratio(const MeanExpr& expr, NonL1Sequence seq, std::size_t n_max);

struct PartialHardyReport {
  double ratio;
  bool strictly_below;
};

PartialHardyReport hardy_partial_check(const MeanExpr& expr, const SampleVector& x,
                                       double constant);

}  // namespace hardymeans
