#include "hardymeans/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardymeans/error.hpp"
#include "hardymeans/evaluate.hpp"
#include "hardymeans/gauss.hpp"
#include "hardymeans/grammar.hpp"
#include "hardymeans/hardy.hpp"
#include "hardymeans/kedlaya.hpp"
#include "hardymeans/numeric.hpp"
#include "hardymeans/probe.hpp"

namespace hardymeans {

namespace {

using json = nlohmann::ordered_json;

// Infinite values serialize as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json envelope(const std::vector<std::string>& args, std::optional<std::uint64_t> seed) {
  json j;
  j["command"] = args;
  j["version"] = kVersion;
  j["seed"] = seed ? json(*seed) : json(nullptr);
  return j;
}

std::string_view reference_kind_name(ReferenceKind k) {
  switch (k) {
    case ReferenceKind::closed_form: return "closed form";
    case ReferenceKind::gauss_of_constants: return "closed form (Gaussian product of constants)";
    case ReferenceKind::not_hardy: return "not a Hardy mean";
  }
  return "";
}

YGrid parse_ygrid(const std::string& spec) {
  // lo:hi:points
  YGrid g;
  std::istringstream in(spec);
  char c1 = 0, c2 = 0;
  if (!(in >> g.lo >> c1 >> g.hi >> c2 >> g.points) || c1 != ':' || c2 != ':' || !in.eof()) {
    throw MeanError(ErrorCode::invalid_input, "--ygrid expects lo:hi:points, got '" + spec + "'");
  }
  g.values();  // validates
  return g;
}

void write_pn_csv(const std::string& path, const PnSequence& seq) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw MeanError(ErrorCode::invalid_input, "cannot open CSV output '" + path + "'");
  f << "n,p_n\n";
  char buf[64];
  for (std::size_t n = 1; n <= seq.values.size(); ++n) {
    std::snprintf(buf, sizeof buf, "%zu,%.15g\n", n, seq.values[n - 1]);
    f << buf;
  }
}

json counterexample_json(const Counterexample& c) {
  json j;
  j["relation"] = c.relation;
  j["inputs"] = c.inputs;
  j["observed"] = c.observed;
  j["margin"] = number(c.margin);
  return j;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::non_convergence:
    case ErrorCode::no_sign_change:
    case ErrorCode::overflow: return exit_computation;
    default: return exit_usage;
  }
}

struct Options {
  std::string mean;
  std::vector<std::string> means;
  std::vector<double> xs;
  std::uint64_t seed = 1;
  int samples = 200;
  double tolerance = 1e-9;
  std::size_t nmax = 10000;
  std::string ygrid;
  std::string csv;
  double ceiling = 1e6;
  std::size_t n = 0;
  int restarts = 8;
  int budget = 20000;
  std::string seq;
  int kedlaya_n = 0;
  int kedlaya_samples = 500;
};

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Means, Kedlaya inequalities, Gaussian products and Hardy constants", "hardymeans"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;

  auto* eval = app.add_subcommand("eval", "Evaluate a mean at a sample vector");
  eval->add_option("mean", o.mean, "Mean expression")->required();
  eval->add_option("x", o.xs, "Positive sample entries")->required();

  auto* probe = app.add_subcommand("probe", "Probe structural properties by sampling");
  probe->add_option("mean", o.mean)->required();
  probe->add_option("--seed", o.seed)->capture_default_str();
  probe->add_option("--samples", o.samples)->capture_default_str();
  probe->add_option("--tolerance", o.tolerance)->capture_default_str();

  auto* hardy = app.add_subcommand("hardy", "Estimate the Hardy constant");
  hardy->add_option("mean", o.mean)->required();
  hardy->add_option("--nmax", o.nmax)->capture_default_str();
  hardy->add_option("--ygrid", o.ygrid, "lo:hi:points (default 1e-3:1e3:41)");
  hardy->add_option("--csv", o.csv, "Write the p_n sequence to this CSV file");
  hardy->add_option("--ceiling", o.ceiling, "Divergence ceiling")->capture_default_str();
  hardy->add_option("--seed", o.seed, "Seed of the property probes")->capture_default_str();

  auto* hardy_seq = app.add_subcommand("hardy-seq", "Lower estimate of the n-th Hardy sequence term");
  hardy_seq->add_option("mean", o.mean)->required();
  hardy_seq->add_option("--n", o.n)->required();
  hardy_seq->add_option("--restarts", o.restarts)->capture_default_str();
  hardy_seq->add_option("--seed", o.seed)->capture_default_str();
  hardy_seq->add_option("--budget", o.budget)->capture_default_str();

  auto* liminf = app.add_subcommand("liminf", "Tail-window liminf of x_n^-1 M(x_1..x_n)");
  liminf->add_option("mean", o.mean)->required();
  liminf->add_option("--seq", o.seq)->required()->check(CLI::IsMember({"harmonic", "constant", "sqrt"}));
  liminf->add_option("--nmax", o.nmax)->required();

  auto* kedlaya = app.add_subcommand("kedlaya", "Kedlaya coefficients, matrix and inequality");
  kedlaya->require_subcommand(1);
  auto* coeffs = kedlaya->add_subcommand("coeffs", "Exact coefficient table with property audit");
  coeffs->add_option("--n", o.kedlaya_n)->required();
  auto* matrix = kedlaya->add_subcommand("matrix", "Block symbol matrix");
  matrix->add_option("--n", o.kedlaya_n)->required();
  auto* kcheck = kedlaya->add_subcommand("check", "Check the Kedlaya inequality on random vectors");
  kcheck->add_option("mean", o.mean)->required();
  kcheck->add_option("--samples", o.kedlaya_samples)->capture_default_str();
  kcheck->add_option("--seed", o.seed)->capture_default_str();

  auto* gauss = app.add_subcommand("gauss", "Gaussian product of means");
  gauss->add_option("means", o.means)->required()->expected(2, -1);
  gauss->add_option("--at", o.xs)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    json j;
    if (eval->parsed()) {
      const MeanExpr expr = parse_mean_expr(o.mean);
      const SampleVector x(o.xs);
      j = envelope(args, std::nullopt);
      j["mean"] = expr.to_string();
      j["method"] = "direct";
      j["estimate"] = evaluate(expr, x);
      j["tolerance"] = 1e-12;
      j["notes"] = expr.warnings();
    } else if (probe->parsed()) {
      const MeanExpr expr = parse_mean_expr(o.mean);
      ProbeConfig cfg;
      cfg.seed = o.seed;
      cfg.samples = o.samples;
      cfg.tolerance = o.tolerance;
      const auto report = probe_properties(expr, cfg);
      j = envelope(args, o.seed);
      j["mean"] = expr.to_string();
      j["method"] = "sampling probe";
      j["config"] = {{"samples", cfg.samples}, {"min_dim", cfg.min_dim}, {"max_dim", cfg.max_dim},
                     {"entry_lo", cfg.entry_lo}, {"entry_hi", cfg.entry_hi}};
      j["tolerance"] = cfg.tolerance;
      json props = json::object();
      for (const auto& v : report.verdicts) {
        json p;
        p["verdict"] = v.holds ? "holds-on-samples" : "violated";
        p["trials"] = v.trials;
        if (v.counterexample) p["counterexample"] = counterexample_json(*v.counterexample);
        props[std::string(property_name(v.property))] = p;
      }
      j["properties"] = props;
      j["notes"] = {"holds-on-samples means no violation was found; sampling cannot prove a property"};
    } else if (hardy->parsed()) {
      const MeanExpr expr = parse_mean_expr(o.mean);
      HardyConfig cfg;
      cfg.n_max = o.nmax;
      cfg.divergence_ceiling = o.ceiling;
      cfg.probe_seed = o.seed;
      if (!o.ygrid.empty()) cfg.y_grid = parse_ygrid(o.ygrid);
      const auto est = hardy_constant(expr, cfg);
      j = envelope(args, o.seed);
      j["mean"] = expr.to_string();
      j["method"] = est.method == HardyMethod::homogeneous_limit ? "homogeneous-limit" : "sup-liminf-grid";
      j["estimate"] = number(est.estimate);
      if (est.reference && est.reference->kind != ReferenceKind::not_hardy) {
        j["reference"] = est.reference->value;
        j["reference_kind"] = reference_kind_name(est.reference->kind);
      } else {
        j["reference"] = nullptr;
        j["reference_kind"] = est.reference ? json(reference_kind_name(est.reference->kind)) : json(nullptr);
      }
      j["reference_formula"] = est.reference ? json(est.reference->provenance) : json(nullptr);
      j["tolerance"] = est.tolerance;
      j["nmax"] = est.n_max;
      j["divergent"] = est.divergent;
      j["divergence_witness"] = est.divergence_witness ? json(*est.divergence_witness) : json(nullptr);
      json trace = json::array();
      for (const auto& g : est.growth_trace) trace.push_back({{"n", g.n}, {"value", g.value}});
      j["growth_trace"] = trace;
      if (est.method == HardyMethod::homogeneous_limit) {
        j["max_decrease"] = est.sequence.max_decrease;
      } else {
        j["y_grid"] = est.y_grid;
      }
      j["notes"] = est.notes;
      if (!o.csv.empty()) {
        // Non-homogeneous means have no p_n limit, but the sequence is still
        // the requested artifact.
        write_pn_csv(o.csv, est.method == HardyMethod::homogeneous_limit
                                ? est.sequence
                                : pn_sequence(expr, cfg.n_max));
      }
    } else if (hardy_seq->parsed()) {
      const MeanExpr expr = parse_mean_expr(o.mean);
      HardySeqConfig cfg;
      cfg.restarts = o.restarts;
      cfg.seed = o.seed;
      cfg.budget = o.budget;
      const auto b = hardy_sequence_bound(expr, o.n, cfg);
      j = envelope(args, o.seed);
      j["mean"] = expr.to_string();
      j["method"] = "multi-start Nelder-Mead lower bound";
      j["estimate"] = b.estimate;
      j["tolerance"] = nullptr;
      j["n"] = b.n;
      j["maximizer"] = b.maximizer;
      j["diagnostics"] = {{"restarts", b.restarts_run}, {"evaluations", b.evaluations},
                          {"best_trace", b.best_trace}, {"simplex_search", b.simplex_search}};
      j["notes"] = {"lower estimate of Hc_n (uncertified); the maximizer reproduces the estimate"};
    } else if (liminf->parsed()) {
      const MeanExpr expr = parse_mean_expr(o.mean);
      const NonL1Sequence s = o.seq == "harmonic" ? NonL1Sequence::harmonic
                              : o.seq == "constant" ? NonL1Sequence::constant
                                                    : NonL1Sequence::sqrt;
      j = envelope(args, std::nullopt);
      j["mean"] = expr.to_string();
      j["method"] = "tail-window liminf";
      j["estimate"] = liminf_ratio(expr, s, o.nmax);
      j["tolerance"] = nullptr;
      j["nmax"] = o.nmax;
      j["sequence"] = o.seq;
      j["notes"] = {"estimate (uncertified): lower bound on the Hardy constant"};
    } else if (coeffs->parsed()) {
      const KedlayaTable t(o.kedlaya_n);
      const auto audit = audit_kedlaya_table(t);
      j = envelope(args, std::nullopt);
      j["method"] = "exact integer";
      j["n"] = t.n();
      json table = json::array();
      for (int i = 1; i <= t.n(); ++i) {
        json row = json::array();
        for (int jj = 1; jj <= t.n(); ++jj) {
          json ks = json::array();
          for (int k = 1; k <= t.n(); ++k) ks.push_back(t.at(i, jj, k));
          row.push_back(ks);
        }
        table.push_back(row);
      }
      j["coefficients"] = table;
      j["row_sum"] = factorial(t.n() - 1);
      j["audit"] = {{"nonnegative", audit.nonnegative}, {"integral", audit.integral},
                    {"vanishes_above_min", audit.vanishes_above_min}, {"symmetric", audit.symmetric},
                    {"row_sums", audit.row_sums}, {"column_sums", audit.column_sums},
                    {"all_pass", audit.all()}};
      j["notes"] = json::array();
    } else if (matrix->parsed()) {
      const KedlayaMatrix m(o.kedlaya_n);
      j = envelope(args, std::nullopt);
      j["method"] = "exact integer";
      j["n"] = m.n();
      j["size"] = m.size();
      json rows = json::array();
      for (std::size_t r = 0; r < m.size(); ++r) {
        std::vector<int> row(m.size());
        for (std::size_t c = 0; c < m.size(); ++c) row[c] = m.at(r, c);
        rows.push_back(row);
      }
      j["matrix"] = rows;
      j["occurrence_counts_ok"] = verify_occurrence_counts(m);
      j["notes"] = {"first row of each block lists symbols in ascending order"};
    } else if (kcheck->parsed()) {
      const MeanExpr expr = parse_mean_expr(o.mean);
      if (o.kedlaya_samples < 1) throw MeanError(ErrorCode::invalid_input, "--samples must be >= 1");
      constexpr double kSlack = 1e-12;
      Rng rng(o.seed);
      double worst = std::numeric_limits<double>::infinity();
      double worst_dominated = worst;
      std::vector<double> worst_x;
      int violations = 0;
      for (int s = 0; s < o.kedlaya_samples; ++s) {
        std::vector<double> x(static_cast<std::size_t>(rng.integer(1, 6)));
        for (double& v : x) v = rng.log_uniform(0.1, 10.0);
        const SampleVector sx(x);
        const double margin = check_kedlaya_inequality(expr, sx);
        worst_dominated = std::min(worst_dominated, check_dominated_kedlaya(expr, sx));
        if (margin < -kSlack) ++violations;
        if (margin < worst) {
          worst = margin;
          worst_x = x;
        }
      }
      j = envelope(args, o.seed);
      j["mean"] = expr.to_string();
      j["method"] = "sampled margin";
      j["tolerance"] = kSlack;
      j["samples"] = o.kedlaya_samples;
      j["min_margin"] = worst;
      j["min_margin_at"] = worst_x;
      j["min_dominated_margin"] = worst_dominated;
      j["violations"] = violations;
      j["notes"] = {"entries log-uniform in [0.1, 10], dimension 1..6"};
    } else if (gauss->parsed()) {
      std::vector<MeanExpr> means;
      std::vector<std::string> names;
      for (const auto& s : o.means) {
        means.push_back(parse_mean_expr(s));
        names.push_back(means.back().to_string());
      }
      const SampleVector x(o.xs);
      const GaussConfig cfg;
      const auto trace = gauss_product_trace(means, x, cfg);
      j = envelope(args, std::nullopt);
      j["means"] = names;
      j["method"] = "Gaussian iteration";
      j["estimate"] = trace.value;
      j["tolerance"] = cfg.tolerance;
      j["iterations"] = trace.iterations;
      j["final_gap"] = trace.final_gap;
      j["first_step"] = gauss_step(means, x).entries();
      j["notes"] = json::array();
    }
    out << j.dump(2) << "\n";
    return exit_ok;
  } catch (const MeanError& e) {
    err << "error[" << code_name(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace hardymeans
