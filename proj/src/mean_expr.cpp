#include "hardymeans/mean_expr.hpp"

#include <cmath>

#include "hardymeans/error.hpp"
#include "hardymeans/numeric.hpp"

namespace hardymeans {

namespace detail {

// Monotonicity direction of f/g on the positive half-line for a positive g:
// +1 increasing, -1 decreasing, 0 when f/g is not strictly monotone. Closed
// form for every pair in the generator catalogue.
int ratio_direction(const GeneratorSpec& f, const GeneratorSpec& g) {
  using K = GeneratorSpec::Kind;
  const bool f_powerlike = f.kind() == K::identity || f.kind() == K::pow || f.kind() == K::neg_pow;
  const double a = f.kind() == K::identity ? 1.0 : f.exponent();
  const int s = f.kind() == K::neg_pow ? -1 : 1;
  auto sign = [](double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); };

  if (g.kind() == K::identity || g.kind() == K::pow) {
    const double b = g.kind() == K::identity ? 1.0 : g.exponent();
    if (f_powerlike) return s * sign(a - b);
    if (f.kind() == K::log) return b == 0.0 ? 1 : 0;
    if (f.kind() == K::exp) return b <= 0.0 ? 1 : 0;
    return 0;
  }
  if (g.kind() == K::exp) {
    // x^a e^{-x} is decreasing iff a <= 0.
    if (f_powerlike) return a <= 0.0 ? -s : 0;
    return 0;
  }
  return 0;
}

void require_bajraktarevic_pair(const GeneratorSpec& f, const GeneratorSpec& g) {
  if (!g.positive()) {
    throw MeanError(ErrorCode::invalid_generator,
                    "denominator generator " + g.to_string() + " is not positive");
  }
  if (ratio_direction(f, g) == 0) {
    throw MeanError(ErrorCode::invalid_generator,
                    f.to_string() + "/" + g.to_string() + " is not strictly monotone");
  }
}

}  // namespace detail

DeviationSpec DeviationSpec::pair(GeneratorSpec f, GeneratorSpec g) {
  detail::require_bajraktarevic_pair(f, g);
  return DeviationSpec(f, g);
}

double DeviationSpec::operator()(double x, double y) const {
  if (kind_ == Kind::arithmetic) return x - y;
  // Oriented so that E is decreasing in y whichever way f/g runs.
  const double e = f_(x) - g_(x) * (f_(y) / g_(y));
  return detail::ratio_direction(f_, g_) > 0 ? e : -e;
}

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw MeanError(ErrorCode::invalid_input, std::string(what) + " must be finite");
  }
}

}  // namespace

MeanExpr MeanExpr::power(double p) {
  require_finite(p, "power exponent");
  return MeanExpr(node::Power{p});
}

MeanExpr MeanExpr::quasi_arithmetic(GeneratorSpec f) {
  if (!f.strictly_monotone()) {
    throw MeanError(ErrorCode::invalid_generator,
                    "quasi-arithmetic generator " + f.to_string() + " is not strictly monotone");
  }
  return MeanExpr(node::QuasiArithmetic{f});
}

MeanExpr MeanExpr::gini(double p, double q) {
  require_finite(p, "Gini parameter p");
  require_finite(q, "Gini parameter q");
  return MeanExpr(node::Gini{p, q});
}

MeanExpr MeanExpr::bajraktarevic(GeneratorSpec f, GeneratorSpec g) {
  detail::require_bajraktarevic_pair(f, g);
  return MeanExpr(node::Bajraktarevic{f, g});
}

MeanExpr MeanExpr::deviation(DeviationSpec e) { return MeanExpr(node::Deviation{e}); }

MeanExpr MeanExpr::gauss(std::vector<MeanExpr> children) {
  if (children.size() < 2) {
    throw MeanError(ErrorCode::arity_error, "a Gaussian product needs at least two means");
  }
  return MeanExpr(node::Gauss{std::move(children)});
}

namespace {

struct Printer {
  std::string operator()(const node::Power& n) const {
    return "power(" + format_number(n.p) + ")";
  }
  std::string operator()(const node::QuasiArithmetic& n) const {
    return "quasi(" + n.f.to_string() + ")";
  }
  std::string operator()(const node::Gini& n) const {
    return "gini(" + format_number(n.p) + "," + format_number(n.q) + ")";
  }
  std::string operator()(const node::Bajraktarevic& n) const {
    return "bajrak(" + n.f.to_string() + "," + n.g.to_string() + ")";
  }
  std::string operator()(const node::Deviation& n) const {
    if (n.e.kind() == DeviationSpec::Kind::arithmetic) return "dev(arith)";
    return "dev(pair:" + n.e.f().to_string() + "," + n.e.g().to_string() + ")";
  }
  std::string operator()(const node::Gauss& n) const {
    std::string out = "gauss(";
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) out += ",";
      out += n.children[i].to_string();
    }
    return out + ")";
  }
  std::string operator()(const node::Arith&) const { return "arith"; }
  std::string operator()(const node::Geom&) const { return "geom"; }
  std::string operator()(const node::Harm&) const { return "harm"; }
  std::string operator()(const node::Min&) const { return "min"; }
  std::string operator()(const node::Max&) const { return "max"; }
};

constexpr double kCancellationBand = 1e-8;

void collect_warnings(const MeanExpr& e, std::vector<std::string>& out) {
  auto near_zero = [](double v) { return v != 0.0 && std::abs(v) < kCancellationBand; };
  if (auto* n = e.as<node::Power>(); n && near_zero(n->p)) {
    out.push_back(e.to_string() + ": |p| < 1e-8 evaluates the p != 0 branch with cancellation");
  } else if (auto* g = e.as<node::Gini>(); g && near_zero(g->p - g->q)) {
    out.push_back(e.to_string() +
                  ": |p - q| < 1e-8 evaluates the p != q branch with cancellation");
  } else if (auto* gs = e.as<node::Gauss>()) {
    for (const auto& c : gs->children) collect_warnings(c, out);
  }
}

}  // namespace

std::string MeanExpr::to_string() const { return std::visit(Printer{}, node_); }

std::vector<std::string> MeanExpr::warnings() const {
  std::vector<std::string> out;
  collect_warnings(*this, out);
  return out;
}

bool operator==(const MeanExpr& a, const MeanExpr& b) { return a.node_ == b.node_; }

namespace node {
bool operator==(const Power& a, const Power& b) { return a.p == b.p; }
bool operator==(const QuasiArithmetic& a, const QuasiArithmetic& b) {
  return a.f == b.f;
}
bool operator==(const Gini& a, const Gini& b) { return a.p == b.p && a.q == b.q; }
bool operator==(const Bajraktarevic& a, const Bajraktarevic& b) {
  return a.f == b.f && a.g == b.g;
}
bool operator==(const Deviation& a, const Deviation& b) { return a.e == b.e; }
bool operator==(const Gauss& a, const Gauss& b) { return a.children == b.children; }
}  // namespace node

}  // namespace hardymeans
