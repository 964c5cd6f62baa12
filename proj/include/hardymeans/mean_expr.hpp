#pragma once

#include <string>
#include <variant>
#include <vector>

#include "hardymeans/generator.hpp"

namespace hardymeans {

// Deviation function E(x, y) defining a Daroczy mean as the root of
// sum_i E(x_i, y) = 0.
//   arithmetic: E(x, y) = x - y
//   pair(f, g): E(x, y) = s (f(x) - g(x) (f/g)(y)), whose mean is B_{f,g};
//               s = +1 or -1 is the direction of f/g, so E decreases in y
class DeviationSpec {
 public:
  enum class Kind { arithmetic, pair };

  static DeviationSpec arithmetic() { return DeviationSpec(); }
  // Throws MeanError(invalid_generator) unless g is positive and f/g strictly
  // monotone on the positive half-line.
  static DeviationSpec pair(GeneratorSpec f, GeneratorSpec g);

  Kind kind() const noexcept { return kind_; }
  const GeneratorSpec& f() const noexcept { return f_; }
  const GeneratorSpec& g() const noexcept { return g_; }

  double operator()(double x, double y) const;

  friend bool operator==(const DeviationSpec&, const DeviationSpec&) = default;

 private:
  DeviationSpec()
      : kind_(Kind::arithmetic), f_(GeneratorSpec::identity()), g_(GeneratorSpec::pow(0.0)) {}
  DeviationSpec(GeneratorSpec f, GeneratorSpec g) : kind_(Kind::pair), f_(f), g_(g) {}

  Kind kind_;
  GeneratorSpec f_;
  GeneratorSpec g_;
};

class MeanExpr;

namespace node {
struct Power { double p; };
struct QuasiArithmetic { GeneratorSpec f; };
struct Gini { double p; double q; };
struct Bajraktarevic { GeneratorSpec f; GeneratorSpec g; };
struct Deviation { DeviationSpec e; };
struct Gauss { std::vector<MeanExpr> children; };
struct Arith {};
struct Geom {};
struct Harm {};
struct Min {};
struct Max {};
}  // namespace node

// Syntax tree of a mean. Construct through the named factories, which enforce
// the node invariants (finite parameters, >= 2 Gauss children, valid
// generator pairs).
class MeanExpr {
 public:
  using Node = std::variant<node::Power, node::QuasiArithmetic, node::Gini,
                            node::Bajraktarevic, node::Deviation, node::Gauss,
                            node::Arith, node::Geom, node::Harm, node::Min,
                            node::Max>;

  static MeanExpr power(double p);
  static MeanExpr quasi_arithmetic(GeneratorSpec f);
  static MeanExpr gini(double p, double q);
  static MeanExpr bajraktarevic(GeneratorSpec f, GeneratorSpec g);
  static MeanExpr deviation(DeviationSpec e);
  static MeanExpr gauss(std::vector<MeanExpr> children);
  static MeanExpr arith() { return MeanExpr(node::Arith{}); }
  static MeanExpr geom() { return MeanExpr(node::Geom{}); }
  static MeanExpr harm() { return MeanExpr(node::Harm{}); }
  static MeanExpr min() { return MeanExpr(node::Min{}); }
  static MeanExpr max() { return MeanExpr(node::Max{}); }

  const Node& node() const noexcept { return node_; }

  template <class T>
  const T* as() const noexcept { return std::get_if<T>(&node_); }

  // Canonical text in the CLI grammar; parse_mean_expr(to_string()) == *this.
  std::string to_string() const;

  // Cancellation-prone parameter choices (|p| or |p - q| below 1e-8 but not
  // exactly zero). Branch selection is exact, so these are only advisory.
  std::vector<std::string> warnings() const;

  friend bool operator==(const MeanExpr& a, const MeanExpr& b);

 private:
  explicit MeanExpr(Node n) : node_(std::move(n)) {}

  Node node_;
};

namespace node {
bool operator==(const Power&, const Power&);
bool operator==(const QuasiArithmetic&, const QuasiArithmetic&);
bool operator==(const Gini&, const Gini&);
bool operator==(const Bajraktarevic&, const Bajraktarevic&);
bool operator==(const Deviation&, const Deviation&);
bool operator==(const Gauss&, const Gauss&);
inline bool operator==(const Arith&, const Arith&) { return true; }
inline bool operator==(const Geom&, const Geom&) { return true; }
inline bool operator==(const Harm&, const Harm&) { return true; }
inline bool operator==(const Min&, const Min&) { return true; }
inline bool operator==(const Max&, const Max&) { return true; }
}  // namespace node

}  // namespace hardymeans
