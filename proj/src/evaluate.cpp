#include "hardymeans/evaluate.hpp"

#include "hardymeans/families.hpp"
#include "hardymeans/gauss.hpp"

namespace hardymeans {

namespace {

struct Evaluator {
  const SampleVector& x;

  double operator()(const node::Power& n) const { return power_mean(n.p, x); }
  double operator()(const node::QuasiArithmetic& n) const { return quasi_arithmetic_mean(n.f, x); }
  double operator()(const node::Gini& n) const { return gini_mean(n.p, n.q, x); }
  double operator()(const node::Bajraktarevic& n) const { return bajraktarevic_mean(n.f, n.g, x); }
  double operator()(const node::Deviation& n) const { return deviation_mean(n.e, x); }
  double operator()(const node::Gauss& n) const { return gauss_product(n.children, x); }
  double operator()(const node::Arith&) const { return power_mean(1.0, x); }
  double operator()(const node::Geom&) const { return power_mean(0.0, x); }
  double operator()(const node::Harm&) const { return power_mean(-1.0, x); }
  double operator()(const node::Min&) const { return x.min(); }
  double operator()(const node::Max&) const { return x.max(); }
};

}  // namespace

double evaluate(const MeanExpr& expr, const SampleVector& x) {
  return std::visit(Evaluator{x}, expr.node());
}

}  // namespace hardymeans
