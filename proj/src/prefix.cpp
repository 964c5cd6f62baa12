#include <algorithm>
#include <cmath>
#include <limits>

#include "hardymeans/error.hpp"
#include "hardymeans/evaluate.hpp"
#include "hardymeans/families.hpp"
#include "hardymeans/gauss.hpp"
#include "hardymeans/numeric.hpp"

namespace hardymeans {

namespace {

// Running min, max and count shared by the streaming evaluators.
class Extent {
 public:
  void push(double x) {
    if (!(std::isfinite(x) && x > 0.0)) {
      throw MeanError(ErrorCode::invalid_input, "prefix entries must be positive and finite");
    }
    lo_ = std::min(lo_, x);
    hi_ = std::max(hi_, x);
    ++n_;
  }
  void require_nonempty() const {
    if (n_ == 0) throw MeanError(ErrorCode::invalid_input, "prefix mean of an empty prefix");
  }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t n() const { return n_; }
  bool constant() const { return lo_ == hi_; }
  double clamp(double v) const { return std::clamp(v, lo_, hi_); }

 private:
  double lo_ = std::numeric_limits<double>::infinity();
  double hi_ = 0.0;
  std::size_t n_ = 0;
};

class PowerPrefix final : public PrefixEvaluator {
 public:
  explicit PowerPrefix(double p) : p_(p), sum_(p) {}

  void push(double x) override {
    ext_.push(x);
    if (p_ == 0.0) {
      if (ext_.n() == 1) anchor_ = x;
      logs_.add(std::log(x / anchor_));
    } else {
      sum_.add(x);
    }
  }
  double value() const override {
    ext_.require_nonempty();
    if (ext_.constant()) return ext_.lo();
    const auto n = static_cast<double>(ext_.n());
    if (p_ == 0.0) return ext_.clamp(anchor_ * std::exp(logs_.value() / n));
    return ext_.clamp(detail::power_from_sum(sum_, ext_.n()));
  }
  std::size_t size() const override { return ext_.n(); }
  bool incremental() const override { return true; }

 private:
  double p_;
  Extent ext_;
  double anchor_ = 1.0;
  CompensatedSum logs_;
  LogPowerSum sum_;
};

class GiniPrefix final : public PrefixEvaluator {
 public:
  GiniPrefix(double p, double q)
      : p_(std::max(p, q)), q_(std::min(p, q)), sp_(p_), sq_(q_), same_(p_) {}

  void push(double x) override {
    ext_.push(x);
    if (p_ == q_) {
      same_.add(x);
    } else {
      sp_.add(x);
      sq_.add(x);
    }
  }
  double value() const override {
    ext_.require_nonempty();
    if (ext_.constant()) return ext_.lo();
    if (p_ == q_) return ext_.clamp(std::exp(same_.value()));
    return ext_.clamp(detail::gini_from_sums(sp_, sq_));
  }
  std::size_t size() const override { return ext_.n(); }
  bool incremental() const override { return true; }

 private:
  double p_;
  double q_;
  Extent ext_;
  LogPowerSum sp_;
  LogPowerSum sq_;
  LogWeightedLogMean same_;
};

class QuasiPrefix final : public PrefixEvaluator {
 public:
  explicit QuasiPrefix(GeneratorSpec f) : f_(f) {}

  void push(double x) override {
    ext_.push(x);
    if (!shifted()) {
      sum_.add(f_(x));
      return;
    }
    if (ext_.n() == 1 || x > shift_) {
      if (ext_.n() > 1) sum_.scale(std::exp(shift_ - x));
      shift_ = x;
    }
    sum_.add(std::exp(x - shift_));
  }
  double value() const override {
    ext_.require_nonempty();
    if (ext_.constant()) return ext_.lo();
    const double mean = sum_.value() / static_cast<double>(ext_.n());
    if (shifted()) return ext_.clamp(shift_ + std::log(mean));
    return ext_.clamp(f_.inverse(mean));
  }
  std::size_t size() const override { return ext_.n(); }
  bool incremental() const override { return true; }

 private:
  bool shifted() const { return f_.kind() == GeneratorSpec::Kind::exp; }

  GeneratorSpec f_;
  Extent ext_;
  CompensatedSum sum_;
  double shift_ = 0.0;  // running maximum for the exp generator
};

class BajraktarevicPrefix final : public PrefixEvaluator {
 public:
  BajraktarevicPrefix(GeneratorSpec f, GeneratorSpec g) : f_(f), g_(g) {}

  void push(double x) override {
    ext_.push(x);
    sf_.add(f_(x));
    sg_.add(g_(x));
  }
  double value() const override {
    ext_.require_nonempty();
    if (ext_.constant()) return ext_.lo();
    return ext_.clamp(
        detail::invert_ratio(f_, g_, sf_.value() / sg_.value(), ext_.lo(), ext_.hi()));
  }
  std::size_t size() const override { return ext_.n(); }
  bool incremental() const override { return true; }

 private:
  GeneratorSpec f_;
  GeneratorSpec g_;
  Extent ext_;
  CompensatedSum sf_;
  CompensatedSum sg_;
};

class ExtremePrefix final : public PrefixEvaluator {
 public:
  explicit ExtremePrefix(bool is_max) : is_max_(is_max) {}

  void push(double x) override { ext_.push(x); }
  double value() const override {
    ext_.require_nonempty();
    return is_max_ ? ext_.hi() : ext_.lo();
  }
  std::size_t size() const override { return ext_.n(); }
  bool incremental() const override { return true; }

 private:
  bool is_max_;
  Extent ext_;
};

class GaussPrefix final : public PrefixEvaluator {
 public:
  explicit GaussPrefix(const node::Gauss& g) : means_(g.children) {
    for (const auto& c : means_) children_.push_back(make_prefix_evaluator(c));
  }

  void push(double x) override {
    ext_.push(x);
    for (auto& c : children_) c->push(x);
  }
  double value() const override {
    ext_.require_nonempty();
    if (ext_.constant()) return ext_.lo();
    std::vector<double> first;
    first.reserve(children_.size());
    for (const auto& c : children_) first.push_back(c->value());
    return ext_.clamp(gauss_iterate(means_, SampleVector(std::move(first))));
  }
  std::size_t size() const override { return ext_.n(); }
  bool incremental() const override {
    return std::all_of(children_.begin(), children_.end(),
                       [](const auto& c) { return c->incremental(); });
  }

 private:
  std::vector<MeanExpr> means_;
  std::vector<std::unique_ptr<PrefixEvaluator>> children_;
  Extent ext_;
};

// Stores the prefix and re-evaluates from scratch.
class FullPrefix final : public PrefixEvaluator {
 public:
  explicit FullPrefix(MeanExpr expr) : expr_(std::move(expr)) {}

  void push(double x) override {
    ext_.push(x);
    xs_.push_back(x);
  }
  double value() const override {
    ext_.require_nonempty();
    return evaluate(expr_, SampleVector(xs_));
  }
  std::size_t size() const override { return xs_.size(); }
  bool incremental() const override { return false; }

 private:
  MeanExpr expr_;
  Extent ext_;
  std::vector<double> xs_;
};

}  // namespace

std::unique_ptr<PrefixEvaluator> make_prefix_evaluator(const MeanExpr& expr) {
  const auto& n = expr.node();
  if (auto* p = std::get_if<node::Power>(&n)) return std::make_unique<PowerPrefix>(p->p);
  if (std::holds_alternative<node::Arith>(n)) return std::make_unique<PowerPrefix>(1.0);
  if (std::holds_alternative<node::Geom>(n)) return std::make_unique<PowerPrefix>(0.0);
  if (std::holds_alternative<node::Harm>(n)) return std::make_unique<PowerPrefix>(-1.0);
  if (auto* g = std::get_if<node::Gini>(&n)) return std::make_unique<GiniPrefix>(g->p, g->q);
  if (auto* q = std::get_if<node::QuasiArithmetic>(&n)) return std::make_unique<QuasiPrefix>(q->f);
  if (auto* b = std::get_if<node::Bajraktarevic>(&n)) {
    return std::make_unique<BajraktarevicPrefix>(b->f, b->g);
  }
  if (std::holds_alternative<node::Min>(n)) return std::make_unique<ExtremePrefix>(false);
  if (std::holds_alternative<node::Max>(n)) return std::make_unique<ExtremePrefix>(true);
  if (auto* d = std::get_if<node::Deviation>(&n)) {
    // Every catalogue deviation is f(x) - g(x) (f/g)(y), so the root solves
    // (f/g)(y) = sum f / sum g.
    if (d->e.kind() == DeviationSpec::Kind::arithmetic) return std::make_unique<PowerPrefix>(1.0);
    return std::make_unique<BajraktarevicPrefix>(d->e.f(), d->e.g());
  }
  if (auto* gs = std::get_if<node::Gauss>(&n)) return std::make_unique<GaussPrefix>(*gs);
  return std::make_unique<FullPrefix>(expr);
}

}  // namespace hardymeans
