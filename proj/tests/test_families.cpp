#include <doctest.h>

#include <cmath>
#include <vector>

#include "hardymeans/error.hpp"
#include "hardymeans/families.hpp"
#include "hardymeans/numeric.hpp"

using namespace hardymeans;

namespace {

std::vector<double> random_entries(Rng& rng, int max_dim = 8, double lo = 1e-3, double hi = 1e3) {
  std::vector<double> v(static_cast<std::size_t>(rng.integer(1, max_dim)));
  for (double& x : v) x = rng.log_uniform(lo, hi);
  return v;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Naive textbook formulas, evaluated in long double.
long double naive_power(double p, const std::vector<double>& x) {
  long double s = 0;
  for (double v : x) s += p == 0 ? std::log(static_cast<long double>(v)) : std::pow(static_cast<long double>(v), p);
  s /= x.size();
  return p == 0 ? std::exp(s) : std::pow(s, 1.0L / p);
}

long double naive_gini(double p, double q, const std::vector<double>& x) {
  long double sp = 0, sq = 0;
  for (double v : x) {
    sp += std::pow(static_cast<long double>(v), p);
    sq += std::pow(static_cast<long double>(v), q);
  }
  return std::pow(sp / sq, 1.0L / (p - q));
}

}  // namespace

TEST_CASE("power mean examples") {
  CHECK(power_mean(0.5, {1.0, 0.25}) == doctest::Approx(0.5625).epsilon(1e-15));
  CHECK(power_mean(-1.0, {2.0, 2.0}) == 2.0);
  CHECK(power_mean(0.0, {1.0, 1.0 / 2, 1.0 / 3}) == doctest::Approx(std::cbrt(1.0 / 6.0)).epsilon(1e-15));
  CHECK(power_mean(1.0, {1.0, 2.0, 3.0}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(power_mean(0.0, {2.0, 8.0}) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("power mean matches the naive formula and does not overflow") {
  Rng rng(3);
  for (double p : {-3.0, -1.0, -0.25, 0.0, 0.5, 1.0, 2.0, 7.0}) {
    for (int t = 0; t < 100; ++t) {
      const auto x = random_entries(rng);
      CHECK(rel(power_mean(p, SampleVector(x)), static_cast<double>(naive_power(p, x))) < 1e-12);
    }
  }
  CHECK(power_mean(400.0, {1e300, 1e300}) == 1e300);
  CHECK(power_mean(-400.0, {1e-300, 1e-300, 2e-300}) > 0.0);
  CHECK(std::isfinite(power_mean(100.0, {1e100, 1.0})));
}

TEST_CASE("power mean is nondecreasing in p") {
  Rng rng(5);
  for (int t = 0; t < 300; ++t) {
    const SampleVector x(random_entries(rng));
    double prev = 0.0;
    for (double p : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0}) {
      const double m = power_mean(p, x);
      CHECK(m >= prev * (1 - 1e-14));
      prev = m;
    }
  }
}

TEST_CASE("quasi-arithmetic examples") {
  CHECK(quasi_arithmetic_mean(GeneratorSpec::log(), {2.0, 8.0}) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(quasi_arithmetic_mean(GeneratorSpec::identity(), {1.0, 2.0, 3.0}) == doctest::Approx(2.0).epsilon(1e-15));
  // log(mean(exp)) evaluated by hand: log((e + e^3)/2)
  CHECK(quasi_arithmetic_mean(GeneratorSpec::exp(), {1.0, 3.0}) ==
        doctest::Approx(std::log((std::exp(1.0) + std::exp(3.0)) / 2)).epsilon(1e-15));
  CHECK(quasi_arithmetic_mean(GeneratorSpec::exp(), {1000.0, 999.0}) ==
        doctest::Approx(999.0 + std::log((std::exp(1.0) + 1.0) / 2)).epsilon(1e-15));
  CHECK_THROWS_AS(quasi_arithmetic_mean(GeneratorSpec::pow(0.0), {1.0, 2.0}), MeanError);

  Rng rng(9);
  for (double p : {-2.0, -0.5, 0.3, 1.5}) {
    for (int t = 0; t < 100; ++t) {
      const SampleVector x(random_entries(rng));
      CHECK(rel(quasi_arithmetic_mean(GeneratorSpec::pow(p), x), power_mean(p, x)) < 1e-12);
      CHECK(rel(quasi_arithmetic_mean(GeneratorSpec::neg_pow(p), x), power_mean(p, x)) < 1e-12);
    }
  }
}

TEST_CASE("gini examples") {
  CHECK(gini_mean(2.0, 1.0, {1.0, 2.0, 3.0}) == doctest::Approx(14.0 / 6.0).epsilon(1e-15));
  CHECK(gini_mean(2.0, 1.0, {1.0, 2.0, 3.0}) == gini_mean(1.0, 2.0, {1.0, 2.0, 3.0}));
  CHECK(gini_mean(1.0, 1.0, {5.0, 5.0}) == 5.0);
  // p = q branch: exp(sum x^p ln x / sum x^p); with p = 1 on (1, 2): exp(2 ln 2 / 3)
  CHECK(gini_mean(1.0, 1.0, {1.0, 2.0}) == doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-15));
}

TEST_CASE("gini identities on samples") {
  Rng rng(13);
  for (int t = 0; t < 300; ++t) {
    const auto v = random_entries(rng);
    const SampleVector x(v);
    const double p = rng.uniform(-3, 3);
    const double q = rng.uniform(-3, 3);
    CHECK(gini_mean(p, q, x) == gini_mean(q, p, x));
    CHECK(rel(gini_mean(p, 0.0, x), power_mean(p, x)) < 1e-12);
    CHECK(rel(gini_mean(0.7, 0.0, x), power_mean(0.7, x)) < 1e-12);
    if (x.size() > 1) CHECK(rel(gini_mean(p, q, x), static_cast<double>(naive_gini(p, q, v))) < 1e-11);
  }
}

TEST_CASE("gini approaches its diagonal branch") {
  Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    const SampleVector x(random_entries(rng, 8, 0.1, 10));
    const double q = rng.uniform(-2, 2);
    const double diag = gini_mean(q, q, x);
    const double d4 = std::abs(gini_mean(q + 1e-4, q, x) - diag);
    const double d5 = std::abs(gini_mean(q + 1e-5, q, x) - diag);
    CHECK(d5 <= d4);
    CHECK(d4 <= 1e-3 * diag);
  }
}

TEST_CASE("bajraktarevic examples") {
  const SampleVector x{1.0, 2.0, 3.0};
  CHECK(bajraktarevic_mean(GeneratorSpec::pow(2.0), GeneratorSpec::pow(1.0), x) ==
        doctest::Approx(14.0 / 6.0).epsilon(1e-14));
  CHECK(bajraktarevic_mean(GeneratorSpec::log(), GeneratorSpec::pow(0.0), {4.0, 4.0, 4.0}) == 4.0);
  Rng rng(19);
  const std::vector<GeneratorSpec> fs{GeneratorSpec::identity(), GeneratorSpec::log(),
                                      GeneratorSpec::pow(-1.5), GeneratorSpec::neg_pow(-0.5)};
  for (const auto& f : fs) {
    for (int t = 0; t < 100; ++t) {
      const SampleVector s(random_entries(rng));
      CHECK(rel(bajraktarevic_mean(f, GeneratorSpec::pow(0.0), s), quasi_arithmetic_mean(f, s)) < 1e-12);
    }
  }
  for (int t = 0; t < 200; ++t) {
    const SampleVector s(random_entries(rng));
    const double p = rng.uniform(-2, 2);
    const double q = rng.uniform(-2, 2);
    if (p == q) continue;
    CHECK(rel(bajraktarevic_mean(GeneratorSpec::pow(p), GeneratorSpec::pow(q), s), gini_mean(p, q, s)) < 1e-12);
  }
}

TEST_CASE("bajraktarevic rejects bad pairs") {
  CHECK_THROWS_AS(bajraktarevic_mean(GeneratorSpec::pow(1.0), GeneratorSpec::pow(1.0), {1.0, 2.0}), MeanError);
  CHECK_THROWS_AS(bajraktarevic_mean(GeneratorSpec::identity(), GeneratorSpec::log(), {1.0, 2.0}), MeanError);
  CHECK_THROWS_AS(bajraktarevic_mean(GeneratorSpec::identity(), GeneratorSpec::neg_pow(1.0), {1.0, 2.0}), MeanError);
}

TEST_CASE("deviation examples") {
  CHECK(deviation_mean(DeviationSpec::arithmetic(), {1.0, 2.0, 3.0}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(deviation_mean(DeviationSpec::arithmetic(), {3.0, 3.0}) == 3.0);
  const auto e = DeviationSpec::pair(GeneratorSpec::log(), GeneratorSpec::pow(0.0));
  CHECK(deviation_mean(e, {2.0, 2.0}) == 2.0);
  CHECK(deviation_mean(e, {2.0, 8.0}) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("deviation functions vanish on the diagonal and decrease in y") {
  Rng rng(23);
  const std::vector<DeviationSpec> specs{
      DeviationSpec::arithmetic(),
      DeviationSpec::pair(GeneratorSpec::pow(2.0), GeneratorSpec::pow(1.0)),
      DeviationSpec::pair(GeneratorSpec::pow(-1.0), GeneratorSpec::pow(0.5)),
      DeviationSpec::pair(GeneratorSpec::log(), GeneratorSpec::pow(0.0)),
      DeviationSpec::pair(GeneratorSpec::pow(-1.0), GeneratorSpec::exp())};
  for (const auto& e : specs) {
    for (int t = 0; t < 100; ++t) {
      const double x = rng.log_uniform(0.1, 10);
      CHECK(std::abs(e(x, x)) <= 1e-12 * (1 + std::abs(x)));
      double prev = INFINITY;
      for (double y = 0.1; y <= 10; y *= 1.3) {
        const double v = e(x, y);
        CHECK(v < prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("deviation pair agrees with bajraktarevic") {
  Rng rng(29);
  const std::vector<std::pair<GeneratorSpec, GeneratorSpec>> pairs{
      {GeneratorSpec::pow(2.0), GeneratorSpec::pow(1.0)},
      {GeneratorSpec::pow(-1.0), GeneratorSpec::pow(0.5)},
      {GeneratorSpec::log(), GeneratorSpec::pow(0.0)},
      {GeneratorSpec::neg_pow(-0.5), GeneratorSpec::exp()},
      {GeneratorSpec::pow(-2.0), GeneratorSpec::exp()},
      {GeneratorSpec::neg_pow(-2.0), GeneratorSpec::pow(0.0)}};
  for (const auto& [f, g] : pairs) {
    const auto e = DeviationSpec::pair(f, g);
    for (int t = 0; t < 100; ++t) {
      const SampleVector x(random_entries(rng, 8, 0.1, 10));
      CHECK(rel(deviation_mean(e, x), bajraktarevic_mean(f, g, x)) < 1e-10);
    }
  }
}

TEST_CASE("every family respects the mean-value bounds") {
  Rng rng(31);
  for (int t = 0; t < 300; ++t) {
    const SampleVector x(random_entries(rng, 8, 0.1, 10));
    const double lo = x.min(), hi = x.max();
    const double p = rng.uniform(-4, 4), q = rng.uniform(-4, 4);
    for (double m : {power_mean(p, x), gini_mean(p, q, x),
                     quasi_arithmetic_mean(GeneratorSpec::exp(), x),
                     bajraktarevic_mean(GeneratorSpec::pow(-1.0), GeneratorSpec::exp(), x),
                     deviation_mean(DeviationSpec::pair(GeneratorSpec::pow(p == 0 ? 1 : p), GeneratorSpec::pow(0.0)), x)}) {
      CHECK(m >= lo);
      CHECK(m <= hi);
    }
  }
}
