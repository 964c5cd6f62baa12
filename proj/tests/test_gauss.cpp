#include <doctest.h>

#include <cmath>
#include <vector>

#include "hardymeans/error.hpp"
#include "hardymeans/evaluate.hpp"
#include "hardymeans/gauss.hpp"
#include "hardymeans/grammar.hpp"
#include "hardymeans/numeric.hpp"

using namespace hardymeans;

namespace {

// Two-mean iteration in long double, stopped on a fixed point.
template <class A, class B>
long double oracle_pair(A m1, B m2, long double a, long double b) {
  for (int i = 0; i < 200; ++i) {
    const long double a2 = m1(a, b), b2 = m2(a, b);
    if (a2 == a && b2 == b) break;
    a = a2;
    b = b2;
  }
  return (a + b) / 2;
}

long double am(long double a, long double b) { return (a + b) / 2; }
long double gm(long double a, long double b) { return std::sqrt(a * b); }
long double hm(long double a, long double b) { return 2 * a * b / (a + b); }

std::vector<MeanExpr> agm() { return {MeanExpr::power(1), MeanExpr::power(0)}; }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("one and two AGM steps") {
  const auto s1 = gauss_step(agm(), {24.0, 6.0});
  CHECK(s1[0] == 15.0);
  CHECK(s1[1] == doctest::Approx(12.0).epsilon(1e-15));
  const auto s2 = gauss_step(agm(), s1);
  CHECK(s2[0] == doctest::Approx(13.5).epsilon(1e-15));
  CHECK(s2[1] == doctest::Approx(std::sqrt(180.0)).epsilon(1e-15));
  const auto c = gauss_step(agm(), {3.0, 3.0, 3.0});
  CHECK(c == SampleVector{3.0, 3.0});
}

TEST_CASE("gaussian product values against long double iteration") {
  CHECK(gauss_product(agm(), {1.0, 1.0}) == 1.0);
  const double agm24 = static_cast<double>(oracle_pair(am, gm, 24.0L, 6.0L));
  CHECK(rel(gauss_product(agm(), {24.0, 6.0}), agm24) < 1e-13);
  CHECK(agm24 == doctest::Approx(13.4581).epsilon(1e-5));

  const std::vector<MeanExpr> hg{MeanExpr::power(-1), MeanExpr::power(0)};
  const double e = std::exp(1.0);
  const double hg2e = static_cast<double>(oracle_pair(hm, gm, 2.0L, static_cast<long double>(e)));
  const double v = gauss_product(hg, {2.0, e});
  CHECK(rel(v, hg2e) < 1e-13);
  CHECK(format_number(std::round(v * 1000) / 1000) == "2.318");
}

TEST_CASE("gaussian product properties on samples") {
  const std::vector<std::vector<MeanExpr>> products{
      agm(),
      {MeanExpr::power(-1), MeanExpr::power(0)},
      {MeanExpr::power(0.5), MeanExpr::gini(0.5, -1), MeanExpr::harm()},
      {MeanExpr::power(-2), MeanExpr::quasi_arithmetic(GeneratorSpec::log())}};
  Rng rng(41);
  for (const auto& means : products) {
    for (int t = 0; t < 100; ++t) {
      std::vector<double> u(static_cast<std::size_t>(rng.integer(1, 6))), w(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = rng.log_uniform(0.1, 10);
        w[i] = rng.log_uniform(0.1, 10);
      }
      const SampleVector x(u);
      const double g = gauss_product(means, x);
      CHECK(g >= x.min());
      CHECK(g <= x.max());
      CHECK(rel(gauss_product(means, gauss_step(means, x)), g) <= 1e-10);
      const double s = rng.log_uniform(0.01, 100);
      CHECK(rel(gauss_product(means, x.scaled(s)), s * g) <= 1e-11);

      std::vector<double> mid(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) mid[i] = (u[i] + w[i]) / 2;
      CHECK(gauss_product(means, SampleVector(mid)) >=
            (g + gauss_product(means, SampleVector(w))) / 2 - 1e-10);

      const auto trace = gauss_product_trace(means, x);
      for (std::size_t k = 1; k < trace.maxs.size(); ++k) {
        CHECK(trace.maxs[k] <= trace.maxs[k - 1]);
        CHECK(trace.mins[k] >= trace.mins[k - 1]);
      }
    }
  }
}

TEST_CASE("non-convergence is reported with the final gap") {
  GaussConfig cfg;
  cfg.max_iterations = 2;
  try {
    gauss_product(agm(), {1.0, 100.0}, cfg);
    FAIL("expected non-convergence");
  } catch (const MeanError& e) {
    CHECK(e.code() == ErrorCode::non_convergence);
    CHECK(std::string(e.what()).find("gap") != std::string::npos);
  }
  // Min and max never meet.
  CHECK_THROWS_AS(gauss_product({MeanExpr::min(), MeanExpr::max()}, {1.0, 2.0}), MeanError);
}

TEST_CASE("config validation") {
  GaussConfig cfg;
  cfg.tolerance = 0;
  CHECK_THROWS_AS(gauss_product(agm(), {1.0, 2.0}, cfg), MeanError);
  cfg.tolerance = 1e-13;
  cfg.max_iterations = 0;
  CHECK_THROWS_AS(gauss_product(agm(), {1.0, 2.0}, cfg), MeanError);
  CHECK_THROWS_AS(gauss_step({MeanExpr::power(1)}, {1.0, 2.0}), MeanError);
}

TEST_CASE("evaluate dispatches gauss nodes and nests") {
  const auto e = parse_mean_expr("gauss(power(1),gauss(power(0),power(-1)))");
  const double inner = gauss_product({MeanExpr::power(0), MeanExpr::power(-1)}, {2.0, 5.0});
  const double outer = gauss_product({MeanExpr::power(1),
                                      MeanExpr::gauss({MeanExpr::power(0), MeanExpr::power(-1)})},
                                     {2.0, 5.0});
  CHECK(evaluate(e, {2.0, 5.0}) == outer);
  CHECK(inner < outer);
}
