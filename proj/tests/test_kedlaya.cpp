#include <doctest.h>

#include <map>
#include <vector>

#include "hardymeans/error.hpp"
#include "hardymeans/grammar.hpp"
#include "hardymeans/kedlaya.hpp"
#include "hardymeans/numeric.hpp"

using namespace hardymeans;

namespace {

using u128 = unsigned __int128;

// Pascal triangle, independent of the library's multiplicative binomial.
u128 pascal(int n, int k) {
  static std::vector<std::vector<u128>> rows;
  if (n < 0 || k < 0 || k > n) return 0;
  while (static_cast<int>(rows.size()) <= n) {
    const int m = static_cast<int>(rows.size());
    std::vector<u128> r(static_cast<std::size_t>(m + 1), 1);
    for (int i = 1; i < m; ++i) r[i] = rows[m - 1][i - 1] + rows[m - 1][i];
    rows.push_back(r);
  }
  return rows[n][k];
}

u128 fact(int n) { return n <= 1 ? 1 : n * fact(n - 1); }

u128 oracle(int n, int i, int j, int k) {
  const u128 num = fact(n - 1) * pascal(n - i, j - k) * pascal(i - 1, k - 1);
  const u128 den = pascal(n - 1, j - 1);
  REQUIRE(num % den == 0);
  return num / den;
}

}  // namespace

TEST_CASE("n = 2 coefficients") {
  CHECK(kedlaya_coefficient(2, 1, 1, 1) == 1);
  CHECK(kedlaya_coefficient(2, 1, 2, 1) == 1);
  CHECK(kedlaya_coefficient(2, 2, 2, 1) == 0);
  CHECK(kedlaya_coefficient(2, 2, 2, 2) == 1);
}

TEST_CASE("coefficients match the factorial formula for every n <= 12") {
  for (int n = 1; n <= kMaxCoefficientN; ++n) {
    const KedlayaTable t(n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) CHECK(static_cast<u128>(t.at(i, j, k)) == oracle(n, i, j, k));
    CHECK(audit_kedlaya_table(t).all());
  }
}

TEST_CASE("property (5) row sums at n = 5") {
  const KedlayaTable t(5);
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      std::uint64_t s = 0;
      for (int k = 1; k <= 5; ++k) s += t.at(i, j, k);
      CHECK(s == 24);
    }
}

TEST_CASE("range limits") {
  CHECK_THROWS_AS(KedlayaTable(13), MeanError);
  CHECK_THROWS_AS(KedlayaTable(0), MeanError);
  CHECK_THROWS_AS(kedlaya_coefficient(3, 4, 1, 1), MeanError);
  CHECK_THROWS_AS(KedlayaMatrix(1), MeanError);
  CHECK_THROWS_AS(KedlayaMatrix(7), MeanError);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(3, -1) == 0);
  CHECK(binomial(12, 6) == 924);
  CHECK(factorial(12) == 479001600);
}

TEST_CASE("n = 2 matrix from its 1x1 blocks") {
  const KedlayaMatrix m(2);
  REQUIRE(m.size() == 2);
  CHECK(m.at(0, 0) == 1);
  CHECK(m.at(0, 1) == 1);
  CHECK(m.at(1, 0) == 1);
  CHECK(m.at(1, 1) == 2);
}

TEST_CASE("matrix blocks and occurrence counts, counted directly") {
  for (int n = 2; n <= kMaxMatrixN; ++n) {
    const KedlayaMatrix m(n);
    const std::size_t N = static_cast<std::size_t>(fact(n));
    const std::size_t B = static_cast<std::size_t>(fact(n - 1));
    REQUIRE(m.size() == N);
    CHECK(verify_occurrence_counts(m));
    for (std::size_t r = 0; r < N; ++r) {
      std::vector<std::size_t> row_count(n + 1, 0), col_count(n + 1, 0);
      for (std::size_t c = 0; c < N; ++c) {
        const int v = m.at(r, c);
        REQUIRE((v >= 1 && v <= n));
        ++row_count[v];
        ++col_count[m.at(c, r)];
      }
      const std::size_t b = r / B + 1;
      for (int k = 1; k <= n; ++k) {
        const std::size_t want = static_cast<std::size_t>(k) <= b ? N / b : 0;
        CHECK(row_count[k] == want);
        CHECK(col_count[k] == want);
      }
    }
    if (n <= 4) {
      // Each block row holds symbol k exactly a_k(i, j) times.
      const KedlayaTable t(n);
      for (std::size_t bi = 0; bi < static_cast<std::size_t>(n); ++bi)
        for (std::size_t bj = 0; bj < static_cast<std::size_t>(n); ++bj)
          for (std::size_t r = 0; r < B; ++r) {
            std::map<int, std::uint64_t> cnt;
            for (std::size_t c = 0; c < B; ++c) ++cnt[m.at(bi * B + r, bj * B + c)];
            for (int k = 1; k <= n; ++k)
              CHECK(cnt[k] == t.at(static_cast<int>(bi) + 1, static_cast<int>(bj) + 1, k));
          }
    }
  }
}

TEST_CASE("kedlaya inequality examples") {
  Rng rng(53);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> v(static_cast<std::size_t>(rng.integer(1, 6)));
    for (double& x : v) x = rng.log_uniform(0.1, 10);
    const SampleVector x(v);
    CHECK(std::abs(check_kedlaya_inequality(MeanExpr::power(1), x)) <= 1e-12);
    CHECK(check_kedlaya_inequality(MeanExpr::power(0), x) >= -1e-12);
    CHECK(check_kedlaya_inequality(MeanExpr::gini(0.5, -1), x) >= -1e-12);
    CHECK(check_dominated_kedlaya(MeanExpr::power(0.5), x) >= -1e-12);
  }
  CHECK(check_dominated_kedlaya(MeanExpr::power(0), {1.0}) == 0.0);
  CHECK(check_dominated_kedlaya(MeanExpr::power(1), {1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("a convex mean can violate the inequality") {
  Rng rng(59);
  double worst = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<double> v(static_cast<std::size_t>(rng.integer(2, 6)));
    for (double& x : v) x = rng.log_uniform(0.1, 10);
    worst = std::min(worst, check_kedlaya_inequality(MeanExpr::power(3), SampleVector(v)));
  }
  CHECK(worst < -1e-6);
}

TEST_CASE("matrix averaging re-enactment") {
  Rng rng(61);
  for (const char* text : {"power(0)", "power(0.5)", "power(-1)", "gini(0.5,-1)", "gauss(power(-1),power(0))"}) {
    const MeanExpr e = parse_mean_expr(text);
    for (int n = 2; n <= 4; ++n) {
      for (int t = 0; t < 20; ++t) {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (double& x : v) x = rng.log_uniform(0.1, 10);
        const auto avg = kedlaya_matrix_averaging(e, SampleVector(v));
        CHECK(avg.column_side <= avg.row_side + 1e-10);
      }
    }
  }
}
