#include "hardymeans/kedlaya.hpp"

#include <string>

#include "hardymeans/error.hpp"
#include "hardymeans/evaluate.hpp"
#include "hardymeans/numeric.hpp"

namespace hardymeans {

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) {
    throw MeanError(ErrorCode::out_of_range, "factorial argument outside 0..20");
  }
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (2 * k > n) k = n - k;
  std::uint64_t r = 1;
  // r * (n - k + i) stays exact: r is C(n-k+i-1, i-1) and divides evenly by i
  // after the multiplication.
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

namespace {

void require_coefficient_range(int n, int i, int j, int k) {
  if (n < 1 || n > kMaxCoefficientN) {
    throw MeanError(ErrorCode::out_of_range,
                    "Kedlaya coefficients support 1 <= n <= " + std::to_string(kMaxCoefficientN));
  }
  if (i < 1 || i > n || j < 1 || j > n || k < 1 || k > n) {
    throw MeanError(ErrorCode::out_of_range, "Kedlaya indices must lie in 1..n");
  }
}

struct Division {
  std::uint64_t quotient;
  bool exact;
};

Division coefficient_division(int n, int i, int j, int k) {
  const std::uint64_t num =
      factorial(n - 1) * binomial(n - i, j - k) * binomial(i - 1, k - 1);
  const std::uint64_t den = binomial(n - 1, j - 1);
  return {num / den, num % den == 0};
}

}  // namespace

std::uint64_t kedlaya_coefficient(int n, int i, int j, int k) {
  require_coefficient_range(n, i, j, k);
  const auto d = coefficient_division(n, i, j, k);
  if (!d.exact) {
    throw MeanError(ErrorCode::invalid_input, "Kedlaya coefficient is not an integer");
  }
  return d.quotient;
}

KedlayaTable::KedlayaTable(int n) : n_(n) {
  require_coefficient_range(n, 1, 1, 1);
  a_.resize(static_cast<std::size_t>(n) * n * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        a_[static_cast<std::size_t>(((i - 1) * n + (j - 1)) * n + (k - 1))] =
            kedlaya_coefficient(n, i, j, k);
}

std::uint64_t KedlayaTable::at(int i, int j, int k) const {
  require_coefficient_range(n_, i, j, k);
  return a_[static_cast<std::size_t>(((i - 1) * n_ + (j - 1)) * n_ + (k - 1))];
}

KedlayaAudit audit_kedlaya_table(const KedlayaTable& t) {
  const int n = t.n();
  KedlayaAudit audit;
  const std::uint64_t fact_n1 = factorial(n - 1);
  const std::uint64_t fact_n = factorial(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      std::uint64_t row = 0;
      for (int k = 1; k <= n; ++k) {
        const std::uint64_t a = t.at(i, j, k);
        // Unsigned storage makes (1) structural; the formula's numerator and
        // denominator are nonnegative, so the check is on the raw division.
        if (!coefficient_division(n, i, j, k).exact) audit.integral = false;
        if (k > std::min(i, j) && a != 0) audit.vanishes_above_min = false;
        if (a != t.at(j, i, k)) audit.symmetric = false;
        row += a;
      }
      if (row != fact_n1) audit.row_sums = false;
    }
  }
  for (int j = 1; j <= n; ++j) {
    for (int k = 1; k <= n; ++k) {
      std::uint64_t col = 0;
      for (int i = 1; i <= n; ++i) col += t.at(i, j, k);
      const std::uint64_t expected = k <= j ? fact_n / static_cast<std::uint64_t>(j) : 0;
      if (col != expected) audit.column_sums = false;
    }
  }
  return audit;
}

KedlayaMatrix::KedlayaMatrix(int n) : n_(n) {
  if (n < 2 || n > kMaxMatrixN) {
    throw MeanError(ErrorCode::out_of_range,
                    "Kedlaya matrix supports 2 <= n <= " + std::to_string(kMaxMatrixN));
  }
  const KedlayaTable table(n);
  const auto block = static_cast<std::size_t>(factorial(n - 1));
  size_ = block * static_cast<std::size_t>(n);
  cells_.assign(size_ * size_, 0);
  std::vector<std::uint8_t> first(block);
  for (int bi = 0; bi < n; ++bi) {
    for (int bj = 0; bj < n; ++bj) {
      std::size_t pos = 0;
      for (int k = 1; k <= n; ++k) {
        const auto count = table.at(bi + 1, bj + 1, k);
        for (std::uint64_t c = 0; c < count; ++c) first[pos++] = static_cast<std::uint8_t>(k);
      }
      for (std::size_t r = 0; r < block; ++r) {
        std::uint8_t* row = &cells_[(bi * block + r) * size_ + bj * block];
        for (std::size_t c = 0; c < block; ++c) row[c] = first[(c + r) % block];
      }
    }
  }
}

int KedlayaMatrix::block_of(std::size_t index) const noexcept {
  return static_cast<int>(index / (size_ / static_cast<std::size_t>(n_))) + 1;
}

bool verify_occurrence_counts(const KedlayaMatrix& m) {
  const int n = m.n();
  const std::size_t size = m.size();
  const std::size_t block = size / static_cast<std::size_t>(n);
  const std::uint64_t fact_n = factorial(n);
  const KedlayaTable table(n);
  std::vector<std::uint64_t> row_count(static_cast<std::size_t>(n) + 1);
  std::vector<std::uint64_t> col_count(static_cast<std::size_t>(n) + 1);
  for (std::size_t p = 0; p < size; ++p) {
    std::fill(row_count.begin(), row_count.end(), 0);
    std::fill(col_count.begin(), col_count.end(), 0);
    for (std::size_t q = 0; q < size; ++q) {
      const int rs = m.at(p, q);
      const int cs = m.at(q, p);
      if (rs < 1 || rs > n || cs < 1 || cs > n) return false;
      ++row_count[static_cast<std::size_t>(rs)];
      ++col_count[static_cast<std::size_t>(cs)];
    }
    const int b = m.block_of(p);
    for (int k = 1; k <= n; ++k) {
      const std::uint64_t expected = k <= b ? fact_n / static_cast<std::uint64_t>(b) : 0;
      if (row_count[static_cast<std::size_t>(k)] != expected) return false;
      if (col_count[static_cast<std::size_t>(k)] != expected) return false;
    }
  }
  // Within every block, each row and column holds k exactly a_k(i,j) times.
  std::vector<std::uint64_t> count(static_cast<std::size_t>(n) + 1);
  for (int bi = 0; bi < n; ++bi) {
    for (int bj = 0; bj < n; ++bj) {
      for (std::size_t r = 0; r < block; ++r) {
        for (int pass = 0; pass < 2; ++pass) {
          std::fill(count.begin(), count.end(), 0);
          for (std::size_t c = 0; c < block; ++c) {
            const int s = pass == 0 ? m.at(bi * block + r, bj * block + c)
                                    : m.at(bi * block + c, bj * block + r);
            ++count[static_cast<std::size_t>(s)];
          }
          for (int k = 1; k <= n; ++k) {
            if (count[static_cast<std::size_t>(k)] != table.at(bi + 1, bj + 1, k)) return false;
          }
        }
      }
    }
  }
  return true;
}

double check_kedlaya_inequality(const MeanExpr& expr, const SampleVector& x) {
  const std::size_t n = x.size();
  std::vector<double> partial_averages;
  partial_averages.reserve(n);
  CompensatedSum running;
  CompensatedSum prefix_means;
  for (std::size_t k = 0; k < n; ++k) {
    running.add(x[k]);
    partial_averages.push_back(running.value() / static_cast<double>(k + 1));
    prefix_means.add(evaluate(expr, x.prefix(k + 1)));
  }
  const double rhs = evaluate(expr, SampleVector(std::move(partial_averages)));
  return rhs - prefix_means.value() / static_cast<double>(n);
}

double check_dominated_kedlaya(const MeanExpr& expr, const SampleVector& x) {
  const std::size_t n = x.size();
  const double s = compensated_sum(x.values());
  std::vector<double> harmonic(n);
  for (std::size_t k = 0; k < n; ++k) harmonic[k] = s / static_cast<double>(k + 1);
  CompensatedSum prefix_means;
  for (std::size_t k = 0; k < n; ++k) prefix_means.add(evaluate(expr, x.prefix(k + 1)));
  return static_cast<double>(n) * evaluate(expr, SampleVector(std::move(harmonic))) -
         prefix_means.value();
}

MatrixAveraging kedlaya_matrix_averaging(const MeanExpr& expr, const SampleVector& x) {
  const int n = static_cast<int>(x.size());
  const KedlayaMatrix a(n);
  const std::size_t size = a.size();
  std::vector<double> column(size);
  CompensatedSum column_means;
  std::vector<double> row_averages(size);
  for (std::size_t p = 0; p < size; ++p) {
    CompensatedSum row;
    for (std::size_t q = 0; q < size; ++q) {
      column[q] = x[static_cast<std::size_t>(a.at(q, p) - 1)];
      row.add(x[static_cast<std::size_t>(a.at(p, q) - 1)]);
    }
    column_means.add(evaluate(expr, SampleVector(column)));
    row_averages[p] = row.value() / static_cast<double>(size);
  }
  return {column_means.value() / static_cast<double>(size),
          evaluate(expr, SampleVector(std::move(row_averages)))};
}

}  // namespace hardymeans
