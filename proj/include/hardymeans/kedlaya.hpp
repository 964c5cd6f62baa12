#pragma once

#include <cstdint>
#include <vector>

#include "hardymeans/mean_expr.hpp"
#include "hardymeans/sample.hpp"

namespace hardymeans {

inline constexpr int kMaxCoefficientN = 12;
inline constexpr int kMaxMatrixN = 6;

// a_k(i, j) = (n-1)! C(n-i, j-k) C(i-1, k-1) / C(n-1, j-1), exact. Binomials
// with arguments out of range vanish. Requires 1 <= i, j, k <= n <= 12.
std::uint64_t kedlaya_coefficient(int n, int i, int j, int k);

std::uint64_t factorial(int n);
std::uint64_t binomial(int n, int k);

class KedlayaTable {
 public:
  explicit KedlayaTable(int n);

  int n() const noexcept { return n_; }
  std::uint64_t at(int i, int j, int k) const;  // 1-based

 private:
  int n_;
  std::vector<std::uint64_t> a_;
};

// Result of checking the six structural identities of the coefficients.
struct KedlayaAudit {
  bool nonnegative = true;            // (1)
  bool integral = true;               // (2): exact division in the defining formula
  bool vanishes_above_min = true;     // (3)
  bool symmetric = true;              // (4)
  bool row_sums = true;               // (5): sum_k a_k(i,j) = (n-1)!
  bool column_sums = true;            // (6): sum_i a_k(i,j) = n!/j or 0

  bool all() const noexcept {
    return nonnegative && integral && vanishes_above_min && symmetric && row_sums &&
           column_sums;
  }
};

KedlayaAudit audit_kedlaya_table(const KedlayaTable& table);

// The n! x n! symbol matrix, in (n-1)! x (n-1)! blocks A_{i,j}. Row r of a
// block is the block's first row rotated left by r; the first row lists symbol
// k a_k(i,j) times in ascending k.
class KedlayaMatrix {
 public:
  explicit KedlayaMatrix(int n);  // 2 <= n <= 6

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return size_; }
  // Symbol in 1..n at 0-based (row, col).
  int at(std::size_t row, std::size_t col) const { return cells_[row * size_ + col]; }

  // b(p) for a 0-based row/column index.
  int block_of(std::size_t index) const noexcept;

 private:
  int n_;
  std::size_t size_;
  std::vector<std::uint8_t> cells_;
};

// Checks that row and column p contain symbol k exactly n!/b(p) times for
// k <= b(p) and never otherwise, for every p. Also checks the per-block counts.
bool verify_occurrence_counts(const KedlayaMatrix& m);

// M(x_1, (x_1+x_2)/2, ..., (x_1+...+x_n)/n) minus the average of
// M(x_1), ..., M(x_1..x_n). Nonnegative when the Kedlaya inequality holds.
double check_kedlaya_inequality(const MeanExpr& expr, const SampleVector& x);

// n M(s, s/2, ..., s/n) - sum_k M(x_1..x_k), s = x_1 + ... + x_n.
double check_dominated_kedlaya(const MeanExpr& expr, const SampleVector& x);

// Both sides of the averaging argument run directly on the substituted matrix:
// `column_side` averages the column means, `row_side` is the mean of the row
// averages. For concave symmetric repetition-invariant means column_side <=
// row_side.
struct MatrixAveraging {
  double column_side;
  double row_side;
};

MatrixAveraging kedlaya_matrix_averaging(const MeanExpr& expr, const SampleVector& x);

}  // namespace hardymeans
