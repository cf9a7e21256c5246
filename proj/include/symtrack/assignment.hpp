#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace symtrack {

/// N x M similarities in [0, 1] with a per-entry feasibility flag. Gated
/// entries keep their value but are never assigned.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  SimilarityMatrix(int rows, int cols, int delta_t = 0);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int delta_t() const { return delta_t_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double value(int r, int c) const { return values_[index(r, c)]; }
  bool feasible(int r, int c) const { return feasible_[index(r, c)] != 0; }

  /// Stores a similarity; throws Error outside [0, 1] or for NaN.
  void set(int r, int c, double similarity, bool feasible = true);
  void set_feasible(int r, int c, bool feasible) { feasible_[index(r, c)] = feasible ? 1 : 0; }

  /// Marks every entry strictly below `threshold` infeasible.
  void gate(double threshold);

 private:
  std::size_t index(int r, int c) const { return static_cast<std::size_t>(r) * cols_ + c; }

  int rows_ = 0;
  int cols_ = 0;
  int delta_t_ = 0;
  std::vector<double> values_;
  std::vector<std::uint8_t> feasible_;
};

struct Assignment {
  /// (row, col) pairs sorted by row.
  std::vector<std::pair<int, int>> pairs;
  /// Sum of the assigned similarities, accumulated in row order.
  double total = 0.0;
};

/// Maximum-total one-to-one partial assignment over feasible entries, solved
/// with the Hungarian method on the negated similarities. Among assignments
/// whose totals tie (within 1e-12 per row), the lexicographically smallest
/// column sequence by row wins, with "unassigned" ordered after every column.
Assignment hungarian(const SimilarityMatrix& matrix);

/// Minimum-cost perfect assignment of an n x m cost matrix (row-major, n <= m).
/// Returns the column chosen for each row.
std::vector<int> solve_min_cost(const std::vector<double>& cost, int n, int m);

}  // namespace symtrack
