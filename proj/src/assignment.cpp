#include "symtrack/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symtrack/geometry.hpp"

namespace symtrack {

SimilarityMatrix::SimilarityMatrix(int rows, int cols, int delta_t)
    : rows_(rows), cols_(cols), delta_t_(delta_t) {
  if (rows < 0 || cols < 0) throw Error("similarity matrix dimensions must be non-negative");
  values_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
  feasible_.assign(static_cast<std::size_t>(rows) * cols, 1);
}

void SimilarityMatrix::set(int r, int c, double similarity, bool feasible) {
  if (!(similarity >= 0.0 && similarity <= 1.0)) throw Error("similarity outside [0, 1]");
  values_[index(r, c)] = similarity;
  feasible_[index(r, c)] = feasible ? 1 : 0;
}

void SimilarityMatrix::gate(double threshold) {
  for (std::size_t k = 0; k < values_.size(); ++k)
    if (values_[k] < threshold) feasible_[k] = 0;
}

std::vector<int> solve_min_cost(const std::vector<double>& cost, int n, int m) {
  if (n > m) throw Error("solve_min_cost requires rows <= cols");
  if (n == 0) return {};
  // Shortest augmenting path formulation with row/column potentials,
  // 1-based with column 0 as the virtual source.
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> v(static_cast<std::size_t>(m) + 1, 0.0);
  std::vector<int> p(static_cast<std::size_t>(m) + 1, 0);
  std::vector<int> way(static_cast<std::size_t>(m) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(m) + 1, inf);
    std::vector<char> used(static_cast<std::size_t>(m) + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur =
            cost[static_cast<std::size_t>(i0 - 1) * m + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(static_cast<std::size_t>(n), -1);
  for (int j = 1; j <= m; ++j)
    if (p[j] != 0) row_to_col[static_cast<std::size_t>(p[j] - 1)] = j - 1;
  return row_to_col;
}

namespace {

struct SubResult {
  std::vector<int> row_to_col;  // indexed by original row, -1 = unassigned
  double total = 0.0;
};

// Optimal partial assignment restricted to the given rows and cols.
SubResult solve_subset(const SimilarityMatrix& mat, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
  SubResult res;
  res.row_to_col.assign(static_cast<std::size_t>(mat.rows()), -1);
  const int n = static_cast<int>(rows.size());
  const int m = static_cast<int>(cols.size());
  if (n == 0 || m == 0) return res;
  // Square padding: dummy and infeasible cells cost 0, i.e. "leave unassigned".
  const int k = std::max(n, m);
  std::vector<double> cost(static_cast<std::size_t>(k) * k, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < m; ++b)
      if (mat.feasible(rows[a], cols[b]))
        cost[static_cast<std::size_t>(a) * k + b] = -mat.value(rows[a], cols[b]);
  const std::vector<int> sol = solve_min_cost(cost, k, k);
  for (int a = 0; a < n; ++a) {
    const int b = sol[static_cast<std::size_t>(a)];
    if (b < m && mat.feasible(rows[a], cols[b])) {
      res.row_to_col[static_cast<std::size_t>(rows[a])] = cols[b];
    }
  }
  for (int r = 0; r < mat.rows(); ++r) {
    const int c = res.row_to_col[static_cast<std::size_t>(r)];
    if (c >= 0) res.total += mat.value(r, c);
  }
  return res;
}

}  // namespace

Assignment hungarian(const SimilarityMatrix& matrix) {
  Assignment out;
  if (matrix.empty()) return out;

  std::vector<int> rows(static_cast<std::size_t>(matrix.rows()));
  std::vector<int> cols(static_cast<std::size_t>(matrix.cols()));
  for (int r = 0; r < matrix.rows(); ++r) rows[static_cast<std::size_t>(r)] = r;
  for (int c = 0; c < matrix.cols(); ++c) cols[static_cast<std::size_t>(c)] = c;

  SubResult current = solve_subset(matrix, rows, cols);
  const double best = current.total;
  const double tol = 1e-12 * std::max(1, matrix.rows());

  // Fix rows one at a time to the smallest column that still admits an
  // optimal completion.
  double fixed_total = 0.0;
  std::vector<int> chosen(static_cast<std::size_t>(matrix.rows()), -1);
  for (int r = 0; r < matrix.rows(); ++r) {
    std::erase(rows, r);
    const int cur = current.row_to_col[static_cast<std::size_t>(r)];
    int pick = cur;
    for (int c : cols) {
      if (cur >= 0 && c >= cur) break;
      if (!matrix.feasible(r, c)) continue;
      std::vector<int> rest_cols = cols;
      std::erase(rest_cols, c);
      SubResult sub = solve_subset(matrix, rows, rest_cols);
      if (fixed_total + matrix.value(r, c) + sub.total >= best - tol) {
        pick = c;
        sub.row_to_col[static_cast<std::size_t>(r)] = c;
        for (int done = 0; done < r; ++done)
          sub.row_to_col[static_cast<std::size_t>(done)] = chosen[static_cast<std::size_t>(done)];
        current = std::move(sub);
        break;
      }
    }
    chosen[static_cast<std::size_t>(r)] = pick;
    if (pick >= 0) {
      fixed_total += matrix.value(r, pick);
      std::erase(cols, pick);
    }
  }

  for (int r = 0; r < matrix.rows(); ++r) {
    const int c = chosen[static_cast<std::size_t>(r)];
    if (c < 0) continue;
    out.pairs.emplace_back(r, c);
    out.total += matrix.value(r, c);
  }
  return out;
}

}  // namespace symtrack
