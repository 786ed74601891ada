#include "multicomm/simplex_detail.hpp"

#include <stdexcept>

namespace multicomm::detail {

namespace {

// Pivot the tableau at (row, col): scale the pivot row to 1 and eliminate the
// column from every other row.
void pivot(RatMat& T, std::vector<int>& basis, std::size_t row, std::size_t col) {
  const std::size_t ncols = T[0].size();
  const Rat p = T[row][col];
  for (std::size_t j = 0; j < ncols; ++j) T[row][j] /= p;
  for (std::size_t i = 0; i < T.size(); ++i) {
    if (i == row || T[i][col] == 0) continue;
    const Rat f = T[i][col];
    for (std::size_t j = 0; j < ncols; ++j) T[i][j] -= f * T[row][j];
  }
  basis[row] = static_cast<int>(col);
}

// One simplex phase with Bland's rule. `allowed[j]` masks columns that may
// enter. Returns false if unbounded in the cost direction.
bool run_phase(RatMat& T, std::vector<int>& basis, const RatVec& cost,
               const std::vector<bool>& allowed) {
  const std::size_t m = T.size();
  const std::size_t n = cost.size();
  for (;;) {
    // Reduced costs z_j = cost_j - cost_B . column_j.
    int enter = -1;
    for (std::size_t j = 0; j < n; ++j) {
      if (!allowed[j]) continue;
      bool basic = false;
      for (std::size_t i = 0; i < m; ++i)
        if (basis[i] == static_cast<int>(j)) {
          basic = true;
          break;
        }
      if (basic) continue;
      Rat z = cost[j];
      for (std::size_t i = 0; i < m; ++i)
        if (cost[basis[i]] != 0 && T[i][j] != 0) z -= cost[basis[i]] * T[i][j];
      if (z < 0) {
        enter = static_cast<int>(j);
        break;  // Bland: first improving index
      }
    }
    if (enter < 0) return true;

    // Ratio test, ties broken by smallest basis index (Bland).
    int leave = -1;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      Rat ratio = T[i][n] / T[i][enter];
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = static_cast<int>(i);
        best = ratio;
      }
    }
    if (leave < 0) return false;
    pivot(T, basis, static_cast<std::size_t>(leave),
          static_cast<std::size_t>(enter));
  }
}

}  // namespace

StdLpStatus solve_standard_lp(const RatMat& A, const RatVec& b, const RatVec& c,
                              RatVec& x, Rat& value) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  // Tableau columns: n structural + m artificial + rhs.
  RatMat T(m, RatVec(n + m + 1, Rat(0)));
  std::vector<int> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const int sign = (b[i] < 0) ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) T[i][j] = sign * A[i][j];
    T[i][n + i] = 1;
    T[i][n + m] = sign * b[i];
    basis[i] = static_cast<int>(n + i);
  }

  // Phase I: minimize the artificial sum.
  RatVec cost1(n + m, Rat(0));
  for (std::size_t j = n; j < n + m; ++j) cost1[j] = 1;
  std::vector<bool> allowed(n + m, true);
  if (!run_phase(T, basis, cost1, allowed))
    throw std::logic_error("phase-1 LP cannot be unbounded");
  Rat phase1 = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= static_cast<int>(n)) phase1 += T[i][n + m];
  if (phase1 != 0) return StdLpStatus::Infeasible;

  // Drive any zero-level artificials out of the basis.
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < static_cast<int>(n)) continue;
    std::size_t j = 0;
    for (; j < n; ++j)
      if (T[i][j] != 0) break;
    if (j < n) pivot(T, basis, i, j);
    // else: redundant row, harmless to keep (stays at zero).
  }

  // Phase II over structural columns only.
  RatVec cost2(n + m, Rat(0));
  for (std::size_t j = 0; j < n; ++j) cost2[j] = c[j];
  for (std::size_t j = n; j < n + m; ++j) allowed[j] = false;
  if (!run_phase(T, basis, cost2, allowed)) return StdLpStatus::Unbounded;

  x.assign(n, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < static_cast<int>(n)) x[basis[i]] = T[i][n + m];
  value = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (c[j] != 0 && x[j] != 0) value += c[j] * x[j];
  return StdLpStatus::Optimal;
}

}  // namespace multicomm::detail
