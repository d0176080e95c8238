#pragma once

// Dense two-phase tableau simplex with Bland's rule. Slow and simple on
// purpose: it serves as the reference for the revised simplex in the library.

#include <cmath>
#include <limits>
#include <vector>

namespace oracle {

enum class TableauStatus { Optimal, Infeasible, Unbounded };

struct TableauRow {
  std::vector<double> coeffs;  // one per variable
  bool equal = true;           // false: >=
  double rhs = 0;
};

struct TableauResult {
  TableauStatus status = TableauStatus::Infeasible;
  double objective = 0;
  std::vector<double> x;
};

// min c'x s.t. rows, x >= 0.
inline TableauResult tableau_solve(const std::vector<double>& c, const std::vector<TableauRow>& rows) {
  const double eps = 1e-10;
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(rows.size());
  int surplus = 0;
  for (const auto& r : rows) surplus += r.equal ? 0 : 1;
  // Columns: structurals, surpluses, artificials, then rhs.
  const int total = n + surplus + m;
  std::vector<std::vector<double>> t(m, std::vector<double>(total + 1, 0.0));
  std::vector<int> basis(m);
  int s = 0;
  for (int i = 0; i < m; ++i) {
    const double sign = rows[i].rhs < 0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) t[i][j] = sign * rows[i].coeffs[j];
    if (!rows[i].equal) t[i][n + s++] = -sign;
    t[i][n + surplus + i] = 1.0;
    t[i][total] = sign * rows[i].rhs;
    basis[i] = n + surplus + i;
  }

  auto pivot = [&](int r, int col) {
    const double p = t[r][col];
    for (auto& v : t[r]) v /= p;
    for (int i = 0; i < m; ++i) {
      if (i == r || std::abs(t[i][col]) < 1e-15) continue;
      const double f = t[i][col];
      for (int j = 0; j <= total; ++j) t[i][j] -= f * t[r][j];
    }
    basis[r] = col;
  };

  // Returns false when unbounded.
  auto optimize = [&](const std::vector<double>& cost, int allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < allowed; ++j) {
        bool basic = false;
        for (int b : basis) basic = basic || b == j;
        if (basic) continue;
        double d = cost[j];
        for (int i = 0; i < m; ++i) d -= cost[basis[i]] * t[i][j];
        if (d < -eps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (t[i][enter] > eps) {
          const double ratio = t[i][total] / t[i][enter];
          if (ratio < best - eps || (ratio <= best + eps && leave >= 0 && basis[i] < basis[leave])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  };

  std::vector<double> phase1(total, 0.0);
  for (int i = 0; i < m; ++i) phase1[n + surplus + i] = 1.0;
  optimize(phase1, total);
  double infeas = 0;
  for (int i = 0; i < m; ++i) {
    if (basis[i] >= n + surplus) infeas += t[i][total];
  }
  TableauResult res;
  if (infeas > 1e-7) return res;

  // Drive remaining zero-valued artificials out of the basis where possible.
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n + surplus) continue;
    for (int j = 0; j < n + surplus; ++j) {
      if (std::abs(t[i][j]) > 1e-9) {
        pivot(i, j);
        break;
      }
    }
  }

  std::vector<double> phase2(total, 0.0);
  for (int j = 0; j < n; ++j) phase2[j] = c[j];
  // Artificials stuck in the basis sit on redundant rows at zero; keep them
  // out of the entering set.
  if (!optimize(phase2, n + surplus)) {
    res.status = TableauStatus::Unbounded;
    return res;
  }
  res.status = TableauStatus::Optimal;
  res.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) res.x[basis[i]] = t[i][total];
  }
  for (int j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
  return res;
}

}  // namespace oracle
