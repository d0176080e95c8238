#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace rrbpc {

enum class RowSense { Equal, GreaterEqual };

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

const char* to_string(LpStatus status);

struct RowHandle {
  int index = -1;
  friend bool operator==(RowHandle, RowHandle) = default;
};

struct ColumnHandle {
  int index = -1;
  friend bool operator==(ColumnHandle, ColumnHandle) = default;
};

struct LpSolution {
  LpStatus status = LpStatus::NumericalFailure;
  std::vector<double> primal;  // one value per column
  std::vector<double> duals;   // one value per row; >= 0 on >= rows
  double objective = 0;
  int iterations = 0;
};

struct LpTolerances {
  double feasibility = 1e-7;
  double optimality = 1e-9;
  double pivot = 1e-9;
  int degenerate_pivots_before_bland = 1000;
  int refactor_interval = 64;
};

/// min c'x s.t. rows of sense = or >=, 0 <= x, with optional per-column
/// fixing to zero. solve() warm starts from the previous optimal basis.
class LinearProgram {
 public:
  LinearProgram();
  ~LinearProgram();
  LinearProgram(const LinearProgram&);
  LinearProgram& operator=(const LinearProgram&);
  LinearProgram(LinearProgram&&) noexcept;
  LinearProgram& operator=(LinearProgram&&) noexcept;

  RowHandle add_row(RowSense sense, double rhs);
  /// Throws std::out_of_range for a row handle that does not exist.
  ColumnHandle add_column(double cost,
                          std::span<const std::pair<RowHandle, double>> coeffs);
  /// Installs coefficients of existing columns on an existing row.
  void set_row_coefficients(RowHandle row,
                            std::span<const std::pair<ColumnHandle, double>> coeffs);

  /// A fixed column is held at zero (upper bound 0).
  void set_fixed_to_zero(ColumnHandle col, bool fixed);
  bool is_fixed_to_zero(ColumnHandle col) const;

  int num_rows() const;
  int num_columns() const;
  double cost(ColumnHandle col) const;
  double rhs(RowHandle row) const;
  RowSense sense(RowHandle row) const;
  const std::vector<std::pair<int, double>>& column(ColumnHandle col) const;

  void set_tolerances(const LpTolerances& tol);
  LpSolution solve();

  /// Discards the stored basis so the next solve starts cold.
  void reset_basis();

  /// Plain-text dump: ROWS/COLUMNS sections, one entry per line.
  void write(std::ostream& out) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rrbpc
