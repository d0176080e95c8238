#include "rrbpc/lp.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace rrbpc {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Basic variables are encoded as j >= 0 for structural column j and
// -(r + 1) for the logical (surplus) variable of row r, whose column is -e_r.
int logical_id(int row) { return -(row + 1); }
int logical_row(int id) { return -id - 1; }

}  // namespace

struct LinearProgram::Impl {
  struct Row {
    RowSense sense;
    double rhs;
  };
  struct Column {
    double cost;
    std::vector<std::pair<int, double>> entries;
    bool fixed = false;
  };

  std::vector<Row> rows;
  std::vector<Column> cols;
  LpTolerances tol;

  // Warm-start state.
  std::vector<int> basis;  // size == rows covered by the stored basis
  bool has_basis = false;

  // Working state during a solve.
  Eigen::MatrixXd binv;
  Eigen::VectorXd xb;
  std::vector<int> col_pos;  // basis position of structural j, or -1
  std::vector<int> row_pos;  // basis position of logical r, or -1

  double upper(int id) const {
    if (id >= 0) return cols[id].fixed ? 0.0 : kInf;
    return rows[logical_row(id)].sense == RowSense::Equal ? 0.0 : kInf;
  }

  double var_cost(int id) const { return id >= 0 ? cols[id].cost : 0.0; }

  // alpha = B^{-1} a_id
  Eigen::VectorXd ftran(int id) const {
    const int m = static_cast<int>(rows.size());
    Eigen::VectorXd out = Eigen::VectorXd::Zero(m);
    if (id >= 0) {
      for (const auto& [r, v] : cols[id].entries) out += v * binv.col(r);
    } else {
      out = -binv.col(logical_row(id));
    }
    return out;
  }

  double dot_column(const Eigen::VectorXd& y, int id) const {
    if (id < 0) return -y[logical_row(id)];
    double s = 0;
    for (const auto& [r, v] : cols[id].entries) s += y[r] * v;
    return s;
  }

  void reset_positions() {
    col_pos.assign(cols.size(), -1);
    row_pos.assign(rows.size(), -1);
    for (int k = 0; k < static_cast<int>(basis.size()); ++k) {
      const int id = basis[k];
      if (id >= 0) {
        col_pos[id] = k;
      } else {
        row_pos[logical_row(id)] = k;
      }
    }
  }

  void logical_basis() {
    basis.resize(rows.size());
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) basis[r] = logical_id(r);
  }

  // Rebuilds B^{-1} from scratch. Falls back to the all-logical basis when the
  // stored basis is singular.
  void refactor() {
    const int m = static_cast<int>(rows.size());
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
      const int id = basis[k];
      if (id >= 0) {
        for (const auto& [r, v] : cols[id].entries) b(r, k) = v;
      } else {
        b(logical_row(id), k) = -1.0;
      }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    if (m > 0 && !(lu.rcond() > 1e-13)) {
      logical_basis();
      reset_positions();
      binv = -Eigen::MatrixXd::Identity(m, m);
    } else {
      binv = lu.inverse();
    }
    Eigen::VectorXd rhs(m);
    for (int r = 0; r < m; ++r) rhs[r] = rows[r].rhs;
    xb = binv * rhs;
  }

  LpSolution solve();
};

LinearProgram::LinearProgram() : impl_(std::make_unique<Impl>()) {}
LinearProgram::~LinearProgram() = default;
LinearProgram::LinearProgram(const LinearProgram& other)
    : impl_(std::make_unique<Impl>(*other.impl_)) {}
LinearProgram& LinearProgram::operator=(const LinearProgram& other) {
  if (this != &other) impl_ = std::make_unique<Impl>(*other.impl_);
  return *this;
}
LinearProgram::LinearProgram(LinearProgram&&) noexcept = default;
LinearProgram& LinearProgram::operator=(LinearProgram&&) noexcept = default;

RowHandle LinearProgram::add_row(RowSense sense, double rhs) {
  if (!std::isfinite(rhs)) throw std::invalid_argument("row right-hand side must be finite");
  impl_->rows.push_back({sense, rhs});
  return RowHandle{static_cast<int>(impl_->rows.size()) - 1};
}

ColumnHandle LinearProgram::add_column(
    double cost, std::span<const std::pair<RowHandle, double>> coeffs) {
  Impl::Column col{cost, {}, false};
  for (const auto& [row, value] : coeffs) {
    if (row.index < 0 || row.index >= num_rows()) {
      throw std::out_of_range("column references unknown row " + std::to_string(row.index));
    }
    if (value != 0.0) col.entries.emplace_back(row.index, value);
  }
  impl_->cols.push_back(std::move(col));
  return ColumnHandle{static_cast<int>(impl_->cols.size()) - 1};
}

void LinearProgram::set_row_coefficients(
    RowHandle row, std::span<const std::pair<ColumnHandle, double>> coeffs) {
  if (row.index < 0 || row.index >= num_rows()) throw std::out_of_range("unknown row");
  for (const auto& [col, value] : coeffs) {
    if (col.index < 0 || col.index >= num_columns()) throw std::out_of_range("unknown column");
    if (value == 0.0) continue;
    auto& entries = impl_->cols[col.index].entries;
    bool found = false;
    for (auto& e : entries) {
      if (e.first == row.index) {
        e.second = value;
        found = true;
      }
    }
    if (!found) entries.emplace_back(row.index, value);
  }
  // Changing coefficients of basic columns invalidates the factorization
  // but the basis itself may remain a good starting point.
}

void LinearProgram::set_fixed_to_zero(ColumnHandle col, bool fixed) {
  impl_->cols.at(col.index).fixed = fixed;
}

bool LinearProgram::is_fixed_to_zero(ColumnHandle col) const {
  return impl_->cols.at(col.index).fixed;
}

int LinearProgram::num_rows() const { return static_cast<int>(impl_->rows.size()); }
int LinearProgram::num_columns() const { return static_cast<int>(impl_->cols.size()); }
double LinearProgram::cost(ColumnHandle col) const { return impl_->cols.at(col.index).cost; }
double LinearProgram::rhs(RowHandle row) const { return impl_->rows.at(row.index).rhs; }
RowSense LinearProgram::sense(RowHandle row) const { return impl_->rows.at(row.index).sense; }
const std::vector<std::pair<int, double>>& LinearProgram::column(ColumnHandle col) const {
  return impl_->cols.at(col.index).entries;
}

void LinearProgram::set_tolerances(const LpTolerances& tol) { impl_->tol = tol; }
void LinearProgram::reset_basis() { impl_->has_basis = false; }
LpSolution LinearProgram::solve() { return impl_->solve(); }

void LinearProgram::write(std::ostream& out) const {
  out << "LP rows " << num_rows() << " columns " << num_columns() << "\n";
  out << "ROWS\n";
  for (int r = 0; r < num_rows(); ++r) {
    const auto& row = impl_->rows[r];
    out << "R" << r << " " << (row.sense == RowSense::Equal ? "E" : "G") << " " << row.rhs << "\n";
  }
  out << "COLUMNS\n";
  for (int j = 0; j < num_columns(); ++j) {
    const auto& col = impl_->cols[j];
    out << "C" << j << " " << col.cost << " " << (col.fixed ? 1 : 0) << " " << col.entries.size();
    for (const auto& [r, v] : col.entries) out << " R" << r << ":" << v;
    out << "\n";
  }
  out << "END\n";
}

LpSolution LinearProgram::Impl::solve() {
  const int m = static_cast<int>(rows.size());
  const int n = static_cast<int>(cols.size());
  LpSolution sol;
  sol.primal.assign(n, 0.0);
  sol.duals.assign(m, 0.0);

  if (!has_basis) {
    logical_basis();
  } else {
    // Rows added since the last solve enter with their logical variable.
    for (int r = static_cast<int>(basis.size()); r < m; ++r) basis.push_back(logical_id(r));
  }
  reset_positions();
  refactor();

  const int max_iterations = 100 * (m + n) + 1000;
  int degenerate_run = 0;
  bool bland = false;
  int since_refactor = 0;
  int verify_passes = 0;

  Eigen::VectorXd cb(m);
  Eigen::VectorXd y(m);

  for (int iter = 0;; ++iter) {
    if (iter > max_iterations) {
      sol.status = LpStatus::NumericalFailure;
      has_basis = false;
      return sol;
    }
    if (since_refactor >= tol.refactor_interval) {
      refactor();
      since_refactor = 0;
    }

    // Phase selection from the current basic values.
    bool infeasible = false;
    for (int k = 0; k < m; ++k) {
      const double x = xb[k];
      const double u = upper(basis[k]);
      if (x < -tol.feasibility) {
        cb[k] = -1.0;
        infeasible = true;
      } else if (x > u + tol.feasibility) {
        cb[k] = 1.0;
        infeasible = true;
      } else {
        cb[k] = 0.0;
      }
    }
    const bool phase_one = infeasible;
    if (!phase_one) {
      for (int k = 0; k < m; ++k) cb[k] = var_cost(basis[k]);
    }
    y = binv.transpose() * cb;

    // Pricing.
    int entering = 0;
    bool found = false;
    double best = -tol.optimality;
    auto consider = [&](int id) {
      const double c = phase_one ? 0.0 : var_cost(id);
      const double d = c - dot_column(y, id);
      if (d >= -tol.optimality) return;
      if (bland) {
        if (!found) {
          entering = id;
          found = true;
        }
        return;
      }
      if (d < best) {
        best = d;
        entering = id;
        found = true;
      }
    };
    for (int j = 0; j < n && !(bland && found); ++j) {
      if (col_pos[j] < 0 && !cols[j].fixed) consider(j);
    }
    for (int r = 0; r < m && !(bland && found); ++r) {
      if (row_pos[r] < 0 && rows[r].sense == RowSense::GreaterEqual) consider(logical_id(r));
    }

    if (!found) {
      if (verify_passes == 0 && since_refactor > 0) {
        // Confirm optimality on a fresh factorization.
        refactor();
        since_refactor = 0;
        ++verify_passes;
        continue;
      }
      if (phase_one) {
        sol.status = LpStatus::Infeasible;
        sol.iterations = iter;
        has_basis = true;
        return sol;
      }
      break;
    }
    verify_passes = 0;

    const Eigen::VectorXd alpha = ftran(entering);

    // Ratio test. Every bound is at zero, so a blocking variable always
    // leaves at value zero.
    double theta = kInf;
    int leave = -1;
    for (int k = 0; k < m; ++k) {
      const double a = alpha[k];
      if (std::abs(a) <= tol.pivot) continue;
      const double x = xb[k];
      const double u = upper(basis[k]);
      double t = kInf;
      if (a > 0) {
        // decreasing
        if (x > u + tol.feasibility) {
          t = (x - u) / a;
        } else if (x >= -tol.feasibility) {
          t = std::max(x, 0.0) / a;
        }
      } else {
        // increasing
        if (x < -tol.feasibility) {
          t = -x / -a;
        } else if (u == 0.0 && x <= tol.feasibility) {
          t = 0.0;
        }
      }
      if (t == kInf) continue;
      bool better = false;
      if (leave < 0 || t < theta - 1e-12) {
        better = true;
      } else if (t <= theta + 1e-12) {
        if (bland) {
          // smallest variable index: structurals before logicals
          auto key = [&](int id) { return id >= 0 ? id : n + logical_row(id); };
          better = key(basis[k]) < key(basis[leave]);
        } else {
          better = std::abs(a) > std::abs(alpha[leave]);
        }
      }
      if (better) {
        theta = t;
        leave = k;
      }
    }

    if (leave < 0) {
      if (phase_one) {
        sol.status = LpStatus::NumericalFailure;
        has_basis = false;
        return sol;
      }
      sol.status = LpStatus::Unbounded;
      sol.iterations = iter;
      has_basis = true;
      return sol;
    }

    if (theta < 1e-12) {
      if (++degenerate_run >= tol.degenerate_pivots_before_bland) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }

    // Update basic values and the explicit inverse.
    xb -= theta * alpha;
    xb[leave] = theta;
    const double pivot = alpha[leave];
    Eigen::RowVectorXd pivot_row = binv.row(leave) / pivot;
    for (int k = 0; k < m; ++k) {
      if (k == leave || alpha[k] == 0.0) continue;
      binv.row(k) -= alpha[k] * pivot_row;
    }
    binv.row(leave) = pivot_row;

    const int old = basis[leave];
    if (old >= 0) {
      col_pos[old] = -1;
    } else {
      row_pos[logical_row(old)] = -1;
    }
    basis[leave] = entering;
    if (entering >= 0) {
      col_pos[entering] = leave;
    } else {
      row_pos[logical_row(entering)] = leave;
    }
    ++since_refactor;
    sol.iterations = iter + 1;
  }

  // Optimal: y already holds phase-two duals for the final basis.
  has_basis = true;
  sol.status = LpStatus::Optimal;
  double objective = 0;
  for (int k = 0; k < m; ++k) {
    const int id = basis[k];
    if (id >= 0) {
      const double x = std::max(xb[k], 0.0);
      sol.primal[id] = x;
      objective += cols[id].cost * x;
    }
  }
  for (int r = 0; r < m; ++r) sol.duals[r] = y[r];
  sol.objective = objective;
  return sol;
}

}  // namespace rrbpc
