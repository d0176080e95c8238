#pragma once

#include <atomic>
#include <map>
#include <set>
#include <vector>

#include "rrbpc/cuts.hpp"
#include "rrbpc/lp.hpp"
#include "rrbpc/ng.hpp"
#include "rrbpc/pricing.hpp"

namespace rrbpc {

struct Column {
  Route route;
  double cost = 0;
  ColumnHandle handle;
};

struct ColumnGenerationConfig {
  PricingConfig pricing;
  /// Try heuristic pricing before falling back to exact pricing.
  bool heuristic_first = true;
  /// Stop after heuristic pricing fails instead of running exact pricing.
  bool heuristic_only = false;
  /// Compare each priced route's label reduced cost with a from-scratch
  /// recomputation.
  bool verify_reduced_costs = false;
  const std::atomic<bool>* cancel = nullptr;
};

enum class CgStatus { Converged, Infeasible, Cancelled, LpFailure };

const char* to_string(CgStatus status);

struct CgResult {
  CgStatus status = CgStatus::LpFailure;
  double objective = 0;
  int iterations = 0;
  int columns_added = 0;
  double max_reduced_cost_error = 0;
  long columns_verified = 0;
};

/// Restricted master problem: one partition row per customer, one >= row per
/// cut, a global column pool and one artificial column per row.
class MasterProblem {
 public:
  /// artificial_cost <= 0 selects ten times the cost of serving every
  /// customer by its own route.
  MasterProblem(const ProblemGraph& graph, const NgNeighborhoods& ngs,
                double artificial_cost = 0);

  const ProblemGraph& root_graph() const { return *root_; }
  const NgNeighborhoods& neighborhoods() const { return *ngs_; }
  double artificial_cost() const { return artificial_cost_; }

  /// Adds a route column unless it is already in the pool. Returns the pool
  /// index of the (new or existing) column.
  int add_column(const Route& route);
  const std::vector<Column>& columns() const { return columns_; }

  /// False when a cut of the same kind on the same set already exists.
  bool add_cut(const Cut& cut);
  bool has_cut(CutKind kind, const VertexSet& set) const;
  const std::vector<Cut>& cuts() const { return cuts_; }

  /// Restricts the LP to columns whose arcs all exist in `graph`.
  void set_node_graph(const ProblemGraph& graph);
  const ProblemGraph& node_graph() const { return node_; }

  const LinearProgram& lp() const { return lp_; }
  RowHandle customer_row(int customer) const { return customer_rows_[customer]; }
  RowHandle cut_row(int cut) const { return cut_rows_[cut]; }

  LpSolution solve_lp();
  const LpSolution& last_solution() const { return last_; }

  /// Customer duals (zero at the depots) and cut duals of the last solve,
  /// with cut duals below 1e-9 set to zero.
  DualValues duals() const;

  /// Positive route values of the last solve; values below 1e-6 are dropped.
  FractionalSolution fractional_solution() const;
  /// Largest artificial value in the last solve.
  double artificial_usage() const;

  CgResult column_generation(const ColumnGenerationConfig& cfg);

 private:
  bool compatible(const Route& route) const;

  const ProblemGraph* root_;
  const NgNeighborhoods* ngs_;
  ProblemGraph node_;
  double artificial_cost_;
  LinearProgram lp_;
  std::vector<RowHandle> customer_rows_;  // by customer id, [0] unused
  std::vector<RowHandle> cut_rows_;
  std::vector<ColumnHandle> artificials_;
  std::vector<Column> columns_;
  std::map<Route, int> index_;
  std::vector<Cut> cuts_;
  std::set<std::pair<CutKind, std::vector<int>>> cut_keys_;
  LpSolution last_;
};

}  // namespace rrbpc
