#pragma once

#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "rrbpc/cuts.hpp"
#include "rrbpc/instance.hpp"
#include "rrbpc/master.hpp"

namespace rrbpc {

struct BranchDecision {
  int tail = 0;
  int head = 0;
  bool fix_one = false;
};

struct SearchNode {
  std::vector<BranchDecision> decisions;
  double bound = 0;
  int depth = 0;
  long id = 0;
};

/// Node graph for a set of arc fixings. Fixing (i,j) to zero removes the arc;
/// fixing it to one removes the other arcs out of i and into j, except on the
/// depot side. Throws std::invalid_argument for an arc fixed both ways.
ProblemGraph apply_decisions(const ProblemGraph& graph, std::span<const BranchDecision> decisions);

/// True when some customer has no incoming or no outgoing arc left.
bool has_isolated_customer(const ProblemGraph& graph);

/// 0.75 min + 0.25 max of the two objective increases.
double branch_score(double delta_plus, double delta_minus);

struct StrongBranchingConfig {
  int candidates = 30;
  int finalists = 5;
  /// Stand-in for an infinite increase when a tentative fixing is infeasible.
  double infeasible_delta = 1e9;
};

struct ArcChoice {
  int tail = -1;
  int head = -1;
  double flow = 0;
  double score = 0;
};

/// Picks a branching arc for the master's current fractional solution: the
/// arcs with flow nearest 0.5, scored first by LP re-solves without pricing,
/// then the finalists by heuristic column generation.
ArcChoice strong_branch_select(const MasterProblem& master, const StrongBranchingConfig& cfg,
                               const ColumnGenerationConfig& cg);

/// Arcs with fractional flow, nearest 0.5 first, ties by (tail, head).
std::vector<ArcChoice> fractional_arcs(const FractionalSolution& sol, double tol = 1e-6);

struct SolveConfig {
  CutMode mode = CutMode::Robust;
  int ng_size = 10;
  double time_limit_seconds = 3600;
  bool root_only = false;
  SeparationConfig separation;
  PricingConfig pricing;
  StrongBranchingConfig branching;
  /// Recompute every priced column's reduced cost from scratch and record
  /// the largest deviation from the label value.
  bool verify_reduced_costs = false;
  std::ostream* log = nullptr;
};

enum class SolveStatus { Optimal, TimeLimit, Infeasible, RootOnly };

const char* to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  double lower_bound = -std::numeric_limits<double>::infinity();
  double upper_bound = std::numeric_limits<double>::infinity();
  double root_bound = -std::numeric_limits<double>::infinity();
  int n_cc = 0;
  int n_ngcc = 0;
  int n_scc = 0;
  double seconds = 0;
  long nodes = 0;
  std::vector<Route> routes;  // incumbent
  double max_reduced_cost_error = 0;
  long columns_verified = 0;
};

SolveResult solve(const CvrpInstance& inst, const SolveConfig& cfg);
SolveResult solve(const ProblemGraph& graph, const SolveConfig& cfg);

}  // namespace rrbpc
