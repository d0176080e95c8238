#include "rrbpc/master.hpp"

#include <algorithm>
#include <cmath>

namespace rrbpc {

namespace {

constexpr double kZeroValue = 1e-6;
constexpr double kZeroDual = 1e-9;

}  // namespace

const char* to_string(CgStatus status) {
  switch (status) {
    case CgStatus::Converged: return "converged";
    case CgStatus::Infeasible: return "infeasible";
    case CgStatus::Cancelled: return "cancelled";
    case CgStatus::LpFailure: return "lp-failure";
  }
  return "?";
}

MasterProblem::MasterProblem(const ProblemGraph& graph, const NgNeighborhoods& ngs,
                             double artificial_cost)
    : root_(&graph), ngs_(&ngs), node_(graph), artificial_cost_(artificial_cost) {
  const int n = graph.num_customers();
  if (artificial_cost_ <= 0) {
    double singles = 0;
    for (int i = 1; i <= n; ++i) singles += graph.cost(0, i) + graph.cost(i, n + 1);
    artificial_cost_ = 10.0 * std::max(1.0, singles);
  }
  customer_rows_.resize(n + 1);
  for (int i = 1; i <= n; ++i) {
    customer_rows_[i] = lp_.add_row(RowSense::Equal, 1.0);
    const std::pair<RowHandle, double> entry{customer_rows_[i], 1.0};
    artificials_.push_back(lp_.add_column(artificial_cost_, {&entry, 1}));
  }
  for (int i = 1; i <= n; ++i) {
    if (graph.has_arc(0, i) && graph.has_arc(i, n + 1)) add_column({0, i, n + 1});
  }
}

int MasterProblem::add_column(const Route& route) {
  if (auto it = index_.find(route); it != index_.end()) return it->second;
  const int n = root_->num_customers();
  std::map<int, double> visits;
  for (int v : route) {
    if (v >= 1 && v <= n) visits[v] += 1.0;
  }
  std::vector<std::pair<RowHandle, double>> coeffs;
  for (const auto& [v, count] : visits) coeffs.emplace_back(customer_rows_[v], count);
  for (std::size_t c = 0; c < cuts_.size(); ++c) {
    const double g = route_coefficient(cuts_[c], route, ngs_);
    if (g != 0.0) coeffs.emplace_back(cut_rows_[c], g);
  }
  Column col;
  col.route = route;
  col.cost = root_->route_cost(route);
  col.handle = lp_.add_column(col.cost, coeffs);
  lp_.set_fixed_to_zero(col.handle, !compatible(route));
  const int id = static_cast<int>(columns_.size());
  columns_.push_back(std::move(col));
  index_.emplace(route, id);
  return id;
}

bool MasterProblem::has_cut(CutKind kind, const VertexSet& set) const {
  return cut_keys_.count({kind, set.members()}) != 0;
}

bool MasterProblem::add_cut(const Cut& cut) {
  if (!cut_keys_.insert({cut.kind, cut.set.members()}).second) return false;
  const RowHandle row = lp_.add_row(RowSense::GreaterEqual, cut.rhs);
  std::vector<std::pair<ColumnHandle, double>> coeffs;
  for (const auto& col : columns_) {
    const double g = route_coefficient(cut, col.route, ngs_);
    if (g != 0.0) coeffs.emplace_back(col.handle, g);
  }
  lp_.set_row_coefficients(row, coeffs);
  const std::pair<RowHandle, double> entry{row, 1.0};
  artificials_.push_back(lp_.add_column(artificial_cost_, {&entry, 1}));
  cut_rows_.push_back(row);
  cuts_.push_back(cut);
  return true;
}

bool MasterProblem::compatible(const Route& route) const {
  for (std::size_t k = 0; k + 1 < route.size(); ++k) {
    if (!node_.has_arc(route[k], route[k + 1])) return false;
  }
  return true;
}

void MasterProblem::set_node_graph(const ProblemGraph& graph) {
  node_ = graph;
  for (const auto& col : columns_) lp_.set_fixed_to_zero(col.handle, !compatible(col.route));
}

LpSolution MasterProblem::solve_lp() {
  last_ = lp_.solve();
  if (last_.status == LpStatus::NumericalFailure) {
    lp_.reset_basis();
    last_ = lp_.solve();
  }
  return last_;
}

DualValues MasterProblem::duals() const {
  const int n = root_->num_customers();
  DualValues d;
  d.mu.assign(n + 2, 0.0);
  if (last_.duals.empty()) {
    d.gamma.assign(cuts_.size(), 0.0);
    return d;
  }
  for (int i = 1; i <= n; ++i) d.mu[i] = last_.duals[customer_rows_[i].index];
  for (const auto& row : cut_rows_) {
    const double g = last_.duals[row.index];
    d.gamma.push_back(g < kZeroDual ? 0.0 : g);
  }
  return d;
}

FractionalSolution MasterProblem::fractional_solution() const {
  std::vector<WeightedRoute> routes;
  for (const auto& col : columns_) {
    const double x = col.handle.index < static_cast<int>(last_.primal.size())
                         ? last_.primal[col.handle.index]
                         : 0.0;
    if (x >= kZeroValue) routes.push_back({col.route, x});
  }
  return FractionalSolution(root_->num_vertices(), std::move(routes));
}

double MasterProblem::artificial_usage() const {
  double worst = 0;
  for (const auto& a : artificials_) {
    if (a.index < static_cast<int>(last_.primal.size())) worst = std::max(worst, last_.primal[a.index]);
  }
  return worst;
}

CgResult MasterProblem::column_generation(const ColumnGenerationConfig& cfg) {
  CgResult result;
  bool heuristic = cfg.heuristic_first || cfg.heuristic_only;
  for (;;) {
    if (cfg.cancel && cfg.cancel->load(std::memory_order_relaxed)) {
      result.status = CgStatus::Cancelled;
      return result;
    }
    const LpSolution& lp = solve_lp();
    if (lp.status != LpStatus::Optimal) {
      result.status = CgStatus::LpFailure;
      return result;
    }
    result.objective = lp.objective;
    ++result.iterations;

    PricingConfig pc = cfg.pricing;
    pc.mode = heuristic ? PricingMode::Heuristic : PricingMode::Exact;
    if (!pc.cancel) pc.cancel = cfg.cancel;
    const DualValues d = duals();
    const PricingResult priced = solve_pricing(node_, d, cuts_, *ngs_, pc);
    if (priced.cancelled) {
      result.status = CgStatus::Cancelled;
      return result;
    }

    if (cfg.verify_reduced_costs) {
      for (const auto& pr : priced.routes) {
        const double rc = route_reduced_cost(pr.route, node_, d, cuts_, *ngs_);
        result.max_reduced_cost_error =
            std::max(result.max_reduced_cost_error, std::abs(rc - pr.reduced_cost));
        ++result.columns_verified;
      }
    }

    int added = 0;
    for (const auto& pr : priced.routes) {
      const auto before = columns_.size();
      add_column(pr.route);
      if (columns_.size() > before) ++added;
    }
    result.columns_added += added;

    if (added == 0) {
      if (heuristic && !cfg.heuristic_only) {
        heuristic = false;
        continue;
      }
      break;
    }
    heuristic = cfg.heuristic_first || cfg.heuristic_only;
  }

  result.status = artificial_usage() > kZeroValue ? CgStatus::Infeasible : CgStatus::Converged;
  return result;
}

}  // namespace rrbpc
