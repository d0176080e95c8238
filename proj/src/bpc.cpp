#include "rrbpc/bpc.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <stop_token>
#include <thread>

namespace rrbpc {

namespace {

constexpr double kFlowTolerance = 1e-6;

bool prunable(double bound, double upper) {
  return std::ceil(bound - 1e-6) >= upper;
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::TimeLimit: return "time-limit";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::RootOnly: return "root-only";
  }
  return "?";
}

ProblemGraph apply_decisions(const ProblemGraph& graph, std::span<const BranchDecision> decisions) {
  for (std::size_t a = 0; a < decisions.size(); ++a) {
    for (std::size_t b = a + 1; b < decisions.size(); ++b) {
      if (decisions[a].tail == decisions[b].tail && decisions[a].head == decisions[b].head &&
          decisions[a].fix_one != decisions[b].fix_one) {
        throw std::invalid_argument("arc fixed to both zero and one");
      }
    }
  }
  ProblemGraph g = graph;
  const int nv = graph.num_vertices();
  const int end = graph.end_depot();
  for (const auto& d : decisions) {
    if (!d.fix_one) {
      g.remove_arc(d.tail, d.head);
      continue;
    }
    if (d.tail != 0) {
      for (int k = 0; k < nv; ++k) {
        if (k != d.head) g.remove_arc(d.tail, k);
      }
    }
    if (d.head != end) {
      for (int k = 0; k < nv; ++k) {
        if (k != d.tail) g.remove_arc(k, d.head);
      }
    }
  }
  return g;
}

bool has_isolated_customer(const ProblemGraph& graph) {
  const int n = graph.num_customers();
  for (int i = 1; i <= n; ++i) {
    bool in = false;
    bool out = false;
    for (int k = 0; k < graph.num_vertices(); ++k) {
      in = in || graph.has_arc(k, i);
      out = out || graph.has_arc(i, k);
    }
    if (!in || !out) return true;
  }
  return false;
}

double branch_score(double delta_plus, double delta_minus) {
  return 0.75 * std::min(delta_plus, delta_minus) + 0.25 * std::max(delta_plus, delta_minus);
}

std::vector<ArcChoice> fractional_arcs(const FractionalSolution& sol, double tol) {
  std::vector<ArcChoice> out;
  const int nv = sol.num_vertices();
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nv; ++j) {
      const double f = sol.arc_flow(i, j);
      if (f > tol && std::abs(f - std::round(f)) > tol) out.push_back({i, j, f, 0.0});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const ArcChoice& a, const ArcChoice& b) {
    const double fa = std::abs(a.flow - std::floor(a.flow) - 0.5);
    const double fb = std::abs(b.flow - std::floor(b.flow) - 0.5);
    if (fa != fb) return fa < fb;
    return std::pair(a.tail, a.head) < std::pair(b.tail, b.head);
  });
  return out;
}

namespace {

// Objective increase of a tentative fixing; infeasible or artificial-backed
// outcomes map to the configured cap.
double tentative_delta(const MasterProblem& parent, double parent_obj, const BranchDecision& d,
                       bool with_pricing, const StrongBranchingConfig& cfg,
                       const ColumnGenerationConfig& cg) {
  const BranchDecision one[] = {d};
  const ProblemGraph g = apply_decisions(parent.node_graph(), one);
  if (has_isolated_customer(g)) return cfg.infeasible_delta;
  MasterProblem trial = parent;
  trial.set_node_graph(g);
  double obj;
  if (with_pricing) {
    ColumnGenerationConfig h = cg;
    h.heuristic_only = true;
    h.verify_reduced_costs = false;
    const CgResult r = trial.column_generation(h);
    if (r.status == CgStatus::LpFailure || r.status == CgStatus::Cancelled) return 0.0;
    if (r.status == CgStatus::Infeasible) return cfg.infeasible_delta;
    obj = r.objective;
  } else {
    const LpSolution lp = trial.solve_lp();
    if (lp.status != LpStatus::Optimal) return cfg.infeasible_delta;
    if (trial.artificial_usage() > kFlowTolerance) return cfg.infeasible_delta;
    obj = lp.objective;
  }
  return std::clamp(obj - parent_obj, 0.0, cfg.infeasible_delta);
}

}  // namespace

ArcChoice strong_branch_select(const MasterProblem& master, const StrongBranchingConfig& cfg,
                               const ColumnGenerationConfig& cg) {
  const FractionalSolution sol = master.fractional_solution();
  auto arcs = fractional_arcs(sol);
  if (arcs.empty()) throw std::logic_error("no fractional arc to branch on");
  if (static_cast<int>(arcs.size()) > cfg.candidates) arcs.resize(cfg.candidates);
  if (arcs.size() == 1) return arcs.front();

  const double parent_obj = master.last_solution().objective;
  auto score = [&](ArcChoice& a, bool with_pricing) {
    const double plus = tentative_delta(master, parent_obj, {a.tail, a.head, true}, with_pricing, cfg, cg);
    const double minus =
        tentative_delta(master, parent_obj, {a.tail, a.head, false}, with_pricing, cfg, cg);
    a.score = branch_score(plus, minus);
  };

  auto cancelled = [&] { return cg.cancel && cg.cancel->load(); };
  for (auto& a : arcs) {
    if (cancelled()) return arcs.front();
    score(a, false);
  }
  std::stable_sort(arcs.begin(), arcs.end(),
                   [](const ArcChoice& a, const ArcChoice& b) { return a.score > b.score; });
  if (static_cast<int>(arcs.size()) > cfg.finalists) arcs.resize(cfg.finalists);

  for (auto& a : arcs) {
    if (cancelled()) break;
    score(a, true);
  }
  ArcChoice best = arcs.front();
  for (const auto& a : arcs) {
    if (a.score > best.score) best = a;
  }
  return best;
}

namespace {

// Sets the flag once the deadline passes; stopping the thread early is
// cheap because the wait is interruptible.
class Watchdog {
 public:
  Watchdog(std::atomic<bool>& flag, double seconds)
      : thread_([&flag, seconds, this](std::stop_token st) {
          std::unique_lock lock(mutex_);
          const auto limit = std::chrono::duration<double>(seconds);
          if (!cv_.wait_for(lock, st, limit, [] { return false; }) && !st.stop_requested()) {
            flag.store(true);
          }
        }) {}

 private:
  std::mutex mutex_;
  std::condition_variable_any cv_;
  std::jthread thread_;
};

struct NodeOrder {
  bool operator()(const SearchNode& a, const SearchNode& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth > b.depth;
    return a.id > b.id;
  }
};

enum class NodeOutcome { Integral, Fractional, Infeasible, Pruned, Cancelled };

}  // namespace

SolveResult solve(const CvrpInstance& inst, const SolveConfig& cfg) {
  return solve(build_graph(inst), cfg);
}

SolveResult solve(const ProblemGraph& graph, const SolveConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  SolveResult result;

  std::atomic<bool> cancel{false};
  Watchdog watchdog(cancel, cfg.time_limit_seconds);

  const NgNeighborhoods ngs = build_neighborhoods(graph, cfg.ng_size);
  MasterProblem master(graph, ngs);

  ColumnGenerationConfig cg;
  cg.pricing = cfg.pricing;
  cg.cancel = &cancel;
  cg.verify_reduced_costs = cfg.verify_reduced_costs;

  double upper = std::numeric_limits<double>::infinity();
  bool search_complete = true;

  auto process = [&](double& bound) -> NodeOutcome {
    for (;;) {
      const CgResult r = master.column_generation(cg);
      result.max_reduced_cost_error = std::max(result.max_reduced_cost_error, r.max_reduced_cost_error);
      result.columns_verified += r.columns_verified;
      if (r.status == CgStatus::Cancelled) return NodeOutcome::Cancelled;
      if (r.status == CgStatus::LpFailure) throw std::runtime_error("master LP failed to solve");
      if (r.status == CgStatus::Infeasible) return NodeOutcome::Infeasible;
      bound = std::max(bound, r.objective);
      if (prunable(bound, upper)) return NodeOutcome::Pruned;

      const FractionalSolution sol = master.fractional_solution();
      if (sol.is_integral(kFlowTolerance)) return NodeOutcome::Integral;

      const auto cuts = separate(sol, graph, ngs, cfg.mode, cfg.separation);
      int added = 0;
      for (const auto& c : cuts) added += master.add_cut(c) ? 1 : 0;
      if (added == 0) return NodeOutcome::Fractional;
    }
  };

  std::priority_queue<SearchNode, std::vector<SearchNode>, NodeOrder> open;
  long next_id = 0;
  open.push({{}, -std::numeric_limits<double>::infinity(), 0, next_id++});
  double unresolved_bound = std::numeric_limits<double>::infinity();

  while (!open.empty()) {
    SearchNode node = open.top();
    open.pop();
    if (prunable(node.bound, upper)) continue;
    if (cancel.load()) {
      unresolved_bound = std::min(unresolved_bound, node.bound);
      search_complete = false;
      break;
    }

    const ProblemGraph node_graph = apply_decisions(graph, node.decisions);
    ++result.nodes;
    if (has_isolated_customer(node_graph)) continue;
    master.set_node_graph(node_graph);

    double bound = node.bound;
    const NodeOutcome outcome = process(bound);
    if (node.depth == 0 && outcome != NodeOutcome::Cancelled) result.root_bound = bound;
    if (cfg.log) {
      *cfg.log << "node " << node.id << " depth " << node.depth << " bound " << bound << " cuts "
               << master.cuts().size() << " columns " << master.columns().size() << " ub " << upper
               << "\n";
    }

    switch (outcome) {
      case NodeOutcome::Cancelled:
        unresolved_bound = std::min(unresolved_bound, bound);
        if (node.depth == 0) result.root_bound = bound;
        search_complete = false;
        break;
      case NodeOutcome::Infeasible:
      case NodeOutcome::Pruned:
        break;
      case NodeOutcome::Integral: {
        if (bound < upper) {
          upper = std::round(bound);
          result.routes.clear();
          const FractionalSolution sol = master.fractional_solution();
          for (const auto& wr : sol.routes()) result.routes.push_back(wr.route);
        }
        break;
      }
      case NodeOutcome::Fractional: {
        if (cfg.root_only) {
          unresolved_bound = std::min(unresolved_bound, bound);
          search_complete = false;
          break;
        }
        const ArcChoice arc = strong_branch_select(master, cfg.branching, cg);
        if (cancel.load()) {
          unresolved_bound = std::min(unresolved_bound, bound);
          search_complete = false;
          break;
        }
        for (bool one : {false, true}) {
          SearchNode child;
          child.decisions = node.decisions;
          child.decisions.push_back({arc.tail, arc.head, one});
          child.bound = bound;
          child.depth = node.depth + 1;
          child.id = next_id++;
          open.push(std::move(child));
        }
        break;
      }
    }
    if (!search_complete) break;
  }

  while (!open.empty()) {
    unresolved_bound = std::min(unresolved_bound, open.top().bound);
    open.pop();
  }

  for (const auto& c : master.cuts()) {
    if (c.kind == CutKind::CC) ++result.n_cc;
    if (c.kind == CutKind::NgCC) ++result.n_ngcc;
    if (c.kind == CutKind::SCC) ++result.n_scc;
  }
  result.upper_bound = upper;
  if (search_complete) {
    result.lower_bound = upper;
    result.status = std::isfinite(upper) ? SolveStatus::Optimal : SolveStatus::Infeasible;
  } else {
    result.lower_bound = std::min(unresolved_bound, upper);
    result.status = cancel.load() ? SolveStatus::TimeLimit
                    : cfg.root_only ? SolveStatus::RootOnly
                                    : SolveStatus::TimeLimit;
  }
  result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

}  // namespace rrbpc
