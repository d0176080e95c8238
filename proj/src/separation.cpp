#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "rrbpc/cuts.hpp"

namespace rrbpc {

namespace {

// Incremental evaluation of the scaled-network CC violation while a customer
// set grows or shrinks.
class SetEvaluator {
 public:
  SetEvaluator(const ScaledNetwork& net, const ProblemGraph& graph)
      : net_(net), graph_(graph), n_(graph.num_customers()) {
    inflow_.assign(n_ + 2, 0.0);
    for (int j = 1; j <= n_; ++j) {
      for (int i = 0; i < n_ + 2; ++i) inflow_[j] += net.route_flow(i, j);
    }
    reset();
  }

  void reset() {
    in_set_.assign(n_ + 2, 0);
    from_set_.assign(n_ + 2, 0.0);
    to_set_.assign(n_ + 2, 0.0);
    entering_ = 0;
    demand_ = 0;
    size_ = 0;
  }

  bool contains(int k) const { return in_set_[k] != 0; }
  int size() const { return size_; }

  double violation_after_add(int k) const {
    const double entering = entering_ - to_set_[k] + (inflow_[k] - from_set_[k]);
    return rhs(demand_ + graph_.demand(k)) - entering;
  }
  double violation_after_remove(int k) const {
    const double entering = entering_ - (inflow_[k] - from_set_[k]) + to_set_[k];
    return rhs(demand_ - graph_.demand(k)) - entering;
  }
  double violation() const { return rhs(demand_) - entering_; }

  void add(int k) {
    entering_ += -to_set_[k] + (inflow_[k] - from_set_[k]);
    demand_ += graph_.demand(k);
    in_set_[k] = 1;
    ++size_;
    for (int u = 1; u <= n_; ++u) {
      from_set_[u] += net_.route_flow(k, u);
      to_set_[u] += net_.route_flow(u, k);
    }
  }
  void remove(int k) {
    entering_ += -(inflow_[k] - from_set_[k]) + to_set_[k];
    demand_ -= graph_.demand(k);
    in_set_[k] = 0;
    --size_;
    for (int u = 1; u <= n_; ++u) {
      from_set_[u] -= net_.route_flow(k, u);
      to_set_[u] -= net_.route_flow(u, k);
    }
  }

  // Positive weight between k and the current set in either direction.
  bool adjacent(int k) const { return from_set_[k] + to_set_[k] > 1e-9; }

  VertexSet as_set() const {
    VertexSet s(n_ + 2);
    for (int k = 1; k <= n_; ++k) {
      if (in_set_[k]) s.insert(k);
    }
    return s;
  }

 private:
  int rhs(long demand) const {
    return static_cast<int>((demand + graph_.capacity() - 1) / graph_.capacity());
  }

  const ScaledNetwork& net_;
  const ProblemGraph& graph_;
  int n_;
  std::vector<double> inflow_;
  std::vector<char> in_set_;
  std::vector<double> from_set_;  // flow from the set into u
  std::vector<double> to_set_;    // flow from u into the set
  double entering_ = 0;
  long demand_ = 0;
  int size_ = 0;
};

struct Candidates {
  std::map<std::vector<int>, double> best;  // members -> scaled violation
  double tol;

  void offer(const VertexSet& s, double viol) {
    if (viol <= tol || s.empty()) return;
    auto key = s.members();
    auto it = best.find(key);
    if (it == best.end() || it->second < viol) best[key] = viol;
  }
};

std::vector<VertexSet> components(const ScaledNetwork& net, int n, double threshold) {
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (net.route_flow(i, j) + net.route_flow(j, i) >= threshold) parent[find(i)] = find(j);
    }
  }
  std::map<int, VertexSet> groups;
  for (int i = 1; i <= n; ++i) {
    auto [it, inserted] = groups.try_emplace(find(i), VertexSet(n + 2));
    it->second.insert(i);
  }
  std::vector<VertexSet> out;
  for (auto& [root, s] : groups) out.push_back(std::move(s));
  return out;
}

void grow_and_shrink(SetEvaluator& eval, const VertexSet& seed, int n, Candidates& cands) {
  eval.reset();
  for (int k : seed.members()) eval.add(k);
  cands.offer(eval.as_set(), eval.violation());

  VertexSet best_set = eval.as_set();
  double best_viol = eval.violation();
  while (eval.size() < n) {
    int pick = -1;
    double pick_viol = -1e300;
    for (int k = 1; k <= n; ++k) {
      if (eval.contains(k) || !eval.adjacent(k)) continue;
      const double v = eval.violation_after_add(k);
      if (v > pick_viol + 1e-12) {
        pick_viol = v;
        pick = k;
      }
    }
    if (pick < 0) break;
    eval.add(pick);
    cands.offer(eval.as_set(), pick_viol);
    if (pick_viol > best_viol + 1e-12) {
      best_viol = pick_viol;
      best_set = eval.as_set();
    }
  }

  // Shrink the best set found along the growth path.
  eval.reset();
  for (int k : best_set.members()) eval.add(k);
  bool improved = true;
  while (improved && eval.size() > 1) {
    improved = false;
    int pick = -1;
    double pick_viol = eval.violation();
    for (int k = 1; k <= n; ++k) {
      if (!eval.contains(k)) continue;
      const double v = eval.violation_after_remove(k);
      if (v > pick_viol + 1e-9) {
        pick_viol = v;
        pick = k;
      }
    }
    if (pick >= 0) {
      eval.remove(pick);
      cands.offer(eval.as_set(), pick_viol);
      improved = true;
    }
  }
}

}  // namespace

std::vector<VertexSet> capacity_candidates(const ScaledNetwork& net, const ProblemGraph& graph,
                                           const SeparationConfig& cfg) {
  const int n = graph.num_customers();
  Candidates cands{{}, cfg.candidate_tolerance};
  SetEvaluator eval(net, graph);

  std::vector<VertexSet> seeds;
  for (double t : cfg.component_thresholds) {
    for (auto& comp : components(net, n, t)) {
      seeds.push_back(comp);
      eval.reset();
      for (int k : comp.members()) eval.add(k);
      cands.offer(comp, eval.violation());
    }
  }
  for (int i = 1; i <= n; ++i) seeds.push_back(VertexSet(n + 2, {i}));
  for (const auto& seed : seeds) grow_and_shrink(eval, seed, n, cands);

  if (n <= cfg.exhaustive_max_customers) {
    const unsigned limit = 1U << n;
    for (unsigned mask = 1; mask < limit; ++mask) {
      VertexSet s(n + 2);
      long demand = 0;
      for (int i = 1; i <= n; ++i) {
        if (mask & (1U << (i - 1))) {
          s.insert(i);
          demand += graph.demand(i);
        }
      }
      const int rhs = static_cast<int>((demand + graph.capacity() - 1) / graph.capacity());
      cands.offer(s, rhs - net.entering_flow(s));
    }
  }

  std::vector<std::pair<double, std::vector<int>>> sorted;
  for (auto& [members, viol] : cands.best) sorted.emplace_back(viol, members);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<VertexSet> out;
  for (auto& [viol, members] : sorted) {
    VertexSet s(n + 2);
    for (int k : members) s.insert(k);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Cut> separate(const FractionalSolution& sol, const ProblemGraph& graph,
                          const NgNeighborhoods& ngs, CutMode mode, const SeparationConfig& cfg,
                          const std::function<bool(const VertexSet&)>& known) {
  struct Selected {
    Cut cut;
    double viol;
    std::vector<int> members;
  };

  std::set<std::vector<int>> seen;
  for (int kappa = 1; kappa <= cfg.max_kappa; ++kappa) {
    const ScaledNetwork net(sol, kappa);
    std::vector<Selected> selected;
    for (auto& s : capacity_candidates(net, graph, cfg)) {
      auto members = s.members();
      if (seen.count(members)) continue;
      if (known && known(s)) continue;
      seen.insert(members);

      Cut cc = make_capacity_cut(CutKind::CC, s, graph.demands(), graph.capacity());
      const double v_cc = violation(cc, sol, &ngs);
      double v_alt = v_cc;
      CutKind alt_kind = CutKind::CC;
      if (mode == CutMode::ResourceRobust) {
        alt_kind = CutKind::NgCC;
      } else if (mode == CutMode::NonRobust) {
        alt_kind = CutKind::SCC;
      }
      if (alt_kind != CutKind::CC) {
        Cut alt = cc;
        alt.kind = alt_kind;
        v_alt = violation(alt, sol, &ngs);
      }

      const char* decision = "skip";
      if (alt_kind != CutKind::CC &&
          v_alt >= std::max(cfg.min_strong_violation, v_cc + cfg.strong_margin)) {
        cc.kind = alt_kind;
        selected.push_back({cc, v_alt, members});
        decision = to_string(alt_kind);
      } else if (v_cc >= cfg.min_cc_violation) {
        selected.push_back({cc, v_cc, members});
        decision = "CC";
      }
      if (cfg.trace) {
        *cfg.trace << kappa << ",";
        for (std::size_t k = 0; k < members.size(); ++k) *cfg.trace << (k ? " " : "") << members[k];
        *cfg.trace << "," << (cc.rhs - net.entering_flow(s)) << "," << v_cc << "," << v_alt << ","
                   << decision << "\n";
      }
    }
    if (selected.empty()) continue;
    std::stable_sort(selected.begin(), selected.end(), [](const Selected& a, const Selected& b) {
      if (a.viol != b.viol) return a.viol > b.viol;
      return a.members < b.members;
    });
    std::vector<Cut> out;
    for (auto& s : selected) {
      if (static_cast<int>(out.size()) >= cfg.max_cuts) break;
      out.push_back(std::move(s.cut));
    }
    return out;
  }
  return {};
}

}  // namespace rrbpc
