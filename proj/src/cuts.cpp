#include "rrbpc/cuts.hpp"

#include <cmath>

namespace rrbpc {

const char* to_string(CutKind kind) {
  switch (kind) {
    case CutKind::CC: return "CC";
    case CutKind::SCC: return "SCC";
    case CutKind::NgCC: return "ngCC";
    case CutKind::KPath: return "kPath";
    case CutKind::SDC: return "SDC";
    case CutKind::NgSDC: return "ngSDC";
  }
  return "?";
}

const char* to_string(CutMode mode) {
  switch (mode) {
    case CutMode::Robust: return "robust";
    case CutMode::ResourceRobust: return "resource-robust";
    case CutMode::NonRobust: return "non-robust";
  }
  return "?";
}

CutApplication application_of(CutKind kind) {
  switch (kind) {
    case CutKind::CC:
    case CutKind::KPath:
      return CutApplication::Robust;
    case CutKind::NgCC:
    case CutKind::NgSDC:
      return CutApplication::ResourceRobust;
    case CutKind::SCC:
    case CutKind::SDC:
      return CutApplication::ExtraResource;
  }
  return CutApplication::ExtraResource;
}

int Cut::vertex() const {
  auto members = set.members();
  if (members.size() != 1) throw ContractViolation("degree cut must name exactly one customer");
  return members.front();
}

int cut_rhs(const VertexSet& set, std::span<const int> demands, int capacity) {
  long total = 0;
  for (int i : set.members()) total += demands[i];
  return static_cast<int>((total + capacity - 1) / capacity);
}

Cut make_capacity_cut(CutKind kind, VertexSet set, std::span<const int> demands, int capacity) {
  if (kind != CutKind::CC && kind != CutKind::SCC && kind != CutKind::NgCC) {
    throw ContractViolation("not a capacity cut kind");
  }
  if (set.empty()) throw std::invalid_argument("capacity cut needs a nonempty set");
  Cut cut;
  cut.kind = kind;
  cut.rhs = cut_rhs(set, demands, capacity);
  cut.set = std::move(set);
  return cut;
}

Cut make_kpath_cut(VertexSet set, int min_routes) {
  if (set.empty() || min_routes < 1) throw std::invalid_argument("k-path cut needs S nonempty and k >= 1");
  return Cut{CutKind::KPath, std::move(set), min_routes, 0.0};
}

Cut make_degree_cut(CutKind kind, int customer, int universe) {
  if (kind != CutKind::SDC && kind != CutKind::NgSDC) throw ContractViolation("not a degree cut kind");
  return Cut{kind, VertexSet(universe, {customer}), 1, 0.0};
}

double route_coefficient(const Cut& cut, const Route& route, const NgNeighborhoods* ngs) {
  const auto& s = cut.set;
  switch (cut.kind) {
    case CutKind::CC:
    case CutKind::KPath: {
      int count = 0;
      for (std::size_t k = 0; k + 1 < route.size(); ++k) {
        if (!s.contains(route[k]) && s.contains(route[k + 1])) ++count;
      }
      return count;
    }
    case CutKind::SCC: {
      for (int v : route) {
        if (s.contains(v)) return 1;
      }
      return 0;
    }
    case CutKind::SDC: {
      const int v = cut.vertex();
      for (int u : route) {
        if (u == v) return 1;
      }
      return 0;
    }
    case CutKind::NgCC: {
      if (!ngs) throw ContractViolation("ngCC coefficient needs neighborhoods");
      const auto trace = memory_trace(route, *ngs);
      int count = 0;
      for (std::size_t k = 0; k + 1 < route.size(); ++k) {
        if (!s.contains(route[k]) && s.contains(route[k + 1]) && !trace[k].intersects(s)) ++count;
      }
      return count;
    }
    case CutKind::NgSDC: {
      if (!ngs) throw ContractViolation("ngSDC coefficient needs neighborhoods");
      const int v = cut.vertex();
      const auto trace = memory_trace(route, *ngs);
      int count = 0;
      for (std::size_t k = 0; k + 1 < route.size(); ++k) {
        if (route[k + 1] == v && !trace[k].contains(v)) ++count;
      }
      return count;
    }
  }
  return 0;
}

ArcCoefficients arc_projection(const Cut& cut, int num_vertices) {
  if (cut.kind != CutKind::CC && cut.kind != CutKind::KPath) {
    throw ContractViolation(std::string(to_string(cut.kind)) + " has no arc projection");
  }
  ArcCoefficients g(num_vertices);
  for (int j : cut.set.members()) {
    for (int i = 0; i < num_vertices; ++i) {
      if (!cut.set.contains(i)) g.at(i, j) = 1.0;
    }
  }
  return g;
}

int rr_contribution(const Cut& cut, int i, int j, const VertexSet& memory) {
  switch (cut.kind) {
    case CutKind::NgCC:
      return (!cut.set.contains(i) && cut.set.contains(j) && !memory.intersects(cut.set)) ? 1 : 0;
    case CutKind::NgSDC: {
      const int v = cut.vertex();
      return (j == v && !memory.contains(v)) ? 1 : 0;
    }
    default:
      throw ContractViolation(std::string(to_string(cut.kind)) + " is not memory dependent");
  }
}

FractionalSolution::FractionalSolution(int num_vertices, std::vector<WeightedRoute> routes)
    : nv_(num_vertices),
      routes_(std::move(routes)),
      flow_(static_cast<std::size_t>(num_vertices) * num_vertices, 0.0) {
  for (const auto& wr : routes_) {
    for (std::size_t k = 0; k + 1 < wr.route.size(); ++k) {
      flow_[static_cast<std::size_t>(wr.route[k]) * nv_ + wr.route[k + 1]] += wr.value;
    }
  }
}

bool FractionalSolution::is_integral(double tol) const {
  for (const auto& wr : routes_) {
    if (std::abs(wr.value - std::round(wr.value)) > tol) return false;
  }
  return true;
}

double violation(const Cut& cut, const FractionalSolution& sol, const NgNeighborhoods* ngs) {
  double lhs = 0;
  for (const auto& wr : sol.routes()) lhs += route_coefficient(cut, wr.route, ngs) * wr.value;
  return cut.rhs - lhs;
}

ScaledNetwork::ScaledNetwork(const FractionalSolution& sol, int kappa)
    : kappa_(kappa), n_(sol.num_vertices() - 2) {
  if (kappa < 1) throw std::invalid_argument("kappa must be at least 1");
  const int nv = n_ + 2;
  flow_.assign(static_cast<std::size_t>(nv) * nv, 0.0);
  std::vector<double> inflow(nv, 0.0);
  for (const auto& wr : sol.routes()) {
    const int visits = static_cast<int>(wr.route.size()) - 2;
    const int scale = std::max(1, std::min(kappa, (visits + 1) / 2));
    const double value = wr.value / scale;
    scale_.push_back(scale);
    scaled_.push_back(value);
    for (std::size_t k = 0; k + 1 < wr.route.size(); ++k) {
      flow_[static_cast<std::size_t>(wr.route[k]) * nv + wr.route[k + 1]] += value;
      inflow[wr.route[k + 1]] += value;
    }
  }
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nv; ++j) {
      const double f = route_flow(i, j);
      if (f != 0.0) arcs_.push_back({i, j, f});
    }
  }
  for (int i = 1; i <= n_; ++i) {
    const double missing = 1.0 - inflow[i];
    arcs_.push_back({dummy_in(i), i, missing});
    arcs_.push_back({i, dummy_out(i), missing});
    arcs_.push_back({dummy_out(i), dummy_in(i), missing});
  }
}

double ScaledNetwork::imbalance(int node) const {
  double balance = 0;
  for (const auto& a : arcs_) {
    if (a.to == node) balance += a.flow;
    if (a.from == node) balance -= a.flow;
  }
  return balance;
}

double ScaledNetwork::entering_flow(const VertexSet& set) const {
  double total = 0;
  const int nv = n_ + 2;
  for (int j : set.members()) {
    for (int i = 0; i < nv; ++i) {
      if (!set.contains(i)) total += route_flow(i, j);
    }
  }
  return total;
}

ScaledNetwork build_scaled_network(const FractionalSolution& sol, int kappa) {
  return ScaledNetwork(sol, kappa);
}

}  // namespace rrbpc
