#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "rrbpc/bitset.hpp"
#include "rrbpc/instance.hpp"
#include "rrbpc/ng.hpp"

namespace rrbpc {

enum class CutKind { CC, SCC, NgCC, KPath, SDC, NgSDC };

const char* to_string(CutKind kind);

/// How the route coefficient of a cut folds into the labeling algorithm.
enum class CutApplication { Robust, ResourceRobust, ExtraResource };

CutApplication application_of(CutKind kind);

/// One valid inequality sum_p g_p x_p >= rhs. For capacity and k-path kinds
/// `set` is the customer subset S; for degree kinds it holds the single
/// customer v.
struct Cut {
  CutKind kind = CutKind::CC;
  VertexSet set;
  int rhs = 1;
  double dual = 0;

  /// Customer v of a degree cut.
  int vertex() const;
};

/// Raised when a coefficient routine is applied to a cut kind it does not
/// support.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// ceil(sum_{i in S} q_i / Q)
int cut_rhs(const VertexSet& set, std::span<const int> demands, int capacity);

Cut make_capacity_cut(CutKind kind, VertexSet set, std::span<const int> demands,
                      int capacity);
Cut make_kpath_cut(VertexSet set, int min_routes);
Cut make_degree_cut(CutKind kind, int customer, int universe);

/// g_p for a complete route. NgCC and NgSDC need the neighborhoods.
double route_coefficient(const Cut& cut, const Route& route,
                         const NgNeighborhoods* ngs = nullptr);

/// Constant per-arc coefficients g_ij of a robust cut.
class ArcCoefficients {
 public:
  explicit ArcCoefficients(int num_vertices)
      : nv_(num_vertices), g_(static_cast<std::size_t>(num_vertices) * num_vertices, 0.0) {}
  double operator()(int i, int j) const { return g_[static_cast<std::size_t>(i) * nv_ + j]; }
  double& at(int i, int j) { return g_[static_cast<std::size_t>(i) * nv_ + j]; }
  int num_vertices() const { return nv_; }

 private:
  int nv_;
  std::vector<double> g_;
};

/// g_ij = I(i not in S, j in S). Throws ContractViolation unless the kind is
/// CC or KPath.
ArcCoefficients arc_projection(const Cut& cut, int num_vertices);

/// g_ij(R) for the memory-dependent kinds: I(i∉S, j∈S)·I(Π∩S=∅) for NgCC and
/// I(j=v)·I(v∉Π) for NgSDC. Throws ContractViolation for other kinds.
int rr_contribution(const Cut& cut, int i, int j, const VertexSet& memory);

struct WeightedRoute {
  Route route;
  double value = 0;
};

/// Positive route values of an RMP solution with aggregated arc flows.
class FractionalSolution {
 public:
  FractionalSolution() = default;
  FractionalSolution(int num_vertices, std::vector<WeightedRoute> routes);

  int num_vertices() const { return nv_; }
  const std::vector<WeightedRoute>& routes() const { return routes_; }
  double arc_flow(int i, int j) const { return flow_[static_cast<std::size_t>(i) * nv_ + j]; }
  bool is_integral(double tol = 1e-6) const;

 private:
  int nv_ = 0;
  std::vector<WeightedRoute> routes_;
  std::vector<double> flow_;
};

/// rhs - sum_p g_p x_p; positive means violated.
double violation(const Cut& cut, const FractionalSolution& sol,
                 const NgNeighborhoods* ngs = nullptr);

/// Route flows divided by kappa_p = min(kappa, ceil(l(p)/2)), with two dummy
/// nodes per customer i (i' and i'') carrying the missing in/out flow on the
/// cycle i' -> i -> i'' -> i'.
class ScaledNetwork {
 public:
  struct Arc {
    int from;
    int to;
    double flow;
  };

  ScaledNetwork(const FractionalSolution& sol, int kappa);

  int kappa() const { return kappa_; }
  int num_customers() const { return n_; }
  int num_nodes() const { return n_ + 2 + 2 * n_; }
  int dummy_in(int customer) const { return n_ + 2 + 2 * (customer - 1); }
  int dummy_out(int customer) const { return n_ + 3 + 2 * (customer - 1); }

  /// Per route of the source solution.
  const std::vector<int>& route_scale() const { return scale_; }
  const std::vector<double>& scaled_values() const { return scaled_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  /// Scaled route flow on original arc (i, j), excluding dummy arcs.
  double route_flow(int i, int j) const {
    return flow_[static_cast<std::size_t>(i) * (n_ + 2) + j];
  }
  /// Inflow minus outflow at a node.
  double imbalance(int node) const;

  /// Scaled-network CC left-hand side for S: route flow entering S.
  double entering_flow(const VertexSet& set) const;

 private:
  int kappa_;
  int n_;
  std::vector<int> scale_;
  std::vector<double> scaled_;
  std::vector<double> flow_;
  std::vector<Arc> arcs_;
};

ScaledNetwork build_scaled_network(const FractionalSolution& sol, int kappa);

enum class CutMode { Robust, ResourceRobust, NonRobust };

const char* to_string(CutMode mode);

struct SeparationConfig {
  int max_kappa = 4;
  int max_cuts = 50;
  std::vector<double> component_thresholds{0.5, 0.25};
  int exhaustive_max_customers = 10;
  double min_cc_violation = 0.1;
  double min_strong_violation = 0.2;
  double strong_margin = 0.1;
  double candidate_tolerance = 1e-4;
  /// CSV trace of every evaluated candidate when set.
  std::ostream* trace = nullptr;
};

/// Heuristic capacity-cut separation over the kappa-scaled networks. Sets for
/// which `known` returns true are skipped.
std::vector<Cut> separate(const FractionalSolution& sol, const ProblemGraph& graph,
                          const NgNeighborhoods& ngs, CutMode mode,
                          const SeparationConfig& cfg = {},
                          const std::function<bool(const VertexSet&)>& known = {});

/// Candidate customer sets whose CC is violated in the scaled network.
std::vector<VertexSet> capacity_candidates(const ScaledNetwork& net,
                                           const ProblemGraph& graph,
                                           const SeparationConfig& cfg);

}  // namespace rrbpc
