#pragma once

#include <atomic>
#include <optional>
#include <span>
#include <vector>

#include "rrbpc/cuts.hpp"
#include "rrbpc/instance.hpp"
#include "rrbpc/ng.hpp"

namespace rrbpc {

/// Duals of the RMP: mu has one entry per vertex (zero at both depots), gamma
/// one entry per cut, in the order cuts are passed to pricing.
struct DualValues {
  std::vector<double> mu;
  std::vector<double> gamma;
};

enum class PricingMode { Heuristic, Exact };

struct PricingConfig {
  PricingMode mode = PricingMode::Exact;
  /// Heuristic: labels kept per (vertex, load) bucket.
  int bucket_keep = 1;
  /// Heuristic: fraction of each vertex's outgoing arcs kept, cheapest
  /// reduced arc cost first.
  double arc_keep_fraction = 0.4;
  int max_columns = 200;
  /// Routes are returned when their reduced cost is below -tolerance.
  double reduced_cost_tolerance = 1e-6;
  const std::atomic<bool>* cancel = nullptr;
};

/// Partial path state. scc_visited has one flag per extra-resource cut that
/// is active in the pricing problem (SCC and SDC cuts with positive dual).
struct Label {
  double rcost = 0;
  int vertex = 0;
  int load = 0;
  VertexSet ng_memory;
  BitSet scc_visited;
  int pred = -1;
};

/// Per-call pricing data: reduced arc costs with robust duals folded in,
/// memory-dependent cut terms and extra-resource cuts indexed by head vertex.
class PricingProblem {
 public:
  PricingProblem(const ProblemGraph& graph, const DualValues& duals, std::span<const Cut> cuts,
                 const NgNeighborhoods& ngs);

  const ProblemGraph& graph() const { return graph_; }
  const NgNeighborhoods& neighborhoods() const { return ngs_; }
  int num_scc_resources() const { return static_cast<int>(scc_gamma_.size()); }

  /// c_ij - mu_j - sum of robust cut terms.
  double arc_cost(int i, int j) const { return arc_cost_[index(i, j)]; }

  /// Memory- and flag-dependent part of the extension cost over (i, j).
  double cut_terms(int i, int j, std::span<const std::uint64_t> memory,
                   std::span<const std::uint64_t> flags) const;

  /// Sets flags for the extra-resource cuts whose set contains j.
  void mark_visited(int j, std::span<std::uint64_t> flags) const;

  Label initial_label() const;

  /// L ⊕ j; nullopt when the arc is missing, j is remembered, or load > Q.
  std::optional<Label> extend(const Label& label, int j) const;

 private:
  struct MemoryTerm {
    int set;  // index into sets_
    double gamma;
    bool single_vertex;      // ngSDC: only the head's membership matters
  };
  struct FlagTerm {
    int resource;
    double gamma;
  };

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * graph_.num_vertices() + j;
  }

  const ProblemGraph& graph_;
  const NgNeighborhoods& ngs_;
  std::vector<double> arc_cost_;
  std::vector<VertexSet> sets_;
  std::vector<std::vector<MemoryTerm>> memory_terms_;  // by head vertex
  std::vector<std::vector<FlagTerm>> flag_terms_;      // by head vertex
  std::vector<double> scc_gamma_;
};

/// Convenience wrapper building a PricingProblem for a single extension.
std::optional<Label> extend_label(const Label& label, int j, const DualValues& duals,
                                  std::span<const Cut> cuts, const NgNeighborhoods& ngs,
                                  const ProblemGraph& graph);

/// Dominance at equal vertex: rcost, load, ng-memory and visited flags all no
/// worse, at least one strictly better.
bool dominates(const Label& a, const Label& b);

struct PricedRoute {
  Route route;
  double reduced_cost = 0;
};

struct PricingResult {
  /// Routes below the tolerance, ascending by reduced cost, at most
  /// max_columns.
  std::vector<PricedRoute> routes;
  /// Smallest reduced cost of any completed route found (+inf if none).
  double min_reduced_cost = 0;
  long labels_created = 0;
  bool cancelled = false;
};

PricingResult solve_pricing(const ProblemGraph& graph, const DualValues& duals,
                            std::span<const Cut> cuts, const NgNeighborhoods& ngs,
                            const PricingConfig& cfg);

/// Reduced cost computed from scratch: sum c - sum mu - sum_c g_p gamma_c.
double route_reduced_cost(const Route& route, const ProblemGraph& graph, const DualValues& duals,
                          std::span<const Cut> cuts, const NgNeighborhoods& ngs);

}  // namespace rrbpc
