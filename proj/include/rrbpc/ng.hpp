#pragma once

#include <vector>

#include "rrbpc/bitset.hpp"
#include "rrbpc/instance.hpp"

namespace rrbpc {

/// A route as its vertex sequence, 0 ... n+1.
using Route = std::vector<int>;

/// ng-neighborhoods N_i for customers 1..n; every N_i contains i.
class NgNeighborhoods {
 public:
  NgNeighborhoods() = default;
  /// sets[i] is N_i for i in 1..n; sets[0] is ignored.
  NgNeighborhoods(int n, std::vector<VertexSet> sets);

  int num_customers() const { return n_; }
  int universe() const { return n_ + 2; }
  const VertexSet& of(int customer) const { return sets_[customer]; }

 private:
  int n_ = 0;
  std::vector<VertexSet> sets_;
};

/// N_i = {i} plus the size-1 customers nearest to i by arc cost, ties broken
/// by the lower vertex id.
NgNeighborhoods build_neighborhoods(const ProblemGraph& graph, int size);

/// Neighborhoods with N_i = V' for every i (elementarity memory).
NgNeighborhoods full_neighborhoods(int n);

/// (memory ∩ N_j) ∪ {j}
VertexSet ng_update(const VertexSet& memory, int j, const NgNeighborhoods& ngs);

/// The ng-memory held at each position of the route before leaving it:
/// result[k] is the memory of the label ending at route[k].
std::vector<VertexSet> memory_trace(const Route& route, const NgNeighborhoods& ngs);

/// True when no extension along the route enters a remembered customer.
bool is_ng_route(const Route& route, const NgNeighborhoods& ngs);

}  // namespace rrbpc
