#include "rrbpc/ng.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rrbpc {

NgNeighborhoods::NgNeighborhoods(int n, std::vector<VertexSet> sets)
    : n_(n), sets_(std::move(sets)) {
  if (static_cast<int>(sets_.size()) != n_ + 1) {
    throw std::invalid_argument("expected one neighborhood per customer");
  }
  for (int i = 1; i <= n_; ++i) {
    if (!sets_[i].contains(i)) throw std::invalid_argument("neighborhood must contain its customer");
  }
}

NgNeighborhoods build_neighborhoods(const ProblemGraph& graph, int size) {
  if (size < 1) throw std::invalid_argument("neighborhood size must be at least 1");
  const int n = graph.num_customers();
  std::vector<VertexSet> sets(n + 1, VertexSet(n + 2));
  std::vector<int> order(n);
  for (int i = 1; i <= n; ++i) {
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (a == i || b == i) return a == i && b != i;
      return graph.cost(i, a) < graph.cost(i, b);
    });
    const int take = std::min(size, n);
    for (int k = 0; k < take; ++k) sets[i].insert(order[k]);
  }
  return NgNeighborhoods(n, std::move(sets));
}

NgNeighborhoods full_neighborhoods(int n) {
  std::vector<VertexSet> sets(n + 1, VertexSet(n + 2));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) sets[i].insert(j);
  }
  return NgNeighborhoods(n, std::move(sets));
}

VertexSet ng_update(const VertexSet& memory, int j, const NgNeighborhoods& ngs) {
  VertexSet out = memory;
  out &= ngs.of(j);
  out.insert(j);
  return out;
}

std::vector<VertexSet> memory_trace(const Route& route, const NgNeighborhoods& ngs) {
  std::vector<VertexSet> trace;
  trace.reserve(route.size());
  VertexSet memory(ngs.universe());
  for (std::size_t k = 0; k < route.size(); ++k) {
    const int v = route[k];
    if (k > 0 && v >= 1 && v <= ngs.num_customers()) memory = ng_update(memory, v, ngs);
    trace.push_back(memory);
  }
  return trace;
}

bool is_ng_route(const Route& route, const NgNeighborhoods& ngs) {
  VertexSet memory(ngs.universe());
  for (std::size_t k = 1; k < route.size(); ++k) {
    const int v = route[k];
    if (v < 1 || v > ngs.num_customers()) continue;
    if (memory.contains(v)) return false;
    memory = ng_update(memory, v, ngs);
  }
  return true;
}

}  // namespace rrbpc
