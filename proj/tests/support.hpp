#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracle/routes.hpp"
#include "rrbpc/instance.hpp"
#include "rrbpc/ng.hpp"

namespace testing {

inline std::string data_path(const std::string& file) {
  return std::string(RRBPC_DATA_DIR) + "/" + file;
}

// Random Euclidean instance; demands in [1, max_demand] and capacity in
// [cap_lo, cap_hi] (at least the largest demand).
inline rrbpc::CvrpInstance random_instance(std::mt19937& rng, int n, int max_demand, int cap_lo,
                                           int cap_hi) {
  rrbpc::CvrpInstance inst;
  inst.name = "rand-n" + std::to_string(n);
  inst.n = n;
  std::uniform_int_distribution<int> coord(0, 100);
  std::uniform_int_distribution<int> dem(1, max_demand);
  std::uniform_int_distribution<int> cap(cap_lo, cap_hi);
  inst.coords.resize(n + 1);
  inst.demands.assign(n + 1, 0);
  for (int i = 0; i <= n; ++i) inst.coords[i] = {double(coord(rng)), double(coord(rng))};
  int biggest = 1;
  for (int i = 1; i <= n; ++i) {
    inst.demands[i] = dem(rng);
    biggest = std::max(biggest, inst.demands[i]);
  }
  inst.capacity = std::max(biggest, cap(rng));
  return inst;
}

inline oracle::SmallInstance to_oracle(const rrbpc::ProblemGraph& g) {
  oracle::SmallInstance s;
  s.n = g.num_customers();
  s.capacity = g.capacity();
  s.demand = g.demands();
  const int nv = g.num_vertices();
  s.cost.assign(nv, std::vector<int>(nv, 0));
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nv; ++j) s.cost[i][j] = g.cost(i, j);
  }
  return s;
}

// Random neighborhoods containing their own customer, in both
// representations.
struct RandomNeighborhoods {
  rrbpc::NgNeighborhoods ngs;
  oracle::Sets sets;
};

inline RandomNeighborhoods random_neighborhoods(std::mt19937& rng, int n) {
  std::bernoulli_distribution coin(0.5);
  std::vector<rrbpc::VertexSet> lib(n + 1, rrbpc::VertexSet(n + 2));
  oracle::Sets sets(n + 1);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (j == i || coin(rng)) {
        lib[i].insert(j);
        sets[i].insert(j);
      }
    }
  }
  return {rrbpc::NgNeighborhoods(n, std::move(lib)), std::move(sets)};
}

inline oracle::Sets oracle_sets(const rrbpc::NgNeighborhoods& ngs) {
  oracle::Sets sets(ngs.num_customers() + 1);
  for (int i = 1; i <= ngs.num_customers(); ++i) {
    for (int v : ngs.of(i).members()) sets[i].insert(v);
  }
  return sets;
}

inline std::set<int> to_std(const rrbpc::VertexSet& s) {
  const auto m = s.members();
  return {m.begin(), m.end()};
}

}  // namespace testing
