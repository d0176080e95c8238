#include <doctest.h>

#include <sstream>

#include "rrbpc/cuts.hpp"

using namespace rrbpc;

namespace {

// Four customers with demands (2, 2, 2, 1), capacity 5, end depot 5; every
// arc costs 1 (costs play no role in separation).
ProblemGraph counterexample_graph() {
  return ProblemGraph(4, {0, 2, 2, 2, 1, 0}, 5, std::vector<int>(36, 1));
}

// x1 from the non-robustness counterexample: four routes at value 1/2.
FractionalSolution counterexample_x1() {
  return FractionalSolution(6, {{{0, 4, 5}, 0.5},
                                {{0, 1, 4, 2, 5}, 0.5},
                                {{0, 1, 3, 5}, 0.5},
                                {{0, 2, 3, 5}, 0.5}});
}

bool contains_cut(const std::vector<Cut>& cuts, CutKind kind, std::vector<int> members) {
  for (const auto& c : cuts) {
    if (c.kind == kind && c.set.members() == members) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("non-robust mode finds the strengthened cut only the scaled network exposes") {
  const auto g = counterexample_graph();
  const auto ngs = full_neighborhoods(4);
  const auto sol = counterexample_x1();
  const Cut scc = make_capacity_cut(CutKind::SCC, VertexSet(6, {1, 2, 3}), g.demands(), 5);
  const Cut cc = make_capacity_cut(CutKind::CC, VertexSet(6, {1, 2, 3}), g.demands(), 5);
  CHECK(violation(cc, sol) == doctest::Approx(0.0));
  CHECK(violation(scc, sol) == doctest::Approx(0.5));

  const auto cuts = separate(sol, g, ngs, CutMode::NonRobust);
  CHECK(contains_cut(cuts, CutKind::SCC, {1, 2, 3}));

  SUBCASE("robust mode has nothing to add on this set") {
    const auto robust = separate(sol, g, ngs, CutMode::Robust);
    for (const auto& c : robust) {
      CHECK(c.kind == CutKind::CC);
      CHECK(violation(c, sol) >= 0.1 - 1e-9);
    }
    CHECK_FALSE(contains_cut(robust, CutKind::CC, {1, 2, 3}));
  }
  SUBCASE("resource-robust mode depends on what the memory keeps") {
    // Full memory remembers 1 when entering 2 from 4: ng-CC = SCC here.
    CHECK(contains_cut(separate(sol, g, ngs, CutMode::ResourceRobust), CutKind::NgCC, {1, 2, 3}));
    // Memory that forgets everything behaves like the CC.
    std::vector<VertexSet> own(5, VertexSet(6));
    for (int i = 1; i <= 4; ++i) own[i].insert(i);
    const NgNeighborhoods forgetful(4, own);
    CHECK_FALSE(contains_cut(separate(sol, g, forgetful, CutMode::ResourceRobust), CutKind::NgCC, {1, 2, 3}));
  }
}

TEST_CASE("scaled candidates include the set once kappa reaches two") {
  const auto g = counterexample_graph();
  const auto sol = counterexample_x1();
  auto has = [&](int kappa) {
    for (const auto& s : capacity_candidates(ScaledNetwork(sol, kappa), g, SeparationConfig{})) {
      if (s.members() == std::vector<int>{1, 2, 3}) return true;
    }
    return false;
  };
  CHECK_FALSE(has(1));
  CHECK(has(2));
}

TEST_CASE("violated capacity cuts are found in robust mode") {
  // Two customers of demand 3 with capacity 4 on one route: {1,2} needs two
  // vehicles but the solution enters it once.
  const ProblemGraph g(2, {0, 3, 3, 0}, 4, std::vector<int>(16, 1));
  const auto ngs = full_neighborhoods(2);
  const FractionalSolution sol(4, {{{0, 1, 2, 3}, 1.0}});
  const auto cuts = separate(sol, g, ngs, CutMode::Robust);
  REQUIRE_FALSE(cuts.empty());
  CHECK(cuts.front().set.members() == std::vector<int>{1, 2});
  CHECK(cuts.front().rhs == 2);
  CHECK(violation(cuts.front(), sol) == doctest::Approx(1.0));
}

TEST_CASE("integral feasible solutions yield no cuts") {
  const auto g = counterexample_graph();
  const auto ngs = full_neighborhoods(4);
  const FractionalSolution sol(6, {{{0, 1, 2, 5}, 1.0}, {{0, 3, 4, 5}, 1.0}});
  for (auto mode : {CutMode::Robust, CutMode::ResourceRobust, CutMode::NonRobust}) {
    CHECK(separate(sol, g, ngs, mode).empty());
  }
}

TEST_CASE("cut cap and trace output") {
  const auto g = counterexample_graph();
  const auto ngs = full_neighborhoods(4);
  const auto sol = counterexample_x1();
  SeparationConfig cfg;
  std::ostringstream trace;
  cfg.trace = &trace;
  cfg.max_cuts = 1;
  const auto cuts = separate(sol, g, ngs, CutMode::NonRobust, cfg);
  CHECK(cuts.size() == 1);
  const std::string text = trace.str();
  CHECK(text.find("2,1 2 3,") != std::string::npos);
  CHECK(text.find(",SCC\n") != std::string::npos);
}
