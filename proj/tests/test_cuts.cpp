#include <doctest.h>

#include <random>

#include "oracle/routes.hpp"
#include "rrbpc/cuts.hpp"
#include "support.hpp"

using namespace rrbpc;

namespace {

// Neighborhoods of the six-customer illustration: N1 = N3 = N4 = N5 =
// {1,3,4,5}, N2 = {2,3}, N6 = {6}.
NgNeighborhoods illustration_neighborhoods() {
  const int n = 6;
  std::vector<VertexSet> sets(n + 1, VertexSet(n + 2));
  for (int i : {1, 3, 4, 5}) sets[i] = VertexSet(n + 2, {1, 3, 4, 5});
  sets[2] = VertexSet(n + 2, {2, 3});
  sets[6] = VertexSet(n + 2, {6});
  return NgNeighborhoods(n, sets);
}

Cut set_cut(CutKind kind, std::initializer_list<int> members, int universe, int rhs = 1) {
  return Cut{kind, VertexSet(universe, members), rhs, 0.0};
}

}  // namespace

TEST_CASE("coefficients on the interleaved route") {
  const auto ngs = illustration_neighborhoods();
  const Route route{0, 1, 2, 3, 4, 5, 7};
  const int u = 8;
  CHECK(route_coefficient(set_cut(CutKind::SCC, {1, 3, 5}, u), route, &ngs) == 1);
  CHECK(route_coefficient(set_cut(CutKind::NgCC, {1, 3, 5}, u), route, &ngs) == 2);
  CHECK(route_coefficient(set_cut(CutKind::CC, {1, 3, 5}, u), route, &ngs) == 3);
  CHECK(route_coefficient(set_cut(CutKind::KPath, {1, 3, 5}, u), route, &ngs) == 3);
}

TEST_CASE("degree cut coefficients") {
  const auto ngs = illustration_neighborhoods();
  const int u = 8;
  const auto sdc = make_degree_cut(CutKind::SDC, 1, u);
  const auto ngsdc = make_degree_cut(CutKind::NgSDC, 1, u);
  CHECK(sdc.vertex() == 1);
  CHECK(sdc.rhs == 1);
  // 1 is forgotten after 2 and revisited
  const Route revisit{0, 1, 2, 1, 7};
  CHECK(route_coefficient(sdc, revisit, &ngs) == 1);
  CHECK(route_coefficient(ngsdc, revisit, &ngs) == 2);
  CHECK(route_coefficient(ngsdc, {0, 3, 4, 7}, &ngs) == 0);
  CHECK_THROWS_AS(make_degree_cut(CutKind::CC, 1, u), ContractViolation);
  CHECK_THROWS_AS(set_cut(CutKind::SDC, {1, 2}, u).vertex(), ContractViolation);
}

TEST_CASE("memory-dependent kinds need neighborhoods") {
  const Route r{0, 1, 3};
  CHECK_THROWS_AS(route_coefficient(set_cut(CutKind::NgCC, {1}, 4), r), ContractViolation);
  CHECK_THROWS_AS(route_coefficient(set_cut(CutKind::NgSDC, {1}, 4), r), ContractViolation);
  CHECK(route_coefficient(set_cut(CutKind::CC, {1}, 4), r) == 1);
}

TEST_CASE("capacity cut construction") {
  const std::vector<int> demands{0, 2, 2, 2, 1, 0};
  const auto cut = make_capacity_cut(CutKind::SCC, VertexSet(6, {1, 2, 3}), demands, 5);
  CHECK(cut.rhs == 2);
  CHECK(cut_rhs(VertexSet(6, {4}), demands, 5) == 1);
  CHECK(cut_rhs(VertexSet(6, {1, 2, 3, 4}), demands, 5) == 2);
  CHECK_THROWS_AS(make_capacity_cut(CutKind::CC, VertexSet(6), demands, 5), std::invalid_argument);
  CHECK_THROWS_AS(make_capacity_cut(CutKind::SDC, VertexSet(6, {1}), demands, 5), ContractViolation);
  CHECK_THROWS_AS(make_kpath_cut(VertexSet(6, {1}), 0), std::invalid_argument);
  CHECK(make_kpath_cut(VertexSet(6, {1, 2}), 2).rhs == 2);
}

TEST_CASE("cut kinds map to their pricing treatment") {
  CHECK(application_of(CutKind::CC) == CutApplication::Robust);
  CHECK(application_of(CutKind::KPath) == CutApplication::Robust);
  CHECK(application_of(CutKind::NgCC) == CutApplication::ResourceRobust);
  CHECK(application_of(CutKind::NgSDC) == CutApplication::ResourceRobust);
  CHECK(application_of(CutKind::SCC) == CutApplication::ExtraResource);
  CHECK(application_of(CutKind::SDC) == CutApplication::ExtraResource);
  CHECK(std::string(to_string(CutKind::NgCC)) == "ngCC");
  CHECK(std::string(to_string(CutMode::ResourceRobust)) == "resource-robust");
}

TEST_CASE("arc projection of robust cuts") {
  const auto cut = set_cut(CutKind::CC, {1, 2}, 5);
  const auto g = arc_projection(cut, 5);
  CHECK(g(0, 1) == 1);
  CHECK(g(3, 2) == 1);
  CHECK(g(1, 2) == 0);
  CHECK(g(1, 3) == 0);
  CHECK(g(2, 4) == 0);
  // summing the projection along a route reproduces the route coefficient
  const Route r{0, 1, 3, 2, 4};
  double sum = 0;
  for (std::size_t k = 0; k + 1 < r.size(); ++k) sum += g(r[k], r[k + 1]);
  CHECK(sum == route_coefficient(cut, r));
  CHECK_THROWS_AS(arc_projection(set_cut(CutKind::SCC, {1}, 5), 5), ContractViolation);
  CHECK_THROWS_AS(arc_projection(set_cut(CutKind::NgCC, {1}, 5), 5), ContractViolation);
}

TEST_CASE("memory-dependent arc contributions") {
  const auto ngcc = set_cut(CutKind::NgCC, {1, 3, 5}, 8);
  CHECK(rr_contribution(ngcc, 2, 3, VertexSet(8, {2})) == 1);
  CHECK(rr_contribution(ngcc, 4, 5, VertexSet(8, {3, 4})) == 0);
  CHECK(rr_contribution(ngcc, 1, 3, VertexSet(8)) == 0);  // tail inside S
  const auto ngsdc = make_degree_cut(CutKind::NgSDC, 2, 8);
  CHECK(rr_contribution(ngsdc, 1, 2, VertexSet(8, {1})) == 1);
  CHECK(rr_contribution(ngsdc, 1, 2, VertexSet(8, {2})) == 0);
  CHECK(rr_contribution(ngsdc, 1, 3, VertexSet(8)) == 0);
  CHECK_THROWS_AS(rr_contribution(set_cut(CutKind::CC, {1}, 8), 0, 1, VertexSet(8)), ContractViolation);
}

TEST_CASE("route coefficients agree with their definitions on random routes") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 2 + trial % 8;
    const auto rn = testing::random_neighborhoods(rng, n);
    std::uniform_int_distribution<int> cust(1, n);
    std::uniform_int_distribution<int> len(1, 2 * n);
    Route r{0};
    const int l = len(rng);
    while (static_cast<int>(r.size()) <= l) {
      const int v = cust(rng);
      if (v != r.back()) r.push_back(v);
    }
    r.push_back(n + 1);
    std::set<int> s;
    VertexSet vs(n + 2);
    std::bernoulli_distribution coin(0.4);
    for (int i = 1; i <= n; ++i) {
      if (coin(rng)) {
        s.insert(i);
        vs.insert(i);
      }
    }
    if (s.empty()) {
      s.insert(1);
      vs.insert(1);
    }
    const Cut cc{CutKind::CC, vs, 1, 0};
    const Cut ng{CutKind::NgCC, vs, 1, 0};
    const Cut scc{CutKind::SCC, vs, 1, 0};
    CHECK(route_coefficient(cc, r) == oracle::cc_coefficient(r, s));
    CHECK(route_coefficient(scc, r) == oracle::scc_coefficient(r, s));
    CHECK(route_coefficient(ng, r, &rn.ngs) == oracle::ngcc_coefficient(r, s, rn.sets, n));
    const int v = *s.begin();
    CHECK(route_coefficient(make_degree_cut(CutKind::NgSDC, v, n + 2), r, &rn.ngs) ==
          oracle::ngsdc_coefficient(r, v, rn.sets, n));
  }
}

TEST_CASE("fractional solutions aggregate arc flows") {
  const FractionalSolution sol(5, {{{0, 1, 2, 4}, 0.5}, {{0, 1, 4}, 0.25}, {{0, 3, 4}, 1.0}});
  CHECK(sol.arc_flow(0, 1) == doctest::Approx(0.75));
  CHECK(sol.arc_flow(1, 2) == doctest::Approx(0.5));
  CHECK(sol.arc_flow(3, 4) == doctest::Approx(1.0));
  CHECK(sol.arc_flow(2, 1) == 0);
  CHECK_FALSE(sol.is_integral());
  CHECK(FractionalSolution(5, {{{0, 3, 4}, 1.0}}).is_integral());
  const auto cut = set_cut(CutKind::CC, {1, 2, 3}, 5, 2);
  CHECK(violation(cut, sol) == doctest::Approx(2 - 1.75));
}

TEST_CASE("scaled network divides long routes and balances every node") {
  // n = 4, end depot 5
  const FractionalSolution sol(6, {{{0, 1, 2, 3, 4, 5}, 0.6}, {{0, 2, 5}, 0.3}, {{0, 4, 3, 5}, 0.2}});
  for (int kappa = 1; kappa <= 4; ++kappa) {
    const ScaledNetwork net(sol, kappa);
    // l(p) = 4, 1, 2 -> kappa_p = min(kappa, 2), 1, 1
    CHECK(net.route_scale() == std::vector<int>{std::min(kappa, 2), 1, 1});
    CHECK(net.scaled_values()[0] == doctest::Approx(0.6 / std::min(kappa, 2)));
    for (int i = 1; i <= 4; ++i) {
      CHECK(net.imbalance(i) == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(net.imbalance(net.dummy_in(i)) == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(net.imbalance(net.dummy_out(i)) == doctest::Approx(0.0).epsilon(1e-12));
    }
    CHECK(net.num_nodes() == 6 + 8);
  }
  CHECK(ScaledNetwork(sol, 2).entering_flow(VertexSet(6, {1, 2})) == doctest::Approx(0.3 + 0.3));
  CHECK_THROWS_AS(ScaledNetwork(sol, 0), std::invalid_argument);
}
