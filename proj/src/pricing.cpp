#include "rrbpc/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rrbpc {

namespace {

constexpr double kSccDualFloor = 1e-9;

}  // namespace

PricingProblem::PricingProblem(const ProblemGraph& graph, const DualValues& duals,
                               std::span<const Cut> cuts, const NgNeighborhoods& ngs)
    : graph_(graph), ngs_(ngs) {
  const int nv = graph.num_vertices();
  arc_cost_.assign(static_cast<std::size_t>(nv) * nv, 0.0);
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nv; ++j) {
      const double mu = (j >= 1 && j <= graph.num_customers()) ? duals.mu[j] : 0.0;
      arc_cost_[index(i, j)] = graph.cost(i, j) - mu;
    }
  }
  memory_terms_.resize(nv);
  flag_terms_.resize(nv);

  for (std::size_t c = 0; c < cuts.size(); ++c) {
    const Cut& cut = cuts[c];
    const double gamma = c < duals.gamma.size() ? duals.gamma[c] : 0.0;
    if (gamma == 0.0) continue;
    switch (application_of(cut.kind)) {
      case CutApplication::Robust: {
        const auto members = cut.set.members();
        for (int j : members) {
          for (int i = 0; i < nv; ++i) {
            if (!cut.set.contains(i)) arc_cost_[index(i, j)] -= gamma;
          }
        }
        break;
      }
      case CutApplication::ResourceRobust: {
        const int set = static_cast<int>(sets_.size());
        sets_.push_back(cut.set);
        const bool single = cut.kind == CutKind::NgSDC;
        for (int j : cut.set.members()) memory_terms_[j].push_back({set, gamma, single});
        break;
      }
      case CutApplication::ExtraResource: {
        if (gamma <= kSccDualFloor) break;
        const int resource = static_cast<int>(scc_gamma_.size());
        scc_gamma_.push_back(gamma);
        for (int j : cut.set.members()) flag_terms_[j].push_back({resource, gamma});
        break;
      }
    }
  }
}

double PricingProblem::cut_terms(int i, int j, std::span<const std::uint64_t> memory,
                                 std::span<const std::uint64_t> flags) const {
  double delta = 0;
  for (const auto& t : memory_terms_[j]) {
    if (t.single_vertex) {
      // ngSDC: g_ij(R) = I(j = v) I(v not in memory)
      if (!bits::test(memory, j)) delta -= t.gamma;
    } else {
      // ngCC: g_ij(R) = I(i not in S, j in S) I(memory ∩ S = ∅)
      const auto& s = sets_[t.set];
      if (!s.contains(i) && !bits::intersects(memory, s.words())) delta -= t.gamma;
    }
  }
  for (const auto& t : flag_terms_[j]) {
    if (!bits::test(flags, t.resource)) delta -= t.gamma;
  }
  return delta;
}

void PricingProblem::mark_visited(int j, std::span<std::uint64_t> flags) const {
  for (const auto& t : flag_terms_[j]) bits::set(flags, t.resource);
}

Label PricingProblem::initial_label() const {
  Label l;
  l.ng_memory = VertexSet(graph_.num_vertices());
  l.scc_visited = BitSet(std::max(1, num_scc_resources()));
  return l;
}

std::optional<Label> PricingProblem::extend(const Label& label, int j) const {
  const int i = label.vertex;
  if (!graph_.has_arc(i, j)) return std::nullopt;
  const bool customer = j >= 1 && j <= graph_.num_customers();
  if (customer && label.ng_memory.contains(j)) return std::nullopt;
  const int load = label.load + graph_.demand(j);
  if (load > graph_.capacity()) return std::nullopt;

  Label out;
  out.vertex = j;
  out.load = load;
  out.rcost = label.rcost + arc_cost(i, j) +
              cut_terms(i, j, label.ng_memory.words(), label.scc_visited.words());
  out.ng_memory = customer ? ng_update(label.ng_memory, j, ngs_) : label.ng_memory;
  out.scc_visited = label.scc_visited;
  mark_visited(j, out.scc_visited.words());
  return out;
}

std::optional<Label> extend_label(const Label& label, int j, const DualValues& duals,
                                  std::span<const Cut> cuts, const NgNeighborhoods& ngs,
                                  const ProblemGraph& graph) {
  PricingProblem problem(graph, duals, cuts, ngs);
  Label start = label;
  if (start.scc_visited.universe() < std::max(1, problem.num_scc_resources())) {
    BitSet widened(std::max(1, problem.num_scc_resources()));
    for (int r : start.scc_visited.members()) widened.insert(r);
    start.scc_visited = widened;
  }
  return problem.extend(start, j);
}

bool dominates(const Label& a, const Label& b) {
  if (a.vertex != b.vertex) return false;
  if (a.rcost > b.rcost || a.load > b.load) return false;
  if (!a.ng_memory.is_subset_of(b.ng_memory) || !a.scc_visited.is_subset_of(b.scc_visited)) {
    return false;
  }
  const bool identical = a.rcost == b.rcost && a.load == b.load &&
                         a.ng_memory == b.ng_memory && a.scc_visited == b.scc_visited;
  return !identical;
}

namespace {

// Flat label storage: per label one block of ng-memory words followed by one
// block of visited-flag words.
class LabelStore {
 public:
  LabelStore(int memory_words, int flag_words)
      : memory_words_(memory_words), flag_words_(flag_words), stride_(memory_words + flag_words) {}

  int create(double rcost, int vertex, int load, int pred, std::span<const std::uint64_t> block) {
    const int id = static_cast<int>(rcost_.size());
    rcost_.push_back(rcost);
    vertex_.push_back(vertex);
    load_.push_back(load);
    pred_.push_back(pred);
    alive_.push_back(1);
    words_.insert(words_.end(), block.begin(), block.end());
    return id;
  }

  std::span<const std::uint64_t> memory(int id) const {
    return {words_.data() + static_cast<std::size_t>(id) * stride_, static_cast<std::size_t>(memory_words_)};
  }
  std::span<const std::uint64_t> flags(int id) const {
    return {words_.data() + static_cast<std::size_t>(id) * stride_ + memory_words_,
            static_cast<std::size_t>(flag_words_)};
  }
  std::span<const std::uint64_t> block(int id) const {
    return {words_.data() + static_cast<std::size_t>(id) * stride_, static_cast<std::size_t>(stride_)};
  }

  double rcost(int id) const { return rcost_[id]; }
  int vertex(int id) const { return vertex_[id]; }
  int pred(int id) const { return pred_[id]; }
  bool alive(int id) const { return alive_[id] != 0; }
  void kill(int id) { alive_[id] = 0; }
  long size() const { return static_cast<long>(rcost_.size()); }

  int memory_words() const { return memory_words_; }
  int flag_words() const { return flag_words_; }

 private:
  int memory_words_;
  int flag_words_;
  int stride_;
  std::vector<double> rcost_;
  std::vector<int> vertex_;
  std::vector<int> load_;
  std::vector<int> pred_;
  std::vector<char> alive_;
  std::vector<std::uint64_t> words_;
};

}  // namespace

PricingResult solve_pricing(const ProblemGraph& graph, const DualValues& duals,
                            std::span<const Cut> cuts, const NgNeighborhoods& ngs,
                            const PricingConfig& cfg) {
  const PricingProblem problem(graph, duals, cuts, ngs);
  const int n = graph.num_customers();
  const int nv = graph.num_vertices();
  const int end = graph.end_depot();
  const int cap = graph.capacity();
  const bool heuristic = cfg.mode == PricingMode::Heuristic;

  LabelStore store(bits::words_for(nv), bits::words_for(std::max(1, problem.num_scc_resources())));
  const int mem_words = store.memory_words();
  const int stride = mem_words + store.flag_words();

  // Outgoing customer arcs per vertex, possibly thinned for heuristic pricing.
  std::vector<std::vector<int>> succ(nv);
  for (int i = 0; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (graph.has_arc(i, j)) succ[i].push_back(j);
    }
    if (heuristic && i > 0 && !succ[i].empty()) {
      std::stable_sort(succ[i].begin(), succ[i].end(), [&](int a, int b) {
        return problem.arc_cost(i, a) < problem.arc_cost(i, b);
      });
      const auto keep = static_cast<std::size_t>(
          std::max(1.0, std::ceil(cfg.arc_keep_fraction * static_cast<double>(succ[i].size()))));
      if (succ[i].size() > keep) succ[i].resize(keep);
      std::sort(succ[i].begin(), succ[i].end());
    }
  }

  std::vector<std::vector<int>> buckets(static_cast<std::size_t>(nv) * (cap + 1));
  auto bucket = [&](int v, int q) -> std::vector<int>& {
    return buckets[static_cast<std::size_t>(v) * (cap + 1) + q];
  };

  std::vector<std::uint64_t> scratch(stride, 0);
  bucket(0, 0).push_back(store.create(0.0, 0, 0, -1, scratch));

  std::vector<std::pair<double, int>> completions;
  double best = std::numeric_limits<double>::infinity();
  PricingResult result;
  long extensions = 0;

  auto prune_completions = [&] {
    const auto keep = static_cast<std::size_t>(std::max(1, cfg.max_columns));
    if (completions.size() <= 4 * keep) return;
    std::nth_element(completions.begin(), completions.begin() + keep, completions.end());
    completions.resize(keep);
  };

  auto insert = [&](int v, int q, double rc, int pred) {
    auto& b = bucket(v, q);
    const std::span<const std::uint64_t> mem{scratch.data(), static_cast<std::size_t>(mem_words)};
    const std::span<const std::uint64_t> flg{scratch.data() + mem_words,
                                             scratch.size() - static_cast<std::size_t>(mem_words)};
    std::size_t write = 0;
    for (std::size_t k = 0; k < b.size(); ++k) {
      const int id = b[k];
      if (!store.alive(id)) continue;
      if (store.rcost(id) <= rc && bits::is_subset(store.memory(id), mem) &&
          bits::is_subset(store.flags(id), flg)) {
        // keep the earlier label; move survivors down before returning
        for (std::size_t r = k; r < b.size(); ++r) {
          if (store.alive(b[r])) b[write++] = b[r];
        }
        b.resize(write);
        return;
      }
      if (rc <= store.rcost(id) && bits::is_subset(mem, store.memory(id)) &&
          bits::is_subset(flg, store.flags(id))) {
        store.kill(id);
        continue;
      }
      b[write++] = id;
    }
    b.resize(write);
    b.push_back(store.create(rc, v, q, pred, scratch));
  };

  for (int q = 0; q <= cap && !result.cancelled; ++q) {
    for (int v = 0; v <= n && !result.cancelled; ++v) {
      auto& b = bucket(v, q);
      if (b.empty()) continue;
      std::vector<int> labels;
      labels.reserve(b.size());
      for (int id : b) {
        if (store.alive(id)) labels.push_back(id);
      }
      if (heuristic && static_cast<int>(labels.size()) > cfg.bucket_keep) {
        std::stable_sort(labels.begin(), labels.end(),
                         [&](int a, int c) { return store.rcost(a) < store.rcost(c); });
        labels.resize(std::max(1, cfg.bucket_keep));
      }

      for (int id : labels) {
        if (v != 0 && graph.has_arc(v, end)) {
          const double rc = store.rcost(id) + problem.arc_cost(v, end) +
                            problem.cut_terms(v, end, store.memory(id), store.flags(id));
          best = std::min(best, rc);
          if (rc < -cfg.reduced_cost_tolerance) {
            completions.emplace_back(rc, id);
            prune_completions();
          }
        }
        for (int j : succ[v]) {
          if (bits::test(store.memory(id), j)) continue;
          const int load = q + graph.demand(j);
          if (load > cap) continue;
          if (cfg.cancel && (++extensions & 1023) == 0 &&
              cfg.cancel->load(std::memory_order_relaxed)) {
            result.cancelled = true;
            break;
          }
          const double rc = store.rcost(id) + problem.arc_cost(v, j) +
                            problem.cut_terms(v, j, store.memory(id), store.flags(id));
          // Child resources: (memory ∩ N_j) ∪ {j}, flags | marks(j).
          const auto parent = store.block(id);
          const auto nj = ngs.of(j).words();
          for (int w = 0; w < mem_words; ++w) scratch[w] = parent[w] & nj[w];
          bits::set(std::span<std::uint64_t>(scratch.data(), mem_words), j);
          for (int w = mem_words; w < stride; ++w) scratch[w] = parent[w];
          problem.mark_visited(
              j, std::span<std::uint64_t>(scratch.data() + mem_words, stride - mem_words));
          insert(j, load, rc, id);
        }
        if (result.cancelled) break;
      }
    }
  }

  std::sort(completions.begin(), completions.end());
  if (static_cast<int>(completions.size()) > cfg.max_columns) completions.resize(cfg.max_columns);
  for (const auto& [rc, id] : completions) {
    Route route;
    for (int cur = id; cur >= 0; cur = store.pred(cur)) route.push_back(store.vertex(cur));
    std::reverse(route.begin(), route.end());
    route.push_back(end);
    result.routes.push_back({std::move(route), rc});
  }
  result.min_reduced_cost = best;
  result.labels_created = store.size();
  return result;
}

double route_reduced_cost(const Route& route, const ProblemGraph& graph, const DualValues& duals,
                          std::span<const Cut> cuts, const NgNeighborhoods& ngs) {
  double rc = graph.route_cost(route);
  for (int v : route) {
    if (v >= 1 && v <= graph.num_customers()) rc -= duals.mu[v];
  }
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    const double gamma = c < duals.gamma.size() ? duals.gamma[c] : 0.0;
    if (gamma == 0.0) continue;
    rc -= route_coefficient(cuts[c], route, &ngs) * gamma;
  }
  return rc;
}

}  // namespace rrbpc
