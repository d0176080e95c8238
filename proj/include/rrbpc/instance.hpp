#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rrbpc {

/// Malformed instance text. The message names the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct Point {
  double x = 0;
  double y = 0;
};

/// A CVRP instance with the depot at index 0 and customers at 1..n.
struct CvrpInstance {
  std::string name;
  int n = 0;
  std::vector<Point> coords;  // n + 1 entries
  std::vector<int> demands;   // n + 1 entries, demands[0] == 0
  int capacity = 0;
  double alpha = 1.0;

  int end_depot() const { return n + 1; }
};

CvrpInstance parse_instance(std::string_view text);
CvrpInstance read_instance(const std::filesystem::path& path);

/// TSPLIB text for an instance; parse_instance(write_instance(x)) == x.
std::string write_instance(const CvrpInstance& inst);

/// Scales every demand by alpha, rounds half up and caps at the capacity.
CvrpInstance scale_demands(const CvrpInstance& inst, double alpha);

/// Class-style name for a scaled instance, e.g. B-n31-k5 at 2 -> B2-n31-k5.
std::string scaled_name(const std::string& name, double alpha);

/// TSPLIB EUC_2D distance: nearest integer of the Euclidean distance.
int euclidean_cost(const Point& a, const Point& b);

/// Directed pricing graph on vertices 0 (start depot), 1..n, n+1 (end depot).
class ProblemGraph {
 public:
  ProblemGraph() = default;
  ProblemGraph(int n, std::vector<int> demands, int capacity,
               std::vector<int> costs);

  int num_customers() const { return n_; }
  int num_vertices() const { return n_ + 2; }
  int end_depot() const { return n_ + 1; }
  int capacity() const { return capacity_; }
  int demand(int v) const { return demands_[v]; }
  const std::vector<int>& demands() const { return demands_; }

  bool has_arc(int i, int j) const { return arc_[index(i, j)] != 0; }
  int cost(int i, int j) const { return cost_[index(i, j)]; }
  void remove_arc(int i, int j) { arc_[index(i, j)] = 0; }

  int num_arcs() const;
  std::vector<int> successors(int i) const;
  std::vector<int> predecessors(int j) const;

  /// Sum of arc costs along a vertex sequence.
  double route_cost(const std::vector<int>& route) const;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * (n_ + 2) + j;
  }

  int n_ = 0;
  int capacity_ = 0;
  std::vector<int> demands_;  // n + 2 entries, zero at both depots
  std::vector<int> cost_;
  std::vector<char> arc_;
};

ProblemGraph build_graph(const CvrpInstance& inst);

}  // namespace rrbpc
