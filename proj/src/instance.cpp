#include "rrbpc/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace rrbpc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
    }
    std::size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
    }
    if (pos > start) out.push_back(s.substr(start, pos - start));
  }
  return out;
}

std::optional<long> to_integer(std::string_view s) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<double> to_real(std::string_view s) {
  // std::from_chars for double is missing from older libstdc++.
  std::string copy(s);
  char* end = nullptr;
  double value = std::strtod(copy.c_str(), &end);
  if (end != copy.c_str() + copy.size() || copy.empty()) return std::nullopt;
  return value;
}

enum class Section { None, Coords, Demands, Depots };

}  // namespace

CvrpInstance parse_instance(std::string_view text) {
  std::string name;
  std::optional<int> dimension;
  std::optional<int> capacity;
  std::map<long, Point> coords;
  std::map<long, long> demands;
  std::vector<long> depots;
  Section section = Section::None;
  bool depots_closed = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line == "EOF") break;

    auto colon = line.find(':');
    if (colon != std::string_view::npos) {
      std::string_view key = trim(line.substr(0, colon));
      std::string_view value = trim(line.substr(colon + 1));
      section = Section::None;
      if (key == "NAME") {
        name = std::string(value);
      } else if (key == "DIMENSION") {
        auto v = to_integer(value);
        if (!v || *v < 2) throw ParseError(line_no, "invalid DIMENSION '" + std::string(value) + "'");
        dimension = static_cast<int>(*v);
      } else if (key == "CAPACITY") {
        auto v = to_integer(value);
        if (!v || *v <= 0) throw ParseError(line_no, "invalid CAPACITY '" + std::string(value) + "'");
        capacity = static_cast<int>(*v);
      } else if (key == "EDGE_WEIGHT_TYPE") {
        if (value != "EUC_2D") {
          throw ParseError(line_no, "unsupported EDGE_WEIGHT_TYPE '" + std::string(value) + "'");
        }
      } else if (key == "TYPE") {
        if (value != "CVRP") throw ParseError(line_no, "unsupported TYPE '" + std::string(value) + "'");
      }
      continue;
    }
    if (line == "NODE_COORD_SECTION") {
      section = Section::Coords;
      continue;
    }
    if (line == "DEMAND_SECTION") {
      section = Section::Demands;
      continue;
    }
    if (line == "DEPOT_SECTION") {
      section = Section::Depots;
      continue;
    }

    auto tok = tokens(line);
    switch (section) {
      case Section::Coords: {
        if (tok.size() != 3) throw ParseError(line_no, "expected 'id x y' in NODE_COORD_SECTION");
        auto id = to_integer(tok[0]);
        auto x = to_real(tok[1]);
        auto y = to_real(tok[2]);
        if (!id || !x || !y) throw ParseError(line_no, "malformed coordinate line '" + std::string(line) + "'");
        coords[*id] = Point{*x, *y};
        break;
      }
      case Section::Demands: {
        if (tok.size() != 2) throw ParseError(line_no, "expected 'id demand' in DEMAND_SECTION");
        auto id = to_integer(tok[0]);
        auto q = to_integer(tok[1]);
        if (!id) throw ParseError(line_no, "malformed node id '" + std::string(tok[0]) + "'");
        if (!q) throw ParseError(line_no, "non-integer demand '" + std::string(tok[1]) + "'");
        demands[*id] = *q;
        break;
      }
      case Section::Depots: {
        if (depots_closed) throw ParseError(line_no, "data after DEPOT_SECTION terminator");
        for (auto t : tok) {
          auto id = to_integer(t);
          if (!id) throw ParseError(line_no, "malformed depot id '" + std::string(t) + "'");
          if (*id == -1) {
            depots_closed = true;
          } else {
            depots.push_back(*id);
          }
        }
        break;
      }
      case Section::None:
        throw ParseError(line_no, "unexpected line '" + std::string(line) + "'");
    }
  }

  if (!capacity) throw ParseError(line_no, "missing CAPACITY");
  if (!dimension) throw ParseError(line_no, "missing DIMENSION");
  if (static_cast<int>(coords.size()) != *dimension) {
    throw ParseError(line_no, "NODE_COORD_SECTION has " + std::to_string(coords.size()) +
                                  " entries, DIMENSION is " + std::to_string(*dimension));
  }
  if (static_cast<int>(demands.size()) != *dimension) {
    throw ParseError(line_no, "DEMAND_SECTION has " + std::to_string(demands.size()) +
                                  " entries, DIMENSION is " + std::to_string(*dimension));
  }
  if (depots.size() != 1) throw ParseError(line_no, "expected exactly one depot");
  const long depot = depots.front();
  if (!coords.count(depot)) throw ParseError(line_no, "depot id has no coordinates");

  CvrpInstance inst;
  inst.name = name;
  inst.capacity = *capacity;
  inst.n = *dimension - 1;
  inst.coords.push_back(coords[depot]);
  inst.demands.push_back(0);
  for (const auto& [id, point] : coords) {
    if (id == depot) continue;
    auto it = demands.find(id);
    if (it == demands.end()) throw ParseError(line_no, "node " + std::to_string(id) + " has no demand");
    if (it->second <= 0 || it->second > *capacity) {
      throw ParseError(line_no, "demand of node " + std::to_string(id) + " outside (0, CAPACITY]");
    }
    inst.coords.push_back(point);
    inst.demands.push_back(static_cast<int>(it->second));
  }
  return inst;
}

CvrpInstance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

std::string write_instance(const CvrpInstance& inst) {
  std::ostringstream out;
  out.precision(17);
  out << "NAME : " << inst.name << "\n"
      << "TYPE : CVRP\n"
      << "DIMENSION : " << inst.n + 1 << "\n"
      << "EDGE_WEIGHT_TYPE : EUC_2D\n"
      << "CAPACITY : " << inst.capacity << "\n"
      << "NODE_COORD_SECTION\n";
  for (int v = 0; v <= inst.n; ++v) {
    out << v + 1 << " " << inst.coords[v].x << " " << inst.coords[v].y << "\n";
  }
  out << "DEMAND_SECTION\n";
  for (int v = 0; v <= inst.n; ++v) out << v + 1 << " " << inst.demands[v] << "\n";
  out << "DEPOT_SECTION\n 1\n -1\nEOF\n";
  return out.str();
}

CvrpInstance scale_demands(const CvrpInstance& inst, double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("demand scale factor must be positive");
  CvrpInstance out = inst;
  out.alpha = alpha;
  for (int i = 1; i <= out.n; ++i) {
    const double scaled = std::floor(alpha * inst.demands[i] + 0.5);
    out.demands[i] = std::clamp(static_cast<int>(scaled), 1, inst.capacity);
  }
  return out;
}

std::string scaled_name(const std::string& name, double alpha) {
  if (alpha == 1.0) return name;
  std::ostringstream tag;
  tag << alpha;
  std::string digits;
  for (char c : tag.str()) {
    if (c != '.') digits.push_back(c);
  }
  auto dash = name.find('-');
  if (dash == std::string::npos) return name + "-" + digits;
  return name.substr(0, dash) + digits + name.substr(dash);
}

int euclidean_cost(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return static_cast<int>(std::lround(std::sqrt(dx * dx + dy * dy)));
}

ProblemGraph::ProblemGraph(int n, std::vector<int> demands, int capacity,
                           std::vector<int> costs)
    : n_(n),
      capacity_(capacity),
      demands_(std::move(demands)),
      cost_(std::move(costs)),
      arc_(static_cast<std::size_t>(n + 2) * (n + 2), 0) {
  const int end = n_ + 1;
  for (int i = 0; i <= n_; ++i) {
    for (int j = 1; j <= end; ++j) {
      if (i == j) continue;
      if (i == 0 && j == end) continue;
      arc_[index(i, j)] = 1;
    }
  }
}

int ProblemGraph::num_arcs() const {
  return static_cast<int>(std::count(arc_.begin(), arc_.end(), 1));
}

std::vector<int> ProblemGraph::successors(int i) const {
  std::vector<int> out;
  for (int j = 0; j < num_vertices(); ++j) {
    if (has_arc(i, j)) out.push_back(j);
  }
  return out;
}

std::vector<int> ProblemGraph::predecessors(int j) const {
  std::vector<int> out;
  for (int i = 0; i < num_vertices(); ++i) {
    if (has_arc(i, j)) out.push_back(i);
  }
  return out;
}

double ProblemGraph::route_cost(const std::vector<int>& route) const {
  double total = 0;
  for (std::size_t k = 0; k + 1 < route.size(); ++k) total += cost(route[k], route[k + 1]);
  return total;
}

ProblemGraph build_graph(const CvrpInstance& inst) {
  const int nv = inst.n + 2;
  std::vector<int> costs(static_cast<std::size_t>(nv) * nv, 0);
  auto coord = [&](int v) -> const Point& {
    return v == inst.n + 1 ? inst.coords[0] : inst.coords[v];
  };
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nv; ++j) {
      costs[static_cast<std::size_t>(i) * nv + j] = euclidean_cost(coord(i), coord(j));
    }
  }
  std::vector<int> demands(nv, 0);
  for (int i = 1; i <= inst.n; ++i) demands[i] = inst.demands[i];
  return ProblemGraph(inst.n, std::move(demands), inst.capacity, std::move(costs));
}

}  // namespace rrbpc
