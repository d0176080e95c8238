#include "rrbpc/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>
#include <stdexcept>

namespace rrbpc {

CutMode parse_cut_mode(const std::string& text) {
  if (text == "robust") return CutMode::Robust;
  if (text == "resource-robust") return CutMode::ResourceRobust;
  if (text == "non-robust") return CutMode::NonRobust;
  throw std::invalid_argument("unknown cut mode: " + text);
}

std::map<std::string, double> parse_bks(std::istream& in) {
  std::map<std::string, double> table;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream fields(line);
    fields.imbue(std::locale::classic());
    std::string name;
    if (!(fields >> name) || name.front() == '#') continue;
    double value;
    if (!(fields >> value)) {
      throw std::runtime_error("best-known file line " + std::to_string(number) +
                               ": expected a name and a value");
    }
    table[name] = value;
  }
  return table;
}

const char* csv_header() {
  return "instance,lower_bound,upper_bound,n_cc,n_ngcc,n_scc,seconds,nodes,gap_pct,status";
}

std::string csv_row(const std::string& instance, const SolveResult& result,
                    std::optional<double> bks) {
  std::ostringstream row;
  row.imbue(std::locale::classic());
  row << std::fixed;
  auto number = [&](double v, int digits) {
    if (std::isfinite(v)) {
      row << std::setprecision(digits) << v;
    } else {
      row << (v > 0 ? "inf" : "-inf");
    }
  };
  row << instance << ",";
  number(result.lower_bound, 2);
  row << ",";
  number(result.upper_bound, 0);
  row << "," << result.n_cc << "," << result.n_ngcc << "," << result.n_scc << ",";
  number(result.seconds, 2);
  row << "," << result.nodes << ",";
  if (bks && *bks != 0 && std::isfinite(result.lower_bound)) {
    number(100.0 * (*bks - result.lower_bound) / *bks, 2);
  }
  row << "," << to_string(result.status);
  return row.str();
}

namespace {

bool needs_header(const std::filesystem::path& path) {
  std::error_code ec;
  return !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Branch-price-and-cut solver for the capacitated vehicle routing problem"};
  app.name("rrbpc");

  RunConfig cfg;
  std::string cuts = "robust";
  std::string out_path;
  std::string bks;
  app.add_option("instances", cfg.instances, "TSPLIB .vrp files")->required();
  app.add_option("--cuts", cuts, "Capacity cut family")
      ->check(CLI::IsMember({"robust", "resource-robust", "non-robust"}));
  app.add_option("--ng-size", cfg.ng_size, "ng-neighborhood size")->check(CLI::PositiveNumber);
  app.add_option("--alpha", cfg.alpha, "Demand scale factor")->check(CLI::PositiveNumber);
  app.add_option("--time-limit", cfg.time_limit_seconds, "Seconds per instance")
      ->check(CLI::PositiveNumber);
  app.add_flag("--root-only", cfg.root_only, "Stop after the root node");
  app.add_option("--out", out_path, "Append the CSV report to this file");
  app.add_option("--bks", bks, "Best-known value, or a file of 'name value' lines");
  app.add_flag("--verbose", cfg.verbose, "Per-node progress on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  cfg.mode = parse_cut_mode(cuts);
  if (!out_path.empty()) cfg.out = out_path;

  if (!bks.empty()) {
    std::istringstream as_number(bks);
    as_number.imbue(std::locale::classic());
    double value;
    if (as_number >> value && as_number.eof()) {
      cfg.bks_value = value;
    } else {
      std::ifstream in(bks);
      if (!in) {
        err << "rrbpc: cannot read best-known file " << bks << "\n";
        return 2;
      }
      try {
        cfg.bks_table = parse_bks(in);
      } catch (const std::exception& e) {
        err << "rrbpc: " << e.what() << "\n";
        return 2;
      }
    }
  }

  std::vector<CvrpInstance> instances;
  for (const auto& path : cfg.instances) {
    try {
      CvrpInstance inst = read_instance(path);
      if (cfg.alpha != 1.0) inst = scale_demands(inst, cfg.alpha);
      inst.name = scaled_name(inst.name, cfg.alpha);
      instances.push_back(std::move(inst));
    } catch (const std::exception& e) {
      err << "rrbpc: " << path.string() << ": " << e.what() << "\n";
      return 2;
    }
  }

  std::ofstream file;
  std::ostream* report = &out;
  if (cfg.out) {
    const bool header = needs_header(*cfg.out);
    file.open(*cfg.out, std::ios::app);
    if (!file) {
      err << "rrbpc: cannot open " << cfg.out->string() << " for writing\n";
      return 2;
    }
    report = &file;
    if (header) file << csv_header() << "\n";
  } else {
    out << csv_header() << "\n";
  }

  SolveConfig solve_cfg;
  solve_cfg.mode = cfg.mode;
  solve_cfg.ng_size = cfg.ng_size;
  solve_cfg.time_limit_seconds = cfg.time_limit_seconds;
  solve_cfg.root_only = cfg.root_only;
  if (cfg.verbose) solve_cfg.log = &err;

  for (const auto& inst : instances) {
    std::optional<double> known = cfg.bks_value;
    if (auto it = cfg.bks_table.find(inst.name); it != cfg.bks_table.end()) known = it->second;
    SolveResult result;
    try {
      result = solve(inst, solve_cfg);
    } catch (const std::exception& e) {
      err << "rrbpc: " << inst.name << ": " << e.what() << "\n";
      return 1;
    }
    *report << csv_row(inst.name, result, known) << "\n";
    report->flush();
  }
  return 0;
}

}  // namespace rrbpc
