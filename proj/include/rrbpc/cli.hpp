#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rrbpc/bpc.hpp"

namespace rrbpc {

struct RunConfig {
  CutMode mode = CutMode::Robust;
  int ng_size = 10;
  double alpha = 1.0;
  double time_limit_seconds = 3600;
  bool root_only = false;
  bool verbose = false;
  std::optional<std::filesystem::path> out;
  /// A single best-known value applied to every instance, or per-instance
  /// values from a file.
  std::optional<double> bks_value;
  std::map<std::string, double> bks_table;
  std::vector<std::filesystem::path> instances;
};

CutMode parse_cut_mode(const std::string& text);

/// Lines of "name value"; blank lines and lines starting with '#' are
/// skipped.
std::map<std::string, double> parse_bks(std::istream& in);

const char* csv_header();

/// One report row; the gap field is empty without a best-known value.
std::string csv_row(const std::string& instance, const SolveResult& result,
                    std::optional<double> bks);

/// Parses flags, solves every instance and writes the CSV report. Returns the
/// process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rrbpc
