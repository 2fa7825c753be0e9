#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace intricacy::cli {

enum ExitCode : int { ok = 0, bad_input = 1, cap_exceeded = 2, check_failed = 3 };

struct RunConfig {
  std::string subcommand;
  std::string input;
  std::vector<int> n;
  int block_k = 0;
  std::optional<int> terms;
  std::string coeffs = "uniform";
  std::string potential;
  std::string family;
  std::vector<double> params;
  std::string objective = "asc";
  double step = 0.005;
  long samples = 0;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::string output;
  std::string format = "csv";
  std::string suite = "all";
  int max_n = 8;
};

/// A table cell: empty, number (12 significant digits in CSV) or text.
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

/// Parses argv into a RunConfig. Returns an exit code when parsing ends the
/// run (help or a usage error).
std::variant<RunConfig, int> parse(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs a parsed configuration; tables go to config.output or `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse + run with exception-to-exit-code mapping.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace intricacy::cli
