// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file cli.hpp
 * @brief Sweep driver behind the `anisodot` executable.
 *
 * Every subcommand produces one CSV table. Rows are buffered and written in
 * sorted order after all points finish, so the file content does not depend
 * on the worker count. Run metadata goes to `<output>.meta.json`.
 */
#pragma once

#include <anisodot/asymptotic.hpp>
#include <anisodot/coulomb.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace anisodot {

enum class Subcommand { spectrum, entanglement, asymptotic, convergence };

std::string to_string(Subcommand s);

struct RunConfig {
  Subcommand subcommand = Subcommand::spectrum;

  // Coupling grid: either an explicit list (may contain 0) or log spacing.
  std::vector<double> g_values;
  double g_min = 0.3678794411714423;  // e^-1
  double g_max = 403.4287934927351;   // e^6
  int g_points = 8;

  std::vector<double> epsilons{1.0};
  std::vector<std::string> sectors;  // empty selects the subcommand default
  int n_max = 0;                     // <= 0: chosen from g
  int sp_cutoff = 0;                 // <= 0: chosen from n_max
  int levels = 4;
  QuadratureOrders quad{};
  std::optional<double> basis_scale = 1.0;  // nullopt: automatic
  AsymptoticMode mode = AsymptoticMode::nystrom;
  int nystrom_points = 400;
  double half_width = 0.0;  // 0: chosen per kernel
  double tail_tolerance = 1e-10;
  int jobs = 1;
  std::string output;  // empty or "-": stdout

  // convergence subcommand
  std::string ladder = "n_max";  // n_max | quad | sp_cutoff
  std::vector<int> ladder_values;

  /// Throws ConfigurationError with an actionable message.
  void validate() const;

  /// Coupling grid after applying the defaults.
  std::vector<double> coupling_grid() const;
};

/// Builds a configuration from command-line arguments (argv[0] excluded).
/// A `--config file.json` is applied first; explicit flags override it.
/// Throws ConfigurationError on bad usage. Sets `help` and returns the usage
/// text when --help was requested.
struct ParsedArgs {
  RunConfig config;
  bool help = false;
  std::string help_text;
};
ParsedArgs parse_args(const std::vector<std::string>& args);

/// Applies a JSON object on top of `cfg`. Keys mirror the long flag names
/// with dashes replaced by underscores.
void apply_json(RunConfig& cfg, const std::string& json_text);

/// Computes the table for `cfg` and writes it to `os`.
/// Returns the number of data rows.
std::size_t write_table(const RunConfig& cfg, std::ostream& os);

struct ConvergenceRow {
  std::string parameter;
  int value = 0;
  double e_rel0 = 0.0;  // completeness for the sp_cutoff ladder
  double delta = 0.0;
  bool violation = false;
};

/// Ladder study on the first (g, epsilon, sector) of the configuration.
std::vector<ConvergenceRow> convergence_report(const RunConfig& cfg);

/// Full run: table, atomic file replacement, sidecar. Returns the exit code
/// (0 success, 1 usage, 2 numeric failure) and prints a machine-readable
/// `error:` line to `err` on failure.
int run(const RunConfig& cfg, std::ostream& err);

/// Entry point of the executable.
int main_entry(int argc, const char* const* argv);

}  // namespace anisodot
