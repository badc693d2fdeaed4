// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

#include <anisodot/cli.hpp>
#include <anisodot/csv.hpp>
#include <anisodot/errors.hpp>
#include <anisodot/rdm.hpp>
#include <anisodot/rel_solver.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <tuple>

namespace anisodot {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "1.0.0";
constexpr double kVariationalSlack = 1e-12;
constexpr double kQuadratureSlack = 1e-9;

std::vector<SectorLabel> parse_sectors(const std::vector<std::string>& names) {
  std::vector<SectorLabel> out;
  for (const auto& n : names) out.push_back(SectorLabel::parse(n));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> default_sectors(Subcommand s) {
  switch (s) {
    case Subcommand::spectrum:
      return {"ee", "eo", "oe", "oo"};
    case Subcommand::entanglement:
      return {"ee", "oe"};  // lowest singlet and triplet for epsilon > 1
    default:
      return {"ee"};
  }
}

std::vector<SectorLabel> effective_sectors(const RunConfig& cfg) {
  return parse_sectors(cfg.sectors.empty() ? default_sectors(cfg.subcommand)
                                           : cfg.sectors);
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

SolverOptions solver_options(const RunConfig& cfg) {
  SolverOptions o;
  o.quad = cfg.quad;
  if (cfg.basis_scale) {
    o.basis_scale = *cfg.basis_scale;
  } else {
    o.auto_scale = true;
  }
  return o;
}

int effective_n_max(const RunConfig& cfg, double g) {
  return cfg.n_max > 0 ? cfg.n_max : default_n_max(g);
}

int effective_sp_cutoff(const RunConfig& cfg, const TwoBodyState& s) {
  if (cfg.sp_cutoff > 0) return cfg.sp_cutoff;
  // A contracted relative basis is not an exact rotation of the product
  // basis; give the single-particle side some head room.
  return s.basis.scale == 1.0 ? s.basis.cutoff : s.basis.cutoff + 12;
}

AsymptoticOptions asymptotic_options(const RunConfig& cfg) {
  AsymptoticOptions o;
  o.mode = cfg.mode;
  o.points = cfg.nystrom_points;
  o.half_width = cfg.half_width;
  return o;
}

std::string quote_message(const std::string& m) {
  std::string out;
  for (char c : m) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

void print_error(std::ostream& err, const std::string& kind,
                 const std::string& message) {
  err << "error: kind=" << kind << " message=\"" << quote_message(message)
      << "\"\n";
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::configuration:
    case ErrorKind::domain:
      return 1;
    default:
      return 2;
  }
}

// Per-subcommand tables -----------------------------------------------------

std::size_t spectrum_table(const RunConfig& cfg, std::ostream& os) {
  const auto sectors = effective_sectors(cfg);
  const auto grid = cfg.coupling_grid();
  const SolverOptions opts = solver_options(cfg);
  std::vector<SpectrumRow> rows;
  for (double eps : sorted_unique(cfg.epsilons)) {
    auto t = spectrum_sweep(grid, eps, sectors, cfg.n_max, cfg.levels, opts,
                            cfg.jobs);
    rows.insert(rows.end(), t.rows.begin(), t.rows.end());
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.epsilon, a.g, a.sector, a.level) <
           std::tie(b.epsilon, b.g, b.sector, b.level);
  });
  csv::write_row(os, csv::spectrum_header());
  for (const auto& r : rows)
    csv::write_row(os, {csv::format(r.g), csv::format(r.epsilon),
                        r.sector.name(), std::to_string(r.level),
                        csv::format(r.e_rel), csv::format(r.gap)});
  return rows.size();
}

struct EntanglementRow {
  double epsilon = 0.0;
  double g = 0.0;
  SectorLabel sector;
  EntanglementResult result;
};

std::size_t entanglement_table(const RunConfig& cfg, std::ostream& os) {
  const auto sectors = effective_sectors(cfg);
  const auto grid = cfg.coupling_grid();
  const auto eps_list = sorted_unique(cfg.epsilons);
  SolverOptions opts = solver_options(cfg);
  const Execution inner = cfg.jobs > 1 ? Execution::serial : Execution::parallel;
  opts.exec = inner;

  std::vector<EntanglementRow> rows;
  for (double e : eps_list)
    for (double g : grid)
      for (const auto& s : sectors) rows.push_back({e, g, s, {}});
  std::vector<std::exception_ptr> errors(rows.size());

  const auto n = static_cast<long>(rows.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(cfg.jobs, 1))
  for (long i = 0; i < n; ++i) {
    auto& r = rows[i];
    try {
      const TrapParams t{r.g, r.epsilon};
      const auto states =
          eigensolve_sector(t, r.sector, effective_n_max(cfg, r.g), 1, opts);
      r.result = analyze_entanglement(states[0],
                                      effective_sp_cutoff(cfg, states[0]),
                                      inner);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!errors[i]) continue;
    std::ostringstream where;
    where << "at g=" << rows[i].g << ", epsilon=" << rows[i].epsilon
          << ", sector=" << rows[i].sector.name() << ": ";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      throw Error(e.kind(), where.str() + e.what());
    }
  }

  csv::write_row(os, csv::entanglement_header());
  for (const auto& r : rows) {
    std::vector<std::string> f{csv::format(r.g), csv::format(r.epsilon),
                               r.sector.name()};
    const auto& occ = r.result.spectrum.occupancies;
    for (int l = 0; l < csv::kReportedOccupancies; ++l)
      f.push_back(csv::format(l < static_cast<int>(occ.size()) ? occ[l] : 0.0));
    f.push_back(csv::format(r.result.vn));
    f.push_back(csv::format(r.result.linear));
    f.push_back(csv::format(r.result.completeness));
    csv::write_row(os, f);
  }
  return rows.size();
}

std::size_t asymptotic_table(const RunConfig& cfg, std::ostream& os) {
  const auto eps_list = sorted_unique(cfg.epsilons);
  const AsymptoticOptions opts = asymptotic_options(cfg);
  csv::write_row(os, csv::asymptotic_header());
  for (double eps_in : eps_list) {
    // epsilon < 1 is the same problem with the axes exchanged.
    const double eps = eps_in < 1.0 ? 1.0 / eps_in : eps_in;
    const auto vn = asymptotic_vn_entropy(eps, cfg.tail_tolerance, opts);
    const auto spec =
        asymptotic_occupancies(eps, std::max(vn.n_cut, 8), vn.m_cut, opts);
    double purity = 0.0;
    for (const auto& l : spec.levels) purity += 2.0 * l.occupancy * l.occupancy;
    purity /= spec.captured * spec.captured;
    const double l_spectrum = 1.0 - 0.5 * purity;

    std::vector<std::string> f{csv::format(eps_in)};
    for (int l = 0; l < csv::kReportedOccupancies; ++l)
      f.push_back(csv::format(l < static_cast<int>(spec.levels.size())
                                  ? spec.levels[l].occupancy
                                  : 0.0));
    f.push_back(csv::format(asymptotic_linear_entropy(eps)));
    f.push_back(csv::format(l_spectrum));
    f.push_back(csv::format(vn.value));
    csv::write_row(os, f);
  }
  return eps_list.size();
}

std::size_t convergence_table(const RunConfig& cfg, std::ostream& os,
                              std::vector<ConvergenceRow>* out_rows) {
  auto rows = convergence_report(cfg);
  csv::write_row(os, csv::convergence_header());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    csv::write_row(os, {r.parameter, std::to_string(r.value),
                        csv::format(r.e_rel0),
                        i == 0 ? std::string() : csv::format(r.delta)});
  }
  const std::size_t n = rows.size();
  if (out_rows) *out_rows = std::move(rows);
  return n;
}

// Argument handling ----------------------------------------------------------

template <class T>
void take(const json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

Subcommand parse_subcommand(const std::string& s) {
  if (s == "spectrum") return Subcommand::spectrum;
  if (s == "entanglement") return Subcommand::entanglement;
  if (s == "asymptotic") return Subcommand::asymptotic;
  if (s == "convergence") return Subcommand::convergence;
  throw ConfigurationError("unknown subcommand '" + s +
                           "': expected spectrum, entanglement, asymptotic "
                           "or convergence");
}

AsymptoticMode parse_mode(const std::string& s) {
  if (s == "nystrom") return AsymptoticMode::nystrom;
  if (s == "analytic") return AsymptoticMode::analytic;
  throw ConfigurationError("unknown mode '" + s +
                           "': expected nystrom or analytic");
}

std::optional<double> parse_scale(const std::string& s) {
  if (s == "auto") return std::nullopt;
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigurationError("--basis-scale expects 'auto' or a number, got '" +
                           s + "'");
}

std::vector<int> default_ladder(const RunConfig& cfg) {
  if (cfg.ladder == "n_max") return {12, 16, 20, 24, 28};
  if (cfg.ladder == "quad") return {48, 96, 192};
  // The single-particle cutoff may not fall below the relative cutoff.
  const int base = cfg.n_max > 0 ? cfg.n_max
                                 : default_n_max(cfg.coupling_grid().front());
  return {base, base + 4, base + 8, base + 12, base + 16};
}

std::string iso_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["subcommand"] = to_string(c.subcommand);
  j["g"] = c.coupling_grid();
  j["epsilon"] = c.epsilons;
  j["sectors"] = c.sectors;
  j["n_max"] = c.n_max;
  j["sp_cutoff"] = c.sp_cutoff;
  j["levels"] = c.levels;
  j["outer_order"] = c.quad.outer;
  j["inner_order"] = c.quad.inner;
  j["basis_scale"] = c.basis_scale ? json(*c.basis_scale) : json("auto");
  j["mode"] = c.mode == AsymptoticMode::nystrom ? "nystrom" : "analytic";
  j["nystrom_points"] = c.nystrom_points;
  j["half_width"] = c.half_width;
  j["tail_tolerance"] = c.tail_tolerance;
  j["jobs"] = c.jobs;
  if (c.subcommand == Subcommand::convergence) {
    j["ladder"] = c.ladder;
    j["values"] = c.ladder_values;
  }
  return j;
}

}  // namespace

std::string to_string(Subcommand s) {
  switch (s) {
    case Subcommand::spectrum: return "spectrum";
    case Subcommand::entanglement: return "entanglement";
    case Subcommand::asymptotic: return "asymptotic";
    case Subcommand::convergence: return "convergence";
  }
  return "?";
}

void RunConfig::validate() const {
  if (epsilons.empty()) throw ConfigurationError("no --epsilon given");
  for (double e : epsilons)
    if (!(e > 0.0) || !std::isfinite(e))
      throw ConfigurationError("--epsilon values must be finite and > 0");
  if (subcommand == Subcommand::asymptotic) {
    for (double e : epsilons)
      if (std::abs(e - 1.0) < kMinAnisotropyGap ||
          std::abs(1.0 / e - 1.0) < kMinAnisotropyGap)
        throw DomainError(
            "the g -> infinity limit needs epsilon != 1: at epsilon = 1 the "
            "asymptotic states cluster into a rotational band");
    if (nystrom_points < 16)
      throw ConfigurationError("--nystrom-points must be >= 16");
    if (half_width < 0.0)
      throw ConfigurationError("--half-width must be >= 0");
    if (!(tail_tolerance > 0.0))
      throw ConfigurationError("--tail-tolerance must be > 0");
  } else {
    const auto grid = coupling_grid();
    for (double g : grid)
      if (!(g >= 0.0) || !std::isfinite(g))
        throw ConfigurationError("coupling values must be finite and >= 0");
    (void)effective_sectors(*this);
    if (levels < 1) throw ConfigurationError("--levels must be >= 1");
    if (n_max < 0) throw ConfigurationError("--n-max must be >= 0");
    if (sp_cutoff < 0) throw ConfigurationError("--sp-cutoff must be >= 0");
    if (quad.outer < 2 || quad.outer % 2)
      throw ConfigurationError("--outer-order must be an even number >= 2");
    if (quad.inner < 0) throw ConfigurationError("--inner-order must be >= 0");
    if (basis_scale && !(*basis_scale > 0.0))
      throw ConfigurationError("--basis-scale must be > 0 or 'auto'");
  }
  if (jobs < 1) throw ConfigurationError("--jobs must be >= 1");
  if (subcommand == Subcommand::convergence) {
    if (ladder != "n_max" && ladder != "quad" && ladder != "sp_cutoff")
      throw ConfigurationError(
          "--ladder must be one of n_max, quad, sp_cutoff");
    const auto v = ladder_values.empty() ? default_ladder(*this) : ladder_values;
    if (!std::is_sorted(v.begin(), v.end()) ||
        std::adjacent_find(v.begin(), v.end()) != v.end())
      throw ConfigurationError("--values must be strictly increasing");
    for (int x : v)
      if (x < 1) throw ConfigurationError("--values must be >= 1");
  }
}

std::vector<double> RunConfig::coupling_grid() const {
  if (!g_values.empty()) return sorted_unique(g_values);
  if (g_points < 1)
    throw ConfigurationError("empty coupling grid: give --g or --g-points >= 1");
  if (!(g_min > 0.0))
    throw ConfigurationError(
        "log-spaced grids need --g-min > 0; request g = 0 with --g 0");
  if (!(g_max >= g_min))
    throw ConfigurationError("--g-max must be >= --g-min");
  return log_grid(g_min, g_max, g_points);
}

void apply_json(RunConfig& cfg, const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigurationError(std::string("config file is not valid JSON: ") +
                             e.what());
  }
  if (!j.is_object())
    throw ConfigurationError("config file must hold a JSON object");
  static const std::vector<std::string> known{
      "subcommand", "g", "g_min", "g_max", "g_points", "epsilon", "sectors",
      "n_max", "sp_cutoff", "levels", "outer_order", "inner_order",
      "basis_scale", "mode", "nystrom_points", "half_width", "tail_tolerance",
      "jobs", "output", "ladder", "values"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigurationError("unknown config key '" + key + "'");
  try {
    if (j.contains("subcommand"))
      cfg.subcommand = parse_subcommand(j.at("subcommand").get<std::string>());
    take(j, "g", cfg.g_values);
    take(j, "g_min", cfg.g_min);
    take(j, "g_max", cfg.g_max);
    take(j, "g_points", cfg.g_points);
    take(j, "epsilon", cfg.epsilons);
    take(j, "sectors", cfg.sectors);
    take(j, "n_max", cfg.n_max);
    take(j, "sp_cutoff", cfg.sp_cutoff);
    take(j, "levels", cfg.levels);
    take(j, "outer_order", cfg.quad.outer);
    take(j, "inner_order", cfg.quad.inner);
    if (j.contains("basis_scale")) {
      const auto& b = j.at("basis_scale");
      cfg.basis_scale = b.is_string() ? parse_scale(b.get<std::string>())
                                      : std::optional<double>(b.get<double>());
    }
    if (j.contains("mode")) cfg.mode = parse_mode(j.at("mode").get<std::string>());
    take(j, "nystrom_points", cfg.nystrom_points);
    take(j, "half_width", cfg.half_width);
    take(j, "tail_tolerance", cfg.tail_tolerance);
    take(j, "jobs", cfg.jobs);
    take(j, "output", cfg.output);
    take(j, "ladder", cfg.ladder);
    take(j, "values", cfg.ladder_values);
  } catch (const json::exception& e) {
    throw ConfigurationError(std::string("config file has a mistyped value: ") +
                             e.what());
  }
}

ParsedArgs parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Two electrons in an anisotropic harmonic trap: spectra, "
               "occupancies and entanglement entropies",
               "anisodot"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  std::vector<double> g, eps;
  double g_min = 0, g_max = 0, half_width = 0, tail = 0;
  int g_points = 0, n_max = 0, sp = 0, levels = 0, outer = 0, inner = 0,
      npts = 0, jobs = 0;
  std::vector<std::string> sectors;
  std::string scale, mode, output, config, ladder;
  std::vector<int> values;

  auto* o_g = app.add_option("--g", g, "explicit coupling values (0 allowed)")
                  ->delimiter(',');
  auto* o_gmin = app.add_option("--g-min", g_min, "log grid lower end (> 0)");
  auto* o_gmax = app.add_option("--g-max", g_max, "log grid upper end");
  auto* o_gpts = app.add_option("--g-points", g_points, "log grid size");
  auto* o_eps =
      app.add_option("--epsilon", eps, "anisotropy ratios")->delimiter(',');
  auto* o_sec = app.add_option("--sectors", sectors,
                               "parity sectors ee, eo, oe, oo (opt. :+1/:-1)")
                    ->delimiter(',');
  auto* o_nmax = app.add_option("--n-max", n_max, "relative basis cutoff");
  auto* o_sp = app.add_option("--sp-cutoff", sp, "single-particle cutoff");
  auto* o_lev = app.add_option("--levels", levels, "levels per sector");
  auto* o_out = app.add_option("--outer-order", outer,
                               "Gauss-Legendre order of the Coulomb transform");
  auto* o_in = app.add_option("--inner-order", inner,
                              "Gauss-Hermite order of inner overlaps (0 exact)");
  auto* o_scale = app.add_option("--basis-scale", scale,
                                 "relative basis length factor or 'auto'");
  auto* o_mode = app.add_option("--mode", mode, "nystrom or analytic");
  auto* o_npts = app.add_option("--nystrom-points", npts, "Nystrom grid size");
  auto* o_hw = app.add_option("--half-width", half_width,
                              "Nystrom grid half width (0 automatic)");
  auto* o_tail = app.add_option("--tail-tolerance", tail,
                                "bound on the neglected asymptotic tail");
  auto* o_jobs = app.add_option("--jobs", jobs, "worker threads");
  auto* o_outp = app.add_option("--output,-o", output, "CSV path ('-' stdout)");
  app.add_option("--config", config, "JSON config; flags override it");
  auto* o_lad = app.add_option("--ladder", ladder, "n_max, quad or sp_cutoff");
  auto* o_val = app.add_option("--values", values, "ladder values")
                    ->delimiter(',');

  for (const char* name : {"spectrum", "entanglement", "asymptotic",
                           "convergence"})
    app.add_subcommand(name)->fallthrough();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  ParsedArgs out;
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out.help = true;
    out.help_text = app.help();
    return out;
  } catch (const CLI::CallForVersion&) {
    out.help = true;
    out.help_text = std::string(kVersion) + "\n";
    return out;
  } catch (const CLI::ParseError& e) {
    throw ConfigurationError(e.what());
  }

  RunConfig& c = out.config;
  if (!config.empty()) {
    std::ifstream in(config);
    if (!in) throw ConfigurationError("cannot read config file " + config);
    std::stringstream ss;
    ss << in.rdbuf();
    apply_json(c, ss.str());
  }
  c.subcommand = parse_subcommand(app.get_subcommands().front()->get_name());
  if (o_g->count()) c.g_values = g;
  if (o_gmin->count()) c.g_min = g_min;
  if (o_gmax->count()) c.g_max = g_max;
  if (o_gpts->count()) c.g_points = g_points;
  if (o_gmin->count() || o_gmax->count() || o_gpts->count()) {
    if (o_g->count())
      throw ConfigurationError("--g cannot be combined with a log grid");
    c.g_values.clear();
  }
  if (o_eps->count()) c.epsilons = eps;
  if (o_sec->count()) c.sectors = sectors;
  if (o_nmax->count()) c.n_max = n_max;
  if (o_sp->count()) c.sp_cutoff = sp;
  if (o_lev->count()) c.levels = levels;
  if (o_out->count()) c.quad.outer = outer;
  if (o_in->count()) c.quad.inner = inner;
  if (o_scale->count()) c.basis_scale = parse_scale(scale);
  if (o_mode->count()) c.mode = parse_mode(mode);
  if (o_npts->count()) c.nystrom_points = npts;
  if (o_hw->count()) c.half_width = half_width;
  if (o_tail->count()) c.tail_tolerance = tail;
  if (o_jobs->count()) c.jobs = jobs;
  if (o_outp->count()) c.output = output;
  if (o_lad->count()) c.ladder = ladder;
  if (o_val->count()) c.ladder_values = values;
  return out;
}

std::vector<ConvergenceRow> convergence_report(const RunConfig& cfg) {
  cfg.validate();
  const double g = cfg.coupling_grid().front();
  const double eps = sorted_unique(cfg.epsilons).front();
  const SectorLabel sector = effective_sectors(cfg).front();
  const TrapParams t{g, eps};
  const auto values =
      cfg.ladder_values.empty() ? default_ladder(cfg) : cfg.ladder_values;

  std::vector<ConvergenceRow> rows;
  for (int v : values) {
    RunConfig c = cfg;
    SolverOptions opts = solver_options(c);
    ConvergenceRow r;
    r.parameter = cfg.ladder;
    r.value = v;
    if (cfg.ladder == "n_max") {
      r.e_rel0 = eigensolve_sector(t, sector, v, 1, opts)[0].rel_energy;
    } else if (cfg.ladder == "quad") {
      opts.quad.outer = v;
      r.e_rel0 = eigensolve_sector(t, sector, effective_n_max(c, g), 1, opts)[0]
                     .rel_energy;
    } else {
      const auto s = eigensolve_sector(t, sector, effective_n_max(c, g), 1, opts);
      r.e_rel0 = single_particle_coefficients_ungated(s[0], v).completeness;
    }
    if (!rows.empty()) {
      r.delta = r.e_rel0 - rows.back().e_rel0;
      if (cfg.ladder == "n_max")
        r.violation = r.delta > kVariationalSlack;
      else if (cfg.ladder == "quad")
        r.violation = !(std::abs(r.delta) < kQuadratureSlack);
      else
        r.violation = r.delta < -kVariationalSlack;
    }
    rows.push_back(r);
  }
  return rows;
}

std::size_t write_table(const RunConfig& cfg, std::ostream& os) {
  cfg.validate();
  switch (cfg.subcommand) {
    case Subcommand::spectrum: return spectrum_table(cfg, os);
    case Subcommand::entanglement: return entanglement_table(cfg, os);
    case Subcommand::asymptotic: return asymptotic_table(cfg, os);
    case Subcommand::convergence: return convergence_table(cfg, os, nullptr);
  }
  return 0;
}

int run(const RunConfig& cfg, std::ostream& err) {
  namespace fs = std::filesystem;
  const bool to_stdout = cfg.output.empty() || cfg.output == "-";
  const fs::path target = to_stdout ? fs::path() : fs::path(cfg.output);
  const fs::path tmp =
      to_stdout ? fs::path() : fs::path(cfg.output + ".partial");
  const auto start = std::chrono::steady_clock::now();
  try {
    cfg.validate();
    std::ostringstream buf;
    std::vector<ConvergenceRow> conv;
    const std::size_t nrows =
        cfg.subcommand == Subcommand::convergence
            ? convergence_table(cfg, buf, &conv)
            : write_table(cfg, buf);

    if (to_stdout) {
      std::cout << buf.str() << std::flush;
    } else {
      {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigurationError("cannot open " + tmp.string());
        f << buf.str();
        f.flush();
        if (!f) throw NumericError("write failed for " + tmp.string());
      }
      fs::rename(tmp, target);

      json meta;
      meta["tool"] = "anisodot";
      meta["version"] = kVersion;
      meta["generated_utc"] = iso_utc_now();
      meta["wall_seconds"] = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
      meta["rows"] = nrows;
      meta["config"] = config_to_json(cfg);
      std::ofstream m(cfg.output + ".meta.json", std::ios::trunc);
      m << meta.dump(2) << '\n';
    }

    for (const auto& r : conv) {
      if (!r.violation) continue;
      print_error(err, "inconsistency",
                  "ladder " + r.parameter + " step " + std::to_string(r.value) +
                      " moved by " + csv::format(r.delta) +
                      " beyond the allowed slack");
      return 2;
    }
    return 0;
  } catch (const Error& e) {
    if (!to_stdout) {
      std::error_code ec;
      fs::remove(tmp, ec);
    }
    print_error(err, std::string(to_string(e.kind())), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    if (!to_stdout) {
      std::error_code ec;
      fs::remove(tmp, ec);
    }
    print_error(err, "numeric", e.what());
    return 2;
  }
}

int main_entry(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    const ParsedArgs p = parse_args(args);
    if (p.help) {
      std::cout << p.help_text;
      return 0;
    }
    return run(p.config, std::cerr);
  } catch (const Error& e) {
    print_error(std::cerr, std::string(to_string(e.kind())), e.what());
    return exit_code_for(e.kind());
  }
}

}  // namespace anisodot
