// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

#include <anisodot/errors.hpp>
#include <anisodot/ho_basis.hpp>
#include <anisodot/rel_solver.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

namespace anisodot {

double TwoBodyState::relative_amplitude(double x, double y) const {
  const double sx = basis.scale, sy = basis.scale * std::sqrt(trap.epsilon);
  const auto fx = eval_ho_all(basis.cutoff, sx, x);
  const auto fy = eval_ho_all(basis.cutoff, sy, y);
  double s = 0.0;
  for (std::size_t i = 0; i < basis.members.size(); ++i)
    s += rel_coefficients[static_cast<Eigen::Index>(i)] *
         fx[basis.members[i].nx] * fy[basis.members[i].ny];
  return s;
}

int default_n_max(double g) noexcept { return g > 200.0 ? 36 : 28; }

double auto_basis_scale(const TrapParams& t) noexcept {
  if (t.g <= 0.0) return 1.0;
  const double x_cl = std::cbrt(t.g / 2.0);
  return std::min(1.0, std::sqrt(3.95 / (x_cl + 2.28)));
}

std::vector<TwoBodyState> eigensolve_sector(const TrapParams& t,
                                            const SectorLabel& sector,
                                            int n_max, int k,
                                            const SolverOptions& opts) {
  t.validate();
  if (k < 1) throw ConfigurationError("requested level count must be >= 1");
  const double scale = opts.auto_scale ? auto_basis_scale(t) : opts.basis_scale;
  SectorBasis basis = SectorBasis::build(sector, n_max, scale);
  if (static_cast<std::size_t>(k) > basis.size())
    throw ConfigurationError("requested " + std::to_string(k) +
                             " levels but sector " + sector.name() +
                             " has only " + std::to_string(basis.size()) +
                             " basis functions at n_max " +
                             std::to_string(n_max));
  const Eigen::MatrixXd h =
      assemble_relative_hamiltonian(t, basis, opts.quad, opts.exec);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success)
    throw NumericError("symmetric eigensolver failed for sector " +
                       sector.name());
  std::vector<TwoBodyState> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd v = es.eigenvectors().col(i);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
    v.normalize();
    out.push_back(TwoBodyState{t, sector, basis, std::move(v),
                               es.eigenvalues()[i], 0, 0});
  }
  return out;
}

double harmonic_energy(int n, int m, const TrapParams& t) {
  t.validate();
  if (t.epsilon <= 1.0)
    throw DomainError("harmonic approximation requires epsilon > 1");
  if (t.g <= 0.0) throw DomainError("harmonic approximation requires g > 0");
  if (n < 0 || m < 0) throw DomainError("quantum numbers must be >= 0");
  const double e = t.epsilon;
  return 3.0 * std::pow(t.g / 2.0, 2.0 / 3.0) +
         2.0 * std::sqrt(3.0) * (n + 0.5) +
         2.0 * (m + 0.5) * std::sqrt(e * e - 1.0);
}

std::vector<double> log_grid(double g_min, double g_max, int n) {
  if (n < 1) throw ConfigurationError("grid needs at least one point");
  if (!(g_min > 0.0) || !(g_max >= g_min))
    throw ConfigurationError("log grid needs 0 < g_min <= g_max");
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = g_min;
    return g;
  }
  const double a = std::log(g_min), b = std::log(g_max);
  for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
  g.back() = g_max;
  return g;
}

SpectrumTable spectrum_sweep(const std::vector<double>& g_grid, double epsilon,
                             const std::vector<SectorLabel>& sectors,
                             int n_max, int k, const SolverOptions& opts,
                             int jobs) {
  if (g_grid.empty()) throw ConfigurationError("empty g grid");
  if (!std::is_sorted(g_grid.begin(), g_grid.end()))
    throw ConfigurationError("g grid must be sorted");
  if (sectors.empty()) throw ConfigurationError("no sectors requested");
  std::vector<SectorLabel> secs = sectors;
  std::sort(secs.begin(), secs.end());

  const auto npts = static_cast<long>(g_grid.size());
  std::vector<std::vector<SpectrumRow>> per_point(npts);
  std::vector<std::exception_ptr> errors(npts);
  SolverOptions inner = opts;
  if (jobs > 1) inner.exec = Execution::serial;

#pragma omp parallel for schedule(dynamic) num_threads(std::max(jobs, 1))
  for (long p = 0; p < npts; ++p) {
    try {
      const TrapParams t{g_grid[p], epsilon};
      const int nm = n_max > 0 ? n_max : default_n_max(t.g);
      double e0 = std::numeric_limits<double>::infinity();
      std::vector<SpectrumRow> rows;
      for (const auto& s : secs) {
        const auto states = eigensolve_sector(t, s, nm, k, inner);
        for (int l = 0; l < k; ++l) {
          rows.push_back({t.g, epsilon, s, l, states[l].rel_energy, 0.0});
          e0 = std::min(e0, states[l].rel_energy);
        }
      }
      for (auto& r : rows) r.gap = r.e_rel - e0;
      per_point[p] = std::move(rows);
    } catch (...) {
      errors[p] = std::current_exception();
    }
  }
  for (long p = 0; p < npts; ++p) {
    if (!errors[p]) continue;
    std::ostringstream os;
    os << "at g=" << g_grid[p] << ", epsilon=" << epsilon << ": ";
    try {
      std::rethrow_exception(errors[p]);
    } catch (const Error& e) {
      throw Error(e.kind(), os.str() + e.what());
    }
  }
  SpectrumTable table;
  for (auto& rows : per_point)
    for (auto& r : rows) table.rows.push_back(r);
  return table;
}

}  // namespace anisodot
