// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file rel_solver.hpp
 * @brief Rayleigh-Ritz eigenpairs of the relative problem per parity sector.
 */

#pragma once

#include <anisodot/coulomb.hpp>
#include <anisodot/execution.hpp>
#include <anisodot/model.hpp>

#include <Eigen/Dense>

#include <vector>

namespace anisodot {

struct SolverOptions {
  double basis_scale = 1.0;
  bool auto_scale = false;  // use auto_basis_scale(t) instead of basis_scale
  QuadratureOrders quad{};
  Execution exec = Execution::parallel;
};

/// Eigenstate of the relative problem with the CM oscillator in (n, m).
struct TwoBodyState {
  TrapParams trap;
  SectorLabel sector;
  SectorBasis basis;
  Eigen::VectorXd rel_coefficients;
  double rel_energy = 0.0;
  int cm_n = 0;
  int cm_m = 0;

  double cm_energy() const noexcept {
    return 2.0 * (cm_n + 0.5) + 2.0 * trap.epsilon * (cm_m + 0.5);
  }
  double total_energy() const noexcept { return rel_energy + cm_energy(); }

  /// psi_rel(x, y) reconstructed from the expansion.
  double relative_amplitude(double x, double y) const;
};

/// 28 up to g = 200, 36 above.
int default_n_max(double g) noexcept;

/// Length-scale factor of the relative basis that tracks the localization of
/// the strongly interacting state: min(1, sqrt(3.95 / (x_cl + 2.28))).
double auto_basis_scale(const TrapParams& t) noexcept;

/// The k lowest eigenpairs, energies nondecreasing, largest coefficient > 0.
std::vector<TwoBodyState> eigensolve_sector(const TrapParams& t,
                                            const SectorLabel& sector,
                                            int n_max, int k,
                                            const SolverOptions& opts = {});

/// Harmonic-approximation level V_min + 2 sqrt(3)(n + 1/2)
/// + 2 (m + 1/2) sqrt(eps^2 - 1); requires eps > 1 and g > 0.
double harmonic_energy(int n, int m, const TrapParams& t);

struct SpectrumRow {
  double g = 0.0;
  double epsilon = 1.0;
  SectorLabel sector;
  int level = 0;
  double e_rel = 0.0;
  double gap = 0.0;  // e_rel minus the lowest e_rel over all requested sectors
};

struct SpectrumTable {
  std::vector<SpectrumRow> rows;
};

/// Relative energies over a g grid. n_max <= 0 selects default_n_max(g).
/// Grid points are computed concurrently; rows come out ordered by
/// (g, sector, level).
SpectrumTable spectrum_sweep(const std::vector<double>& g_grid, double epsilon,
                             const std::vector<SectorLabel>& sectors,
                             int n_max, int k, const SolverOptions& opts = {},
                             int jobs = 1);

/// n points evenly spaced in ln g between g_min and g_max.
std::vector<double> log_grid(double g_min, double g_max, int n);

}  // namespace anisodot
