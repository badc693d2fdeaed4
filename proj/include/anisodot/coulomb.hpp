// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file coulomb.hpp
 * @brief Coulomb matrix elements and relative-motion Hamiltonian blocks.
 *
 * The relative basis is phi_nx(x) phi_ny(y) with x scale b and y scale
 * b sqrt(eps). At b = 1 the oscillator part -Lap + x^2 + eps^2 y^2 is
 * diagonal. Matrix elements of 1/r use
 *
 *   1/r = (2/sqrt(pi)) int_0^inf e^{-u^2 r^2} du,
 *
 * which factorizes the integrand into two 1D damped overlaps. The outer
 * integral is mapped by u = tan(theta) onto [0, pi/2) and evaluated with
 * Gauss-Legendre; the half-order rule provides the error estimate.
 */

#pragma once

#include <anisodot/execution.hpp>
#include <anisodot/model.hpp>

#include <Eigen/Dense>

#include <vector>

namespace anisodot {

struct BasisIndex2D {
  int nx = 0;
  int ny = 0;

  friend bool operator==(const BasisIndex2D&, const BasisIndex2D&) = default;
};

/// Product functions of one parity sector with nx + ny <= cutoff, ordered by
/// (nx + ny, nx).
struct SectorBasis {
  SectorLabel sector;
  int cutoff = 0;
  double scale = 1.0;
  std::vector<BasisIndex2D> members;

  static SectorBasis build(const SectorLabel& sector, int n_max,
                           double scale = 1.0);

  std::size_t size() const noexcept { return members.size(); }
};

struct QuadratureOrders {
  int outer = 96;  // Gauss-Legendre points in theta
  int inner = 0;   // Gauss-Hermite points per overlap; 0 selects the exact order
};

inline constexpr double kCoulombTolerance = 1e-10;

/// <a| 1/sqrt(x^2 + y^2) |b> in the relative basis of the given scale.
double coulomb_element(const BasisIndex2D& a, const BasisIndex2D& b,
                       double epsilon, const QuadratureOrders& quad = {},
                       double scale = 1.0);

struct CoulombMatrix {
  Eigen::MatrixXd matrix;
  double error_estimate = 0.0;  // max |V_K - V_{K/2}| over entries
};

/// Coulomb matrix over a sector basis; throws AccuracyError above tolerance.
CoulombMatrix coulomb_matrix(const SectorBasis& basis, double epsilon,
                             const QuadratureOrders& quad = {},
                             Execution exec = Execution::parallel);

/// Oscillator part -Lap + x^2 + eps^2 y^2 (diagonal when scale == 1).
Eigen::MatrixXd oscillator_matrix(const SectorBasis& basis, double epsilon);

/// H = D + g Vc, symmetric.
Eigen::MatrixXd assemble_relative_hamiltonian(
    const TrapParams& t, const SectorBasis& basis,
    const QuadratureOrders& quad = {}, Execution exec = Execution::parallel);

}  // namespace anisodot
