// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file model.hpp
 * @brief Parameterization of two electrons in an anisotropic 2D harmonic trap.
 *
 * In scaled units (lengths in sqrt(2 hbar / (m* omega_x)), energies in
 * hbar omega_x / 2) the Hamiltonian reads
 *
 *   H = sum_i [ -1/2 Lap_i + 2 x_i^2 + 2 eps^2 y_i^2 ] + g / |r_2 - r_1|
 *
 * and separates into a center-of-mass oscillator and the relative problem
 * H_rel = -Lap + x^2 + eps^2 y^2 + g / r.
 */

#pragma once

#include <string>

namespace anisodot {

struct PhysicalParams {
  double effective_mass = 1.0;
  double dielectric = 1.0;
  double omega_x = 1.0;
  double omega_y = 1.0;
  double elementary_charge = 1.0;
  double hbar = 1.0;
};

/// Dimensionless coupling g >= 0 and anisotropy epsilon = omega_y / omega_x.
struct TrapParams {
  double g = 0.0;
  double epsilon = 1.0;

  void validate() const;
};

enum class Parity { even = 0, odd = 1 };
enum class SpinCharacter { singlet, triplet };

/// Symmetry sector of the relative wavefunction plus the spin projection.
///
/// Parity pairs (even,even) and (odd,odd) are spatially symmetric and carry a
/// singlet; mixed pairs are antisymmetric and carry a triplet.
class SectorLabel {
 public:
  SectorLabel() = default;
  SectorLabel(Parity x, Parity y, int spin_projection = 0);

  /// Parses "ee", "eo", "oe", "oo" optionally followed by ":+1" / ":-1".
  static SectorLabel parse(const std::string& text);

  Parity x_parity() const noexcept { return x_; }
  Parity y_parity() const noexcept { return y_; }
  int spin_projection() const noexcept { return sz_; }
  SpinCharacter spin_character() const noexcept;
  bool spatially_symmetric() const noexcept { return x_ == y_; }

  std::string name() const;

  friend bool operator==(const SectorLabel&, const SectorLabel&) = default;
  friend bool operator<(const SectorLabel& a, const SectorLabel& b) {
    return a.name() < b.name();
  }

 private:
  Parity x_ = Parity::even;
  Parity y_ = Parity::even;
  int sz_ = 0;
};

struct ClassicalGeometry {
  double x_cl = 0.0;   // (g/2)^(1/3)
  double v_min = 0.0;  // x_cl^2 + g / x_cl = 3 (g/2)^(2/3)
};

TrapParams physical_to_dimensionless(const PhysicalParams& p);

ClassicalGeometry classical_geometry(const TrapParams& t);

/// Relative potential x^2 + eps^2 y^2 + g/r.
double relative_potential(const TrapParams& t, double x, double y);

/// Slater rank from the number of nonvanishing spatial RDM eigenvalues.
int slater_rank_rule(const SectorLabel& sector, int nonzero_spatial_eigs);

/// Result of mapping epsilon < 1 onto the equivalent epsilon >= 1 problem.
struct CanonicalTrap {
  TrapParams trap;
  bool axes_swapped = false;
  /// Multiply canonical scaled energies by this to recover the original units.
  double energy_factor = 1.0;
};

/// Swaps x and y when epsilon < 1: (g, eps) -> (g eps^(-1/2), 1/eps).
CanonicalTrap canonicalize(const TrapParams& t);

/// Converts a scaled energy to physical units, E_phys = E hbar omega_x / 2.
double to_physical_energy(double scaled_energy, const PhysicalParams& p);

}  // namespace anisodot
