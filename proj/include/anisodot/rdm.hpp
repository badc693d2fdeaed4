// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file rdm.hpp
 * @brief One-particle coefficient matrices, natural-orbital occupancies and
 *        entanglement entropies of two-electron states.
 *
 * The spatial two-particle amplitude is expanded as
 *   psi(r1, r2) = sum_ab C_ab chi_a(r1) chi_b(r2)
 * over orthonormal single-particle oscillator functions chi matched to the
 * one-particle confinement 2 x^2 + 2 eps^2 y^2. The spatial RDM is C C^T, so
 * occupancies are the squared singular values of C.
 */

#pragma once

#include <anisodot/coulomb.hpp>
#include <anisodot/execution.hpp>
#include <anisodot/model.hpp>
#include <anisodot/rel_solver.hpp>

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace anisodot {

enum class Symmetry { symmetric, antisymmetric };

struct CoefficientMatrix {
  Eigen::MatrixXd matrix;
  Symmetry symmetry = Symmetry::symmetric;
  double completeness = 1.0;  // sum of C_ab^2
  /// Single-particle labels of the rows/columns; empty for plain matrices.
  std::vector<BasisIndex2D> orbitals;
};

inline constexpr double kCompletenessGate = 0.999;
inline constexpr double kSymmetryTolerance = 1e-10;
inline constexpr double kPairTolerance = 1e-8;
inline constexpr double kNormalizationTolerance = 1e-6;
inline constexpr double kZeroOccupancy = 1e-6;  // relative to lambda_0

/// Cross-overlap tensor T[a][c][n] = <chi_a chi_c | Phi_0 phi_n> for one
/// Cartesian direction: single-particle scale s, CM ground state of scale
/// cm_scale, relative oscillator of scale rel_scale. Evaluated by tensorized
/// Gauss-Hermite quadrature in the (CM, relative) coordinates.
std::vector<Eigen::MatrixXd> cross_overlap_tensor(int sp_max, int rel_max,
                                                  double sp_scale,
                                                  double cm_scale,
                                                  double rel_scale);

/// Single-particle 2D labels with ax + ay <= sp_cutoff, ordered like
/// SectorBasis members.
std::vector<BasisIndex2D> single_particle_orbitals(int sp_cutoff);

/// C for a state with the CM oscillator in its ground state. Throws
/// TruncationError when the captured norm is below the completeness gate.
CoefficientMatrix single_particle_coefficients(
    const TwoBodyState& state, int sp_cutoff,
    Execution exec = Execution::parallel);

/// As above without the completeness gate (used by convergence ladders).
CoefficientMatrix single_particle_coefficients_ungated(
    const TwoBodyState& state, int sp_cutoff,
    Execution exec = Execution::parallel);

struct SchmidtSpectrum {
  std::vector<double> occupancies;   // nonincreasing
  std::vector<double> coefficients;  // signed k_l, symmetric case only
  bool paired = false;               // antisymmetric: doubly degenerate

  double trace() const;
  double purity() const;  // sum lambda^2
  /// Copy rescaled so that the occupancies sum to one.
  SchmidtSpectrum renormalized() const;
  /// Number of occupancies above kZeroOccupancy * lambda_0.
  int nonzero_count(double relative_cutoff = kZeroOccupancy) const;
  /// Largest |lambda_{2i} - lambda_{2i+1}| over sorted pairs.
  double pairing_defect() const;
};

/// Builds a spectrum from explicit occupancies (sorted on entry).
SchmidtSpectrum spectrum_from_occupancies(std::vector<double> occupancies,
                                          bool paired = false);

/// Squared singular values of C; signed eigenvalues for symmetric C.
SchmidtSpectrum schmidt_spectrum(const CoefficientMatrix& c);

/// 1 bit for s_z = 0 states, 0 otherwise.
double spin_entropy(const SectorLabel& sector) noexcept;
/// Purity of the spin RDM: 1/2 for s_z = 0, 1 for s_z = +-1.
double spin_purity(const SectorLabel& sector) noexcept;

/// S = S_spin - sum lambda log2 lambda, in bits.
double vn_entropy(const SchmidtSpectrum& spec, const SectorLabel& sector);

/// L = 1 - w_spin sum lambda^2.
double linear_entropy(const SchmidtSpectrum& spec, const SectorLabel& sector);

/// L = 1 - w_spin Tr[(C C^T)^2] / (Tr C C^T)^2 evaluated from C directly.
double linear_entropy_from_coefficients(const CoefficientMatrix& c,
                                        const SectorLabel& sector);

struct EntanglementResult {
  SchmidtSpectrum spectrum;  // renormalized
  double completeness = 1.0;
  double vn = 0.0;
  double linear = 0.0;
  int slater_rank = 0;
};

/// Coefficients, occupancies, entropies and Slater rank of one state.
EntanglementResult analyze_entanglement(const TwoBodyState& state,
                                        int sp_cutoff,
                                        Execution exec = Execution::parallel);

}  // namespace anisodot
