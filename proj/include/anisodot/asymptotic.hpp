// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file asymptotic.hpp
 * @brief Strong-coupling limit of the lowest singlet/triplet pair.
 *
 * In the harmonic approximation the spatial wavefunctions factorize into
 * h(y1, y2) [q(x1, x2) +- q(x2, x1)], with Gaussian two-point kernels
 *
 *   K(z, z') = exp(-1/2 [alpha (z - z')^2 + beta (z + z')^2]).
 *
 * The x kernel (shifted to the classical equilibrium points) has
 * alpha = sqrt(3), beta = 1; the y kernel has alpha = sqrt(eps^2 - 1),
 * beta = eps. Their Schmidt coefficients k_n follow from the homogeneous
 * integral equation int K(z, z') v(z') dz' = k v(z), solved here by the
 * Nystrom method on a uniform grid. A Gaussian kernel also admits the
 * closed-form (Mehler) decomposition k_n = k_0 z^n with
 * z = (sqrt(alpha) - sqrt(beta)) / (sqrt(alpha) + sqrt(beta)), which serves
 * both as an independent check and as a fast alternative mode.
 */

#pragma once

#include <anisodot/execution.hpp>
#include <anisodot/model.hpp>

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace anisodot {

struct KernelSpec {
  double alpha = 1.0;
  double beta = 1.0;

  static KernelSpec q_tilde();
  static KernelSpec h(double epsilon);

  void validate() const;
  double operator()(double z, double zp) const noexcept;
  /// Largest kernel value along the boundary row z = +-L.
  double boundary_max(double half_width) const noexcept;
};

struct NystromGrid {
  double half_width = 6.0;
  int points = 400;

  double spacing() const noexcept { return 2.0 * half_width / (points - 1); }
  std::vector<double> nodes() const;
};

inline constexpr double kCoverageThreshold = 1e-12;

/// True when the kernel is below kCoverageThreshold everywhere on the
/// boundary rows, relative to its maximum of 1.
bool covers(const KernelSpec& spec, const NystromGrid& grid) noexcept;

/// Starts from L = 6 max(alpha, beta)^(-1/4) and widens until covered.
NystromGrid default_grid(const KernelSpec& spec, int points = 400);

/// Discretized kernel A_rs = K(z_r, z_s) * dz.
Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const NystromGrid& grid,
                              Execution exec = Execution::parallel);

struct NystromResult {
  std::vector<double> k;          // ordered by decreasing |k|
  Eigen::MatrixXd orbitals;       // points x count, sum dz v^2 = 1
  std::vector<double> nodes;
};

/// The count largest-|k| eigenpairs of the discretized kernel. Orbital signs
/// are fixed by making the largest-magnitude sample positive.
NystromResult nystrom_schmidt(const KernelSpec& spec, const NystromGrid& grid,
                              int count, Execution exec = Execution::parallel);

/// z = (sqrt(alpha) - sqrt(beta)) / (sqrt(alpha) + sqrt(beta)).
double mehler_ratio(const KernelSpec& spec);

/// Exact k_n = k_0 z^n, with k_0 fixed by sum k_n^2 = pi / (2 sqrt(alpha beta)).
std::vector<double> mehler_coefficients(const KernelSpec& spec, int count);

enum class AsymptoticMode { nystrom, analytic };

struct AsymptoticOptions {
  AsymptoticMode mode = AsymptoticMode::nystrom;
  int points = 400;          // Nystrom grid size
  double half_width = 0.0;   // 0 selects default_grid
};

struct AsymptoticLevel {
  int n = 0;  // x-kernel index
  int m = 0;  // y-kernel index
  double occupancy = 0.0;
};

struct AsymptoticSpectrum {
  double epsilon = 0.0;
  std::vector<double> kx;
  std::vector<double> ky;
  /// Distinct occupancies, nonincreasing; each carries multiplicity 2
  /// (the u and v orbitals), which is never expanded here.
  std::vector<AsymptoticLevel> levels;
  double prefactor = 0.0;       // 2 3^(1/4) eps^(1/2) (eps^2-1)^(1/4) / pi^2
  double norm_constant = 0.0;   // C(g -> inf, eps)
  double captured = 0.0;        // 2 sum lambda

  /// Full spatial RDM spectrum with the doubling written out.
  std::vector<double> doubled() const;
};

inline constexpr double kMinAnisotropyGap = 1e-6;
inline constexpr double kAsymptoticNormTolerance = 1e-6;

/// lambda_nm = prefactor (kx_n ky_m)^2 for n < n_cut, m < m_cut.
AsymptoticSpectrum asymptotic_occupancies(double epsilon, int n_cut, int m_cut,
                                          const AsymptoticOptions& opts = {});

/// 1 - 3^(1/4) (eps^2-1)^(1/4) sqrt(eps (1 - sqrt(3)/2)) / (eps + sqrt(eps^2-1)).
double asymptotic_linear_entropy(double epsilon);

/// 1 - (1/4) (1-qx)(1-qy) / ((1+qx)(1+qy)) with q = z^2 of each kernel.
double asymptotic_linear_entropy_spectrum(double epsilon);

struct VnEntropyResult {
  double value = 0.0;
  double tail = 0.0;            // probability not captured by the cutoffs
  double error_estimate = 0.0;  // entropy bound of the truncated tail
  int n_cut = 0;
  int m_cut = 0;
};

/// Singlet vN entropy (spin bit included) of the doubled product spectrum.
/// Cutoffs grow until the uncaptured probability is below tail_tolerance.
VnEntropyResult asymptotic_vn_entropy(double epsilon,
                                      double tail_tolerance = 1e-10,
                                      const AsymptoticOptions& opts = {});

/// C_+-(g, eps) including the finite overlap correction.
double asymptotic_norm_constant(const TrapParams& t, int sign);

/// Normalized psi_+-(r1, r2) in the harmonic approximation.
double asymptotic_wavefunction(const TrapParams& t,
                               const std::array<double, 2>& r1,
                               const std::array<double, 2>& r2, int sign);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y = slope x + intercept.
LinearFit least_squares_line(const std::vector<double>& x,
                             const std::vector<double>& y);

}  // namespace anisodot
