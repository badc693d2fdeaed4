// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file ho_basis.hpp
 * @brief Normalized 1D harmonic-oscillator functions and quadrature rules.
 *
 * A basis function of scale s is phi_n(x) = sqrt(s) psi_n(s x) where psi_n is
 * the L2-normalized Hermite function e^{-y^2/2} H_n(y) / sqrt(2^n n! sqrt(pi)).
 */

#pragma once

#include <Eigen/Dense>

#include <vector>

namespace anisodot {

enum class QuadratureKind { gauss_hermite, gauss_legendre, uniform };

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  QuadratureKind kind = QuadratureKind::gauss_legendre;

  std::size_t size() const noexcept { return nodes.size(); }
};

inline constexpr int kMaxGaussHermiteOrder = 400;
inline constexpr int kMaxGaussLegendreOrder = 4096;

/// Nodes and weights for the weight function e^{-x^2} on the real line.
QuadratureRule gauss_hermite(int order);

/// Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int order, double a = -1.0, double b = 1.0);

/// N equally spaced nodes on [-L, L] with equal weights 2L/(N-1).
QuadratureRule uniform_rule(double half_width, int points);

/// L2-normalized oscillator function phi_n of the given scale at x.
double eval_ho(int n, double scale, double x);

/// phi_0 .. phi_nmax at x, by the damped function-level recurrence.
std::vector<double> eval_ho_all(int nmax, double scale, double x);

/// Polynomial parts p_n(y) with psi_n(y) = p_n(y) e^{-y^2/2}, n = 0..nmax.
///
/// Used with Gauss-Hermite weights, where the Gaussian is carried by the rule.
void hermite_poly_normalized(int nmax, double y, double* out);

/// Integral of phi_m phi_n e^{-u^2 x^2} over the real line.
double gaussian_damped_overlap(int m, int n, double scale, double u);

/// Full (nmax+1)^2 table of gaussian_damped_overlap for a fixed u.
Eigen::MatrixXd gaussian_damped_overlap_table(int nmax, double scale,
                                              double u);

}  // namespace anisodot
