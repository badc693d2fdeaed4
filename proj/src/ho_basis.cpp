// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

#include <anisodot/errors.hpp>
#include <anisodot/ho_basis.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace anisodot {

namespace {

constexpr double kPiQuarter = 0.7511255444649425;  // pi^{-1/4}

// Orthonormal Hermite polynomial p_n and p_{n-1} (weight e^{-x^2}).
void hermite_pair(int n, double x, double& pn, double& pnm1) {
  double p0 = kPiQuarter, p1 = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double p2 = p1;
    p1 = p0;
    p0 = x * std::sqrt(2.0 / j) * p1 - std::sqrt((j - 1.0) / j) * p2;
  }
  pn = p0;
  pnm1 = p1;
}

}  // namespace

QuadratureRule gauss_hermite(int order) {
  if (order < 1)
    throw ConfigurationError("Gauss-Hermite order must be >= 1");
  if (order > kMaxGaussHermiteOrder)
    throw ConfigurationError("Gauss-Hermite order " + std::to_string(order) +
                             " exceeds cap " +
                             std::to_string(kMaxGaussHermiteOrder));
  const int n = order;
  std::vector<double> x(n), w(n);
  const int m = (n + 1) / 2;
  double z = 0.0;
  // Newton iteration from asymptotic initial guesses, largest root first.
  for (int i = 0; i < m; ++i) {
    if (i == 0) z = std::sqrt(2.0 * n + 1) - 1.85575 * std::pow(2.0 * n + 1, -1.0 / 6);
    else if (i == 1) z -= 1.14 * std::pow(n, 0.426) / z;
    else if (i == 2) z = 1.86 * z - 0.86 * x[0];
    else if (i == 3) z = 1.91 * z - 0.91 * x[1];
    else z = 2.0 * z - x[i - 2];
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double pn, pnm1;
      hermite_pair(n, z, pn, pnm1);
      pp = std::sqrt(2.0 * n) * pnm1;
      const double dz = pn / pp;
      z -= dz;
      if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    double pn, pnm1;
    hermite_pair(n, z, pn, pnm1);
    pp = std::sqrt(2.0 * n) * pnm1;
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = w[n - 1 - i] = 2.0 / (pp * pp);
  }
  if (n % 2 == 1) x[m - 1] = 0.0;
  QuadratureRule r;
  r.kind = QuadratureKind::gauss_hermite;
  r.nodes.assign(x.rbegin(), x.rend());
  r.weights.assign(w.rbegin(), w.rend());
  return r;
}

QuadratureRule gauss_legendre(int order, double a, double b) {
  if (order < 1)
    throw ConfigurationError("Gauss-Legendre order must be >= 1");
  if (order > kMaxGaussLegendreOrder)
    throw ConfigurationError("Gauss-Legendre order exceeds cap");
  const int n = order;
  QuadratureRule r;
  r.kind = QuadratureKind::gauss_legendre;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) <= 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
    }
    if (n % 2 == 1 && i == (n - 1) / 2) z = 0.0;
    const double wt = 2.0 / ((1.0 - z * z) * dp * dp);
    r.nodes[i] = mid - half * z;
    r.nodes[n - 1 - i] = mid + half * z;
    r.weights[i] = r.weights[n - 1 - i] = half * wt;
  }
  return r;
}

QuadratureRule uniform_rule(double half_width, int points) {
  if (!(half_width > 0.0))
    throw ConfigurationError("uniform rule needs a positive half width");
  if (points < 2)
    throw ConfigurationError("uniform rule needs at least two points");
  QuadratureRule r;
  r.kind = QuadratureKind::uniform;
  const double h = 2.0 * half_width / (points - 1);
  r.nodes.resize(points);
  r.weights.assign(points, h);
  for (int i = 0; i < points; ++i) r.nodes[i] = -half_width + h * i;
  return r;
}

std::vector<double> eval_ho_all(int nmax, double scale, double x) {
  if (nmax < 0) throw DomainError("oscillator index must be >= 0");
  std::vector<double> out(nmax + 1);
  const double y = scale * x;
  const double norm = std::sqrt(scale);
  // The Gaussian is applied to psi_0; the three-term recurrence then never
  // sees the unbounded polynomial growth of H_n.
  double p1 = 0.0;
  double p0 = kPiQuarter * std::exp(-0.5 * y * y);
  out[0] = norm * p0;
  for (int j = 1; j <= nmax; ++j) {
    const double p2 = p1;
    p1 = p0;
    p0 = y * std::sqrt(2.0 / j) * p1 - std::sqrt((j - 1.0) / j) * p2;
    out[j] = norm * p0;
  }
  return out;
}

double eval_ho(int n, double scale, double x) {
  return eval_ho_all(n, scale, x)[n];
}

void hermite_poly_normalized(int nmax, double y, double* out) {
  out[0] = kPiQuarter;
  if (nmax >= 1) out[1] = std::numbers::sqrt2 * y * kPiQuarter;
  for (int j = 1; j < nmax; ++j) {
    out[j + 1] = std::sqrt(2.0 / (j + 1)) * y * out[j] -
                 std::sqrt(static_cast<double>(j) / (j + 1)) * out[j - 1];
  }
}

Eigen::MatrixXd gaussian_damped_overlap_table(int nmax, double scale,
                                              double u) {
  if (nmax < 0) throw DomainError("oscillator index must be >= 0");
  if (!(scale > 0.0)) throw DomainError("basis scale must be positive");
  // In y = scale * x the integrand is p_m p_n e^{-(1 + w^2) y^2}, w = u/scale.
  // Substituting t = sqrt(1 + w^2) y leaves a polynomial of degree 2 nmax
  // against e^{-t^2}, which the rule below integrates exactly.
  const double w = u / scale;
  const double c = std::sqrt(1.0 + w * w);
  const QuadratureRule rule = gauss_hermite(nmax + 1);
  const int k = static_cast<int>(rule.size());
  Eigen::MatrixXd p(nmax + 1, k);
  for (int i = 0; i < k; ++i)
    hermite_poly_normalized(nmax, rule.nodes[i] / c, p.col(i).data());
  Eigen::VectorXd wts(k);
  for (int i = 0; i < k; ++i) wts[i] = rule.weights[i] / c;
  Eigen::MatrixXd table = p * wts.asDiagonal() * p.transpose();
  // Odd products vanish identically; clear the rounding residue.
  for (int m = 0; m <= nmax; ++m)
    for (int n = 0; n <= nmax; ++n)
      if ((m + n) % 2) table(m, n) = 0.0;
  return table;
}

double gaussian_damped_overlap(int m, int n, double scale, double u) {
  if (m < 0 || n < 0) throw DomainError("oscillator index must be >= 0");
  if ((m + n) % 2) return 0.0;
  return gaussian_damped_overlap_table(std::max(m, n), scale, u)(m, n);
}

}  // namespace anisodot
