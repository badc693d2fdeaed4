// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file oracles.hpp
 * @brief Test-side reference implementations that share no code with the
 *        library: special-function Hermite functions, composite quadrature on
 *        plain grids and closed-form Gaussian integrals.
 */
#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

/// sqrt(s) H_n(s x) e^{-(s x)^2 / 2} / sqrt(2^n n! sqrt(pi)) via std::hermite.
inline double ho(int n, double s, double x) {
  const double y = s * x;
  const double log_norm =
      0.5 * (n * std::log(2.0) + std::lgamma(n + 1.0) + 0.5 * std::log(kPi));
  return std::sqrt(s) * std::hermite(static_cast<unsigned>(n), y) *
         std::exp(-0.5 * y * y - log_norm);
}

/// Composite Simpson rule on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Gauss-Legendre nodes on [-1, 1] by bisection-free Newton from cosines;
/// kept here so the oracle does not depend on the library rule.
inline void legendre_rule(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

/// <a|1/r|b> for product oscillator functions, by polar quadrature: the r
/// Jacobian cancels the Coulomb singularity, leaving a smooth integrand.
inline double coulomb_polar(int ax, int ay, int bx, int by, double eps,
                            double scale, int nr = 160, int nt = 192) {
  const double sx = scale, sy = scale * std::sqrt(eps);
  const double rmax = 14.0 / std::min(sx, sy);
  std::vector<double> x, w;
  legendre_rule(nr, x, w);
  double total = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double r = 0.5 * rmax * (x[i] + 1.0);
    double ang = 0.0;
    for (int j = 0; j < nt; ++j) {
      const double t = 2.0 * kPi * (j + 0.5) / nt;
      const double px = r * std::cos(t), py = r * std::sin(t);
      ang += ho(ax, sx, px) * ho(ay, sy, py) * ho(bx, sx, px) * ho(by, sy, py);
    }
    total += 0.5 * rmax * w[i] * ang * 2.0 * kPi / nt;
  }
  return total;
}

}  // namespace oracle
