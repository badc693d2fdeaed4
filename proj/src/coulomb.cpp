// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

#include <anisodot/coulomb.hpp>
#include <anisodot/errors.hpp>
#include <anisodot/ho_basis.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace anisodot {

namespace {

// Damped-overlap tables for every outer node, x and y directions.
struct OuterTables {
  std::vector<double> weights;  // GL weight * sec^2(theta) * 2/sqrt(pi)
  std::vector<Eigen::MatrixXd> x, y;
};

Eigen::MatrixXd damped_table(int nmax, int inner, const QuadratureRule& gh,
                             double scale, double u) {
  if (inner == 0) return gaussian_damped_overlap_table(nmax, scale, u);
  const double w = u / scale;
  const double c = std::sqrt(1.0 + w * w);
  const int k = static_cast<int>(gh.size());
  Eigen::MatrixXd p(nmax + 1, k);
  for (int i = 0; i < k; ++i)
    hermite_poly_normalized(nmax, gh.nodes[i] / c, p.col(i).data());
  Eigen::VectorXd wts(k);
  for (int i = 0; i < k; ++i) wts[i] = gh.weights[i] / c;
  Eigen::MatrixXd t = p * wts.asDiagonal() * p.transpose();
  for (int m = 0; m <= nmax; ++m)
    for (int n = 0; n <= nmax; ++n)
      if ((m + n) % 2) t(m, n) = 0.0;
  return t;
}

OuterTables outer_tables(int outer, int inner, int nx_max, int ny_max,
                         double sx, double sy) {
  const QuadratureRule gl =
      gauss_legendre(outer, 0.0, std::numbers::pi / 2.0);
  QuadratureRule gh;
  if (inner > 0) gh = gauss_hermite(inner);
  OuterTables t;
  t.weights.resize(gl.size());
  t.x.resize(gl.size());
  t.y.resize(gl.size());
  const double pref = 2.0 / std::sqrt(std::numbers::pi);
  for (std::size_t k = 0; k < gl.size(); ++k) {
    const double th = gl.nodes[k];
    const double u = std::tan(th);
    const double c = std::cos(th);
    t.weights[k] = pref * gl.weights[k] / (c * c);
    t.x[k] = damped_table(nx_max, inner, gh, sx, u);
    t.y[k] = damped_table(ny_max, inner, gh, sy, u);
  }
  return t;
}

double contract(const OuterTables& t, const BasisIndex2D& a,
                const BasisIndex2D& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < t.weights.size(); ++k)
    s += t.weights[k] * t.x[k](a.nx, b.nx) * t.y[k](a.ny, b.ny);
  return s;
}

bool parity_allowed(const BasisIndex2D& a, const BasisIndex2D& b) {
  return (a.nx + b.nx) % 2 == 0 && (a.ny + b.ny) % 2 == 0;
}

void check_quad(const QuadratureOrders& q) {
  if (q.outer < 2) throw ConfigurationError("outer quadrature order must be >= 2");
  if (q.inner < 0) throw ConfigurationError("inner quadrature order must be >= 0");
}

// Fills the upper triangle entry by entry; every entry is an independent
// serial sum, so the parallel path is bit-identical to the serial one.
Eigen::MatrixXd fill(const OuterTables& t, const SectorBasis& basis,
                     Execution exec) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
  const auto& m = basis.members;
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j)
        if (parity_allowed(m[i], m[j])) v(i, j) = contract(t, m[i], m[j]);
  } else {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j)
        if (parity_allowed(m[i], m[j])) v(i, j) = contract(t, m[i], m[j]);
  }
  v.triangularView<Eigen::StrictlyLower>() = v.transpose();
  return v;
}

}  // namespace

SectorBasis SectorBasis::build(const SectorLabel& sector, int n_max,
                               double scale) {
  if (n_max < 0) throw ConfigurationError("basis cutoff must be >= 0");
  if (!(scale > 0.0)) throw ConfigurationError("basis scale must be positive");
  SectorBasis b;
  b.sector = sector;
  b.cutoff = n_max;
  b.scale = scale;
  const int px = static_cast<int>(sector.x_parity());
  const int py = static_cast<int>(sector.y_parity());
  for (int total = 0; total <= n_max; ++total)
    for (int nx = 0; nx <= total; ++nx) {
      const int ny = total - nx;
      if (nx % 2 == px && ny % 2 == py) b.members.push_back({nx, ny});
    }
  if (b.members.empty())
    throw ConfigurationError("cutoff " + std::to_string(n_max) +
                             " leaves sector " + sector.name() + " empty");
  return b;
}

double coulomb_element(const BasisIndex2D& a, const BasisIndex2D& b,
                       double epsilon, const QuadratureOrders& quad,
                       double scale) {
  check_quad(quad);
  if (a.nx < 0 || a.ny < 0 || b.nx < 0 || b.ny < 0)
    throw DomainError("basis indices must be >= 0");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (!parity_allowed(a, b)) return 0.0;
  const int nxm = std::max(a.nx, b.nx), nym = std::max(a.ny, b.ny);
  const double sy = scale * std::sqrt(epsilon);
  const OuterTables full =
      outer_tables(quad.outer, quad.inner, nxm, nym, scale, sy);
  const OuterTables half =
      outer_tables(std::max(quad.outer / 2, 1), quad.inner, nxm, nym, scale, sy);
  const double v = contract(full, a, b);
  const double est = std::abs(v - contract(half, a, b));
  if (est > kCoulombTolerance) {
    std::ostringstream os;
    os << "Coulomb element outer integral unconverged (estimate " << est
       << "); raise the outer quadrature order";
    throw AccuracyError(os.str(), est);
  }
  return v;
}

CoulombMatrix coulomb_matrix(const SectorBasis& basis, double epsilon,
                             const QuadratureOrders& quad, Execution exec) {
  check_quad(quad);
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  int nxm = 0, nym = 0;
  for (const auto& m : basis.members) {
    nxm = std::max(nxm, m.nx);
    nym = std::max(nym, m.ny);
  }
  const double sx = basis.scale, sy = basis.scale * std::sqrt(epsilon);
  CoulombMatrix out;
  out.matrix = fill(outer_tables(quad.outer, quad.inner, nxm, nym, sx, sy),
                    basis, exec);
  const Eigen::MatrixXd half = fill(
      outer_tables(std::max(quad.outer / 2, 1), quad.inner, nxm, nym, sx, sy),
      basis, exec);
  out.error_estimate = (out.matrix - half).cwiseAbs().maxCoeff();
  if (out.error_estimate > kCoulombTolerance) {
    std::ostringstream os;
    os << "Coulomb matrix outer integral unconverged (estimate "
       << out.error_estimate << " > " << kCoulombTolerance
       << "); raise the outer quadrature order";
    throw AccuracyError(os.str(), out.error_estimate);
  }
  return out;
}

Eigen::MatrixXd oscillator_matrix(const SectorBasis& basis, double epsilon) {
  // -d^2/dx^2 + x^2 in a scale-b basis couples n and n +- 2.
  const double b2 = basis.scale * basis.scale;
  auto h1 = [&](int m, int n) {
    if (m == n) return (n + 0.5) * (b2 + 1.0 / b2);
    if (std::abs(m - n) == 2) {
      const int k = std::min(m, n);
      return 0.5 * std::sqrt((k + 1.0) * (k + 2.0)) * (1.0 / b2 - b2);
    }
    return 0.0;
  };
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& a = basis.members[i];
      const auto& b = basis.members[j];
      double v = 0.0;
      if (a.ny == b.ny) v += h1(a.nx, b.nx);
      if (a.nx == b.nx) v += epsilon * h1(a.ny, b.ny);
      d(i, j) = v;
    }
  return d;
}

Eigen::MatrixXd assemble_relative_hamiltonian(const TrapParams& t,
                                              const SectorBasis& basis,
                                              const QuadratureOrders& quad,
                                              Execution exec) {
  t.validate();
  if (basis.members.empty()) throw ConfigurationError("empty sector basis");
  Eigen::MatrixXd h = oscillator_matrix(basis, t.epsilon);
  if (t.g != 0.0) h += t.g * coulomb_matrix(basis, t.epsilon, quad, exec).matrix;
  return h;
}

}  // namespace anisodot
