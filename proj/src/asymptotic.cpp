// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

#include <anisodot/asymptotic.hpp>
#include <anisodot/errors.hpp>
#include <anisodot/rdm.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace anisodot {

namespace {

constexpr double kPi = std::numbers::pi;

void check_epsilon(double epsilon) {
  if (!std::isfinite(epsilon))
    throw DomainError("epsilon must be finite");
  if (epsilon <= 1.0)
    throw DomainError("the harmonic approximation requires epsilon > 1");
}

}  // namespace

KernelSpec KernelSpec::q_tilde() { return {std::sqrt(3.0), 1.0}; }

KernelSpec KernelSpec::h(double epsilon) {
  check_epsilon(epsilon);
  return {std::sqrt(epsilon * epsilon - 1.0), epsilon};
}

void KernelSpec::validate() const {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw DomainError("kernel coefficients alpha and beta must be positive");
}

double KernelSpec::operator()(double z, double zp) const noexcept {
  const double d = z - zp, s = z + zp;
  return std::exp(-0.5 * (alpha * d * d + beta * s * s));
}

double KernelSpec::boundary_max(double half_width) const noexcept {
  // max over z' of K(L, z') is reached at z' = L (alpha - beta)/(alpha + beta)
  return std::exp(-2.0 * alpha * beta * half_width * half_width /
                  (alpha + beta));
}

std::vector<double> NystromGrid::nodes() const {
  std::vector<double> z(points);
  const double h = spacing();
  for (int i = 0; i < points; ++i) z[i] = -half_width + h * i;
  return z;
}

bool covers(const KernelSpec& spec, const NystromGrid& grid) noexcept {
  return spec.boundary_max(grid.half_width) < kCoverageThreshold;
}

NystromGrid default_grid(const KernelSpec& spec, int points) {
  spec.validate();
  NystromGrid g{6.0 * std::pow(std::max(spec.alpha, spec.beta), -0.25), points};
  while (!covers(spec, g)) g.half_width *= 1.25;
  return g;
}

Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const NystromGrid& grid,
                              Execution exec) {
  spec.validate();
  if (grid.points < 2) throw ConfigurationError("Nystrom grid needs >= 2 points");
  const std::vector<double> z = grid.nodes();
  const double h = grid.spacing();
  const auto n = static_cast<Eigen::Index>(z.size());
  Eigen::MatrixXd a(n, n);
  auto row = [&](Eigen::Index r) {
    for (Eigen::Index s = 0; s < n; ++s) a(r, s) = spec(z[r], z[s]) * h;
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for
    for (Eigen::Index r = 0; r < n; ++r) row(r);
  } else {
    for (Eigen::Index r = 0; r < n; ++r) row(r);
  }
  return a;
}

NystromResult nystrom_schmidt(const KernelSpec& spec, const NystromGrid& grid,
                              int count, Execution exec) {
  spec.validate();
  if (!covers(spec, grid)) {
    std::ostringstream os;
    os << "Nystrom grid half width " << grid.half_width
       << " does not cover the kernel (boundary value "
       << spec.boundary_max(grid.half_width)
       << "); use a wider half width, especially as epsilon -> 1+";
    throw GridError(os.str());
  }
  if (count < 1 || count > grid.points)
    throw ConfigurationError("eigenpair count must lie in [1, grid points]");
  const Eigen::MatrixXd a = kernel_matrix(spec, grid, exec);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success)
    throw NumericError("Nystrom eigensolver failed");
  std::vector<Eigen::Index> order(a.rows());
  std::iota(order.begin(), order.end(), 0);
  const auto& ev = es.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) {
    return std::abs(ev[i]) > std::abs(ev[j]);
  });
  NystromResult r;
  r.nodes = grid.nodes();
  r.orbitals.resize(a.rows(), count);
  const double inv_sqrt_h = 1.0 / std::sqrt(grid.spacing());
  for (int c = 0; c < count; ++c) {
    r.k.push_back(ev[order[c]]);
    Eigen::VectorXd v = es.eigenvectors().col(order[c]) * inv_sqrt_h;
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
    r.orbitals.col(c) = v;
  }
  return r;
}

double mehler_ratio(const KernelSpec& spec) {
  spec.validate();
  const double a = std::sqrt(spec.alpha), b = std::sqrt(spec.beta);
  return (a - b) / (a + b);
}

std::vector<double> mehler_coefficients(const KernelSpec& spec, int count) {
  if (count < 1) throw ConfigurationError("coefficient count must be >= 1");
  const double z = mehler_ratio(spec);
  // Hilbert-Schmidt norm of the kernel fixes k_0.
  const double hs = kPi / (2.0 * std::sqrt(spec.alpha * spec.beta));
  std::vector<double> k(count);
  k[0] = std::sqrt(hs * (1.0 - z * z));
  for (int n = 1; n < count; ++n) k[n] = k[n - 1] * z;
  return k;
}

std::vector<double> AsymptoticSpectrum::doubled() const {
  std::vector<double> out;
  out.reserve(2 * levels.size());
  for (const auto& l : levels) {
    out.push_back(l.occupancy);
    out.push_back(l.occupancy);
  }
  return out;
}

namespace {

std::vector<double> kernel_coefficients(const KernelSpec& spec, int count,
                                        const AsymptoticOptions& opts) {
  if (opts.mode == AsymptoticMode::analytic)
    return mehler_coefficients(spec, count);
  NystromGrid grid = default_grid(spec, opts.points);
  if (opts.half_width > 0.0) grid.half_width = opts.half_width;
  return nystrom_schmidt(spec, grid, std::min(count, grid.points)).k;
}

AsymptoticSpectrum build_spectrum(double epsilon, int n_cut, int m_cut,
                                  const AsymptoticOptions& opts) {
  check_epsilon(epsilon);
  if (epsilon < 1.0 + kMinAnisotropyGap) {
    std::ostringstream os;
    os << "epsilon = " << epsilon
       << " is too close to 1: as epsilon -> 1+ all asymptotic occupancies "
          "tend to zero with their sum fixed at 1/2, so no finite cutoff "
          "resolves the spectrum";
    throw DomainError(os.str());
  }
  if (n_cut < 1 || m_cut < 1) throw ConfigurationError("cutoffs must be >= 1");
  if (opts.mode == AsymptoticMode::nystrom &&
      (n_cut > opts.points || m_cut > opts.points))
    throw ConfigurationError("cutoffs exceed the Nystrom grid size");

  AsymptoticSpectrum s;
  s.epsilon = epsilon;
  s.kx = kernel_coefficients(KernelSpec::q_tilde(), n_cut, opts);
  s.ky = kernel_coefficients(KernelSpec::h(epsilon), m_cut, opts);
  const double e21 = epsilon * epsilon - 1.0;
  s.prefactor = 2.0 * std::pow(3.0, 0.25) * std::sqrt(epsilon) *
                std::pow(e21, 0.25) / (kPi * kPi);
  s.norm_constant = std::numbers::sqrt2 * std::pow(3.0, 0.125) *
                    std::pow(epsilon, 0.25) * std::pow(e21, 0.125) / kPi;
  for (int n = 0; n < static_cast<int>(s.kx.size()); ++n)
    for (int m = 0; m < static_cast<int>(s.ky.size()); ++m) {
      const double k = s.kx[n] * s.ky[m];
      s.levels.push_back({n, m, s.prefactor * k * k});
    }
  std::stable_sort(s.levels.begin(), s.levels.end(),
                   [](const auto& a, const auto& b) {
                     return a.occupancy > b.occupancy;
                   });
  double sum = 0.0;
  for (const auto& l : s.levels) sum += l.occupancy;
  s.captured = 2.0 * sum;
  return s;
}

}  // namespace

AsymptoticSpectrum asymptotic_occupancies(double epsilon, int n_cut, int m_cut,
                                          const AsymptoticOptions& opts) {
  AsymptoticSpectrum s = build_spectrum(epsilon, n_cut, m_cut, opts);
  if (std::abs(s.captured - 1.0) > kAsymptoticNormTolerance) {
    std::ostringstream os;
    os << "asymptotic occupancies sum to 2*sum(lambda) = " << s.captured
       << " at epsilon = " << epsilon
       << "; raise the cutoffs or widen the Nystrom grid";
    throw GridError(os.str());
  }
  return s;
}

double asymptotic_linear_entropy(double epsilon) {
  check_epsilon(epsilon);
  const double r = std::sqrt(epsilon * epsilon - 1.0);
  return 1.0 - std::pow(3.0, 0.25) * std::sqrt(r) *
                   std::sqrt(epsilon * (1.0 - std::sqrt(3.0) / 2.0)) /
                   (epsilon + r);
}

double asymptotic_linear_entropy_spectrum(double epsilon) {
  check_epsilon(epsilon);
  const double zx = mehler_ratio(KernelSpec::q_tilde());
  const double zy = mehler_ratio(KernelSpec::h(epsilon));
  const double qx = zx * zx, qy = zy * zy;
  return 1.0 - 0.25 * (1.0 - qx) * (1.0 - qy) / ((1.0 + qx) * (1.0 + qy));
}

VnEntropyResult asymptotic_vn_entropy(double epsilon, double tail_tolerance,
                                      const AsymptoticOptions& opts) {
  if (!(tail_tolerance > 0.0))
    throw ConfigurationError("tail tolerance must be positive");
  const int cap = opts.mode == AsymptoticMode::nystrom ? opts.points : 4096;
  int n_cut = 8, m_cut = 8;
  for (;;) {
    const AsymptoticSpectrum s = build_spectrum(epsilon, n_cut, m_cut, opts);
    const double tail = 1.0 - s.captured;
    if (tail < tail_tolerance) {
      const SectorLabel singlet(Parity::even, Parity::even, 0);
      VnEntropyResult r;
      r.value = vn_entropy(spectrum_from_occupancies(s.doubled(), true), singlet);
      r.tail = tail;
      r.n_cut = n_cut;
      r.m_cut = m_cut;
      const double t = std::max(std::abs(tail), 1e-300);
      const double lmin = std::max(s.levels.back().occupancy, 1e-300);
      r.error_estimate =
          t * (std::abs(std::log2(t)) + std::numbers::log2e +
               std::abs(std::log2(lmin)));
      return r;
    }
    if (n_cut >= cap && m_cut >= cap) {
      std::ostringstream os;
      os << "asymptotic vN entropy tail " << tail
         << " not bounded below " << tail_tolerance << " within cutoffs "
         << cap;
      throw AccuracyError(os.str(), tail);
    }
    n_cut = std::min(2 * n_cut, cap);
    m_cut = std::min(2 * m_cut, cap);
  }
}

double asymptotic_norm_constant(const TrapParams& t, int sign) {
  t.validate();
  check_epsilon(t.epsilon);
  if (t.g <= 0.0) throw DomainError("asymptotic wavefunction requires g > 0");
  if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
  const double e = t.epsilon;
  const double overlap = std::exp(-std::sqrt(3.0) * std::pow(t.g / 2.0, 2.0 / 3.0));
  return std::numbers::sqrt2 * std::pow(3.0, 0.125) * std::pow(e, 0.25) *
         std::pow(e * e - 1.0, 0.125) / (kPi * std::sqrt(1.0 + sign * overlap));
}

double asymptotic_wavefunction(const TrapParams& t,
                               const std::array<double, 2>& r1,
                               const std::array<double, 2>& r2, int sign) {
  const double c = asymptotic_norm_constant(t, sign);
  const double xcl = std::cbrt(t.g / 2.0);
  const double s3 = std::sqrt(3.0);
  auto q = [&](double x1, double x2) {
    const double d = x2 - x1 - xcl, s = x1 + x2;
    return std::exp(-0.5 * (s3 * d * d + s * s));
  };
  const KernelSpec hy = KernelSpec::h(t.epsilon);
  return c * hy(r1[1], r2[1]) * (q(r1[0], r2[0]) + sign * q(r2[0], r1[0]));
}

LinearFit least_squares_line(const std::vector<double>& x,
                             const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw ConfigurationError("least squares needs two equal-length series");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DataError("degenerate abscissae in least squares");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

}  // namespace anisodot
