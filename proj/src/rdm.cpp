// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

#include <anisodot/errors.hpp>
#include <anisodot/ho_basis.hpp>
#include <anisodot/rdm.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace anisodot {

std::vector<Eigen::MatrixXd> cross_overlap_tensor(int sp_max, int rel_max,
                                                  double sp_scale,
                                                  double cm_scale,
                                                  double rel_scale) {
  if (sp_max < 0 || rel_max < 0)
    throw ConfigurationError("cutoffs must be >= 0");
  // x1 = X - x/2, x2 = X + x/2. The Gaussians of the four factors combine to
  // exp(-aX X^2 - ax x^2); Gauss-Hermite in the rescaled (X, x) integrates
  // the remaining polynomial of degree <= 2 sp_max + rel_max exactly.
  const double aX = sp_scale * sp_scale + 0.5 * cm_scale * cm_scale;
  const double ax = 0.25 * sp_scale * sp_scale + 0.5 * rel_scale * rel_scale;
  const int order = (2 * sp_max + rel_max) / 2 + 1;
  const QuadratureRule gh = gauss_hermite(order);
  const int k = order;
  const long npts = static_cast<long>(k) * k;
  const double cm0 = std::sqrt(cm_scale) * 0.7511255444649425;
  const double norm = 1.0 / std::sqrt(aX * ax);

  Eigen::MatrixXd a(sp_max + 1, npts), b(sp_max + 1, npts),
      r(rel_max + 1, npts);
  const double ss = std::sqrt(sp_scale), sr = std::sqrt(rel_scale);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const long p = static_cast<long>(i) * k + j;
      const double X = gh.nodes[i] / std::sqrt(aX);
      const double x = gh.nodes[j] / std::sqrt(ax);
      hermite_poly_normalized(sp_max, sp_scale * (X - 0.5 * x), a.col(p).data());
      hermite_poly_normalized(sp_max, sp_scale * (X + 0.5 * x), b.col(p).data());
      hermite_poly_normalized(rel_max, rel_scale * x, r.col(p).data());
      a.col(p) *= ss;
      b.col(p) *= ss;
      r.col(p) *= sr * cm0 * gh.weights[i] * gh.weights[j] * norm;
    }
  std::vector<Eigen::MatrixXd> t(rel_max + 1);
  for (int n = 0; n <= rel_max; ++n) {
    t[n] = a * r.row(n).transpose().asDiagonal() * b.transpose();
    // Parity of the CM ground state forces a + c = n (mod 2).
    for (int i = 0; i <= sp_max; ++i)
      for (int j = 0; j <= sp_max; ++j)
        if ((i + j + n) % 2) t[n](i, j) = 0.0;
  }
  return t;
}

std::vector<BasisIndex2D> single_particle_orbitals(int sp_cutoff) {
  if (sp_cutoff < 0) throw ConfigurationError("sp_cutoff must be >= 0");
  std::vector<BasisIndex2D> o;
  for (int total = 0; total <= sp_cutoff; ++total)
    for (int nx = 0; nx <= total; ++nx) o.push_back({nx, total - nx});
  return o;
}

CoefficientMatrix single_particle_coefficients_ungated(
    const TwoBodyState& state, int sp_cutoff, Execution exec) {
  const SectorBasis& basis = state.basis;
  if (sp_cutoff < basis.cutoff)
    throw ConfigurationError("sp_cutoff " + std::to_string(sp_cutoff) +
                             " is below the relative cutoff " +
                             std::to_string(basis.cutoff));
  const double eps = state.trap.epsilon;
  const double b = basis.scale;
  const int nrel = basis.cutoff;
  const auto tx = cross_overlap_tensor(sp_cutoff, nrel, std::numbers::sqrt2 * b,
                                       2.0, b);
  const auto ty = cross_overlap_tensor(sp_cutoff, nrel, std::sqrt(2.0 * eps) * b,
                                       2.0 * std::sqrt(eps), b * std::sqrt(eps));

  // G[ny] = sum_nx c(nx, ny) Tx[nx]
  const int m = sp_cutoff + 1;
  std::vector<Eigen::MatrixXd> gx(nrel + 1, Eigen::MatrixXd::Zero(m, m));
  std::vector<bool> used(nrel + 1, false);
  for (std::size_t i = 0; i < basis.members.size(); ++i) {
    const auto& bi = basis.members[i];
    gx[bi.ny] += state.rel_coefficients[static_cast<Eigen::Index>(i)] * tx[bi.nx];
    used[bi.ny] = true;
  }
  std::vector<int> active;
  for (int ny = 0; ny <= nrel; ++ny)
    if (used[ny]) active.push_back(ny);

  CoefficientMatrix out;
  out.orbitals = single_particle_orbitals(sp_cutoff);
  out.symmetry = state.sector.spatially_symmetric() ? Symmetry::symmetric
                                                    : Symmetry::antisymmetric;
  const auto& orb = out.orbitals;
  const auto d = static_cast<Eigen::Index>(orb.size());
  out.matrix.resize(d, d);
  auto row = [&](Eigen::Index i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      double s = 0.0;
      for (int ny : active)
        s += gx[ny](orb[i].nx, orb[j].nx) * ty[ny](orb[i].ny, orb[j].ny);
      out.matrix(i, j) = s;
    }
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (Eigen::Index i = 0; i < d; ++i) row(i);
  } else {
    for (Eigen::Index i = 0; i < d; ++i) row(i);
  }
  out.completeness = out.matrix.squaredNorm();
  return out;
}

CoefficientMatrix single_particle_coefficients(const TwoBodyState& state,
                                               int sp_cutoff, Execution exec) {
  CoefficientMatrix c =
      single_particle_coefficients_ungated(state, sp_cutoff, exec);
  if (c.completeness < kCompletenessGate) {
    std::ostringstream os;
    os << "single-particle expansion captures only " << c.completeness
       << " of the norm (gate " << kCompletenessGate
       << "); raise sp_cutoff above " << sp_cutoff;
    throw TruncationError(os.str(), c.completeness);
  }
  return c;
}

double SchmidtSpectrum::trace() const {
  return std::accumulate(occupancies.begin(), occupancies.end(), 0.0);
}

double SchmidtSpectrum::purity() const {
  double s = 0.0;
  for (double l : occupancies) s += l * l;
  return s;
}

SchmidtSpectrum SchmidtSpectrum::renormalized() const {
  const double t = trace();
  if (!(t > 0.0)) throw DataError("cannot renormalize an empty spectrum");
  SchmidtSpectrum s = *this;
  for (double& l : s.occupancies) l /= t;
  const double st = std::sqrt(t);
  for (double& k : s.coefficients) k /= st;
  return s;
}

int SchmidtSpectrum::nonzero_count(double relative_cutoff) const {
  if (occupancies.empty()) return 0;
  const double cut = relative_cutoff * occupancies.front();
  if (paired) {
    int pairs = 0;
    for (std::size_t i = 0; i + 1 < occupancies.size(); i += 2)
      if (occupancies[i] >= cut) ++pairs;
    return 2 * pairs;
  }
  return static_cast<int>(std::count_if(
      occupancies.begin(), occupancies.end(),
      [&](double l) { return l >= cut; }));
}

double SchmidtSpectrum::pairing_defect() const {
  double d = 0.0;
  for (std::size_t i = 0; i + 1 < occupancies.size(); i += 2)
    d = std::max(d, std::abs(occupancies[i] - occupancies[i + 1]));
  return d;
}

SchmidtSpectrum spectrum_from_occupancies(std::vector<double> occupancies,
                                          bool paired) {
  for (double l : occupancies)
    if (!(l >= 0.0)) throw DataError("occupancies must be nonnegative");
  std::sort(occupancies.begin(), occupancies.end(), std::greater<>());
  SchmidtSpectrum s;
  s.occupancies = std::move(occupancies);
  s.paired = paired;
  return s;
}

namespace {

// Groups rows into independent blocks using the parity classes of the
// orbital labels; classes that share a nonzero block are merged.
std::vector<std::vector<Eigen::Index>> components(const CoefficientMatrix& c) {
  const auto d = c.matrix.rows();
  if (c.orbitals.size() != static_cast<std::size_t>(d)) {
    std::vector<Eigen::Index> all(d);
    std::iota(all.begin(), all.end(), 0);
    return {all};
  }
  auto cls = [&](Eigen::Index i) {
    return 2 * (c.orbitals[i].nx % 2) + (c.orbitals[i].ny % 2);
  };
  std::array<int, 4> parent{0, 1, 2, 3};
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      if (c.matrix(i, j) != 0.0) {
        const int a = find(cls(i)), b = find(cls(j));
        if (a != b) parent[b] = a;
      }
  std::array<std::vector<Eigen::Index>, 4> groups;
  for (Eigen::Index i = 0; i < d; ++i) groups[find(cls(i))].push_back(i);
  std::vector<std::vector<Eigen::Index>> out;
  for (auto& g : groups)
    if (!g.empty()) out.push_back(std::move(g));
  return out;
}

}  // namespace

SchmidtSpectrum schmidt_spectrum(const CoefficientMatrix& c) {
  const auto& m = c.matrix;
  if (m.rows() != m.cols()) throw DataError("coefficient matrix must be square");
  if (m.size() == 0) throw DataError("empty coefficient matrix");
  const double sign = c.symmetry == Symmetry::symmetric ? 1.0 : -1.0;
  const double asym = (m - sign * m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    std::ostringstream os;
    os << "coefficient matrix violates its declared "
       << (sign > 0 ? "symmetry" : "antisymmetry") << " by " << asym;
    throw DataError(os.str());
  }

  SchmidtSpectrum s;
  s.paired = c.symmetry == Symmetry::antisymmetric;
  for (const auto& idx : components(c)) {
    const auto n = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd block(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) block(i, j) = m(idx[i], idx[j]);
    if (c.symmetry == Symmetry::symmetric) {
      block = 0.5 * (block + block.transpose());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
          block, Eigen::EigenvaluesOnly);
      if (es.info() != Eigen::Success)
        throw NumericError("eigensolver failed on coefficient block");
      for (Eigen::Index i = 0; i < n; ++i)
        s.coefficients.push_back(es.eigenvalues()[i]);
    } else {
      Eigen::BDCSVD<Eigen::MatrixXd> svd(block);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double sv = svd.singularValues()[i];
        s.occupancies.push_back(sv * sv);
      }
    }
  }
  if (c.symmetry == Symmetry::symmetric) {
    std::sort(s.coefficients.begin(), s.coefficients.end(),
              [](double a, double b) { return std::abs(a) > std::abs(b); });
    for (double k : s.coefficients) s.occupancies.push_back(k * k);
  }
  std::sort(s.occupancies.begin(), s.occupancies.end(), std::greater<>());
  return s;
}

double spin_entropy(const SectorLabel& sector) noexcept {
  return sector.spin_projection() == 0 ? 1.0 : 0.0;
}

double spin_purity(const SectorLabel& sector) noexcept {
  return sector.spin_projection() == 0 ? 0.5 : 1.0;
}

namespace {

SchmidtSpectrum normalized_for_entropy(const SchmidtSpectrum& spec) {
  const double t = spec.trace();
  if (std::abs(t - 1.0) > kNormalizationTolerance) {
    std::ostringstream os;
    os << "spectrum trace " << t << " deviates from 1 by more than "
       << kNormalizationTolerance;
    throw DataError(os.str());
  }
  return spec.renormalized();
}

}  // namespace

double vn_entropy(const SchmidtSpectrum& spec, const SectorLabel& sector) {
  const SchmidtSpectrum s = normalized_for_entropy(spec);
  double h = 0.0;
  for (double l : s.occupancies)
    if (l > 0.0) h -= l * std::log2(l);
  return spin_entropy(sector) + h;
}

double linear_entropy(const SchmidtSpectrum& spec, const SectorLabel& sector) {
  const SchmidtSpectrum s = normalized_for_entropy(spec);
  return 1.0 - spin_purity(sector) * s.purity();
}

double linear_entropy_from_coefficients(const CoefficientMatrix& c,
                                        const SectorLabel& sector) {
  const Eigen::MatrixXd rho = c.matrix * c.matrix.transpose();
  const double tr = rho.trace();
  if (!(tr > 0.0)) throw DataError("zero coefficient matrix");
  return 1.0 - spin_purity(sector) * rho.squaredNorm() / (tr * tr);
}

EntanglementResult analyze_entanglement(const TwoBodyState& state,
                                        int sp_cutoff, Execution exec) {
  const CoefficientMatrix c = single_particle_coefficients(state, sp_cutoff, exec);
  EntanglementResult r;
  r.completeness = c.completeness;
  r.spectrum = schmidt_spectrum(c).renormalized();
  r.vn = vn_entropy(r.spectrum, state.sector);
  r.linear = linear_entropy(r.spectrum, state.sector);
  r.slater_rank = slater_rank_rule(state.sector, r.spectrum.nonzero_count());
  return r;
}

}  // namespace anisodot
