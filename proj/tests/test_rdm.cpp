// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

#include <anisodot/errors.hpp>
#include <anisodot/rdm.hpp>

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <cmath>

using namespace anisodot;

namespace {

TwoBodyState lowest(double g, double eps, const char* sector, int n_max,
                    double scale = 1.0) {
  SolverOptions o;
  o.basis_scale = scale;
  return eigensolve_sector({g, eps}, SectorLabel::parse(sector), n_max, 1, o)[0];
}

// -sum l log2 l over a plain list, without any library helper.
double shannon_bits(const std::vector<double>& l) {
  double s = 0.0;
  for (double x : l)
    if (x > 0.0) s -= x * std::log2(x);
  return s;
}

}  // namespace

TEST_CASE("free singlet is a single product state") {
  const auto st = lowest(0.0, 1.6, "ee", 16);
  const auto r = analyze_entanglement(st, 16);
  CHECK(std::abs(r.completeness - 1.0) < 1e-10);
  CHECK(std::abs(r.spectrum.occupancies[0] - 1.0) < 1e-10);
  for (std::size_t i = 1; i < r.spectrum.occupancies.size(); ++i)
    CHECK(r.spectrum.occupancies[i] < 1e-10);
  CHECK(std::abs(r.vn - 1.0) < 1e-10);
  CHECK(std::abs(r.linear - 0.5) < 1e-10);
  CHECK(r.slater_rank == 1);
}

TEST_CASE("free triplet is a two-orbital antisymmetric state") {
  const auto st = lowest(0.0, 1.6, "oe", 16);
  const auto r = analyze_entanglement(st, 16);
  CHECK(r.spectrum.paired);
  CHECK(r.spectrum.occupancies[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(r.spectrum.occupancies[1] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(r.spectrum.occupancies[2] < 1e-10);
  CHECK(r.vn == doctest::Approx(1.0 + 1.0).epsilon(1e-10));
  CHECK(r.linear == doctest::Approx(1.0 - 0.5 * 0.5).epsilon(1e-10));
  CHECK(r.slater_rank == 2);

  auto polarized = st;
  polarized.sector = SectorLabel::parse("oe:+1");
  const auto p = analyze_entanglement(polarized, 16);
  CHECK(p.vn == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(p.linear == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(p.slater_rank == 1);
}

TEST_CASE("coefficient matrix invariants for interacting states") {
  for (const char* s : {"ee", "eo", "oe", "oo"}) {
    const auto label = SectorLabel::parse(s);
    const auto st = lowest(6.0, 1.4, s, 24);
    const auto c = single_particle_coefficients(st, 24);
    const auto& m = c.matrix;

    // Exchange symmetry follows the spatial symmetry of the sector.
    const double sign = label.spatially_symmetric() ? 1.0 : -1.0;
    CHECK((m - sign * m.transpose()).cwiseAbs().maxCoeff() < 1e-10);

    // Parity blocks: C_ab = 0 exactly unless the orbital parities combine to
    // the parity of the relative state.
    const int px = static_cast<int>(label.x_parity());
    const int py = static_cast<int>(label.y_parity());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const auto& a = c.orbitals[i];
        const auto& b = c.orbitals[j];
        if ((a.nx + b.nx) % 2 != px || (a.ny + b.ny) % 2 != py)
          CHECK(m(i, j) == 0.0);
      }

    // Trace and Hilbert-Schmidt norm, both computed directly from C.
    const auto spec = schmidt_spectrum(c);
    CHECK(std::abs(spec.trace() - m.squaredNorm()) < 1e-8);
    CHECK(std::abs(c.completeness - m.squaredNorm()) < 1e-12);
    const Eigen::MatrixXd rho = m * m.transpose();
    CHECK(std::abs(spec.purity() - rho.squaredNorm()) < 1e-10);

    // Two routes to the linear entropy.
    const auto norm = spec.renormalized();
    CHECK(std::abs(linear_entropy(norm, label) -
                   linear_entropy_from_coefficients(c, label)) < 1e-12);

    // von Neumann entropy against a plain sum.
    CHECK(vn_entropy(norm, label) ==
          doctest::Approx(spin_entropy(label) + shannon_bits(norm.occupancies))
              .epsilon(1e-12));

    if (!label.spatially_symmetric()) {
      CHECK(spec.paired);
      CHECK(spec.pairing_defect() <= 1e-8);
    }
    for (std::size_t i = 1; i < spec.occupancies.size(); ++i)
      CHECK(spec.occupancies[i] <= spec.occupancies[i - 1]);
  }
}

TEST_CASE("symmetric Schmidt coefficients square to the occupancies") {
  const auto c = single_particle_coefficients(lowest(3.0, 1.2, "ee", 20), 20);
  const auto spec = schmidt_spectrum(c);
  REQUIRE(spec.coefficients.size() == spec.occupancies.size());
  for (std::size_t i = 0; i < spec.occupancies.size(); ++i)
    CHECK(spec.coefficients[i] * spec.coefficients[i] ==
          doctest::Approx(spec.occupancies[i]).epsilon(1e-12).scale(1e-14));
  // The spatial RDM of the full C has the same spectrum.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.matrix * c.matrix.transpose());
  const auto ev = es.eigenvalues();
  for (int i = 0; i < 6; ++i)
    CHECK(ev[ev.size() - 1 - i] ==
          doctest::Approx(spec.occupancies[i]).epsilon(1e-10).scale(1e-12));
}

TEST_CASE("truncated single-particle bases are rejected") {
  // A strongly contracted relative basis reaches far beyond the
  // single-particle functions of the same cutoff.
  const auto st = lowest(200.0, 1.5, "ee", 20, 0.3);
  CHECK_THROWS_AS(single_particle_coefficients(st, 20), TruncationError);
  const auto c = single_particle_coefficients_ungated(st, 20);
  CHECK(c.completeness < kCompletenessGate);
  CHECK_THROWS_AS(single_particle_coefficients(st, 12), ConfigurationError);
}

TEST_CASE("completeness grows with the single-particle cutoff") {
  const auto st = lowest(50.0, 1.5, "ee", 24, 0.85);
  double prev = 0.0;
  for (int sp = 24; sp <= 44; sp += 4) {
    const double c = single_particle_coefficients_ungated(st, sp).completeness;
    CHECK(c >= prev - 1e-12);
    CHECK(c <= 1.0 + 1e-10);
    prev = c;
  }
}

TEST_CASE("entanglement does not depend on the relative basis scale") {
  const auto a = analyze_entanglement(lowest(2.0, 1.3, "oe", 40), 40);
  const auto b = analyze_entanglement(lowest(2.0, 1.3, "oe", 40, 0.85), 52);
  CHECK(a.linear == doctest::Approx(b.linear).epsilon(1e-5));
  CHECK(a.spectrum.occupancies[0] ==
        doctest::Approx(b.spectrum.occupancies[0]).epsilon(1e-5));
}

TEST_CASE("serial and parallel coefficient matrices are bit-identical") {
  const auto st = lowest(10.0, 1.7, "oe", 22, 0.9);
  const auto a = single_particle_coefficients_ungated(st, 26, Execution::serial);
  const auto b = single_particle_coefficients_ungated(st, 26, Execution::parallel);
  CHECK((a.matrix.array() == b.matrix.array()).all());
}

TEST_CASE("entropy helpers validate the spectrum") {
  const auto ee = SectorLabel::parse("ee");
  const auto bad = spectrum_from_occupancies({0.7, 0.2});
  CHECK_THROWS_AS(vn_entropy(bad, ee), DataError);
  CHECK_THROWS_AS(linear_entropy(bad, ee), DataError);
  CHECK_THROWS_AS(spectrum_from_occupancies({0.5, -0.1}), DataError);

  const auto ok = spectrum_from_occupancies({0.25, 0.5, 0.25});
  CHECK(ok.occupancies.front() == 0.5);
  CHECK(vn_entropy(ok, ee) == doctest::Approx(1.0 + 1.5));
  CHECK(linear_entropy(ok, ee) == doctest::Approx(1.0 - 0.5 * 0.375));
  CHECK(spin_entropy(SectorLabel::parse("oe:-1")) == 0.0);
  CHECK(spin_purity(SectorLabel::parse("oe")) == 0.5);
}

TEST_CASE("single-particle orbital list") {
  const auto o = single_particle_orbitals(3);
  CHECK(o.size() == 10);  // nx + ny <= 3
  CHECK_THROWS_AS(single_particle_orbitals(-1), ConfigurationError);
}
