// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

#include <anisodot/errors.hpp>
#include <anisodot/model.hpp>

#include <doctest.h>

#include <cmath>

using namespace anisodot;

TEST_CASE("dimensionless coupling from physical parameters") {
  PhysicalParams p;
  auto t = physical_to_dimensionless(p);
  CHECK(t.g == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(t.epsilon == 1.0);

  p.effective_mass = 0.067;
  p.dielectric = 12.4;
  p.omega_x = 2.0;
  p.omega_y = 3.0;
  t = physical_to_dimensionless(p);
  CHECK(t.g == doctest::Approx(std::sqrt(2.0 * 0.067 / 2.0) / 12.4));
  CHECK(t.epsilon == doctest::Approx(1.5));

  p.hbar = 0.0;
  CHECK_THROWS_AS(physical_to_dimensionless(p), DomainError);
}

TEST_CASE("trap parameter validation") {
  auto check = [](double g, double e) { TrapParams{g, e}.validate(); };
  CHECK_NOTHROW(check(0.0, 1.0));
  CHECK_THROWS_AS(check(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(check(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(check(NAN, 1.0), DomainError);
}

TEST_CASE("classical geometry minimizes the x-axis potential") {
  for (double g : {0.5, 10.0, 403.0}) {
    const auto c = classical_geometry({g, 2.0});
    CHECK(c.x_cl == doctest::Approx(std::cbrt(g / 2.0)));
    double best = 1e300;
    for (int i = 1; i < 200000; ++i) {
      const double x = 1e-4 * i;
      best = std::min(best, x * x + g / x);
    }
    CHECK(c.v_min == doctest::Approx(best).epsilon(1e-7));
    CHECK(relative_potential({g, 2.0}, c.x_cl, 0.0) ==
          doctest::Approx(c.v_min));
  }
  const TrapParams free{0.0, 2.0};
  CHECK_THROWS_AS(classical_geometry(free), DomainError);
}

TEST_CASE("relative potential") {
  CHECK(relative_potential({2.0, 1.5}, 3.0, 4.0) ==
        doctest::Approx(9.0 + 2.25 * 16.0 + 2.0 / 5.0));
}

TEST_CASE("sector labels") {
  const auto s = SectorLabel::parse("oe:+1");
  CHECK(s.x_parity() == Parity::odd);
  CHECK(s.y_parity() == Parity::even);
  CHECK(s.spin_projection() == 1);
  CHECK(s.spin_character() == SpinCharacter::triplet);
  CHECK_FALSE(s.spatially_symmetric());
  CHECK(s.name() == "oe:+1");
  CHECK(SectorLabel::parse("ee").spin_character() == SpinCharacter::singlet);
  CHECK(SectorLabel::parse("oo").spatially_symmetric());
  CHECK(SectorLabel::parse("eo:-1").name() == "eo:-1");
  CHECK_THROWS_AS(SectorLabel::parse("ee:+1"), InconsistencyError);
  CHECK_THROWS_AS(SectorLabel(Parity::odd, Parity::odd, -1), InconsistencyError);
  CHECK_THROWS_AS(SectorLabel::parse("xe"), ConfigurationError);
  CHECK_THROWS_AS(SectorLabel::parse("e"), ConfigurationError);
  CHECK_THROWS_AS(SectorLabel::parse("eo:+2"), ConfigurationError);
  CHECK(SectorLabel::parse("ee") < SectorLabel::parse("oe"));
}

TEST_CASE("Slater rank rule") {
  CHECK(slater_rank_rule(SectorLabel::parse("ee"), 3) == 3);
  CHECK(slater_rank_rule(SectorLabel::parse("oe"), 4) == 4);
  CHECK(slater_rank_rule(SectorLabel::parse("oe:+1"), 4) == 2);
  CHECK(slater_rank_rule(SectorLabel::parse("eo:-1"), 2) == 1);
  CHECK_THROWS(slater_rank_rule(SectorLabel::parse("oe:+1"), 3));
}

TEST_CASE("canonical orientation") {
  const auto c = canonicalize({2.0, 0.5});
  CHECK(c.axes_swapped);
  CHECK(c.trap.epsilon == doctest::Approx(2.0));
  CHECK(c.trap.g == doctest::Approx(2.0 / std::sqrt(0.5)));
  CHECK(c.energy_factor == doctest::Approx(0.5));
  const auto d = canonicalize({3.0, 1.5});
  CHECK_FALSE(d.axes_swapped);
  CHECK(d.trap.g == 3.0);
  CHECK(d.energy_factor == 1.0);
}

TEST_CASE("physical energy units") {
  PhysicalParams p;
  p.omega_x = 4.0;
  p.hbar = 0.5;
  CHECK(to_physical_energy(3.0, p) == doctest::Approx(3.0 * 0.5 * 4.0 / 2.0));
}

TEST_CASE("error kinds have stable names") {
  CHECK(to_string(ErrorKind::accuracy) == "accuracy");
  CHECK(to_string(ErrorKind::truncation) == "truncation");
  const TruncationError e("x", 0.5);
  CHECK(e.kind() == ErrorKind::truncation);
}
