// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

#include <anisodot/errors.hpp>
#include <anisodot/model.hpp>

#include <cmath>

namespace anisodot {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::accuracy: return "accuracy";
    case ErrorKind::numeric: return "numeric";
    case ErrorKind::truncation: return "truncation";
    case ErrorKind::data: return "data";
    case ErrorKind::grid: return "grid";
    case ErrorKind::inconsistency: return "inconsistency";
  }
  return "unknown";
}

void TrapParams::validate() const {
  if (!(g >= 0.0) || !std::isfinite(g))
    throw DomainError("coupling g must be finite and >= 0");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw DomainError("anisotropy epsilon must be finite and > 0");
}

SectorLabel::SectorLabel(Parity x, Parity y, int spin_projection)
    : x_(x), y_(y), sz_(spin_projection) {
  if (sz_ < -1 || sz_ > 1)
    throw DomainError("spin projection must be -1, 0 or +1");
  if (x_ == y_ && sz_ != 0)
    throw InconsistencyError("symmetric parity sector " + name() +
                             " is a singlet and requires s_z = 0");
}

SectorLabel SectorLabel::parse(const std::string& text) {
  auto parity = [&](char c) {
    if (c == 'e') return Parity::even;
    if (c == 'o') return Parity::odd;
    throw ConfigurationError("bad sector '" + text +
                             "': expected ee, eo, oe or oo");
  };
  if (text.size() < 2)
    throw ConfigurationError("bad sector '" + text + "'");
  int sz = 0;
  if (text.size() > 2) {
    const std::string tail = text.substr(2);
    if (tail == ":+1" || tail == ":1") sz = 1;
    else if (tail == ":-1") sz = -1;
    else if (tail == ":0") sz = 0;
    else throw ConfigurationError("bad spin suffix in sector '" + text + "'");
  }
  return SectorLabel(parity(text[0]), parity(text[1]), sz);
}

SpinCharacter SectorLabel::spin_character() const noexcept {
  return x_ == y_ ? SpinCharacter::singlet : SpinCharacter::triplet;
}

std::string SectorLabel::name() const {
  std::string s;
  s += x_ == Parity::even ? 'e' : 'o';
  s += y_ == Parity::even ? 'e' : 'o';
  if (sz_ == 1) s += ":+1";
  if (sz_ == -1) s += ":-1";
  return s;
}

TrapParams physical_to_dimensionless(const PhysicalParams& p) {
  for (double v : {p.effective_mass, p.dielectric, p.omega_x, p.omega_y,
                   p.elementary_charge, p.hbar}) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw DomainError("physical parameters must be finite and positive");
  }
  const double e2 = p.elementary_charge * p.elementary_charge;
  TrapParams t;
  t.g = e2 / p.dielectric *
        std::sqrt(2.0 * p.effective_mass /
                  (p.omega_x * p.hbar * p.hbar * p.hbar));
  t.epsilon = p.omega_y / p.omega_x;
  return t;
}

ClassicalGeometry classical_geometry(const TrapParams& t) {
  t.validate();
  if (t.g <= 0.0)
    throw DomainError("classical minimum requires g > 0");
  ClassicalGeometry c;
  c.x_cl = std::cbrt(t.g / 2.0);
  c.v_min = c.x_cl * c.x_cl + t.g / c.x_cl;
  return c;
}

double relative_potential(const TrapParams& t, double x, double y) {
  const double r = std::hypot(x, y);
  return x * x + t.epsilon * t.epsilon * y * y + t.g / r;
}

int slater_rank_rule(const SectorLabel& sector, int nonzero_spatial_eigs) {
  if (nonzero_spatial_eigs < 0)
    throw DomainError("eigenvalue count must be nonnegative");
  if (sector.spin_projection() == 0) return nonzero_spatial_eigs;
  if (nonzero_spatial_eigs % 2 != 0)
    throw InconsistencyError(
        "s_z = +-1 states need an even number of spatial eigenvalues");
  return nonzero_spatial_eigs / 2;
}

CanonicalTrap canonicalize(const TrapParams& t) {
  t.validate();
  CanonicalTrap c{t, false, 1.0};
  if (t.epsilon < 1.0) {
    // The y axis becomes the new x axis; lengths and energies are rescaled
    // with omega_y instead of omega_x.
    c.trap.g = t.g / std::sqrt(t.epsilon);
    c.trap.epsilon = 1.0 / t.epsilon;
    c.axes_swapped = true;
    c.energy_factor = t.epsilon;
  }
  return c;
}

double to_physical_energy(double scaled_energy, const PhysicalParams& p) {
  return scaled_energy * p.hbar * p.omega_x / 2.0;
}

}  // namespace anisodot
