// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace anisodot::csv {

/// 12 significant digits, dot decimal, independent of the global locale.
std::string format(double value);

/// Quotes a field when it contains a comma, quote or line break.
std::string escape(const std::string& field);

void write_row(std::ostream& os, const std::vector<std::string>& fields);

/// Column headers of the public CSV contract.
std::vector<std::string> spectrum_header();
std::vector<std::string> entanglement_header();
std::vector<std::string> asymptotic_header();
std::vector<std::string> convergence_header();

inline constexpr int kReportedOccupancies = 8;

}  // namespace anisodot::csv
