// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

#include <anisodot/csv.hpp>

#include <cstdio>

namespace anisodot::csv {

std::string format(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  std::string s(buf);
  // snprintf honours LC_NUMERIC; the contract is a dot decimal.
  for (char& c : s)
    if (c == ',') c = '.';
  return s;
}

std::string escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << escape(fields[i]);
  }
  os << '\n';
}

namespace {
std::vector<std::string> with_lambdas(std::vector<std::string> head,
                                      const std::vector<std::string>& tail) {
  for (int i = 0; i < kReportedOccupancies; ++i)
    head.push_back("lambda" + std::to_string(i));
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}
}  // namespace

std::vector<std::string> spectrum_header() {
  return {"g", "epsilon", "sector", "level", "E_rel", "gap"};
}

std::vector<std::string> entanglement_header() {
  return with_lambdas({"g", "epsilon", "sector"},
                      {"S_vn", "L_lin", "completeness"});
}

std::vector<std::string> asymptotic_header() {
  return with_lambdas({"epsilon"}, {"L_closed", "L_spectrum", "S_vn"});
}

std::vector<std::string> convergence_header() {
  return {"parameter", "value", "E_rel0", "delta_from_previous"};
}

}  // namespace anisodot::csv
