// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file errors.hpp
 * @brief Exception hierarchy shared by all anisodot modules.
 *
 * Every failure carries an ErrorKind so the CLI can map it onto an exit code
 * (usage/configuration -> 1, numeric -> 2) and a machine-readable error line.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace anisodot {

enum class ErrorKind {
  domain,         // input outside the mathematical domain of an operation
  configuration,  // invalid option or parameter combination
  accuracy,       // a numerical estimate exceeded its tolerance
  numeric,        // a linear-algebra routine failed
  truncation,     // basis too small to represent the state faithfully
  data,           // inconsistent input data (symmetry, normalization)
  grid,           // Nystrom grid does not cover the kernel
  inconsistency,  // violated structural rule (e.g. odd pairing count)
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorKind::domain, w) {}
};

struct ConfigurationError : Error {
  explicit ConfigurationError(const std::string& w)
      : Error(ErrorKind::configuration, w) {}
};

/// Carries the offending estimate so callers can report or retry.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& w, double estimate)
      : Error(ErrorKind::accuracy, w), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

struct NumericError : Error {
  explicit NumericError(const std::string& w) : Error(ErrorKind::numeric, w) {}
};

class TruncationError : public Error {
 public:
  TruncationError(const std::string& w, double completeness)
      : Error(ErrorKind::truncation, w), completeness_(completeness) {}
  double completeness() const noexcept { return completeness_; }

 private:
  double completeness_;
};

struct DataError : Error {
  explicit DataError(const std::string& w) : Error(ErrorKind::data, w) {}
};

struct GridError : Error {
  explicit GridError(const std::string& w) : Error(ErrorKind::grid, w) {}
};

struct InconsistencyError : Error {
  explicit InconsistencyError(const std::string& w)
      : Error(ErrorKind::inconsistency, w) {}
};

}  // namespace anisodot
