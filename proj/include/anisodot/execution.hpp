// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace anisodot {

/// Selects between the OpenMP kernel and its serial reference.
///
/// Parallel kernels distribute independent output entries over threads and
/// never reduce across threads, so both paths produce bit-identical results.
enum class Execution { serial, parallel };

}  // namespace anisodot
