// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file bench_kernels.cpp
 * @brief Serial vs OpenMP timings of the three dense kernels.
 *
 * Usage: bench_kernels [n_max] [repeats]
 */
#include <anisodot/asymptotic.hpp>
#include <anisodot/coulomb.hpp>
#include <anisodot/rdm.hpp>
#include <anisodot/rel_solver.hpp>

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

using namespace anisodot;

namespace {

double time_best(const std::function<double()>& f, int repeats,
                 double& checksum) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    checksum = f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const std::string& name, const std::function<double(Execution)>& f,
            int repeats) {
  double cs_serial = 0, cs_parallel = 0;
  const double ts = time_best([&] { return f(Execution::serial); }, repeats,
                              cs_serial);
  const double tp = time_best([&] { return f(Execution::parallel); }, repeats,
                              cs_parallel);
  std::printf("%-22s serial %9.4f s  parallel %9.4f s  speedup %5.2f  %s\n",
              name.c_str(), ts, tp, ts / tp,
              cs_serial == cs_parallel ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int n_max = argc > 1 ? std::atoi(argv[1]) : 28;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  std::printf("threads: %d, n_max: %d, repeats: %d\n", omp_get_max_threads(),
              n_max, repeats);

  const TrapParams t{50.0, 1.5};
  const SectorLabel ee(Parity::even, Parity::even);
  const SectorBasis basis = SectorBasis::build(ee, n_max);

  report("coulomb_matrix", [&](Execution e) {
    return coulomb_matrix(basis, t.epsilon, {}, e).matrix.sum();
  }, repeats);

  SolverOptions opts;
  const auto state = eigensolve_sector(t, ee, n_max, 1, opts)[0];
  report("coefficient_matrix", [&](Execution e) {
    return single_particle_coefficients_ungated(state, n_max, e).matrix.sum();
  }, repeats);

  const KernelSpec h = KernelSpec::h(1.5);
  const NystromGrid grid = default_grid(h, 800);
  report("nystrom_kernel", [&](Execution e) {
    return kernel_matrix(h, grid, e).sum();
  }, repeats);
  return 0;
}
