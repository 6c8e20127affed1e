// Compares the serial reference span accumulation against the OpenMP path
// on a fixed workload and reports timings. The results must agree exactly;
// a mismatch is a bug, not a benchmark artifact.

#include <chrono>
#include <functional>
#include <iostream>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "relfree/printer.hpp"
#include "relfree/tspace.hpp"

using namespace relfree;

namespace {

double time_ms(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  int a = 7, b = 7;
  if (argc >= 3) {
    a = std::atoi(argv[1]);
    b = std::atoi(argv[2]);
  }
  PrimeField field(3);
  GeneratorSpec spec = spec_V(field, 1, 1);
  MultiDegree d{{a, b}};
  Budget budget;

  std::cout << "workload: component of " << spec.label << " at "
            << to_string(d) << "\n";

  ComponentBasis serial = component_basis_serial(spec, d, budget);
  double t_serial = time_ms(
      [&] { serial = component_basis_serial(spec, d, budget); });
  std::cout << "serial reference: " << t_serial << " ms (rank "
            << serial.rank() << "/" << serial.frame().size() << ")\n";

  int max_threads = 1;
#ifdef _OPENMP
  max_threads = omp_get_max_threads();
#endif
  for (int jobs = 1; jobs <= max_threads; jobs *= 2) {
    ComponentBasis parallel = component_basis(spec, d, budget, jobs);
    double t = time_ms(
        [&] { parallel = component_basis(spec, d, budget, jobs); });
    bool same = parallel == serial;
    std::cout << "openmp x" << jobs << ":       " << t << " ms (speedup "
              << (t > 0 ? t_serial / t : 0.0) << ", "
              << (same ? "identical" : "MISMATCH") << ")\n";
    if (!same) return 1;
  }
  return 0;
}
