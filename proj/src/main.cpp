#include <cstdlib>

#include <unistd.h>

#include "fhd/cli.hpp"

int main(int argc, char** argv) {
#if defined(__linux__) && defined(__x86_64__)
  // OpenBLAS auto-selects an AVX-512 kernel that corrupts the sparse LU on
  // some machines; pin a known-good one before the library loads its state.
  if (!std::getenv("OPENBLAS_CORETYPE") && __builtin_cpu_supports("avx512f")) {
    setenv("OPENBLAS_CORETYPE", "Haswell", 1);
    execv("/proc/self/exe", argv);
  }
#endif
  return fhd::cli_main(argc, argv);
}
