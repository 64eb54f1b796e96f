#pragma once

#include <cstddef>

namespace sh2geo::kernels {

/// Batch kernels for the grid samplers.  Every function processes n
/// elements; inputs must satisfy k in [0, 1) with 1 - k^2 >= 1e-14 (the
/// separatrix neighbourhood is routed to the hyperbolic-limit scalar code
/// before batching).
struct KernelTable {
  /// Complete integrals K(k), E(k) by AGM.
  void (*ke)(const double* k, std::size_t n, double* K, double* E);
  /// Jacobi sn, cn, dn.
  void (*sncndn)(const double* phi, const double* k, std::size_t n,
                 double* sn, double* cn, double* dn);
  /// Jacobi epsilon; Kc/Ec carry precomputed complete integrals per element.
  void (*eps)(const double* phi, const double* k, const double* Kc,
              const double* Ec, std::size_t n, double* out);
};

enum class Backend { kScalar, kSimd };

/// True when a SIMD build is compiled in and the host CPU supports it.
bool simd_available();

/// Currently selected backend.  Defaults to SIMD when available; the
/// environment variable SH2GEO_KERNELS=scalar|simd overrides.
Backend active_backend();

/// Select a backend explicitly; returns false (and keeps the current one)
/// if the requested backend is unavailable.
bool set_backend(Backend b);

const char* backend_name(Backend b);

/// Kernel table of the active backend.
const KernelTable& active();

/// Direct access for equivalence tests.
const KernelTable& scalar_table();
const KernelTable* simd_table();  // nullptr when not compiled in

}  // namespace sh2geo::kernels
