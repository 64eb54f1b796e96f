#include "sh2geo/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace sh2geo::kernels {

namespace {

bool host_supports_simd() {
#if !defined(SH2GEO_SIMD_KERNELS)
  return false;
#elif defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return true;  // compiled for the baseline vector ISA of this target
#endif
}

Backend initial_backend() {
  if (const char* env = std::getenv("SH2GEO_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::kScalar;
    if (std::strcmp(env, "simd") == 0 && host_supports_simd())
      return Backend::kSimd;
  }
  return host_supports_simd() ? Backend::kSimd : Backend::kScalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{initial_backend()};
  return slot;
}

}  // namespace

#if !defined(SH2GEO_SIMD_KERNELS)
const KernelTable* simd_table() { return nullptr; }
#endif

bool simd_available() { return host_supports_simd(); }

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

bool set_backend(Backend b) {
  if (b == Backend::kSimd && !host_supports_simd()) return false;
  backend_slot().store(b, std::memory_order_relaxed);
  return true;
}

const char* backend_name(Backend b) {
  return b == Backend::kSimd ? "simd" : "scalar";
}

const KernelTable& active() {
  if (active_backend() == Backend::kSimd) {
    if (const KernelTable* t = simd_table()) return *t;
  }
  return scalar_table();
}

}  // namespace sh2geo::kernels
