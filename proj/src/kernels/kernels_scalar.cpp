// Scalar reference backend: plain loops over the library's scalar
// elliptic routines.  The SIMD backend is equivalence-tested against this.

#include "sh2geo/elliptic.hpp"
#include "sh2geo/kernels.hpp"

namespace sh2geo::kernels {

namespace {

void ke_scalar(const double* k, std::size_t n, double* K, double* E) {
  for (std::size_t i = 0; i < n; ++i) {
    K[i] = complete_K(k[i]);
    E[i] = complete_E(k[i]);
  }
}

void sncndn_scalar(const double* phi, const double* k, std::size_t n,
                   double* sn, double* cn, double* dn) {
  for (std::size_t i = 0; i < n; ++i) {
    const JacobiTriple j = jacobi_sncndn(phi[i], k[i]);
    sn[i] = j.sn;
    cn[i] = j.cn;
    dn[i] = j.dn;
  }
}

void eps_scalar(const double* phi, const double* k, const double* /*Kc*/,
                const double* /*Ec*/, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = jacobi_eps(phi[i], k[i]);
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{ke_scalar, sncndn_scalar, eps_scalar};
  return table;
}

}  // namespace sh2geo::kernels
