// SIMD backend built on std::experimental::simd.  This translation unit is
// compiled with the target-specific vector flags (AVX2 on x86_64); it must
// only be entered after the runtime CPU check in dispatch.cpp.
//
// All recursions run a fixed iteration count so that lanes stay in lock
// step; AGM and Carlson duplication are stationary once converged, so the
// extra iterations are no-ops in exact arithmetic.

#include "sh2geo/kernels.hpp"

#include <cstddef>
#include <experimental/simd>

namespace stdx = std::experimental;

namespace sh2geo::kernels {

namespace {

using V = stdx::native_simd<double>;
constexpr std::size_t W = V::size();

constexpr double kPi = 3.14159265358979323846264338327950288;

void ke_lanes(const V& k, V& K, V& E) {
  V a = 1.0;
  V b = stdx::sqrt((1.0 - k) * (1.0 + k));
  V sum = 0.5 * k * k;
  double pw = 0.5;
  for (int i = 0; i < 12; ++i) {
    const V c = 0.5 * (a - b);
    pw *= 2.0;
    sum += pw * (c * c);
    const V am = 0.5 * (a + b);
    b = stdx::sqrt(a * b);
    a = am;
  }
  K = kPi / (a + b);
  E = K * (1.0 - sum);
}

// Bulirsch recursion at fixed depth on an argument reduced modulo 4K.
void sncndn_lanes(const V& u, const V& mc, V& sn, V& cn, V& dn) {
  constexpr int depth = 12;
  V em[depth], en[depth];
  V a = 1.0;
  V emc = mc;
  V c = 0.0;
  for (int i = 0; i < depth; ++i) {
    em[i] = a;
    emc = stdx::sqrt(emc);
    en[i] = emc;
    c = 0.5 * (a + emc);
    emc = emc * a;
    a = c;
  }
  const V ur = u * c;
  const V sn0 = stdx::sin(ur);
  const V cn0 = stdx::cos(ur);
  dn = 1.0;
  V sn_safe = sn0;
  stdx::where(sn0 == 0.0, sn_safe) = 1.0;
  V aa = cn0 / sn_safe;
  c *= aa;
  for (int i = depth - 1; i >= 0; --i) {
    const V b = em[i];
    aa *= c;
    c *= dn;
    dn = (en[i] + aa) / (b + aa);
    aa = c / b;
  }
  const V mag = 1.0 / stdx::sqrt(c * c + 1.0);
  V sgn = 1.0;
  stdx::where(sn0 < 0.0, sgn) = -1.0;
  sn = sgn * mag;
  cn = c * sn;
  stdx::where(sn0 == 0.0, sn) = sn0;
  stdx::where(sn0 == 0.0, cn) = cn0;
  stdx::where(sn0 == 0.0, dn) = 1.0;
}

V rf_lanes(V x, V y, V z) {
  V mu, dx, dy, dz;
  for (int i = 0; i < 11; ++i) {
    const V sx = stdx::sqrt(x), sy = stdx::sqrt(y), sz = stdx::sqrt(z);
    const V lam = sx * (sy + sz) + sy * sz;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
  }
  mu = (x + y + z) / 3.0;
  dx = (mu - x) / mu;
  dy = (mu - y) / mu;
  dz = (mu - z) / mu;
  const V e2 = dx * dy - dz * dz;
  const V e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) /
         stdx::sqrt(mu);
}

V rd_lanes(V x, V y, V z) {
  constexpr double c1 = 3.0 / 14.0, c2 = 1.0 / 6.0, c3 = 9.0 / 22.0,
                   c4 = 3.0 / 26.0, c5 = 0.25 * c3, c6 = 1.5 * c4;
  V sum = 0.0;
  double fac = 1.0;
  for (int i = 0; i < 12; ++i) {
    const V sx = stdx::sqrt(x), sy = stdx::sqrt(y), sz = stdx::sqrt(z);
    const V lam = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (z + lam));
    fac *= 0.25;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
  }
  const V ave = 0.2 * (x + y + 3.0 * z);
  const V dx = (ave - x) / ave;
  const V dy = (ave - y) / ave;
  const V dz = (ave - z) / ave;
  const V ea = dx * dy;
  const V eb = dz * dz;
  const V ec = ea - eb;
  const V ed = ea - 6.0 * eb;
  const V ee = ed + ec + ec;
  return 3.0 * sum +
         fac *
             (1.0 + ed * (-c1 + c5 * ed - c6 * dz * ee) +
              dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea))) /
             (ave * stdx::sqrt(ave));
}

V eps_lanes(const V& phi, const V& k, const V& K, const V& E) {
  const V mc = (1.0 - k) * (1.0 + k);
  const V m = stdx::round(phi / (2.0 * K));
  const V r = phi - 2.0 * K * m;
  V sn, cn, dn;
  sncndn_lanes(r, mc, sn, cn, dn);
  const V rf = rf_lanes(cn * cn, dn * dn, V(1.0));
  const V rd = rd_lanes(cn * cn, dn * dn, V(1.0));
  return sn * rf - (k * k / 3.0) * sn * sn * sn * rd + 2.0 * m * E;
}

template <class Fn>
void for_chunks(std::size_t n, Fn&& fn) {
  std::size_t i = 0;
  for (; i + W <= n; i += W) fn(i, W);
  if (i < n) fn(i, n - i);
}

V load_padded(const double* p, std::size_t m, double pad) {
  if (m == W) return V(p, stdx::element_aligned);
  double buf[W];
  for (std::size_t j = 0; j < W; ++j) buf[j] = j < m ? p[j] : pad;
  return V(buf, stdx::element_aligned);
}

void store_partial(double* p, const V& v, std::size_t m) {
  if (m == W) {
    v.copy_to(p, stdx::element_aligned);
    return;
  }
  double buf[W];
  v.copy_to(buf, stdx::element_aligned);
  for (std::size_t j = 0; j < m; ++j) p[j] = buf[j];
}

void ke_simd(const double* k, std::size_t n, double* K, double* E) {
  for_chunks(n, [&](std::size_t i, std::size_t m) {
    const V kk = load_padded(k + i, m, 0.5);
    V Kv, Ev;
    ke_lanes(kk, Kv, Ev);
    store_partial(K + i, Kv, m);
    store_partial(E + i, Ev, m);
  });
}

void sncndn_simd(const double* phi, const double* k, std::size_t n,
                 double* sn, double* cn, double* dn) {
  for_chunks(n, [&](std::size_t i, std::size_t m) {
    const V kk = load_padded(k + i, m, 0.5);
    const V ph = load_padded(phi + i, m, 0.0);
    V Kv, Ev;
    ke_lanes(kk, Kv, Ev);
    const V K4 = 4.0 * Kv;
    const V r = ph - K4 * stdx::floor(ph / K4);
    V s, c, d;
    sncndn_lanes(r, (1.0 - kk) * (1.0 + kk), s, c, d);
    store_partial(sn + i, s, m);
    store_partial(cn + i, c, m);
    store_partial(dn + i, d, m);
  });
}

void eps_simd(const double* phi, const double* k, const double* Kc,
              const double* Ec, std::size_t n, double* out) {
  for_chunks(n, [&](std::size_t i, std::size_t m) {
    const V kk = load_padded(k + i, m, 0.5);
    const V ph = load_padded(phi + i, m, 0.0);
    const V Kv = load_padded(Kc + i, m, 1.8540746773013719);
    const V Ev = load_padded(Ec + i, m, 1.3506438810476755);
    store_partial(out + i, eps_lanes(ph, kk, Kv, Ev), m);
  });
}

}  // namespace

const KernelTable* simd_table() {
  static const KernelTable table{ke_simd, sncndn_simd, eps_simd};
  return &table;
}

}  // namespace sh2geo::kernels
