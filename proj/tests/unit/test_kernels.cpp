#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "sh2geo/elliptic.hpp"
#include "sh2geo/expmap.hpp"
#include "sh2geo/kernels.hpp"
#include "sh2geo/pendulum.hpp"

using namespace sh2geo;

namespace {

struct Inputs {
  std::vector<double> phi, k;
};

Inputs random_inputs(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uphi(-30.0, 30.0);
  std::uniform_real_distribution<double> uk(0.0, 1.0);
  Inputs in;
  in.phi.resize(n);
  in.k.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    in.phi[i] = uphi(rng);
    // cover the full admissible modulus range including both edges
    double k = uk(rng);
    if (i % 17 == 0) k = 0.0;
    if (i % 23 == 0) k = std::sqrt(1.0 - 1e-13);
    if (i % 29 == 0) k = 1e-9;
    in.k[i] = std::min(k, std::sqrt(1.0 - 1e-13));
    if (1.0 - in.k[i] * in.k[i] < 1e-13) in.k[i] = std::sqrt(1.0 - 1e-13);
  }
  return in;
}

}  // namespace

TEST_CASE("scalar batch matches the scalar functions") {
  const Inputs in = random_inputs(257, 11);
  const std::size_t n = in.phi.size();
  std::vector<double> K(n), E(n), sn(n), cn(n), dn(n), eps(n);
  const kernels::KernelTable& t = kernels::scalar_table();
  t.ke(in.k.data(), n, K.data(), E.data());
  t.sncndn(in.phi.data(), in.k.data(), n, sn.data(), cn.data(), dn.data());
  t.eps(in.phi.data(), in.k.data(), K.data(), E.data(), n, eps.data());
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(K[i] == complete_K(in.k[i]));
    CHECK(E[i] == complete_E(in.k[i]));
    const JacobiTriple j = jacobi_sncndn(in.phi[i], in.k[i]);
    CHECK(sn[i] == j.sn);
    CHECK(cn[i] == j.cn);
    CHECK(dn[i] == j.dn);
    CHECK(eps[i] == jacobi_eps(in.phi[i], in.k[i]));
  }
}

TEST_CASE("simd backend is equivalent to the scalar reference") {
  const kernels::KernelTable* simd = kernels::simd_table();
  if (!simd || !kernels::simd_available()) {
    MESSAGE("simd backend not available; skipping equivalence sweep");
    return;
  }
  const Inputs in = random_inputs(4096, 7);
  const std::size_t n = in.phi.size();
  std::vector<double> Ks(n), Es(n), Kv(n), Ev(n);
  kernels::scalar_table().ke(in.k.data(), n, Ks.data(), Es.data());
  simd->ke(in.k.data(), n, Kv.data(), Ev.data());
  double ek = 0, ee = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ek = std::max(ek, std::abs(Ks[i] - Kv[i]) / std::max(1.0, Ks[i]));
    ee = std::max(ee, std::abs(Es[i] - Ev[i]));
  }
  CHECK(ek < 1e-12);
  CHECK(ee < 1e-12);

  std::vector<double> a1(n), a2(n), a3(n), b1(n), b2(n), b3(n);
  kernels::scalar_table().sncndn(in.phi.data(), in.k.data(), n, a1.data(),
                                 a2.data(), a3.data());
  simd->sncndn(in.phi.data(), in.k.data(), n, b1.data(), b2.data(), b3.data());
  double es = 0;
  for (std::size_t i = 0; i < n; ++i)
    es = std::max({es, std::abs(a1[i] - b1[i]), std::abs(a2[i] - b2[i]),
                   std::abs(a3[i] - b3[i])});
  CHECK(es < 1e-11);

  std::vector<double> e1(n), e2(n);
  kernels::scalar_table().eps(in.phi.data(), in.k.data(), Ks.data(), Es.data(),
                              n, e1.data());
  simd->eps(in.phi.data(), in.k.data(), Ks.data(), Es.data(), n, e2.data());
  double eeps = 0;
  for (std::size_t i = 0; i < n; ++i)
    eeps = std::max(eeps, std::abs(e1[i] - e2[i]));
  CHECK(eeps < 1e-10);
}

TEST_CASE("backend selection") {
  const kernels::Backend prev = kernels::active_backend();
  CHECK(kernels::set_backend(kernels::Backend::kScalar));
  CHECK(kernels::active_backend() == kernels::Backend::kScalar);
  if (kernels::simd_available()) {
    CHECK(kernels::set_backend(kernels::Backend::kSimd));
    CHECK(kernels::active_backend() == kernels::Backend::kSimd);
  }
  kernels::set_backend(prev);
}

TEST_CASE("exp_batch agrees with pointwise exp on both backends") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ug(0.0, kFourPi), uc(-5.0, 5.0);
  std::vector<Covector> lams(300);
  for (Covector& l : lams) l = make_covector(ug(rng), uc(rng));
  // force the scalar fallback paths into the same batch
  lams.push_back(make_covector(0.0, 0.0));          // C4
  lams.push_back(make_covector(3.14159265358979323846, 0.0));  // C5
  lams.push_back(
      make_covector(0.5, std::sqrt(2.0 * (1.0 + std::cos(0.5)))));  // C3
  const double t = 2.7;
  std::vector<GroupPoint> ref(lams.size());
  for (std::size_t i = 0; i < lams.size(); ++i) ref[i] = exp({lams[i], t});

  const kernels::Backend prev = kernels::active_backend();
  for (kernels::Backend b :
       {kernels::Backend::kScalar, kernels::Backend::kSimd}) {
    if (!kernels::set_backend(b)) continue;
    std::vector<GroupPoint> got(lams.size());
    exp_batch(lams, t, got);
    double worst = 0;
    for (std::size_t i = 0; i < lams.size(); ++i)
      worst = std::max({worst, std::abs(got[i].x - ref[i].x),
                        std::abs(got[i].y - ref[i].y),
                        std::abs(got[i].z - ref[i].z)});
    CHECK(worst < 1e-10);
  }
  kernels::set_backend(prev);
}
