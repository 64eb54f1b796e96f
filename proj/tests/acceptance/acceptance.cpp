// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Grids, tolerances and runtime budgets are fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "sh2geo/elliptic.hpp"
#include "sh2geo/expmap.hpp"
#include "sh2geo/mesh_io.hpp"
#include "sh2geo/optimality.hpp"
#include "sh2geo/pendulum.hpp"
#include "sh2geo/plane.hpp"
#include "sh2geo/sampling.hpp"
#include "sh2geo/synthesis.hpp"

using namespace sh2geo;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

int g_failures = 0;

void report(int crit, const std::string& what, bool pass,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %-34s %s\n", pass ? "PASS" : "FAIL", crit,
              what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[320];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double pt_err(const GroupPoint& a, const GroupPoint& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y),
                   std::abs(a.z - b.z)});
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// 1. closed form vs RK4 oracle on the 40x40 grid x 8 times, <= 1e-7, < 60 s
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int ig = 0; ig < 40; ++ig) {
    for (int ic = 0; ic < 40; ++ic) {
      const Covector lam =
          make_covector(kFourPi * ig / 40.0, -4.0 + 8.0 * ic / 39.0);
      const double cap = std::min(tt(lam), 20.0);
      for (int it = 0; it < 8; ++it) {
        const double t = 0.1 + (cap - 0.1) * it / 7.0;
        const GeodesicSpec nu{lam, t};
        worst = std::max(worst, pt_err(exp(nu), ode_oracle(nu, 20000)));
      }
    }
  }
  const double dt = seconds_since(t0);
  report(1, "closed form vs ODE oracle", worst <= 1e-7 && dt < 60.0,
         fmt("max err %.3e (tol 1e-7), %.1f s (budget 60 s)", worst, dt));
}

// 2. elliptic identities on a 1e5 sweep; epsilon quasi-periodicity
void criterion_2() {
  double id = 0.0;
  long npts = 0;
  for (int ik = 0; ik <= 99; ++ik) {
    const double k = ik / 100.0;
    for (int ip = 0; ip < 1010; ++ip) {
      const double phi = -20.0 + 40.0 * ip / 1009.0;
      const JacobiTriple j = jacobi_sncndn(phi, k);
      id = std::max(id, std::abs(j.sn * j.sn + j.cn * j.cn - 1.0));
      id = std::max(id, std::abs(j.dn * j.dn + k * k * j.sn * j.sn - 1.0));
      ++npts;
    }
  }
  double quasi = 0.0;
  for (int ik = 1; ik < 100; ++ik) {
    const double k = ik / 100.0;
    const double K = complete_K(k), E = complete_E(k);
    for (double phi = -6.0; phi <= 6.0; phi += 0.13)
      quasi = std::max(quasi, std::abs(jacobi_eps(phi + 2.0 * K, k) -
                                       jacobi_eps(phi, k) - 2.0 * E));
  }
  report(2, "elliptic identities", id <= 1e-12 && quasi <= 1e-10,
         fmt("identities %.3e on %ld pts (tol 1e-12), quasi-period %.3e "
             "(tol 1e-10)",
             id, npts, quasi));
}

// 3. cut time values and the limits of t(E)
void criterion_3() {
  bool values_ok = true;
  {
    const Covector c1 = make_covector(2.0 * std::asin(0.5), 0.0);
    values_ok &= std::abs(cut_time(c1) - 4.0 * complete_K(0.5)) < 1e-12;
    const Covector c2 = make_covector(0.0, 3.0);
    const double k2 = std::sqrt(2.0 / (energy(c2) + 1.0));
    values_ok &= std::abs(cut_time(c2) - 4.0 * k2 * complete_K(k2)) < 1e-12;
    values_ok &=
        std::abs(cut_time(make_covector(0.0, 0.0)) - 2.0 * kPi) < 1e-15;
    values_ok &= cut_time(make_covector(kPi, 0.0)) == kInf;
    const double g3 = 0.8;
    values_ok &= cut_time(make_covector(
                     g3, std::sqrt(2.0 * (1.0 + std::cos(g3))))) == kInf;
  }
  const double lim_low = std::abs(tt_of_energy(-1.0 + 1e-8) - 2.0 * kPi);
  const double lim_sep = tt_of_energy(1.0 - 1e-6);
  const double lim_big = tt_of_energy(1e4);
  const bool pass =
      values_ok && lim_low <= 1e-3 && lim_sep > 40.0 && lim_big < 0.2;
  report(3, "cut time values and t(E) limits", pass,
         fmt("values %s, |t(-1+1e-8)-2pi|=%.2e, t(1-1e-6)=%.4f (threshold "
             "40 exceeds the exact value 4K = 34.5625), t(1e4)=%.3f",
             values_ok ? "ok" : "BAD", lim_low, lim_sep, lim_big));
}

// 4. first Maxwell points lie on z = 0
void criterion_4() {
  std::mt19937_64 rng(401);
  std::uniform_real_distribution<double> ug(0.0, kFourPi), uc(-4.0, 4.0);
  double worst = 0.0;
  int n = 0;
  while (n < 1000) {
    const Covector lam = make_covector(ug(rng), uc(rng));
    const Stratum s = classify(lam).stratum;
    if (s != Stratum::C1 && s != Stratum::C2) continue;
    ++n;
    worst = std::max(worst, std::abs(exp({lam, t1_max(lam)}).z));
  }
  report(4, "Maxwell points on the plane z = 0", worst <= 1e-8,
         fmt("max |z| %.3e on 1000 covectors (tol 1e-8)", worst));
}

// 5. reflection equivariance of Exp
void criterion_5() {
  std::mt19937_64 rng(501);
  std::uniform_real_distribution<double> ug(0.0, kFourPi), uc(-4.0, 4.0),
      ut(0.05, 8.0);
  double worst = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const GeodesicSpec nu{make_covector(ug(rng), uc(rng)), ut(rng)};
    const GroupPoint q = exp(nu);
    for (int i = 1; i <= 7; ++i)
      worst = std::max(worst, pt_err(exp(reflect_n(i, nu)), reflect_m(i, q)));
  }
  report(5, "symmetry equivariance", worst <= 1e-9,
         fmt("max err %.3e on 1000 x 7 reflections (tol 1e-9)", worst));
}

// 6. diffeomorphism round trip on 1e4 samples of D1 u D2
void criterion_6() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(601);
  std::uniform_real_distribution<double> ug(0.0, kFourPi), uc(-4.0, 4.0),
      uf(0.02, 0.98);
  double worst = 0.0;
  int n = 0, failures = 0;
  while (n < 10000) {
    const Covector lam = make_covector(ug(rng), uc(rng));
    const GeodesicSpec nu{lam, uf(rng) * std::min(tt(lam), 20.0)};
    if (!in_ntilde(nu)) continue;
    const GroupPoint q = exp(nu);
    if (std::abs(q.z) < 1e-7) continue;  // stay inside the open domains
    ++n;
    try {
      const GeodesicSpec rec = solve_interior(q);
      worst = std::max({worst, std::abs(rec.t - nu.t),
                        std::abs(rec.lambda.c - nu.lambda.c),
                        std::abs(std::remainder(
                            rec.lambda.gamma - nu.lambda.gamma, kFourPi))});
    } catch (const SolveFailure&) {
      ++failures;
    }
  }
  const double dt = seconds_since(t0);
  report(6, "inverse-map round trip",
         worst <= 1e-6 && failures == 0 && dt < 120.0,
         fmt("max chart err %.3e (tol 1e-6), %d non-convergences, %.1f s "
             "(budget 120 s)",
             worst, failures, dt));
}

// 7. conjugate bracket and numeric conjugate time
void criterion_7() {
  bool brackets_ok = true;
  for (int i = 1; i <= 99; ++i) {
    const double k = i / 100.0;
    const double p = p11_root(k);
    brackets_ok &= p > 2.0 * complete_K(k) && p < 3.0 * complete_K(k);
  }
  double res = 0.0;
  bool inside = true;
  int n = 0;
  std::mt19937_64 rng(701);
  std::uniform_real_distribution<double> uphase(0.0, 4.0);
  for (int i = 1; i <= 20; ++i) {
    const double k = i / 21.0;
    for (int in_c2 = 0; in_c2 < 2; ++in_c2) {
      EllipticCoords e;
      e.k = k;
      e.phi = uphase(rng) * complete_K(k);
      e.tag = in_c2 ? StratumTag{Stratum::C2, 0, +1, 0}
                    : StratumTag{Stratum::C1, +1, 0, 0};
      const Covector lam = from_elliptic(e);
      const ConjugateTime ct = conj_time_numeric(lam);
      if (!ct.ok) {
        inside = false;
        continue;
      }
      inside &= ct.t >= ct.bracket_lo * (1.0 - 1e-12) &&
                ct.t <= ct.bracket_hi * (1.0 + 1e-12);
      res = std::max(res, ct.residual);
      ++n;
    }
  }
  report(7, "conjugate bracket and residual",
         brackets_ok && inside && res < 1e-6,
         fmt("p11 in (2K,3K) on 99 k's: %s; %d conjugate times inside the "
             "bracket, max residual %.3e (tol 1e-6)",
             brackets_ok ? "yes" : "NO", n, res));
}

// 8. curve bounds and near-origin asymptotics of gamma_2
void criterion_8() {
  bool bounds_ok = true;
  for (double y = -50.0; y <= -1e-3; y += 0.0499) {
    const double x2 = x2_of_y(y), x3 = x3_of_y(y);
    bounds_ok &= (-y - 2.0 < x2) && (x2 < -y);
    bounds_ok &= x3 > std::max(2.0 * kPi, 2.0 - y);
    bounds_ok &= x2 < x3;
  }
  const auto [x2, y2] = gamma_curves(2, 1e-3);
  const double rel = std::abs(y2 + std::cbrt(kPi) * std::cbrt(x2 * x2)) /
                     std::pow(x2, 2.0 / 3.0);
  report(8, "curve bounds and asymptotics", bounds_ok && rel < 0.02,
         fmt("bounds %s on y in [-50,-1e-3], gamma_2 asymptotics rel err "
             "%.2e (tol 0.02)",
             bounds_ok ? "ok" : "BAD", rel));
}

// 9. synthesis multiplicity
void criterion_9() {
  std::mt19937_64 rng(901);
  std::uniform_real_distribution<double> ug(0.0, kFourPi), uc(-4.0, 4.0),
      uf(0.05, 0.95), uk(0.1, 0.9), uu(0.05, 1.5);
  bool interior_ok = true;
  int n = 0;
  while (n < 1000) {
    const Covector lam = make_covector(ug(rng), uc(rng));
    const GeodesicSpec nu{lam, uf(rng) * std::min(tt(lam), 18.0)};
    if (!in_ntilde(nu)) continue;
    const GroupPoint q = exp(nu);
    if (std::abs(q.z) < 1e-6) continue;
    ++n;
    const SynthesisResult r = minimizers(q);
    interior_ok &= r.minimizers.size() == 1 &&
                   r.classification == SynthesisClass::kInteriorUnique;
  }
  bool max_ok = true;
  double fwd = 0.0;
  for (int s = 0; s < 100; ++s) {
    const double k = uk(rng);
    GroupPoint q;
    if (s % 3 == 0) {  // m1 interior
      const double kp2 = (1.0 - k) * (1.0 + k);
      const double u = uu(rng);
      q = {4.0 * k * a_fn(k) * std::cos(u) / kp2,
           -4.0 * a_fn(k) *
               std::sqrt(1.0 - k * k * std::sin(u) * std::sin(u)) / kp2,
           0.0};
    } else if (s % 3 == 1) {  // m3 interior
      const double kp2 = (1.0 - k) * (1.0 + k);
      const double u = uu(rng);
      q = {4.0 * complete_E(k) *
               std::sqrt(1.0 - k * k * std::sin(u) * std::sin(u)) / kp2,
           -4.0 * k * complete_E(k) * std::cos(u) / kp2, 0.0};
    } else {  // gamma_1
      const auto [x, y] = gamma_curves(1, k);
      q = {x, y, 0.0};
    }
    const SynthesisResult r = minimizers(q);
    max_ok &= r.minimizers.size() == 2 &&
              r.classification == SynthesisClass::kMaxwellPair;
    if (r.minimizers.size() == 2) {
      max_ok &= std::abs(r.minimizers[0].t - r.minimizers[1].t) < 1e-9;
      for (const GeodesicSpec& m : r.minimizers)
        fwd = std::max(fwd, pt_err(exp(m), q));
    }
  }
  bool cc_ok = true;
  for (double k : {0.25, 0.5, 0.75}) {
    const auto [x3, y3] = gamma_curves(3, k);
    const SynthesisResult r = minimizers({x3, y3, 0.0});
    cc_ok &= r.minimizers.size() == 1 &&
             r.classification == SynthesisClass::kConjCutUnique;
  }
  const SynthesisResult rp = minimizers({2.0 * kPi, 0.0, 0.0});
  cc_ok &= rp.minimizers.size() == 1 &&
           rp.classification == SynthesisClass::kConjCutUnique;
  report(9, "synthesis multiplicity",
         interior_ok && max_ok && fwd <= 1e-7 && cc_ok,
         fmt("interior unique %s on 1000; Maxwell pairs %s (fwd %.2e, tol "
             "1e-7); conj-cut unique %s",
             interior_ok ? "ok" : "BAD", max_ok ? "ok" : "BAD", fwd,
             cc_ok ? "ok" : "BAD"));
}

// 10. distance spot values
void criterion_10() {
  SolverConfig tight;
  tight.tol = 1e-12;
  double worst = 0.0;
  worst = std::max(worst, std::abs(distance({kPi, 0.0, 0.0}, tight) - kPi));
  worst = std::max(
      worst, std::abs(distance({2.0 * kPi, 0.0, 0.0}, tight) - 2.0 * kPi));
  for (double tau : {0.5, 1.0, 5.0})
    worst = std::max(worst, std::abs(distance({0.0, 0.0, tau}, tight) - tau));
  report(10, "distance spot values", worst <= 1e-10,
         fmt("max err %.3e (tol 1e-10)", worst));
}

// 11. figure reproduction: spheres at pi and 2pi; four-cusp caustic trace
void criterion_11() {
  SampleGrid grid;
  grid.n_gamma = 96;
  grid.n_c = 96;
  bool spheres_ok = true;
  double reval = 0.0;
  for (double R : {kPi, 2.0 * kPi}) {
    const MeshOutput mesh = sample_sphere(R, grid);
    spheres_ok &= mesh.dropped == 0 && mesh.vertices.size() > 1000;
    const std::string path =
        R > 4.0 ? "/tmp/sh2geo_sphere_2pi.csv" : "/tmp/sh2geo_sphere_pi.csv";
    save_mesh(path, mesh);
    for (const MeshVertex& v : mesh.vertices)
      reval = std::max(reval, pt_err(exp({v.lambda, v.t}), v.p));
  }
  // local caustic section at a fixed small modulus: each loop is a
  // four-cusp curve whose z = 0 cusps lie on the gamma_2 images
  const double k = 0.25;
  const CausticSection sec = caustic_section_c2(k, 240);
  const int cp = count_cusps_xy(sec.loop_pos);
  const int cn = count_cusps_xy(sec.loop_neg);
  int z0_cusps = 0;
  const auto [x2k, y2k] = gamma_curves(2, k);
  bool on_gamma2 = true;
  for (const std::vector<GroupPoint>* loop : {&sec.loop_pos, &sec.loop_neg}) {
    const int nn = int(loop->size());
    for (int i = 0; i < nn; ++i) {
      const GroupPoint &a = (*loop)[i], &b = (*loop)[(i + 1) % nn],
                       &c = (*loop)[(i + 2) % nn];
      if ((b.x - a.x) * (c.x - b.x) + (b.y - a.y) * (c.y - b.y) < 0.0 &&
          std::abs(b.z) < 1e-4) {
        ++z0_cusps;
        on_gamma2 &= std::abs(std::abs(b.x) - x2k) < 2e-3 &&
                     std::abs(std::abs(b.y) - std::abs(y2k)) < 2e-3;
      }
    }
  }
  const bool caustic_ok =
      sec.failed == 0 && cp == 4 && cn == 4 && z0_cusps == 4 && on_gamma2;
  report(11, "figure reproduction", spheres_ok && reval <= 1e-9 && caustic_ok,
         fmt("spheres re-validate to %.2e, dropped 0: %s; section cusps "
             "%d+%d, z=0 cusps %d (want 4) on gamma_2: %s",
             reval, spheres_ok ? "ok" : "BAD", cp, cn, z0_cusps,
             on_gamma2 ? "yes" : "NO"));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (g_failures)
    std::printf("%d criterion(s) failed\n", g_failures);
  else
    std::printf("all criteria passed\n");
  return g_failures == 0 ? 0 : 1;
}
