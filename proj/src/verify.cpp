#include "sh2geo/verify.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "sh2geo/elliptic.hpp"
#include "sh2geo/expmap.hpp"
#include "sh2geo/optimality.hpp"
#include "sh2geo/pendulum.hpp"
#include "sh2geo/plane.hpp"
#include "sh2geo/synthesis.hpp"

namespace sh2geo {

namespace {

double pt_err(const GroupPoint& a, const GroupPoint& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y),
                   std::abs(a.z - b.z)});
}

CheckReport check(const std::string& name, double err, double tol,
                  std::string note = {}) {
  return {name, err <= tol, err, tol, std::move(note)};
}

std::vector<CheckReport> suite_elliptic() {
  double id1 = 0, id2 = 0;
  for (double k = 0.0; k < 0.995; k += 0.055) {
    for (double phi = -20.0; phi <= 20.0; phi += 0.37) {
      const JacobiTriple j = jacobi_sncndn(phi, k);
      id1 = std::max(id1, std::abs(j.sn * j.sn + j.cn * j.cn - 1.0));
      id2 = std::max(id2,
                     std::abs(j.dn * j.dn + k * k * j.sn * j.sn - 1.0));
    }
  }
  double quasi = 0;
  for (double k = 0.05; k < 1.0; k += 0.05) {
    const double K = complete_K(k), E = complete_E(k);
    for (double phi = -6.0; phi <= 6.0; phi += 0.61)
      quasi = std::max(quasi, std::abs(jacobi_eps(phi + 2.0 * K, k) -
                                       jacobi_eps(phi, k) - 2.0 * E));
  }
  double amf = 0;
  for (double k = 0.05; k < 1.0; k += 0.08)
    for (double u = 0.05; u < 1.55; u += 0.11)
      amf = std::max(amf, std::abs(jacobi_am(incomplete_F(u, k), k) - u));
  double amono = 0;
  double prev = a_fn(1e-3);
  for (double k = 2e-3; k < 1.0; k += 1e-3) {
    const double cur = a_fn(k);
    amono = std::max(amono, prev - cur);
    prev = cur;
  }
  return {check("jacobi identity sn^2+cn^2", id1, 1e-12),
          check("jacobi identity dn^2+k^2 sn^2", id2, 1e-12),
          check("epsilon quasi-periodicity", quasi, 1e-10),
          check("am o F identity", amf, 1e-10),
          check("a(k) monotone", amono, 1e-12)};
}

std::vector<CheckReport> suite_oracle() {
  double worst = 0;
  int n = 0;
  for (int ig = 0; ig < 12; ++ig) {
    for (int ic = 0; ic < 12; ++ic) {
      const Covector lam =
          make_covector(kFourPi * (ig + 0.37) / 12.0, -4.0 + 8.0 * ic / 11.0);
      const double cap = std::min(tt(lam), 12.0);
      for (int it = 1; it <= 3; ++it) {
        const double t = cap * it / 3.5;
        const GeodesicSpec nu{lam, t};
        worst = std::max(worst, pt_err(exp(nu), ode_oracle(nu, 6000)));
        ++n;
      }
    }
  }
  return {check("closed form vs RK4", worst, 1e-7,
                std::to_string(n) + " geodesics")};
}

std::vector<CheckReport> suite_symmetry() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ug(0.0, kFourPi), uc(-4.0, 4.0),
      ut(0.1, 6.0);
  double worst = 0;
  for (int s = 0; s < 200; ++s) {
    const GeodesicSpec nu{make_covector(ug(rng), uc(rng)), ut(rng)};
    const GroupPoint q = exp(nu);
    for (int i = 1; i <= 7; ++i)
      worst = std::max(worst, pt_err(exp(reflect_n(i, nu)), reflect_m(i, q)));
  }
  return {check("Exp o eps^i = eps^i o Exp", worst, 1e-9)};
}

std::vector<CheckReport> suite_roundtrip() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ug(0.0, kFourPi), uc(-4.0, 4.0),
      uf(0.05, 0.95);
  double worst = 0;
  int fails = 0, n = 0;
  while (n < 250) {
    const Covector lam = make_covector(ug(rng), uc(rng));
    const GeodesicSpec nu{lam, uf(rng) * std::min(tt(lam), 20.0)};
    if (!in_ntilde(nu)) continue;
    ++n;
    const GroupPoint q = exp(nu);
    if (std::abs(q.z) < 1e-8) continue;
    try {
      const GeodesicSpec rec = solve_interior(q);
      worst = std::max(worst, pt_err(exp(rec), q));
      worst = std::max(worst, std::abs(rec.t - nu.t));
    } catch (const SolveFailure&) {
      ++fails;
    }
  }
  CheckReport r = check("solve_interior round trip", worst, 1e-6,
                        std::to_string(n) + " targets");
  if (fails) {
    r.pass = false;
    r.note += ", " + std::to_string(fails) + " failures";
  }
  return {r};
}

std::vector<CheckReport> suite_strata() {
  // curve bounds of the plane stratification
  double bound_err = 0;
  for (double y = -50.0; y <= -1e-3; y += 0.37) {
    const double x2 = x2_of_y(y), x3 = x3_of_y(y);
    bound_err = std::max(bound_err, (-y - 2.0) - x2);
    bound_err = std::max(bound_err, x2 - (-y));
    bound_err = std::max(bound_err, std::max(kTwoPi, 2.0 - y) - x3);
    bound_err = std::max(bound_err, x2 - x3);
  }
  // D1 membership vs the sign of z
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ug(0.0, kFourPi), uc(-4.0, 4.0),
      uf(0.02, 0.98);
  int bad = 0;
  for (int s = 0; s < 500; ++s) {
    const Covector lam = make_covector(ug(rng), uc(rng));
    const GeodesicSpec nu{lam, uf(rng) * std::min(tt(lam), 20.0)};
    const double z = exp(nu).z;
    if (in_d1(nu) && z <= 0.0) ++bad;
    if (in_d2(nu) && z >= 0.0) ++bad;
  }
  // reflection equivariance of the stratum indices
  int idx_bad = 0;
  for (const StratumEntry& e : stratum_table()) {
    if (family_of_index(e.index) != family_of_index(e.base)) ++idx_bad;
  }
  return {check("curve bounds", bound_err, 0.0),
          check("D_i vs sign of z", double(bad), 0.0),
          check("stratum table families", double(idx_bad), 0.0)};
}

}  // namespace

std::vector<CheckReport> verify_suite(const std::string& suite) {
  std::vector<CheckReport> out;
  auto append = [&](std::vector<CheckReport> v) {
    for (CheckReport& r : v) out.push_back(std::move(r));
  };
  if (suite == "elliptic") return suite_elliptic();
  if (suite == "oracle") return suite_oracle();
  if (suite == "symmetry") return suite_symmetry();
  if (suite == "roundtrip") return suite_roundtrip();
  if (suite == "strata") return suite_strata();
  if (suite == "all") {
    append(suite_elliptic());
    append(suite_oracle());
    append(suite_symmetry());
    append(suite_roundtrip());
    append(suite_strata());
    return out;
  }
  throw std::domain_error("verify: unknown suite '" + suite + "'");
}

}  // namespace sh2geo
