#include "sh2geo/expmap.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sh2geo/elliptic.hpp"
#include "sh2geo/kernels.hpp"
#include "sh2geo/pendulum.hpp"

namespace sh2geo {

namespace {

// dn - k*cn without cancellation: equals k'^2/(dn + k*cn) when cn >= 0.
double dnkcn(const JacobiTriple& j, double k, double kp2) {
  return j.cn < 0.0 ? j.dn - k * j.cn : kp2 / (j.dn + k * j.cn);
}

double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - 0.6931471805599453094172321;
}

struct C1Terms {
  double x, y, z;
};

// Shared assembly for cases C1/C2: both read off the same combinations of
// w = 1/(dn - k cn) at the initial phase.
C1Terms assemble(double k, double kp2, const JacobiTriple& ja,
                 const JacobiTriple& jb, double dE, double ds) {
  const double DA = dnkcn(ja, k, kp2);
  const double DB = dnkcn(jb, k, kp2);
  const double w = 1.0 / DA;
  // 1/(w (1-k^2)) = DA/(1-k^2), in the cancellation-free form.
  const double iwk =
      ja.cn < 0.0 ? (ja.dn - k * ja.cn) / kp2 : 1.0 / (ja.dn + k * ja.cn);
  C1Terms t;
  t.x = (w + iwk) * dE + k * (iwk - w) * ds;
  t.y = (w - iwk) * dE - k * (iwk + w) * ds;
  t.z = std::log(DB) - std::log(DA);
  return t;
}

}  // namespace

GroupPoint exp_c1(const EllipticCoords& e, double t) {
  const double k = e.k;
  const double kp2 = (1.0 - k) * (1.0 + k);
  const double phit = e.phi + t;
  const EllipticContext ctx(k);
  const JacobiTriple ja = ctx.sncndn(e.phi);
  const JacobiTriple jb = ctx.sncndn(phit);
  const double dE = ctx.eps(phit) - ctx.eps(e.phi);
  const double s1 = e.tag.s1 >= 0 ? 1.0 : -1.0;
  const C1Terms T = assemble(k, kp2, ja, jb, dE, jb.sn - ja.sn);
  return {0.5 * s1 * T.x, 0.5 * T.y, s1 * T.z};
}

GroupPoint exp_c2(const EllipticCoords& e, double t) {
  const double k = e.k;
  const double kp2 = (1.0 - k) * (1.0 + k);
  const double psi = e.phi;
  const double psit = psi + t / k;
  const EllipticContext ctx(k);
  const JacobiTriple ja = ctx.sncndn(psi);
  const JacobiTriple jb = ctx.sncndn(psit);
  const double dE = ctx.eps(psit) - ctx.eps(psi) - kp2 * (t / k);
  const double s2 = e.tag.s2 >= 0 ? 1.0 : -1.0;
  const C1Terms T = assemble(k, kp2, ja, jb, dE, jb.sn - ja.sn);
  // Case C2 recombines the same terms with x and -s2*y swapped.
  return {-0.5 * T.y, -0.5 * s2 * T.x, s2 * T.z};
}

GroupPoint exp_c3(const EllipticCoords& e, double t) {
  const double phi = e.phi;
  const double phit = phi + t;
  const double w = std::cosh(phi);
  const double dtanh = std::tanh(phit) - std::tanh(phi);
  const double s1 = e.tag.s1 >= 0 ? 1.0 : -1.0;
  const double s2 = e.tag.s2 >= 0 ? 1.0 : -1.0;
  return {0.5 * s1 * (t / w + w * dtanh), 0.5 * s2 * (t / w - w * dtanh),
          s1 * s2 * (log_cosh(phit) - log_cosh(phi))};
}

GroupPoint exp_c4(int s1, double t) { return {s1 >= 0 ? t : -t, 0.0, 0.0}; }

GroupPoint exp_c5(int sgn_sin, double t) {
  return {0.0, 0.0, sgn_sin >= 0 ? t : -t};
}

GroupPoint exp(const GeodesicSpec& nu) {
  const StratumTag tag = classify(nu.lambda);
  switch (tag.stratum) {
    case Stratum::C4:
      return exp_c4(tag.component == 0 ? 1 : -1, nu.t);
    case Stratum::C5:
      return exp_c5(tag.component == 0 ? 1 : -1, nu.t);
    case Stratum::C1:
      return exp_c1(to_elliptic(nu.lambda), nu.t);
    case Stratum::C2:
      return exp_c2(to_elliptic(nu.lambda), nu.t);
    case Stratum::C3:
      return exp_c3(to_elliptic(nu.lambda), nu.t);
  }
  return {};
}

void exp_batch(std::span<const Covector> lambdas, double t,
               std::span<GroupPoint> out) {
  assert(lambdas.size() == out.size());
  const std::size_t n = lambdas.size();
  // Gather the C1/C2 bulk; everything else evaluates scalar.
  std::vector<std::size_t> idx;
  idx.reserve(n);
  std::vector<EllipticCoords> coords(n);
  for (std::size_t i = 0; i < n; ++i) {
    const StratumTag tag = classify(lambdas[i]);
    if (tag.stratum == Stratum::C1 || tag.stratum == Stratum::C2) {
      coords[i] = to_elliptic(lambdas[i]);
      idx.push_back(i);
    } else {
      out[i] = exp({lambdas[i], t});
    }
  }
  const std::size_t m = idx.size();
  if (m == 0) return;
  std::vector<double> k(m), pa(m), pb(m), K(m), E(m);
  std::vector<double> snA(m), cnA(m), dnA(m), snB(m), cnB(m), dnB(m);
  std::vector<double> eA(m), eB(m);
  for (std::size_t j = 0; j < m; ++j) {
    const EllipticCoords& e = coords[idx[j]];
    k[j] = e.k;
    pa[j] = e.phi;
    pb[j] = e.phi + (e.tag.stratum == Stratum::C2 ? t / e.k : t);
  }
  const kernels::KernelTable& kt = kernels::active();
  kt.ke(k.data(), m, K.data(), E.data());
  kt.sncndn(pa.data(), k.data(), m, snA.data(), cnA.data(), dnA.data());
  kt.sncndn(pb.data(), k.data(), m, snB.data(), cnB.data(), dnB.data());
  kt.eps(pa.data(), k.data(), K.data(), E.data(), m, eA.data());
  kt.eps(pb.data(), k.data(), K.data(), E.data(), m, eB.data());
  for (std::size_t j = 0; j < m; ++j) {
    const EllipticCoords& e = coords[idx[j]];
    const double kp2 = (1.0 - k[j]) * (1.0 + k[j]);
    const JacobiTriple ja{snA[j], cnA[j], dnA[j]};
    const JacobiTriple jb{snB[j], cnB[j], dnB[j]};
    const double ds = jb.sn - ja.sn;
    if (e.tag.stratum == Stratum::C1) {
      const double s1 = e.tag.s1 >= 0 ? 1.0 : -1.0;
      const C1Terms T = assemble(k[j], kp2, ja, jb, eB[j] - eA[j], ds);
      out[idx[j]] = {0.5 * s1 * T.x, 0.5 * T.y, s1 * T.z};
    } else {
      const double s2 = e.tag.s2 >= 0 ? 1.0 : -1.0;
      const double dE = eB[j] - eA[j] - kp2 * (t / k[j]);
      const C1Terms T = assemble(k[j], kp2, ja, jb, dE, ds);
      out[idx[j]] = {-0.5 * T.y, -0.5 * s2 * T.x, s2 * T.z};
    }
  }
}

std::pair<double, double> r1r2(const GroupPoint& q) {
  const double ch = std::cosh(0.5 * q.z);
  const double sh = std::sinh(0.5 * q.z);
  return {q.y * ch - q.x * sh, q.x * ch - q.y * sh};
}

double sinh_z(double p, double tau, double k, int s1) {
  const JacobiTriple jp = jacobi_sncndn(p, k);
  const JacobiTriple jt = jacobi_sncndn(tau, k);
  const double delta = 1.0 - k * k * jp.sn * jp.sn * jt.sn * jt.sn;
  if (!(delta > 0.0)) throw std::domain_error("sinh_z: degenerate Delta");
  return (s1 >= 0 ? 1.0 : -1.0) * 2.0 * k * jp.sn * jt.sn / delta;
}

std::pair<double, double> controls(const Covector& lambda_t) {
  const double h = 0.5 * lambda_t.gamma;
  return {std::cos(h), std::sin(h)};
}

GroupPoint ode_oracle(const GeodesicSpec& nu, int steps) {
  if (steps < 1) throw std::domain_error("ode_oracle: steps must be >= 1");
  double y[5] = {nu.lambda.gamma, nu.lambda.c, 0.0, 0.0, 0.0};
  const double h = nu.t / steps;
  auto rhs = [](const double* s, double* d) {
    double sh, ch;
    sh = std::sin(0.5 * s[0]);
    ch = std::cos(0.5 * s[0]);
    const double ez = std::exp(s[4]);
    const double coshz = 0.5 * (ez + 1.0 / ez);
    const double sinhz = 0.5 * (ez - 1.0 / ez);
    d[0] = s[1];
    d[1] = -2.0 * sh * ch;  // -sin(gamma)
    d[2] = ch * coshz;
    d[3] = ch * sinhz;
    d[4] = sh;
  };
  double k1[5], k2[5], k3[5], k4[5], tmp[5];
  for (int i = 0; i < steps; ++i) {
    rhs(y, k1);
    for (int j = 0; j < 5; ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
    rhs(tmp, k2);
    for (int j = 0; j < 5; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
    rhs(tmp, k3);
    for (int j = 0; j < 5; ++j) tmp[j] = y[j] + h * k3[j];
    rhs(tmp, k4);
    for (int j = 0; j < 5; ++j)
      y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  return {y[2], y[3], y[4]};
}

TauP tau_p(const EllipticCoords& e, double t) {
  switch (e.tag.stratum) {
    case Stratum::C1:
    case Stratum::C3:
      return {e.phi + 0.5 * t, 0.5 * t};
    case Stratum::C2:
      return {e.phi + 0.5 * t / e.k, 0.5 * t / e.k};
    default:
      throw std::domain_error("tau_p: requires C1, C2 or C3");
  }
}

}  // namespace sh2geo
