#include "sh2geo/elliptic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sh2geo {

namespace {

// Below this value of k'^2 the functions are evaluated in their k = 1
// hyperbolic limit; the dropped corrections are O(k'^2) ~ 1e-14.
constexpr double kHyperbolicKp2 = 1e-14;

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kHalfPi = 1.57079632679489661923132169163975144;

void require_modulus(double k) {
  if (!(k >= 0.0 && k <= 1.0))
    throw std::domain_error("elliptic: modulus k must lie in [0, 1]");
}

double kp2_of(double k) { return (1.0 - k) * (1.0 + k); }

}  // namespace

double complete_K(double k) {
  require_modulus(k);
  if (k == 1.0) throw std::range_error("complete_K: diverges at k = 1");
  if (k == 0.0) return kHalfPi;
  double a = 1.0;
  double b = std::sqrt(kp2_of(k));
  for (int i = 0; i < 40 && std::abs(a - b) > 1e-17 * a; ++i) {
    const double am = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = am;
  }
  return kPi / (a + b);
}

double complete_E(double k) {
  require_modulus(k);
  if (k == 1.0) return 1.0;
  if (k == 0.0) return kHalfPi;
  double a = 1.0;
  double b = std::sqrt(kp2_of(k));
  double sum = 0.5 * k * k;  // 2^{-1} c_0^2
  double pw = 0.5;
  for (int i = 0; i < 40; ++i) {
    const double c = 0.5 * (a - b);
    pw *= 2.0;
    sum += pw * c * c;
    const double am = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = am;
    if (std::abs(a - b) <= 1e-17 * a) break;
  }
  return kPi / (a + b) * (1.0 - sum);
}

namespace detail {

double carlson_rf(double x, double y, double z) {
  constexpr double errtol = 1e-3;
  double xt = x, yt = y, zt = z, mu = 0, dx = 0, dy = 0, dz = 0;
  for (int i = 0; i < 60; ++i) {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    mu = (xt + yt + zt) / 3.0;
    dx = (mu - xt) / mu;
    dy = (mu - yt) / mu;
    dz = (mu - zt) / mu;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < errtol) break;
  }
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) /
         std::sqrt(mu);
}

double carlson_rd(double x, double y, double z) {
  constexpr double errtol = 1e-3;
  constexpr double c1 = 3.0 / 14.0, c2 = 1.0 / 6.0, c3 = 9.0 / 22.0,
                   c4 = 3.0 / 26.0, c5 = 0.25 * c3, c6 = 1.5 * c4;
  double xt = x, yt = y, zt = z, sum = 0.0, fac = 1.0;
  double ave = 0, dx = 0, dy = 0, dz = 0;
  for (int i = 0; i < 60; ++i) {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (zt + lam));
    fac *= 0.25;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    ave = 0.2 * (xt + yt + 3.0 * zt);
    dx = (ave - xt) / ave;
    dy = (ave - yt) / ave;
    dz = (ave - zt) / ave;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < errtol) break;
  }
  const double ea = dx * dy;
  const double eb = dz * dz;
  const double ec = ea - eb;
  const double ed = ea - 6.0 * eb;
  const double ee = ed + ec + ec;
  return 3.0 * sum +
         fac *
             (1.0 + ed * (-c1 + c5 * ed - c6 * dz * ee) +
              dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea))) /
             (ave * std::sqrt(ave));
}

JacobiTriple sncndn_reduced(double u, double mc) {
  constexpr double ca = 3e-9;
  constexpr int depth = 16;
  double em[depth], en[depth];
  double a = 1.0, dn = 1.0, c = 0.0;
  double emc = mc;
  int l = 0;
  for (int i = 0; i < depth; ++i) {
    l = i;
    em[i] = a;
    emc = std::sqrt(emc);
    en[i] = emc;
    c = 0.5 * (a + emc);
    if (std::abs(a - emc) <= ca * a) break;
    emc *= a;
    a = c;
  }
  const double ur = u * c;
  double sn = std::sin(ur);
  double cn = std::cos(ur);
  if (sn != 0.0) {
    double aa = cn / sn;
    c *= aa;
    for (int i = l; i >= 0; --i) {
      const double b = em[i];
      aa *= c;
      c *= dn;
      dn = (en[i] + aa) / (b + aa);
      aa = c / b;
    }
    const double mag = 1.0 / std::sqrt(c * c + 1.0);
    sn = (sn >= 0.0 ? mag : -mag);
    cn = c * sn;
  }
  return {sn, cn, dn};
}

}  // namespace detail

double incomplete_F(double u, double k) {
  require_modulus(k);
  if (k == 0.0) return u;
  if (k == 1.0) {
    if (std::abs(u) >= kHalfPi)
      throw std::range_error("incomplete_F: diverges for k = 1, |u| >= pi/2");
    return std::asinh(std::tan(u));
  }
  const double n = std::round(u / kPi);
  const double ur = u - n * kPi;
  const double s = std::sin(ur), c = std::cos(ur);
  const double f =
      s * detail::carlson_rf(c * c, 1.0 - (k * s) * (k * s), 1.0);
  return (n == 0.0) ? f : f + 2.0 * n * complete_K(k);
}

double incomplete_E_amp(double u, double k) {
  require_modulus(k);
  if (k == 0.0) return u;
  const double n = std::round(u / kPi);
  const double ur = u - n * kPi;
  const double s = std::sin(ur), c = std::cos(ur);
  if (k == 1.0) return 2.0 * n + s;
  const double d = 1.0 - (k * s) * (k * s);
  const double val = s * detail::carlson_rf(c * c, d, 1.0) -
                     (k * k / 3.0) * s * s * s * detail::carlson_rd(c * c, d, 1.0);
  return (n == 0.0) ? val : val + 2.0 * n * complete_E(k);
}

double jacobi_am(double phi, double k) {
  require_modulus(k);
  if (k == 0.0) return phi;
  if (k == 1.0) return 2.0 * std::atan(std::exp(phi)) - kHalfPi;
  const double K4 = 4.0 * complete_K(k);
  const double m = std::floor(phi / K4);
  const JacobiTriple j = detail::sncndn_reduced(phi - K4 * m, kp2_of(k));
  double th = std::atan2(j.sn, j.cn);
  if (th < 0.0) th += 2.0 * kPi;
  return th + 2.0 * kPi * m;
}

JacobiTriple jacobi_sncndn(double phi, double k) {
  require_modulus(k);
  const double kp2 = kp2_of(k);
  if (kp2 < kHyperbolicKp2) {
    const double se = 1.0 / std::cosh(phi);
    return {std::tanh(phi), se, se};
  }
  if (k == 0.0) return {std::sin(phi), std::cos(phi), 1.0};
  const double K4 = 4.0 * complete_K(k);
  const double r = phi - K4 * std::floor(phi / K4);
  return detail::sncndn_reduced(r, kp2);
}

double jacobi_eps(double phi, double k) {
  require_modulus(k);
  if (k == 0.0) return phi;
  const double kp2 = kp2_of(k);
  if (kp2 < kHyperbolicKp2) return std::tanh(phi);
  return EllipticContext(k).eps(phi);
}

double a_fn(double k) {
  require_modulus(k);
  if (k == 0.0) return 0.0;
  if (k == 1.0) return 1.0;
  return complete_E(k) - kp2_of(k) * complete_K(k);
}

EllipticContext::EllipticContext(double k) : k_(k), kp2_(kp2_of(k)) {
  require_modulus(k);
  if (kp2_ < kHyperbolicKp2) {
    K_ = std::numeric_limits<double>::infinity();
    E_ = 1.0;
    return;
  }
  K_ = complete_K(k);
  E_ = complete_E(k);
}

JacobiTriple EllipticContext::sncndn(double phi) const {
  if (kp2_ < kHyperbolicKp2) {
    const double se = 1.0 / std::cosh(phi);
    return {std::tanh(phi), se, se};
  }
  if (k_ == 0.0) return {std::sin(phi), std::cos(phi), 1.0};
  const double K4 = 4.0 * K_;
  const double r = phi - K4 * std::floor(phi / K4);
  return detail::sncndn_reduced(r, kp2_);
}

double EllipticContext::eps(double phi) const {
  if (kp2_ < kHyperbolicKp2) return std::tanh(phi);
  if (k_ == 0.0) return phi;
  const double m = std::round(phi / (2.0 * K_));
  const JacobiTriple j = sncndn(phi - 2.0 * K_ * m);
  const double s = j.sn;
  const double val =
      s * detail::carlson_rf(j.cn * j.cn, j.dn * j.dn, 1.0) -
      (k_ * k_ / 3.0) * s * s * s *
          detail::carlson_rd(j.cn * j.cn, j.dn * j.dn, 1.0);
  return val + 2.0 * m * E_;
}

}  // namespace sh2geo
