#include "sh2geo/pendulum.hpp"

#include <cmath>
#include <stdexcept>

#include "sh2geo/elliptic.hpp"

namespace sh2geo {

double wrap_gamma(double gamma) {
  double g = std::fmod(gamma, kFourPi);
  if (g < 0.0) g += kFourPi;
  if (g >= kFourPi) g = 0.0;
  return g;
}

Covector make_covector(double gamma, double c) {
  return Covector{wrap_gamma(gamma), c};
}

double energy(const Covector& lambda) {
  return 0.5 * lambda.c * lambda.c - std::cos(lambda.gamma);
}

StratumTag classify(const Covector& lambda, double tol) {
  const double E = energy(lambda);
  const double half = 0.5 * lambda.gamma;
  StratumTag tag;
  tag.s1 = sign_of(std::cos(half));
  tag.s2 = sign_of(lambda.c);
  if (std::abs(E + 1.0) <= tol && std::abs(lambda.c) <= tol) {
    tag.stratum = Stratum::C4;
    tag.component = std::cos(half) >= 0.0 ? 0 : 1;  // gamma near 0 vs 2*pi
    return tag;
  }
  if (std::abs(E - 1.0) <= tol) {
    if (std::abs(lambda.c) <= tol) {
      tag.stratum = Stratum::C5;
      tag.component = std::sin(half) >= 0.0 ? 0 : 1;  // gamma near pi vs 3*pi
      return tag;
    }
    tag.stratum = Stratum::C3;
    tag.component = (tag.s1 > 0 ? 0 : 2) + (tag.s2 > 0 ? 0 : 1);
    return tag;
  }
  if (E < 1.0) {
    tag.stratum = Stratum::C1;
    tag.component = tag.s1 > 0 ? 0 : 1;
    return tag;
  }
  tag.stratum = Stratum::C2;
  tag.component = tag.s2 > 0 ? 0 : 1;
  return tag;
}

EllipticCoords to_elliptic(const Covector& lambda, double tol) {
  const StratumTag tag = classify(lambda, tol);
  const double E = energy(lambda);
  const double half = 0.5 * lambda.gamma;
  EllipticCoords e;
  e.tag = tag;
  switch (tag.stratum) {
    case Stratum::C1: {
      // sin(gamma/2) = s1 k sn(phi), c = 2 k cn(phi)
      const double k = std::sqrt(0.5 * (E + 1.0));
      const double sn = tag.s1 * std::sin(half) / k;
      const double cn = lambda.c / (2.0 * k);
      const double th = std::atan2(sn, cn);
      double phi = incomplete_F(th, k);
      const double K4 = 4.0 * complete_K(k);
      if (phi < 0.0) phi += K4;
      e.phi = phi;
      e.k = k;
      return e;
    }
    case Stratum::C2: {
      // sin(gamma/2) = s2 sn(psi), cos(gamma/2) = cn(psi), c = 2 s2 dn(psi)/k
      const double k = std::sqrt(2.0 / (E + 1.0));
      const double sn = tag.s2 * std::sin(half);
      const double cn = std::cos(half);
      const double th = std::atan2(sn, cn);
      double psi = incomplete_F(th, k);
      const double K4 = 4.0 * complete_K(k);
      if (psi < 0.0) psi += K4;
      e.phi = psi;
      e.k = k;
      return e;
    }
    case Stratum::C3: {
      // cos(gamma/2) = s1 sech(phi), sin(gamma/2) = s1 s2 tanh(phi),
      // c = 2 s2 sech(phi)
      e.phi = std::asinh(2.0 * tag.s1 * std::sin(half) / lambda.c);
      e.k = 1.0;
      return e;
    }
    default:
      throw std::domain_error("to_elliptic: C4/C5 have no elliptic chart");
  }
}

Covector from_elliptic(const EllipticCoords& e) {
  const StratumTag& tag = e.tag;
  switch (tag.stratum) {
    case Stratum::C1: {
      const JacobiTriple j = jacobi_sncndn(e.phi, e.k);
      const double s1 = tag.s1 >= 0 ? 1.0 : -1.0;
      const double gamma = 2.0 * std::atan2(s1 * e.k * j.sn, s1 * j.dn);
      return make_covector(gamma, 2.0 * e.k * j.cn);
    }
    case Stratum::C2: {
      const JacobiTriple j = jacobi_sncndn(e.phi, e.k);
      const double s2 = tag.s2 >= 0 ? 1.0 : -1.0;
      const double gamma = 2.0 * std::atan2(s2 * j.sn, j.cn);
      return make_covector(gamma, 2.0 * s2 * j.dn / e.k);
    }
    case Stratum::C3: {
      const double s1 = tag.s1 >= 0 ? 1.0 : -1.0;
      const double s2 = tag.s2 >= 0 ? 1.0 : -1.0;
      const double th = std::tanh(e.phi);
      const double se = 1.0 / std::cosh(e.phi);
      const double gamma = 2.0 * std::atan2(s1 * s2 * th, s1 * se);
      return make_covector(gamma, 2.0 * s2 * se);
    }
    default:
      throw std::domain_error("from_elliptic: invalid stratum");
  }
}

Covector pendulum_flow(const Covector& lambda, double t) {
  const StratumTag tag = classify(lambda);
  if (tag.stratum == Stratum::C4 || tag.stratum == Stratum::C5) return lambda;
  EllipticCoords e = to_elliptic(lambda);
  e.phi += (tag.stratum == Stratum::C2) ? t / e.k : t;
  return from_elliptic(e);
}

Covector reflect_c(int i, const Covector& lambda) {
  const double g = lambda.gamma;
  const double c = lambda.c;
  switch (i) {
    case 1: return make_covector(g, -c);
    case 2: return make_covector(-g, c);
    case 3: return make_covector(-g, -c);
    case 4: return make_covector(g + kTwoPi, c);
    case 5: return make_covector(g + kTwoPi, -c);
    case 6: return make_covector(-g + kTwoPi, c);
    case 7: return make_covector(-g + kTwoPi, -c);
    default: throw std::domain_error("reflect_c: index must be 1..7");
  }
}

GeodesicSpec reflect_n(int i, const GeodesicSpec& nu) {
  switch (i) {
    case 1:
    case 2:
    case 5:
    case 6:  // time-reversing: act on the flow endpoint
      return {reflect_c(i, pendulum_flow(nu.lambda, nu.t)), nu.t};
    case 3:
    case 4:
    case 7:
      return {reflect_c(i, nu.lambda), nu.t};
    default:
      throw std::domain_error("reflect_n: index must be 1..7");
  }
}

GroupPoint reflect_m(int i, const GroupPoint& q) {
  const double ch = std::cosh(q.z);
  const double sh = std::sinh(q.z);
  switch (i) {
    case 1: return {q.x * ch - q.y * sh, q.x * sh - q.y * ch, q.z};
    case 2: return {q.x * ch - q.y * sh, -q.x * sh + q.y * ch, -q.z};
    case 3: return {q.x, -q.y, -q.z};
    case 4: return {-q.x, q.y, -q.z};
    case 5: return {-q.x * ch + q.y * sh, q.x * sh - q.y * ch, -q.z};
    case 6: return {-q.x * ch + q.y * sh, -q.x * sh + q.y * ch, q.z};
    case 7: return {-q.x, -q.y, q.z};
    default: throw std::domain_error("reflect_m: index must be 1..7");
  }
}

}  // namespace sh2geo
