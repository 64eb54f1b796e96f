#pragma once

namespace sh2geo {

/// Jacobi elliptic function values at a common argument and modulus.
/// Satisfies sn^2 + cn^2 = 1 and dn^2 + k^2 sn^2 = 1.
struct JacobiTriple {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
};

/// Complete elliptic integral of the first kind K(k) = F(pi/2, k),
/// computed by arithmetic-geometric-mean iteration.
/// Throws std::domain_error for k outside [0,1] and std::range_error at
/// k = 1 where the integral diverges.
double complete_K(double k);

/// Complete elliptic integral of the second kind, E(0) = pi/2, E(1) = 1.
double complete_E(double k);

/// Incomplete integral of the first kind in amplitude form,
/// F(u,k) = int_0^u dt / sqrt(1 - k^2 sin^2 t).  Odd in u and
/// quasi-periodic: F(u+pi,k) = F(u,k) + 2K(k).  For k = 1 the integral
/// diverges at |u| >= pi/2 (std::range_error).
double incomplete_F(double u, double k);

/// Incomplete integral of the second kind in amplitude form,
/// E(u,k) = int_0^u sqrt(1 - k^2 sin^2 t) dt.
double incomplete_E_amp(double u, double k);

/// Amplitude function, the inverse of u -> F(u,k).  For k = 1 reduces to
/// the gudermannian 2*atan(e^phi) - pi/2.
double jacobi_am(double phi, double k);

/// sn, cn, dn by the descending Landen (Bulirsch) recursion.  4K-periodic
/// for k < 1; reduces to (tanh, sech, sech) in the k -> 1 limit.
JacobiTriple jacobi_sncndn(double phi, double k);

/// Jacobi epsilon function E(phi,k) = int_0^phi dn^2(t,k) dt, evaluated as
/// the incomplete second integral at the amplitude plus the quasi-period
/// 2E(k) per 2K(k).
double jacobi_eps(double phi, double k);

/// a(k) = E(k) - (1-k^2) K(k), a strictly increasing convex bijection of
/// (0,1) onto (0,1); endpoints return the limits 0 and 1.
double a_fn(double k);

/// Per-modulus context caching K(k) and E(k) for repeated evaluations
/// along one geodesic.
class EllipticContext {
 public:
  explicit EllipticContext(double k);

  double k() const { return k_; }
  double kp2() const { return kp2_; }  // complementary k'^2 = 1 - k^2
  double K() const { return K_; }
  double E() const { return E_; }

  JacobiTriple sncndn(double phi) const;
  double eps(double phi) const;

 private:
  double k_;
  double kp2_;
  double K_;
  double E_;
};

namespace detail {
// Carlson symmetric forms (degenerate cases with one zero argument allowed).
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);
// Bulirsch recursion on an argument already reduced modulo 4K; mc = k'^2.
JacobiTriple sncndn_reduced(double u, double mc);
}  // namespace detail

}  // namespace sh2geo
