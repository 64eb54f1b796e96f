#pragma once

#include <utility>

#include "sh2geo/types.hpp"

namespace sh2geo {

/// First Maxwell / first conjugate / cut time of a covector; +inf encodes
/// strata whose geodesics never lose optimality.
struct OptimalityBounds {
  double t_max1 = kInf;
  double t_conj_lo = kInf;
  double t_conj_hi = kInf;
  double t_cut = kInf;
};

/// Result of the numeric first-conjugate-time search.  When ok is false the
/// Jacobian determinant had no detectable zero inside [lo, hi].
struct ConjugateTime {
  double t = kInf;
  bool ok = true;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double residual = 0.0;  // |det| at the returned time, scaled
};

/// First Maxwell time: 4K(k) on C1, 4kK(k) on C2, +inf otherwise.
double t1_max(const Covector& lambda);

/// f1(p) = cn(p) E(p) - sn(p) dn(p); its first positive root p11 bounds the
/// conjugate time.
double f1(double p, double k);

/// f2(p) = dn(p) E(p) - k^2 sn(p) cn(p).
double f2(double p, double k);

/// First positive root of f1, bracketed in (2K, 3K); memoized per modulus.
double p11_root(double k);

/// (lower, upper) bounds for the first conjugate time.
std::pair<double, double> t1_conj_bounds(const Covector& lambda);

/// The bound t(lambda) = min(t1_max, t1_conj); a function of the energy only.
double tt(const Covector& lambda);

/// t as a function of the pendulum energy.
double tt_of_energy(double E, double tol = 1e-12);

/// Exact cut time (equals tt).
double cut_time(const Covector& lambda);

/// Central-difference determinant of D Exp in the chart (phi, k, t) for
/// C1/C2 and (gamma, c, t) otherwise.
double jacobian_det(const GeodesicSpec& nu, double h = 1e-5);

/// First zero of t -> jacobian_det(lambda, t) inside the conjugate bracket;
/// exact values 2*pi and +inf on C4 and C3/C5.
ConjugateTime conj_time_numeric(const Covector& lambda);

OptimalityBounds optimality_bounds(const Covector& lambda);

/// Membership in the open diffeomorphism domains D1 (z > 0 side) and D2,
/// and in their union with N5.
bool in_d1(const GeodesicSpec& nu);
bool in_d2(const GeodesicSpec& nu);
bool in_ntilde(const GeodesicSpec& nu);

}  // namespace sh2geo
