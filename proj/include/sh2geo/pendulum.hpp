#pragma once

#include "sh2geo/types.hpp"

namespace sh2geo {

/// Default half-width of the energy band treated as separatrix/equilibrium.
inline constexpr double kSeparatrixTol = 1e-9;

/// Normalize an angle to [0, 4*pi).
double wrap_gamma(double gamma);

Covector make_covector(double gamma, double c);

/// Pendulum energy E = c^2/2 - cos(gamma), E in [-1, +inf).
double energy(const Covector& lambda);

/// Stratum of lambda.  |E-1| <= tol resolves to C3 (c != 0) or C5;
/// |E+1| <= tol with |c| <= tol resolves to C4.
StratumTag classify(const Covector& lambda, double tol = kSeparatrixTol);

/// Rectifying coordinates (phi, k).  Only C1, C2, C3 admit them; other
/// strata throw std::domain_error.
EllipticCoords to_elliptic(const Covector& lambda, double tol = kSeparatrixTol);

Covector from_elliptic(const EllipticCoords& e);

/// Closed-form pendulum flow lambda_t = e^{t H_v}(lambda); C4/C5 are fixed
/// points.
Covector pendulum_flow(const Covector& lambda, double t);

/// Reflection/translation group on the phase cylinder, i in 1..7.
Covector reflect_c(int i, const Covector& lambda);

/// Action of the group on N = C x R+ preserving t: the time-reversing
/// reflections (i = 1,2,5,6) act through the endpoint of the flow.
GeodesicSpec reflect_n(int i, const GeodesicSpec& nu);

/// Action of the group on endpoints in M.
GroupPoint reflect_m(int i, const GroupPoint& q);

}  // namespace sh2geo
