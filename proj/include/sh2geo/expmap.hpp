#pragma once

#include <span>
#include <utility>

#include "sh2geo/types.hpp"

namespace sh2geo {

/// Endpoint of the oscillatory-case geodesic (case C1) at time t.
GroupPoint exp_c1(const EllipticCoords& e, double t);

/// Rotating case C2; e.phi stores psi = phi/k.
GroupPoint exp_c2(const EllipticCoords& e, double t);

/// Separatrix case C3 (k = 1).
GroupPoint exp_c3(const EllipticCoords& e, double t);

/// Stable equilibrium: straight line (s1*t, 0, 0).
GroupPoint exp_c4(int s1, double t);

/// Unstable equilibrium: vertical line (0, 0, sgn_sin*t).
GroupPoint exp_c5(int sgn_sin, double t);

/// The exponential mapping Exp : N = C x R+ -> M, dispatching on the
/// stratum of the covector.
GroupPoint exp(const GeodesicSpec& nu);

/// Grid form of Exp at a common time; routes the C1/C2 bulk through the
/// batch kernels.
void exp_batch(std::span<const Covector> lambdas, double t,
               std::span<GroupPoint> out);

/// Endpoint functionals R1 = y cosh(z/2) - x sinh(z/2),
/// R2 = x cosh(z/2) - y sinh(z/2).
std::pair<double, double> r1r2(const GroupPoint& q);

/// sinh of the z-coordinate in the (tau, p) chart of case C1:
/// sinh z = s1 * 2k sn(p) sn(tau) / (1 - k^2 sn^2(p) sn^2(tau)).
double sinh_z(double p, double tau, double k, int s1);

/// Arclength-normalized extremal controls (u1, u2) = (cos(gamma/2),
/// sin(gamma/2)) evaluated at the current covector.
std::pair<double, double> controls(const Covector& lambda_t);

/// Independent verification backend: fixed-step RK4 integration of the
/// coupled vertical + horizontal system from (lambda, origin).
GroupPoint ode_oracle(const GeodesicSpec& nu, int steps);

/// Symmetrized coordinates (tau, p) of (lambda, t) in the chart of e.
TauP tau_p(const EllipticCoords& e, double t);

}  // namespace sh2geo
