#pragma once

#include <cstdint>
#include <limits>

namespace sh2geo {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kFourPi = 12.566370614359172953850573533118;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Endpoint in the group, M = SH(2), identified with R^3.
struct GroupPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Point (gamma, c) on the double-covered pendulum phase cylinder.
/// gamma is kept normalized to [0, 4*pi); c is the angular rate.
struct Covector {
  double gamma = 0.0;
  double c = 0.0;
};

/// Energy strata of the phase cylinder.
enum class Stratum : std::uint8_t {
  C1,  // oscillations, E in (-1, 1)
  C2,  // rotations, E > 1
  C3,  // separatrix, E = 1, c != 0
  C4,  // stable equilibria, E = -1
  C5,  // unstable equilibria, E = 1, c = 0
};

/// Stratum of a covector plus branch labels.
///
/// component encodes the connected-component label within the stratum:
///   C1: 0 = C1^0 (s1 > 0), 1 = C1^1 (s1 < 0)
///   C2: 0 = C2^+ (s2 > 0), 1 = C2^- (s2 < 0)
///   C3: 0 = C3^{0+}, 1 = C3^{0-}, 2 = C3^{1+}, 3 = C3^{1-}
///   C4: 0 = gamma near 0, 1 = gamma near 2*pi
///   C5: 0 = gamma near pi, 1 = gamma near 3*pi
struct StratumTag {
  Stratum stratum = Stratum::C1;
  int s1 = 0;  // sgn cos(gamma/2)
  int s2 = 0;  // sgn c
  int component = 0;
};

/// Rectified coordinates of a covector: the pendulum flow is phi -> phi + t
/// in cases C1/C3 and psi -> psi + t/k in case C2 (phi then stores psi).
struct EllipticCoords {
  double phi = 0.0;
  double k = 0.0;
  StratumTag tag;
};

/// A geodesic: initial covector and nonnegative time.
struct GeodesicSpec {
  Covector lambda;
  double t = 0.0;
};

/// Symmetrized time coordinates tau = (phi_t + phi)/2, p = t/2 (C1/C3),
/// divided by k in case C2.
struct TauP {
  double tau = 0.0;
  double p = 0.0;
};

constexpr int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

}  // namespace sh2geo
