#pragma once

#include <array>
#include <utility>

#include "sh2geo/types.hpp"

namespace sh2geo {

/// Families of the plane strata M'_1..M'_40.
enum class PlaneFamily : int {
  kMax,      // Maxwell points: two minimizers
  kConjCut,  // cut and conjugate simultaneously: one minimizer
  kRest,     // neither: one minimizer
  kOrigin,   // the excluded initial point
};

struct PlaneLabel {
  int index = 0;  // 1..40, base index of the containing stratum
  PlaneFamily family = PlaneFamily::kRest;
};

/// Representative of (x, y) in the closed quadrant x >= 0, y <= 0 plus the
/// reflection (0 = identity, else 1..7) that maps the representative back
/// to the original point.
struct QuadrantRep {
  double xq = 0.0;
  double yq = 0.0;
  int reflection = 0;
};

/// Parametric point of gamma_1..gamma_5.  Curves 1,2,3,5 take the modulus
/// k in (0,1); curve 4 takes t in (0, 2*pi).
std::pair<double, double> gamma_curves(int which, double param);

/// Inverts the monotone coordinate of a curve (y for 1,2,3; x for 5) back
/// to the modulus, by bisection.
double invert_curve_k(int which, double coord);

/// Abscissa of gamma_2 resp. gamma_3 over y < 0.
double x2_of_y(double y);
double x3_of_y(double y);

QuadrantRep quadrant_reduce(double x, double y);

/// Stratum of a point of the punctured plane z = 0; curve membership is
/// decided within the given absolute band.
PlaneLabel classify_plane(double x, double y, double band = 1e-9);

PlaneFamily family_of_index(int index);

/// The 40-entry stratum table generated from the reflection identities.
struct StratumEntry {
  int index;  // 1..40
  int base;   // base index in {1,9,17,21,25,29,33,35,39}
  int sx;     // sign of x on the stratum (0 when the stratum lies on x = 0)
  int sy;     // sign of y on the stratum (0 when it lies on y = 0)
  int reflection;  // group element mapping the base stratum onto this one
};
const std::array<StratumEntry, 40>& stratum_table();

}  // namespace sh2geo
