#include "sh2geo/plane.hpp"

#include <cmath>
#include <stdexcept>

#include "sh2geo/elliptic.hpp"

namespace sh2geo {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double y1_of_k(double k) { return -4.0 * a_fn(k) / std::sqrt((1.0 - k) * (1.0 + k)); }
double x2_of_k(double k) { return 4.0 * k * a_fn(k) / ((1.0 - k) * (1.0 + k)); }
double y2_of_k(double k) { return -4.0 * a_fn(k) / ((1.0 - k) * (1.0 + k)); }
double x3_of_k(double k) { return 4.0 * complete_E(k) / ((1.0 - k) * (1.0 + k)); }
double y3_of_k(double k) { return -4.0 * k * complete_E(k) / ((1.0 - k) * (1.0 + k)); }
double x5_of_k(double k) { return 4.0 * complete_E(k) / std::sqrt((1.0 - k) * (1.0 + k)); }

// Bisection for a monotone curve coordinate; `increasing` refers to the
// coordinate as a function of k.
double invert_monotone(double (*f)(double), double target, bool increasing) {
  double lo = 1e-12, hi = 1.0 - 1e-14;
  double flo = f(lo), fhi = f(hi);
  const bool in_range =
      increasing ? (target >= flo && target <= fhi)
                 : (target <= flo && target >= fhi);
  if (!in_range)
    throw std::domain_error("invert_curve_k: coordinate outside curve range");
  for (int i = 0; i < 120 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < target) == (flo < target)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::pair<double, double> gamma_curves(int which, double param) {
  switch (which) {
    case 1:
      if (!(param > 0.0 && param < 1.0))
        throw std::domain_error("gamma_curves: k outside (0,1)");
      return {0.0, y1_of_k(param)};
    case 2:
      if (!(param > 0.0 && param < 1.0))
        throw std::domain_error("gamma_curves: k outside (0,1)");
      return {x2_of_k(param), y2_of_k(param)};
    case 3:
      if (!(param > 0.0 && param < 1.0))
        throw std::domain_error("gamma_curves: k outside (0,1)");
      return {x3_of_k(param), y3_of_k(param)};
    case 4:
      if (!(param > 0.0 && param < 2.0 * kPi))
        throw std::domain_error("gamma_curves: t outside (0, 2*pi)");
      return {param, 0.0};
    case 5:
      if (!(param > 0.0 && param < 1.0))
        throw std::domain_error("gamma_curves: k outside (0,1)");
      return {x5_of_k(param), 0.0};
    default:
      throw std::domain_error("gamma_curves: curve index must be 1..5");
  }
}

double invert_curve_k(int which, double coord) {
  switch (which) {
    case 1: return invert_monotone(y1_of_k, coord, false);
    case 2: return invert_monotone(y2_of_k, coord, false);
    case 3: return invert_monotone(y3_of_k, coord, false);
    case 5: return invert_monotone(x5_of_k, coord, true);
    default:
      throw std::domain_error("invert_curve_k: curve must be one of 1,2,3,5");
  }
}

double x2_of_y(double y) {
  if (!(y < 0.0)) throw std::domain_error("x2_of_y: requires y < 0");
  return x2_of_k(invert_curve_k(2, y));
}

double x3_of_y(double y) {
  if (!(y < 0.0)) throw std::domain_error("x3_of_y: requires y < 0");
  return x3_of_k(invert_curve_k(3, y));
}

QuadrantRep quadrant_reduce(double x, double y) {
  if (x == 0.0 && y == 0.0)
    throw std::domain_error("quadrant_reduce: the origin is excluded");
  QuadrantRep rep;
  if (x >= 0.0 && y <= 0.0) {
    rep = {x, y, 0};
  } else if (x >= 0.0) {
    rep = {x, -y, 1};
  } else if (y <= 0.0) {
    rep = {-x, y, 4};
  } else {
    rep = {-x, -y, 5};
  }
  return rep;
}

const std::array<StratumEntry, 40>& stratum_table() {
  static const std::array<StratumEntry, 40> table = [] {
    // Signs of the action of eps^i on the plane z = 0 (0 = identity).
    constexpr int sx[8] = {+1, +1, +1, +1, -1, -1, -1, -1};
    constexpr int sy[8] = {+1, -1, +1, -1, +1, -1, +1, -1};
    std::array<StratumEntry, 40> t{};
    auto put = [&](int index, int base, int refl, int bx, int by) {
      t[index - 1] = {index, base, bx * sx[refl], by * sy[refl], refl};
    };
    // eps^i(M'_j) = M'_{j+i}, i = 1..7, j = 1, 9  (2D quadrant strata)
    for (int j : {1, 9})
      for (int i = 0; i < 8; ++i) put(j + i, j, i, +1, -1);
    // eps^{2i}(M'_17) = M'_{17+i}  (gamma_5, on y = 0)
    for (int i = 0; i < 4; ++i) put(17 + i, 17, 2 * i, +1, 0);
    // eps^{2+i}(M'_j) = M'_{j+i}, j = 21, 25, 35 (quadrant curves/domain)
    for (int j : {21, 25, 35})
      for (int i = 0; i < 4; ++i) put(j + i, j, i == 0 ? 0 : 2 + i, +1, -1);
    // gamma_1 lies on x = 0
    for (int i = 0; i < 4; ++i) put(29 + i, 29, i == 0 ? 0 : 2 + i, 0, -1);
    // eps^4(M'_j) = M'_{j+1}, j = 33, 39 (on y = 0)
    for (int j : {33, 39}) {
      put(j, j, 0, +1, 0);
      put(j + 1, j, 4, +1, 0);
    }
    return t;
  }();
  return table;
}

PlaneFamily family_of_index(int index) {
  if ((index >= 1 && index <= 20) || (index >= 29 && index <= 32))
    return PlaneFamily::kMax;
  if ((index >= 21 && index <= 28) || index == 33 || index == 34)
    return PlaneFamily::kConjCut;
  return PlaneFamily::kRest;
}

PlaneLabel classify_plane(double x, double y, double band) {
  if (x == 0.0 && y == 0.0)
    throw std::domain_error("classify_plane: the origin is excluded");
  int base = 0;
  if (std::abs(y) <= band) {
    const double xa = std::abs(x);
    if (std::abs(xa - 2.0 * kPi) <= band)
      base = 33;
    else if (xa < 2.0 * kPi)
      base = 39;
    else
      base = 17;
  } else if (std::abs(x) <= band) {
    base = 29;
  } else {
    const double ya = -std::abs(y);
    const double xa = std::abs(x);
    const double x2 = x2_of_y(ya);
    const double x3 = x3_of_y(ya);
    if (std::abs(xa - x2) <= band)
      base = 25;
    else if (std::abs(xa - x3) <= band)
      base = 21;
    else if (xa < x2)
      base = 9;
    else if (xa < x3)
      base = 35;
    else
      base = 1;
  }
  const int px = sign_of(x);
  const int py = sign_of(y);
  for (const StratumEntry& e : stratum_table()) {
    if (e.base != base) continue;
    if (e.sx != 0 && px != 0 && e.sx != px) continue;
    if (e.sy != 0 && py != 0 && e.sy != py) continue;
    return {e.index, family_of_index(e.index)};
  }
  throw std::logic_error("classify_plane: no stratum matched");
}

}  // namespace sh2geo
