#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "sh2geo/elliptic.hpp"
#include "sh2geo/expmap.hpp"
#include "sh2geo/pendulum.hpp"
#include "sh2geo/plane.hpp"

using namespace sh2geo;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

TEST_CASE("curve parametrizations") {
  // gamma_5 starts at x = 2*pi
  CHECK(gamma_curves(5, 1e-6).first == doctest::Approx(2.0 * kPi).epsilon(1e-9));
  CHECK(gamma_curves(4, kPi) == std::pair{kPi, 0.0});
  CHECK(gamma_curves(1, 0.5).first == 0.0);
  CHECK(gamma_curves(1, 0.5).second < 0.0);
  CHECK_THROWS_AS(gamma_curves(2, 1.5), std::domain_error);
  CHECK_THROWS_AS(gamma_curves(4, 7.0), std::domain_error);
  // gamma_2 near the origin: y = -pi^(1/3) x^(2/3) + o(x^(2/3))
  const auto [x2, y2] = gamma_curves(2, 1e-3);
  const double pred = -std::cbrt(kPi) * std::cbrt(x2 * x2);
  CHECK(std::abs(y2 - pred) / std::pow(x2, 2.0 / 3.0) < 0.02);
}

TEST_CASE("curve images are Exp images of the matching strata") {
  // gamma_5 = p o Exp(N'_17): lambda in C1^0 with phi = 3K, t = 4K
  for (double k : {0.3, 0.6, 0.85}) {
    const double K = complete_K(k);
    EllipticCoords e;
    e.phi = 3.0 * K;
    e.k = k;
    e.tag = StratumTag{Stratum::C1, +1, 0, 0};
    const GroupPoint q = exp({from_elliptic(e), 4.0 * K});
    const auto [x5, y5] = gamma_curves(5, k);
    CHECK(std::abs(q.x - x5) < 1e-9 * std::max(1.0, std::abs(x5)));
    CHECK(std::abs(q.y - y5) < 1e-9);
    CHECK(std::abs(q.z) < 1e-9);
    CHECK(classify_plane(q.x, q.y, 1e-7).index == 17);
  }
  // gamma_1 = p o Exp(N'_29): lambda in C2^+ with psi = 3K, t = 4kK
  for (double k : {0.3, 0.6}) {
    const double K = complete_K(k);
    EllipticCoords e;
    e.phi = 3.0 * K;
    e.k = k;
    e.tag = StratumTag{Stratum::C2, 0, +1, 0};
    const GroupPoint q = exp({from_elliptic(e), 4.0 * k * K});
    const auto [x1, y1] = gamma_curves(1, k);
    CHECK(std::abs(q.x - x1) < 1e-9);
    CHECK(std::abs(q.y - y1) < 1e-9 * std::max(1.0, std::abs(y1)));
  }
}

TEST_CASE("curve inversion round trips") {
  for (double k0 : {0.2, 0.5, 0.8, 0.95}) {
    CHECK(std::abs(invert_curve_k(5, gamma_curves(5, k0).first) - k0) < 1e-10);
    CHECK(std::abs(invert_curve_k(1, gamma_curves(1, k0).second) - k0) < 1e-10);
    CHECK(std::abs(invert_curve_k(2, gamma_curves(2, k0).second) - k0) < 1e-10);
    CHECK(std::abs(invert_curve_k(3, gamma_curves(3, k0).second) - k0) < 1e-10);
  }
  CHECK(invert_curve_k(1, -1e-8) < 1e-3);   // y -> 0 corresponds to k -> 0
  CHECK(invert_curve_k(2, -1e6) > 0.999);   // y -> -inf corresponds to k -> 1
  CHECK_THROWS_AS(invert_curve_k(5, 1.0), std::domain_error);
}

TEST_CASE("curve bounds") {
  for (double y = -50.0; y <= -1e-3; y += 0.1232) {
    const double x2 = x2_of_y(y);
    const double x3 = x3_of_y(y);
    CHECK(x2 > -y - 2.0);
    CHECK(x2 < -y);
    CHECK(x3 > 2.0 * kPi);
    CHECK(x3 > 2.0 - y);
    CHECK(x2 < x3);
  }
}

TEST_CASE("gamma_2 and gamma_3 are convex") {
  for (int curve : {2, 3}) {
    double prev_slope = -kInf;
    double px = 0, py = 0;
    bool first = true;
    for (double k = 0.02; k < 0.99; k += 0.01) {
      const auto [x, y] = gamma_curves(curve, k);
      if (!first) {
        const double slope = (y - py) / (x - px);
        CHECK(slope > prev_slope - 1e-12);
        prev_slope = slope;
      }
      px = x;
      py = y;
      first = false;
    }
  }
}

TEST_CASE("quadrant reduction") {
  const QuadrantRep id = quadrant_reduce(3.0, -1.0);
  CHECK(id.xq == 3.0);
  CHECK(id.yq == -1.0);
  CHECK(id.reflection == 0);
  const QuadrantRep ul = quadrant_reduce(-3.0, 1.0);
  CHECK(ul.xq == 3.0);
  CHECK(ul.yq == -1.0);
  CHECK(ul.reflection == 5);
  const QuadrantRep ur = quadrant_reduce(3.0, 1.0);
  CHECK(ur.reflection == 1);
  // the recorded reflection maps the representative back
  for (auto [x, y] : {std::pair{2.0, 5.0}, {-1.0, -2.0}, {-4.0, 0.5}}) {
    const QuadrantRep r = quadrant_reduce(x, y);
    const GroupPoint back = r.reflection == 0
                                ? GroupPoint{r.xq, r.yq, 0.0}
                                : reflect_m(r.reflection, {r.xq, r.yq, 0.0});
    CHECK(back.x == x);
    CHECK(back.y == y);
  }
  CHECK_THROWS_AS(quadrant_reduce(0.0, 0.0), std::domain_error);
}

TEST_CASE("plane classification anchors") {
  CHECK(classify_plane(kPi, 0.0).index == 39);
  CHECK(classify_plane(kPi, 0.0).family == PlaneFamily::kRest);
  CHECK(classify_plane(2.0 * kPi, 0.0).index == 33);
  CHECK(classify_plane(2.0 * kPi, 0.0).family == PlaneFamily::kConjCut);
  CHECK(classify_plane(1.0, -10.0).index == 9);
  CHECK(classify_plane(1.0, -10.0).family == PlaneFamily::kMax);
  CHECK(classify_plane(0.0, -5.0).index == 29);
  CHECK(classify_plane(0.0, -5.0).family == PlaneFamily::kMax);
  CHECK(classify_plane(7.0, 0.0).index == 17);
  CHECK(classify_plane(-7.0, 0.0).index == 19);
  CHECK(classify_plane(-kPi, 0.0).index == 40);
  CHECK(classify_plane(-2.0 * kPi, 0.0).index == 34);
  CHECK(classify_plane(8.0, -0.4).family == PlaneFamily::kMax);   // m3
  CHECK(classify_plane(3.0, -1.0).family == PlaneFamily::kRest);  // m2
  CHECK_THROWS_AS(classify_plane(0.0, 0.0), std::domain_error);
}

TEST_CASE("partition: one open stratum per point, locally constant") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> ux(-20.0, 20.0);
  int n = 0;
  while (n < 300) {
    const double x = ux(rng), y = ux(rng);
    if (std::abs(y) < 1e-3 || std::abs(x) < 1e-3) continue;
    const PlaneLabel l = classify_plane(x, y, 0.0);
    // off the curves: an open 2D stratum index
    const int b = stratum_table()[l.index - 1].base;
    if (b != 1 && b != 9 && b != 35) continue;  // skipped: hit a curve band
    ++n;
    const PlaneLabel l2 = classify_plane(x + 1e-9, y - 1e-9, 0.0);
    CHECK(l2.index == l.index);
  }
}

TEST_CASE("reflection equivariance of the classification") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ux(0.3, 20.0);
  for (int s = 0; s < 100; ++s) {
    const double x = ux(rng), y = -ux(rng);
    const PlaneLabel base = classify_plane(x, y, 0.0);
    for (int i = 1; i <= 7; ++i) {
      const GroupPoint qi = reflect_m(i, {x, y, 0.0});
      const PlaneLabel li = classify_plane(qi.x, qi.y, 0.0);
      // same family and same base stratum
      CHECK(li.family == base.family);
      CHECK(stratum_table()[li.index - 1].base ==
            stratum_table()[base.index - 1].base);
    }
  }
}

TEST_CASE("stratum table shape") {
  const auto& t = stratum_table();
  for (int j = 1; j <= 40; ++j) CHECK(t[j - 1].index == j);
  // family sizes from the decomposition
  int n_max = 0, n_cc = 0, n_rest = 0;
  for (const StratumEntry& e : t) {
    switch (family_of_index(e.index)) {
      case PlaneFamily::kMax: ++n_max; break;
      case PlaneFamily::kConjCut: ++n_cc; break;
      default: ++n_rest; break;
    }
  }
  CHECK(n_max == 24);
  CHECK(n_cc == 10);
  CHECK(n_rest == 6);
}
