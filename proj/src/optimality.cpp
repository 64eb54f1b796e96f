#include "sh2geo/optimality.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

#include "sh2geo/elliptic.hpp"
#include "sh2geo/expmap.hpp"
#include "sh2geo/pendulum.hpp"

namespace sh2geo {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double modulus_of(const Covector& lambda) { return to_elliptic(lambda).k; }

}  // namespace

double t1_max(const Covector& lambda) {
  const StratumTag tag = classify(lambda);
  switch (tag.stratum) {
    case Stratum::C1: {
      const double k = modulus_of(lambda);
      return 4.0 * complete_K(k);
    }
    case Stratum::C2: {
      const double k = modulus_of(lambda);
      return 4.0 * k * complete_K(k);
    }
    default:
      return kInf;
  }
}

double f1(double p, double k) {
  const EllipticContext ctx(k);
  const JacobiTriple j = ctx.sncndn(p);
  return j.cn * ctx.eps(p) - j.sn * j.dn;
}

double f2(double p, double k) {
  const EllipticContext ctx(k);
  const JacobiTriple j = ctx.sncndn(p);
  return j.dn * ctx.eps(p) - k * k * j.sn * j.cn;
}

double p11_root(double k) {
  if (!(k > 0.0 && k < 1.0))
    throw std::domain_error("p11_root: k must lie in (0, 1)");

  static std::shared_mutex mu;
  static std::map<double, double> memo;
  {
    std::shared_lock lock(mu);
    if (auto it = memo.find(k); it != memo.end()) return it->second;
  }

  const double K = complete_K(k);
  double lo = 2.0 * K, hi = 3.0 * K;
  double flo = f1(lo, k);
  const double fhi = f1(hi, k);
  if ((flo < 0.0) == (fhi < 0.0))
    throw std::runtime_error("p11_root: no sign change in (2K, 3K)");
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f1(mid, k);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  const double root = 0.5 * (lo + hi);
  std::unique_lock lock(mu);
  memo.emplace(k, root);
  return root;
}

std::pair<double, double> t1_conj_bounds(const Covector& lambda) {
  const StratumTag tag = classify(lambda);
  switch (tag.stratum) {
    case Stratum::C1: {
      const double k = modulus_of(lambda);
      return {4.0 * complete_K(k), 2.0 * p11_root(k)};
    }
    case Stratum::C2: {
      const double k = modulus_of(lambda);
      return {4.0 * k * complete_K(k), 2.0 * k * p11_root(k)};
    }
    case Stratum::C4:
      return {2.0 * kPi, 2.0 * kPi};
    default:
      return {kInf, kInf};
  }
}

double tt_of_energy(double E, double tol) {
  if (E < -1.0 + tol) return 2.0 * kPi;
  if (std::abs(E - 1.0) <= tol) return kInf;
  if (E < 1.0) return 4.0 * complete_K(std::sqrt(0.5 * (E + 1.0)));
  const double k = std::sqrt(2.0 / (E + 1.0));
  return 4.0 * k * complete_K(k);
}

double tt(const Covector& lambda) {
  const StratumTag tag = classify(lambda);
  switch (tag.stratum) {
    case Stratum::C1:
    case Stratum::C2:
      return t1_max(lambda);
    case Stratum::C4:
      return 2.0 * kPi;
    default:
      return kInf;
  }
}

double cut_time(const Covector& lambda) { return tt(lambda); }

double jacobian_det(const GeodesicSpec& nu, double h) {
  const StratumTag tag = classify(nu.lambda);
  GroupPoint cols[3][2];
  if (tag.stratum == Stratum::C1 || tag.stratum == Stratum::C2) {
    const EllipticCoords e = to_elliptic(nu.lambda);
    auto eval = [&](double phi, double k, double t) {
      EllipticCoords v = e;
      v.phi = phi;
      v.k = k;
      return tag.stratum == Stratum::C1 ? exp_c1(v, t) : exp_c2(v, t);
    };
    // keep the modulus step inside (0, 1)
    const double hk = std::min(h, 0.25 * std::min(e.k, 1.0 - e.k));
    const double ht = h * std::max(1.0, nu.t);
    cols[0][0] = eval(e.phi + h, e.k, nu.t);
    cols[0][1] = eval(e.phi - h, e.k, nu.t);
    cols[1][0] = eval(e.phi, e.k + hk, nu.t);
    cols[1][1] = eval(e.phi, e.k - hk, nu.t);
    cols[2][0] = eval(e.phi, e.k, nu.t + ht);
    cols[2][1] = eval(e.phi, e.k, nu.t - ht);
    const double steps[3] = {h, hk, ht};
    double J[3][3];
    for (int c = 0; c < 3; ++c) {
      J[0][c] = (cols[c][0].x - cols[c][1].x) / (2.0 * steps[c]);
      J[1][c] = (cols[c][0].y - cols[c][1].y) / (2.0 * steps[c]);
      J[2][c] = (cols[c][0].z - cols[c][1].z) / (2.0 * steps[c]);
    }
    return J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
           J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
           J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
  }
  // fall back to the (gamma, c, t) chart elsewhere
  auto eval = [&](double g, double c, double t) {
    return exp({make_covector(g, c), t});
  };
  const double ht = h * std::max(1.0, nu.t);
  cols[0][0] = eval(nu.lambda.gamma + h, nu.lambda.c, nu.t);
  cols[0][1] = eval(nu.lambda.gamma - h, nu.lambda.c, nu.t);
  cols[1][0] = eval(nu.lambda.gamma, nu.lambda.c + h, nu.t);
  cols[1][1] = eval(nu.lambda.gamma, nu.lambda.c - h, nu.t);
  cols[2][0] = eval(nu.lambda.gamma, nu.lambda.c, nu.t + ht);
  cols[2][1] = eval(nu.lambda.gamma, nu.lambda.c, nu.t - ht);
  const double steps[3] = {h, h, ht};
  double J[3][3];
  for (int c = 0; c < 3; ++c) {
    J[0][c] = (cols[c][0].x - cols[c][1].x) / (2.0 * steps[c]);
    J[1][c] = (cols[c][0].y - cols[c][1].y) / (2.0 * steps[c]);
    J[2][c] = (cols[c][0].z - cols[c][1].z) / (2.0 * steps[c]);
  }
  return J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
         J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
         J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
}

ConjugateTime conj_time_numeric(const Covector& lambda) {
  const StratumTag tag = classify(lambda);
  ConjugateTime out;
  if (tag.stratum == Stratum::C4) {
    out.t = 2.0 * kPi;
    return out;
  }
  if (tag.stratum == Stratum::C3 || tag.stratum == Stratum::C5) {
    out.t = kInf;
    return out;
  }
  const auto [lo, hi] = t1_conj_bounds(lambda);
  out.bracket_lo = lo;
  out.bracket_hi = hi;

  // Dense first-crossing scan: zeros may come in close pairs near the
  // phases where the conjugate time attains its extrema over a level set.
  constexpr int kScan = 256;
  double ts[kScan], ds[kScan];
  double scale = 0.0;
  const double t0 = lo * (1.0 + 1e-12);
  for (int i = 0; i < kScan; ++i) {
    ts[i] = t0 + (hi - t0) * i / (kScan - 1);
    ds[i] = jacobian_det({lambda, ts[i]});
    scale = std::max(scale, std::abs(ds[i]));
  }
  if (scale == 0.0) {
    out.ok = false;
    return out;
  }
  if (std::abs(ds[0]) < 1e-7 * scale) {
    out.t = lo;  // conjugate point at the Maxwell time
    out.residual = std::abs(ds[0]) / scale;
    return out;
  }
  for (int i = 1; i < kScan; ++i) {
    if ((ds[i] < 0.0) != (ds[0] < 0.0) || ds[i] == 0.0) {
      double a = ts[i - 1], b = ts[i], fa = ds[i - 1];
      for (int j = 0; j < 80 && b - a > 1e-13 * b; ++j) {
        const double m = 0.5 * (a + b);
        const double fm = jacobian_det({lambda, m});
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      out.t = 0.5 * (a + b);
      out.residual = std::abs(jacobian_det({lambda, out.t})) / scale;
      return out;
    }
  }
  // No crossing: look for a tangential zero at the grid minimum.
  int imin = 0;
  for (int i = 1; i < kScan; ++i)
    if (std::abs(ds[i]) < std::abs(ds[imin])) imin = i;
  if (std::abs(ds[imin]) < 1e-6 * scale) {
    out.t = ts[imin];
    out.residual = std::abs(ds[imin]) / scale;
    return out;
  }
  out.ok = false;
  return out;
}

OptimalityBounds optimality_bounds(const Covector& lambda) {
  OptimalityBounds b;
  b.t_max1 = t1_max(lambda);
  const auto [lo, hi] = t1_conj_bounds(lambda);
  b.t_conj_lo = lo;
  b.t_conj_hi = hi;
  b.t_cut = tt(lambda);
  return b;
}

namespace {

// sign of sin(gamma_{t/2}/2); 0 at C4 and on the degenerate set
int midpoint_sign(const GeodesicSpec& nu) {
  const StratumTag tag = classify(nu.lambda);
  if (tag.stratum == Stratum::C4) return 0;
  if (tag.stratum == Stratum::C5)
    return sign_of(std::sin(0.5 * nu.lambda.gamma));
  const Covector mid = pendulum_flow(nu.lambda, 0.5 * nu.t);
  return sign_of(std::sin(0.5 * mid.gamma));
}

}  // namespace

bool in_d1(const GeodesicSpec& nu) {
  const StratumTag tag = classify(nu.lambda);
  if (tag.stratum == Stratum::C5) return tag.component == 0;
  if (tag.stratum == Stratum::C4) return false;
  return nu.t < tt(nu.lambda) && midpoint_sign(nu) > 0;
}

bool in_d2(const GeodesicSpec& nu) {
  const StratumTag tag = classify(nu.lambda);
  if (tag.stratum == Stratum::C5) return tag.component == 1;
  if (tag.stratum == Stratum::C4) return false;
  return nu.t < tt(nu.lambda) && midpoint_sign(nu) < 0;
}

bool in_ntilde(const GeodesicSpec& nu) { return in_d1(nu) || in_d2(nu); }

}  // namespace sh2geo
