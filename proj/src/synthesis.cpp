#include "sh2geo/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "sh2geo/elliptic.hpp"
#include "sh2geo/expmap.hpp"
#include "sh2geo/optimality.hpp"
#include "sh2geo/pendulum.hpp"

namespace sh2geo {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double res_norm(const GroupPoint& a, const GroupPoint& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y),
                   std::abs(a.z - b.z)});
}

// ---------------------------------------------------------------------------
// interior solver
// ---------------------------------------------------------------------------

// Coordinates are compared after asinh compression of the rotated pair
// (x+y, x-y): toward the separatrix x and y blow up together while x-y
// stays moderate, so the residual must resolve both directions, absolutely
// at unit scale and relatively at large scale.
GroupPoint compress(const GroupPoint& q) {
  return {std::asinh(q.x + q.y), std::asinh(q.x - q.y), q.z};
}

double compressed_dist2(const GroupPoint& ca, const GroupPoint& cb) {
  const double dx = ca.x - cb.x, dy = ca.y - cb.y, dz = ca.z - cb.z;
  return dx * dx + dy * dy + dz * dz;
}

struct Seed {
  GeodesicSpec nu;
  GroupPoint cq;  // compressed endpoint
};

// Forward-evaluated mesh over D1 used to seed the Newton iteration.
const std::vector<Seed>& seed_mesh() {
  static std::vector<Seed> mesh;
  static std::once_flag once;
  std::call_once(once, [] {
    constexpr int ng = 36, nc = 25, nt = 12;
    mesh.reserve(4000);
    for (int ig = 0; ig < ng; ++ig) {
      const double g = kFourPi * (ig + 0.5) / ng;
      for (int ic = 0; ic < nc; ++ic) {
        const double c = -8.0 + 16.0 * ic / (nc - 1);
        const Covector lam = make_covector(g, c);
        const double tcap = std::min(tt(lam), 30.0);
        for (int it = 0; it < nt; ++it) {
          const double t = tcap * (it + 0.5) / nt;
          const GeodesicSpec nu{lam, t};
          if (!in_d1(nu)) continue;
          mesh.push_back({nu, compress(exp(nu))});
        }
      }
    }
    // enrichment band along the separatrix, where the endpoints blow up:
    // covectors at energy E = 1 + dE across the initial phase
    for (int ig = 0; ig < 2 * ng; ++ig) {
      const double g = kFourPi * (ig + 0.5) / (2 * ng);
      for (double dE : {-3e-1, -1e-1, -3e-2, -1e-2, -3e-3, -3e-4, -3e-5,
                        3e-5, 3e-4, 1e-2, 1e-1}) {
        const double c2 = 2.0 * (1.0 + dE + std::cos(g));
        if (c2 <= 1e-12) continue;
        for (double sgn : {1.0, -1.0}) {
          const Covector lam = make_covector(g, sgn * std::sqrt(c2));
          const double tcap = std::min(tt(lam), 30.0);
          for (int it = 0; it < nt; ++it) {
            const double t = tcap * (it + 0.5) / nt;
            const GeodesicSpec nu{lam, t};
            if (!in_d1(nu)) continue;
            mesh.push_back({nu, compress(exp(nu))});
          }
        }
      }
    }
  });
  return mesh;
}

struct Mat3 {
  double m[3][3];
  double det() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }
  bool solve(const double b[3], double x[3]) const {
    const double d = det();
    if (std::abs(d) < 1e-300) return false;
    Mat3 t;
    for (int c = 0; c < 3; ++c) {
      t = *this;
      for (int r = 0; r < 3; ++r) t.m[r][c] = b[r];
      x[c] = t.det() / d;
    }
    return true;
  }
};

GroupPoint eval_gc(double g, double c, double t) {
  return exp({make_covector(g, c), t});
}

// One damped Newton run in the (gamma, c, t) chart on the compressed
// residual; returns true on convergence with the result stored in nu.
bool newton_interior(const GroupPoint& q, GeodesicSpec& nu, double tol,
                     int max_iter) {
  const GroupPoint cq = compress(q);
  double g = nu.lambda.gamma, c = nu.lambda.c, t = nu.t;
  auto F = [&](double gg, double cc, double tt_) {
    return compress(eval_gc(gg, cc, tt_));
  };
  GroupPoint cur = F(g, c, t);
  double rn = std::sqrt(compressed_dist2(cur, cq));
  int polish = 2;  // extra full steps after reaching the tolerance
  for (int it = 0; it < max_iter; ++it) {
    if (res_norm(cur, cq) <= tol && polish-- <= 0) break;
    const double hg = 1e-6, hc = 1e-6, ht = 1e-6 * std::max(1.0, t);
    const double tlo = std::max(t - ht, 1e-12);
    Mat3 J;
    const GroupPoint pg = F(g + hg, c, t), mg = F(g - hg, c, t);
    const GroupPoint pc = F(g, c + hc, t), mc = F(g, c - hc, t);
    const GroupPoint pt = F(g, c, t + ht), mt = F(g, c, tlo);
    const double dt2 = t + ht - tlo;
    J.m[0][0] = (pg.x - mg.x) / (2 * hg);
    J.m[1][0] = (pg.y - mg.y) / (2 * hg);
    J.m[2][0] = (pg.z - mg.z) / (2 * hg);
    J.m[0][1] = (pc.x - mc.x) / (2 * hc);
    J.m[1][1] = (pc.y - mc.y) / (2 * hc);
    J.m[2][1] = (pc.z - mc.z) / (2 * hc);
    J.m[0][2] = (pt.x - mt.x) / dt2;
    J.m[1][2] = (pt.y - mt.y) / dt2;
    J.m[2][2] = (pt.z - mt.z) / dt2;
    const double r[3] = {cq.x - cur.x, cq.y - cur.y, cq.z - cur.z};
    double d[3];
    if (!J.solve(r, d)) break;
    double alpha = 1.0;
    bool stepped = false;
    for (int ls = 0; ls < 30; ++ls) {
      const double gn = g + alpha * d[0];
      const double cn = c + alpha * d[1];
      const double tn = std::max(t + alpha * d[2], 1e-12);
      const GroupPoint qn = F(gn, cn, tn);
      const double rnn = std::sqrt(compressed_dist2(qn, cq));
      if (rnn < rn || rnn <= tol) {
        g = gn;
        c = cn;
        t = tn;
        cur = qn;
        rn = rnn;
        stepped = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!stepped) break;
  }
  if (res_norm(cur, cq) <= tol) {
    nu = {make_covector(g, c), t};
    return true;
  }
  return false;
}

GeodesicSpec solve_interior_d1(const GroupPoint& q, const SolverConfig& cfg) {
  // the z-axis is the image of the C5 fiber; its preimage is closed form
  if (q.x == 0.0 && q.y == 0.0)
    return {make_covector(kPi, 0.0), q.z};
  const GroupPoint cq = compress(q);
  const std::vector<Seed>& mesh = seed_mesh();
  std::vector<int> order(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) order[i] = int(i);
  const int ns = std::min<int>(cfg.multistart, int(mesh.size()));
  std::partial_sort(order.begin(), order.begin() + ns, order.end(),
                    [&](int a, int b) {
                      return compressed_dist2(mesh[a].cq, cq) <
                             compressed_dist2(mesh[b].cq, cq);
                    });
  GeodesicSpec best;
  double best_res = kInf;
  for (int s = 0; s < ns; ++s) {
    GeodesicSpec nu = mesh[order[s]].nu;
    if (!newton_interior(q, nu, cfg.tol, cfg.max_newton)) {
      const double r = res_norm(compress(exp(nu)), cq);
      if (r < best_res) {
        best_res = r;
        best = nu;
      }
      continue;
    }
    // accept only the optimal branch
    if (nu.t <= tt(nu.lambda) * (1.0 + 1e-9) + 1e-9 && in_d1(nu)) return nu;
    const double r = res_norm(compress(exp(nu)), cq);
    if (r < best_res) {
      best_res = r;
      best = nu;
    }
  }
  throw SolveFailure("solve_interior: no convergent optimal preimage", best,
                     best_res);
}

// ---------------------------------------------------------------------------
// plane solver
// ---------------------------------------------------------------------------

Covector c1_lambda(double phi, double k) {
  EllipticCoords e;
  e.phi = phi;
  e.k = k;
  e.tag = StratumTag{Stratum::C1, +1, 0, 0};
  return from_elliptic(e);
}

Covector c2_lambda(double psi, double k) {
  EllipticCoords e;
  e.phi = psi;
  e.k = k;
  e.tag = StratumTag{Stratum::C2, 0, +1, 0};
  return from_elliptic(e);
}

// modulus from the chart invariant x^2 - y^2 = 16 E(k)^2 / (1-k^2) (m3)
double k_from_m3(double val) {
  double lo = 1e-9, hi = 1.0 - 1e-15;
  auto f = [](double k) {
    const double E = complete_E(k);
    return 16.0 * E * E / ((1.0 - k) * (1.0 + k));
  };
  if (val <= f(lo)) return lo;
  for (int i = 0; i < 120 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < val ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// modulus from y^2 - x^2 = 16 a(k)^2 / (1-k^2) (m1)
double k_from_m1(double val) {
  double lo = 1e-9, hi = 1.0 - 1e-15;
  auto f = [](double k) {
    const double a = a_fn(k);
    return 16.0 * a * a / ((1.0 - k) * (1.0 + k));
  };
  for (int i = 0; i < 120 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < val ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// m2 charts: image of (p, k) with tau = 0 for the C1 and C2 sides.
void m2_c1_chart(double p, double k, double& x, double& y) {
  const double kp2 = (1.0 - k) * (1.0 + k);
  x = 2.0 * f2(p, k) / kp2;
  y = 2.0 * k * f1(p, k) / kp2;
}

void m2_c2_chart(double p, double k, double& x, double& y) {
  const double kp2 = (1.0 - k) * (1.0 + k);
  const EllipticContext ctx(k);
  const JacobiTriple j = ctx.sncndn(p);
  const double alpha = ctx.eps(p) - kp2 * p;
  x = 2.0 * k / kp2 * (j.sn * j.dn - j.cn * alpha);
  y = -2.0 / kp2 * (j.dn * alpha - k * k * j.sn * j.cn);
}

// 2D damped Newton on a (p, k) chart with box constraints.
template <class Chart>
bool newton_m2(Chart chart, double xq, double yq, double& p, double& k,
               double tol, int max_iter) {
  auto clampbox = [](double& pp, double& kk) {
    kk = std::clamp(kk, 1e-9, 1.0 - 1e-12);
    const double pmax = 2.0 * complete_K(kk) - 1e-12;
    pp = std::clamp(pp, 1e-12, pmax);
  };
  clampbox(p, k);
  double x, y;
  chart(p, k, x, y);
  double rn = std::hypot(x - xq, y - yq);
  for (int it = 0; it < max_iter; ++it) {
    if (std::max(std::abs(x - xq), std::abs(y - yq)) <= tol) return true;
    const double hp = 1e-7 * std::max(1.0, std::abs(p));
    const double hk = std::min(1e-7, 0.25 * std::min(k, 1.0 - k));
    double xp, yp, xm, ym, xk, yk, xkm, ykm;
    chart(p + hp, k, xp, yp);
    chart(p - hp, k, xm, ym);
    chart(p, k + hk, xk, yk);
    chart(p, k - hk, xkm, ykm);
    const double j00 = (xp - xm) / (2 * hp), j01 = (xk - xkm) / (2 * hk);
    const double j10 = (yp - ym) / (2 * hp), j11 = (yk - ykm) / (2 * hk);
    const double det = j00 * j11 - j01 * j10;
    if (std::abs(det) < 1e-300) return false;
    const double rx = xq - x, ry = yq - y;
    const double dp = (rx * j11 - ry * j01) / det;
    const double dk = (ry * j00 - rx * j10) / det;
    double alpha = 1.0;
    bool stepped = false;
    for (int ls = 0; ls < 30; ++ls) {
      double pn = p + alpha * dp, kn = k + alpha * dk;
      clampbox(pn, kn);
      double xn, yn;
      chart(pn, kn, xn, yn);
      const double rnn = std::hypot(xn - xq, yn - yq);
      if (rnn < rn * (1.0 - 1e-4 * alpha) || rnn <= tol) {
        p = pn;
        k = kn;
        x = xn;
        y = yn;
        rn = rnn;
        stepped = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!stepped) return false;
  }
  return std::max(std::abs(x - xq), std::abs(y - yq)) <= tol;
}

// side of the C3 image curve inside m2: positive on the C1 side
double m2_side(double xq, double yq) {
  const double ph = std::asinh(0.5 * (xq - yq));
  return (xq + yq) - 2.0 * ph / std::cosh(ph);
}

GeodesicSpec solve_m2(double xq, double yq, const SolverConfig& cfg) {
  const double side = m2_side(xq, yq);
  const double scale = std::max(1.0, std::abs(xq) + std::abs(yq));
  if (std::abs(side) <= 1e-11 * scale) {
    const double p = std::asinh(0.5 * (xq - yq));
    EllipticCoords e;
    e.phi = -p;
    e.k = 1.0;
    e.tag = StratumTag{Stratum::C3, +1, +1, 0};
    return {from_elliptic(e), 2.0 * p};
  }
  const bool c1_side = side > 0.0;
  auto chart_c1 = [](double p, double k, double& x, double& y) {
    m2_c1_chart(p, k, x, y);
  };
  auto chart_c2 = [](double p, double k, double& x, double& y) {
    m2_c2_chart(p, k, x, y);
  };
  GeodesicSpec bestnu;
  double best_res = kInf;
  for (int ik = 1; ik <= 12; ++ik) {
    for (int ip = 1; ip <= 10; ++ip) {
      double k = ik / 13.0;
      double p = 2.0 * complete_K(k) * ip / 11.0;
      const bool ok = c1_side
                          ? newton_m2(chart_c1, xq, yq, p, k, cfg.tol,
                                      cfg.max_newton)
                          : newton_m2(chart_c2, xq, yq, p, k, cfg.tol,
                                      cfg.max_newton);
      if (!ok) continue;
      GeodesicSpec nu;
      if (c1_side) {
        nu = {c1_lambda(-p, k), 2.0 * p};
      } else {
        nu = {c2_lambda(-p, k), 2.0 * k * p};
      }
      const double r = res_norm(exp(nu), {xq, yq, 0.0});
      if (r < best_res) {
        best_res = r;
        bestnu = nu;
      }
      if (r <= 10.0 * cfg.tol) return nu;
    }
  }
  if (best_res < 1e-6) return bestnu;
  throw SolveFailure("solve_plane: m2 chart inversion failed", bestnu,
                     best_res);
}

bool same_covector(const Covector& a, const Covector& b) {
  const double da = std::abs(std::sin(0.5 * a.gamma) - std::sin(0.5 * b.gamma));
  const double db = std::abs(std::cos(0.5 * a.gamma) - std::cos(0.5 * b.gamma));
  const double dc = std::abs(a.c - b.c);
  return da + db + dc < 1e-8;
}

// second minimizer of a Maxwell target by the reflection that fixes the
// endpoint and moves the covector
bool maxwell_partner(const GeodesicSpec& nu, const GroupPoint& q, double tol,
                     GeodesicSpec& out) {
  for (int i = 1; i <= 7; ++i) {
    const GeodesicSpec cand = reflect_n(i, nu);
    if (same_covector(cand.lambda, nu.lambda)) continue;
    if (res_norm(exp(cand), q) <= std::max(tol, 1e-8)) {
      out = cand;
      return true;
    }
  }
  return false;
}

}  // namespace

GeodesicSpec solve_interior(const GroupPoint& q, const SolverConfig& cfg) {
  if (q.z > 0.0) return solve_interior_d1(q, cfg);
  if (q.z < 0.0) {
    // solve the mirrored problem in D1 and map back through eps^3
    const GeodesicSpec nu1 = solve_interior_d1(reflect_m(3, q), cfg);
    return reflect_n(3, nu1);
  }
  throw std::domain_error("solve_interior: target lies in the plane z = 0");
}

std::vector<GeodesicSpec> solve_plane(const GroupPoint& q,
                                      const SolverConfig& cfg) {
  if (std::abs(q.z) > cfg.plane_band)
    throw std::domain_error("solve_plane: target must satisfy z ~ 0");
  if (q.x == 0.0 && q.y == 0.0)
    throw std::domain_error("solve_plane: the origin is excluded");
  const QuadrantRep rep = quadrant_reduce(q.x, q.y);
  const PlaneLabel label = classify_plane(q.x, q.y, cfg.curve_band);
  const StratumEntry& entry = stratum_table()[label.index - 1];
  const double xq = rep.xq, yq = rep.yq;
  GeodesicSpec base;
  switch (entry.base) {
    case 39:
      base = {make_covector(0.0, 0.0), xq};
      break;
    case 33:
      base = {make_covector(0.0, 0.0), 2.0 * kPi};
      break;
    case 17: {
      const double k = invert_curve_k(5, xq);
      const double K = complete_K(k);
      base = {c1_lambda(3.0 * K, k), 4.0 * K};
      break;
    }
    case 29: {
      const double k = invert_curve_k(1, yq);
      const double K = complete_K(k);
      base = {c2_lambda(3.0 * K, k), 4.0 * k * K};
      break;
    }
    case 21: {
      const double k = invert_curve_k(3, yq);
      const double K = complete_K(k);
      base = {c1_lambda(2.0 * K, k), 4.0 * K};
      break;
    }
    case 25: {
      const double k = invert_curve_k(2, yq);
      const double K = complete_K(k);
      base = {c2_lambda(2.0 * K, k), 4.0 * k * K};
      break;
    }
    case 1: {
      const double k = k_from_m3(xq * xq - yq * yq);
      const double E = complete_E(k);
      const double cu = std::clamp(
          -yq * (1.0 - k) * (1.0 + k) / (4.0 * k * E), -1.0, 1.0);
      const double tau = incomplete_F(std::acos(cu), k);
      const double K = complete_K(k);
      base = {c1_lambda(tau - 2.0 * K, k), 4.0 * K};
      break;
    }
    case 9: {
      const double k = k_from_m1(yq * yq - xq * xq);
      const double a = a_fn(k);
      const double cu =
          std::clamp(xq * (1.0 - k) * (1.0 + k) / (4.0 * k * a), -1.0, 1.0);
      const double tau = incomplete_F(std::acos(cu), k);
      const double K = complete_K(k);
      base = {c2_lambda(tau - 2.0 * K, k), 4.0 * k * K};
      break;
    }
    case 35:
      base = solve_m2(xq, yq, cfg);
      break;
    default:
      throw std::logic_error("solve_plane: unknown base stratum");
  }
  std::vector<GeodesicSpec> result{base};
  if (label.family == PlaneFamily::kMax) {
    GeodesicSpec partner;
    if (!maxwell_partner(base, {xq, yq, 0.0}, cfg.tol, partner))
      throw SolveFailure("solve_plane: missing Maxwell partner", base,
                         res_norm(exp(base), {xq, yq, 0.0}));
    result.push_back(partner);
  }
  if (rep.reflection != 0)
    for (GeodesicSpec& nu : result) nu = reflect_n(rep.reflection, nu);
  return result;
}

SynthesisResult minimizers(const GroupPoint& q, const SolverConfig& cfg) {
  SynthesisResult out;
  if (std::abs(q.z) > cfg.plane_band) {
    out.minimizers = {solve_interior(q, cfg)};
    out.classification = SynthesisClass::kInteriorUnique;
  } else {
    out.minimizers = solve_plane(q, cfg);
    switch (classify_plane(q.x, q.y, cfg.curve_band).family) {
      case PlaneFamily::kMax:
        out.classification = SynthesisClass::kMaxwellPair;
        break;
      case PlaneFamily::kConjCut:
        out.classification = SynthesisClass::kConjCutUnique;
        break;
      default:
        out.classification = SynthesisClass::kRestUnique;
        break;
    }
  }
  out.distance = out.minimizers.front().t;
  for (const GeodesicSpec& nu : out.minimizers)
    out.residual = std::max(out.residual, res_norm(exp(nu), q));
  return out;
}

double distance(const GroupPoint& q, const SolverConfig& cfg) {
  if (q.x == 0.0 && q.y == 0.0 && q.z == 0.0) return 0.0;
  return minimizers(q, cfg).distance;
}

const char* classification_name(SynthesisClass c) {
  switch (c) {
    case SynthesisClass::kInteriorUnique: return "interior-unique";
    case SynthesisClass::kMaxwellPair: return "maxwell-pair";
    case SynthesisClass::kConjCutUnique: return "conj-cut-unique";
    case SynthesisClass::kRestUnique: return "rest-unique";
  }
  return "?";
}

}  // namespace sh2geo
