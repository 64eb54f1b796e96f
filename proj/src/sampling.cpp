#include "sh2geo/sampling.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "sh2geo/elliptic.hpp"
#include "sh2geo/expmap.hpp"
#include "sh2geo/optimality.hpp"
#include "sh2geo/pendulum.hpp"

namespace sh2geo {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

bool clipped(const GroupPoint& p) {
  return !(std::abs(p.x) <= kClipRadius && std::abs(p.y) <= kClipRadius &&
           std::abs(p.z) <= kClipRadius) ||
         !std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z);
}

// Deterministic row fan-out: each worker claims whole rows; every row
// writes only its own output slab.
void parallel_rows(int rows, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) threads = int(std::thread::hardware_concurrency());
  if (threads <= 1 || rows <= 1) {
    for (int r = 0; r < rows; ++r) fn(r);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int nw = std::min(threads, rows);
  pool.reserve(nw);
  for (int w = 0; w < nw; ++w)
    pool.emplace_back([&] {
      for (int r = next.fetch_add(1); r < rows; r = next.fetch_add(1)) fn(r);
    });
  for (std::thread& th : pool) th.join();
}

struct RowSample {
  std::vector<MeshVertex> verts;
  std::vector<char> kept;  // per grid column, for face assembly
  std::size_t dropped = 0;
};

// Common front-propagation sampler for spheres and wavefronts.
MeshOutput sample_front(double R, const SampleGrid& grid, bool cut_filter) {
  grid.validate();
  if (!(R > 0.0)) throw std::domain_error("sampler: radius must be positive");
  const int ng = grid.n_gamma, nc = grid.n_c;
  std::vector<RowSample> rows(ng);
  parallel_rows(ng, grid.threads, [&](int ig) {
    RowSample& row = rows[ig];
    row.kept.assign(nc, 0);
    const double g = kFourPi * ig / ng;
    std::vector<Covector> lams;
    std::vector<int> cols;
    lams.reserve(nc);
    for (int ic = 0; ic < nc; ++ic) {
      const double c = -grid.c_max + 2.0 * grid.c_max * ic / (nc - 1);
      const Covector lam = make_covector(g, c);
      if (cut_filter && cut_time(lam) < R) continue;
      lams.push_back(lam);
      cols.push_back(ic);
    }
    std::vector<GroupPoint> pts(lams.size());
    exp_batch(lams, R, pts);
    for (std::size_t j = 0; j < lams.size(); ++j) {
      if (clipped(pts[j])) {
        ++row.dropped;
        continue;
      }
      row.kept[cols[j]] = 1;
      row.verts.push_back(
          {pts[j], lams[j], R, classify(lams[j]), 0});
    }
  });
  MeshOutput out;
  // stitch rows in order and build the cell triangulation
  std::vector<std::vector<int>> ids(ng, std::vector<int>(nc, -1));
  for (int ig = 0; ig < ng; ++ig) {
    std::size_t v = 0;
    for (int ic = 0; ic < nc; ++ic) {
      if (!rows[ig].kept[ic]) continue;
      ids[ig][ic] = int(out.vertices.size());
      out.vertices.push_back(rows[ig].verts[v++]);
    }
    out.dropped += rows[ig].dropped;
  }
  for (int ig = 0; ig < ng; ++ig) {
    const int ig2 = (ig + 1) % ng;  // gamma wraps around the cylinder
    for (int ic = 0; ic + 1 < nc; ++ic) {
      const int a = ids[ig][ic], b = ids[ig][ic + 1];
      const int c = ids[ig2][ic], d = ids[ig2][ic + 1];
      if (a < 0 || b < 0 || c < 0 || d < 0) continue;
      out.faces.push_back({a, b, c});
      out.faces.push_back({b, d, c});
    }
  }
  // equilibrium fibers are never hit by the open grid; add them explicitly
  for (int comp = 0; comp < 2; ++comp) {
    const Covector c4 = make_covector(comp == 0 ? 0.0 : kTwoPi, 0.0);
    if (!cut_filter || cut_time(c4) >= R)
      out.vertices.push_back({exp({c4, R}), c4, R, classify(c4), 0});
    const Covector c5 = make_covector(comp == 0 ? kPi : 3.0 * kPi, 0.0);
    out.vertices.push_back({exp({c5, R}), c5, R, classify(c5), 0});
  }
  return out;
}

}  // namespace

void SampleGrid::validate() const {
  if (n_gamma < 2 || n_c < 2 || t_steps < 2)
    throw std::domain_error("SampleGrid: counts must be >= 2");
  if (!(c_max > 0.0)) throw std::domain_error("SampleGrid: c_max must be > 0");
  if (!(radius > 0.0)) throw std::domain_error("SampleGrid: radius must be > 0");
}

MeshOutput sample_sphere(double R, const SampleGrid& grid) {
  return sample_front(R, grid, true);
}

MeshOutput sample_wavefront(double R, const SampleGrid& grid) {
  return sample_front(R, grid, false);
}

MeshOutput sample_caustic(const SampleGrid& grid) {
  grid.validate();
  const int ng = grid.n_gamma, nc = grid.n_c;
  std::vector<RowSample> rows(ng);
  parallel_rows(ng, grid.threads, [&](int ig) {
    RowSample& row = rows[ig];
    const double g = kFourPi * ig / ng;
    for (int ic = 0; ic < nc; ++ic) {
      const double c = -grid.c_max + 2.0 * grid.c_max * ic / (nc - 1);
      const Covector lam = make_covector(g, c);
      const StratumTag tag = classify(lam, 1e-6);
      if (tag.stratum != Stratum::C1 && tag.stratum != Stratum::C2) {
        ++row.dropped;
        continue;
      }
      if (tt(lam) > 50.0) {  // separatrix neighbourhood: endpoints blow up
        ++row.dropped;
        continue;
      }
      const ConjugateTime ct = conj_time_numeric(lam);
      if (!ct.ok) {
        ++row.dropped;
        continue;
      }
      const GroupPoint p = exp({lam, ct.t});
      if (clipped(p)) {
        ++row.dropped;
        continue;
      }
      row.verts.push_back({p, lam, ct.t, tag, 0});
    }
  });
  MeshOutput out;
  for (RowSample& row : rows) {
    out.dropped += row.dropped;
    for (MeshVertex& v : row.verts) out.vertices.push_back(v);
  }
  // conjugate endpoints of the equilibrium geodesics
  for (int comp = 0; comp < 2; ++comp) {
    const Covector c4 = make_covector(comp == 0 ? 0.0 : kTwoPi, 0.0);
    out.vertices.push_back(
        {exp({c4, 2.0 * kPi}), c4, 2.0 * kPi, classify(c4), 0});
  }
  return out;
}

MeshOutput sample_cutlocus(double extent, const SampleGrid& grid) {
  grid.validate();
  if (!(extent > 0.0))
    throw std::domain_error("sample_cutlocus: extent must be > 0");
  MeshOutput out;
  const int nk = grid.n_c;
  const int nu = grid.n_gamma;

  auto index_for = [](int base, int px, int py) {
    for (const StratumEntry& e : stratum_table()) {
      if (e.base != base) continue;
      if (e.sx != 0 && px != 0 && e.sx != px) continue;
      if (e.sy != 0 && py != 0 && e.sy != py) continue;
      return e.index;
    }
    return 0;
  };
  // Quadrant images: identity plus the reflections acting as
  // (x,-y), (-x,y), (-x,-y) on the plane.
  const int quad_refl[4] = {0, 1, 4, 5};

  auto emit = [&](const GroupPoint& p, const GeodesicSpec& nu_base, int base) {
    if (std::abs(p.x) > extent || std::abs(p.y) > extent) {
      ++out.dropped;
      return;
    }
    for (int qi = 0; qi < 4; ++qi) {
      const int r = quad_refl[qi];
      const GroupPoint pr = r == 0 ? p : reflect_m(r, p);
      // strata on the axes coincide pairwise under the quadrant images
      if (base == 29 && (qi == 2 || qi == 3)) continue;
      if ((base == 17 || base == 33 || base == 39) && (qi == 1 || qi == 3))
        continue;
      const GeodesicSpec nur = r == 0 ? nu_base : reflect_n(r, nu_base);
      const int index = index_for(base, sign_of(pr.x), sign_of(pr.y));
      out.vertices.push_back(
          {pr, nur.lambda, nur.t, classify(nur.lambda), index});
    }
  };

  // m1 and m3 interiors through the 2D charts at p = 2K
  for (int ik = 1; ik < nk; ++ik) {
    const double k = double(ik) / nk;
    const double K = complete_K(k);
    const double t1 = 4.0 * k * K;   // m1 (C2 chart)
    const double t3 = 4.0 * K;       // m3 (C1 chart)
    for (int iu = 1; iu < nu; ++iu) {
      const double u = 0.5 * kPi * iu / nu;
      const double tau = incomplete_F(u, k);
      {
        EllipticCoords e;
        e.phi = tau - 2.0 * K;
        e.k = k;
        e.tag = StratumTag{Stratum::C2, 0, +1, 0};
        const GeodesicSpec nu_base{from_elliptic(e), t1};
        emit(exp(nu_base), nu_base, 9);
      }
      {
        EllipticCoords e;
        e.phi = tau - 2.0 * K;
        e.k = k;
        e.tag = StratumTag{Stratum::C1, +1, 0, 0};
        const GeodesicSpec nu_base{from_elliptic(e), t3};
        emit(exp(nu_base), nu_base, 1);
      }
    }
  }
  // curve strata gamma_1, gamma_2, gamma_3, gamma_5
  for (int ik = 1; ik < nk * 2; ++ik) {
    const double k = double(ik) / (2.0 * nk);
    const double K = complete_K(k);
    struct CurveSpec {
      int base;
      double phi;
      Stratum stratum;
      double t;
    };
    const CurveSpec specs[4] = {
        {29, 3.0 * K, Stratum::C2, 4.0 * k * K},  // gamma_1
        {25, 2.0 * K, Stratum::C2, 4.0 * k * K},  // gamma_2
        {21, 2.0 * K, Stratum::C1, 4.0 * K},      // gamma_3
        {17, 3.0 * K, Stratum::C1, 4.0 * K},      // gamma_5
    };
    for (const CurveSpec& cs : specs) {
      EllipticCoords e;
      e.phi = cs.phi;
      e.k = k;
      e.tag = cs.stratum == Stratum::C1 ? StratumTag{Stratum::C1, +1, 0, 0}
                                        : StratumTag{Stratum::C2, 0, +1, 0};
      const GeodesicSpec nu_base{from_elliptic(e), cs.t};
      emit(exp(nu_base), nu_base, cs.base);
    }
  }
  // the conjugate-cut points P = (+-2pi, 0)
  {
    const GeodesicSpec nu_base{make_covector(0.0, 0.0), 2.0 * kPi};
    emit(exp(nu_base), nu_base, 33);
  }
  return out;
}

CausticSection caustic_section_c2(double k, int n_phase) {
  if (!(k > 0.0 && k < 1.0))
    throw std::domain_error("caustic_section_c2: k must lie in (0,1)");
  CausticSection sec;
  const double K4 = 4.0 * complete_K(k);
  for (int sense = 0; sense < 2; ++sense) {
    std::vector<GroupPoint>& loop = sense == 0 ? sec.loop_pos : sec.loop_neg;
    loop.reserve(n_phase);
    for (int i = 0; i < n_phase; ++i) {
      EllipticCoords e;
      e.phi = K4 * i / n_phase;
      e.k = k;
      e.tag = StratumTag{Stratum::C2, 0, sense == 0 ? +1 : -1, 0};
      const Covector lam = from_elliptic(e);
      const ConjugateTime ct = conj_time_numeric(lam);
      if (!ct.ok) {
        ++sec.failed;
        continue;
      }
      loop.push_back(exp({lam, ct.t}));
    }
  }
  return sec;
}

int count_cusps_xy(const std::vector<GroupPoint>& loop) {
  const int n = int(loop.size());
  if (n < 3) return 0;
  int cusps = 0;
  for (int i = 0; i < n; ++i) {
    const GroupPoint& a = loop[i];
    const GroupPoint& b = loop[(i + 1) % n];
    const GroupPoint& c = loop[(i + 2) % n];
    const double d1x = b.x - a.x, d1y = b.y - a.y;
    const double d2x = c.x - b.x, d2y = c.y - b.y;
    if (d1x * d2x + d1y * d2y < 0.0) ++cusps;
  }
  return cusps;
}

}  // namespace sh2geo
