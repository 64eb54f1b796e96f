#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "sh2geo/plane.hpp"
#include "sh2geo/types.hpp"

namespace sh2geo {

struct SampleGrid {
  int n_gamma = 256;
  int n_c = 256;
  double c_max = 6.0;
  int t_steps = 32;
  double radius = 3.14159265358979323846;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;  // counts >= 2, c_max > 0, radius > 0
};

struct MeshVertex {
  GroupPoint p;
  Covector lambda;
  double t = 0.0;
  StratumTag tag;
  int plane_index = 0;  // 1..40 for cut-locus vertices, else 0
};

struct MeshOutput {
  std::vector<MeshVertex> vertices;
  std::vector<std::array<int, 3>> faces;
  std::size_t dropped = 0;  // clipped or numerically failed samples
};

/// Vertices farther than this from the origin are clipped (separatrix
/// blow-up guard).
inline constexpr double kClipRadius = 1e3;

/// Sub-Riemannian sphere of radius R: Exp(lambda, R) over the covector
/// grid, restricted to cut_time(lambda) >= R.
MeshOutput sample_sphere(double R, const SampleGrid& grid);

/// Wavefront at time R: the unfiltered endpoint set (sphere subset of it).
MeshOutput sample_wavefront(double R, const SampleGrid& grid);

/// First caustic: Exp(lambda, t1_conj(lambda)) over C1 u C2 u C4.
MeshOutput sample_caustic(const SampleGrid& grid);

/// The cut locus in the plane z = 0 within |x|,|y| <= extent, rendered from
/// the closed-form stratum charts and tagged by family.
MeshOutput sample_cutlocus(double extent, const SampleGrid& grid);

/// Fixed-energy section of the local caustic: the closed curves traced by
/// Exp(lambda, t1_conj(lambda)) over one period of the initial phase, for
/// lambda in C2 at modulus k (one loop per rotation sense).
struct CausticSection {
  std::vector<GroupPoint> loop_pos;  // s2 = +1
  std::vector<GroupPoint> loop_neg;  // s2 = -1
  std::size_t failed = 0;
};
CausticSection caustic_section_c2(double k, int n_phase);

/// Number of direction reversals (2/3-power cusps) of the (x, y)
/// projection of a closed polyline.
int count_cusps_xy(const std::vector<GroupPoint>& loop);

}  // namespace sh2geo
