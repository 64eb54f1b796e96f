#pragma once

#include <stdexcept>
#include <vector>

#include "sh2geo/plane.hpp"
#include "sh2geo/types.hpp"

namespace sh2geo {

struct SolverConfig {
  // Forward residual target, measured on asinh-compressed coordinates:
  // absolute near the origin, relative on the exponentially large targets
  // near the separatrix.
  double tol = 1e-9;
  int max_newton = 80;      // Newton iterations per seed
  int multistart = 32;      // seeds tried by the interior solver
  double plane_band = 1e-8; // |z| below which targets route to the plane solver
  double curve_band = 1e-7; // curve-membership band used by the plane solver
};

enum class SynthesisClass {
  kInteriorUnique,  // z != 0: unique, neither cut nor conjugate
  kMaxwellPair,     // Maxwell stratum: exactly two minimizers
  kConjCutUnique,   // cut and conjugate simultaneously
  kRestUnique,      // plane point off the cut locus
};

struct SynthesisResult {
  std::vector<GeodesicSpec> minimizers;  // one or two entries
  double distance = 0.0;
  SynthesisClass classification = SynthesisClass::kInteriorUnique;
  double residual = 0.0;  // max forward re-evaluation error
};

/// Raised when a solver exhausts its budget; carries the best candidate.
struct SolveFailure : std::runtime_error {
  SolveFailure(const std::string& msg, GeodesicSpec best_candidate,
               double best_residual)
      : std::runtime_error(msg), best(best_candidate), residual(best_residual) {}
  GeodesicSpec best;
  double residual;
};

/// Unique preimage of a target with z != 0 under Exp restricted to D1/D2
/// (multi-start damped Newton in the (gamma, c, t) chart).
GeodesicSpec solve_interior(const GroupPoint& q, const SolverConfig& cfg = {});

/// All minimizers reaching a target in the punctured plane z = 0, via the
/// closed-form stratum charts.
std::vector<GeodesicSpec> solve_plane(const GroupPoint& q,
                                      const SolverConfig& cfg = {});

/// Complete synthesis-side answer for a target q != origin.
SynthesisResult minimizers(const GroupPoint& q, const SolverConfig& cfg = {});

/// Sub-Riemannian distance from the origin.
double distance(const GroupPoint& q, const SolverConfig& cfg = {});

const char* classification_name(SynthesisClass c);

}  // namespace sh2geo
