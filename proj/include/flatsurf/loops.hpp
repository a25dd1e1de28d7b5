#pragma once

#include <vector>

#include "flatsurf/enumerate.hpp"

namespace flatsurf {

enum class LoopClass { Null, BoundaryParallel, Essential, Unknown };

struct GeodesicLoop {
  MultiArc path;    // closed: starts and ends at baseClass
  int baseClass = -1;
  double length = 0.0;
  bool simple = false;
  LoopClass homotopy = LoopClass::Unknown;
};

// All geodesic loops of length <= maxLength based at labeled points (or at
// `base` only, when given). Chains of arcs must turn by at least pi on both
// sides at every intermediate labeled visit.
std::vector<GeodesicLoop> enumerateLoops(const Surface& s, double maxLength, int base = -1,
                                         const SearchOptions& opts = {});

// Classifies a simple loop by cutting: a disk piece bounded entirely by the
// cut means null-homotopic; an annulus piece with one original boundary
// circle means boundary-parallel; otherwise essential.
LoopClass classifySimpleLoop(const Surface& s, const GeodesicLoop& loop);

// Shortest loop that is neither null-homotopic nor boundary-parallel.
// Requires positive genus (or a non-orientable surface) and at most one
// boundary component.
GeodesicLoop shortestEssentialLoop(const Surface& s, const SearchOptions& opts = {});

// True if the loop has no transverse self-intersection and repeats no vertex.
bool loopIsSimple(const Surface& s, const MultiArc& path, int baseClass);

// Turning angles at a junction between two directed arc ends; both returned
// side angles must be >= pi - tol for the junction to be geodesic.
std::pair<double, double> junctionAngles(const Surface& s, int classIndex, double angleIn,
                                         double angleOut);

} // namespace flatsurf
