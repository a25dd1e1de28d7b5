#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatsurf/surface.hpp"

namespace flatsurf {

// One step of a development chain: a triangle together with the side through
// which it was entered (-1 for the head triangle, entered at a corner).
struct ChainStep {
  int tri = -1;
  int entrySide = -1;
};

// Canonical description of a geodesic arc, invariant under re-encoding of
// pass-through routings and usable for orientation-insensitive comparison.
// Token records (fixed width 4):
//   {1, tri, corner, 0}        terminal wedge
//   {2, tri, in, out}          transversal crossing
//   {3, tri, in, corner}       crossing ending at a vertex
//   {4, tri, corner, out}      crossing starting at a vertex
//   {5, class, 0, 0}           straight pass through a flat vertex
//   {6, gluing, 0, 0}          run along a glued edge
//   {7, tri, side, 0}          run along a boundary edge
using ArcKey = std::vector<int64_t>;

ArcKey reversedKey(const ArcKey& key);
std::string keyToString(const ArcKey& key);

// Chord of an arc through one triangle, in that triangle's chart.
struct TriChord {
  int tri = -1;
  Vec2 a, b;            // chart coordinates
  int sideA = -1;       // side containing a (-1 when a is a corner)
  int cornerA = -1;     // corner index when a is a corner
  double paramA = 0.0;  // parameter of a along sideA
  int sideB = -1;
  int cornerB = -1;
  double paramB = 0.0;
};

// An edge of the mesh traversed lengthwise by an arc.
struct EdgeRun {
  int gluing = -1;   // gluing index, or -1 for a boundary edge
  SideRef side;      // representative side
};

// A geodesic joining two labeled points whose interior avoids all labeled
// points; it may pass straight through unlabeled flat vertices.
struct Arc {
  int sourceClass = -1, targetClass = -1;
  CornerRef sourceWedge, targetWedge;
  Vec2 vector;       // developed target in the source wedge frame
  double length = 0.0;
  std::vector<ChainStep> chain;
  int targetCorner = -1; // corner of chain.back().tri at the target

  ArcKey key;            // canonical (minimum of both traversal directions)
  std::vector<TriChord> chords;     // transversal crossings, in path order
  std::vector<int> passClasses;     // flat vertices passed through, in order
  std::vector<EdgeRun> edgeRuns;    // lengthwise edge traversals, in order
  // Interleaved order along the path: (0, chord index) or (1, run index).
  std::vector<std::pair<int, int>> pathSteps;
  bool pureEdgeChain = false;       // entirely a run along mesh edges

  // Angular coordinate of the outgoing ray at each endpoint, in the link
  // coordinates of the endpoint's vertex class.
  double sourceAngle = 0.0, targetAngle = 0.0;

  bool isLoop() const { return sourceClass == targetClass; }
};

// Reconstructs full arc data from a development chain: places the chain,
// analyses the segment from the source corner to the target corner, and
// fills in key, chords, passes and endpoint angles. Throws NearDegenerate
// when the open segment passes within clearance of a labeled vertex image.
Arc arcFromChain(const Surface& s, CornerRef sourceWedge, const std::vector<ChainStep>& chain,
                 int targetCorner);

// Places every step of a chain (head triangle translated so that the source
// corner sits at the origin).
std::vector<Placement> placeChain(const Surface& s, CornerRef sourceWedge,
                                  const std::vector<ChainStep>& chain);

// Independently re-develops a straight geodesic from a labeled vertex: walks
// triangle by triangle in the given direction for the given length, passing
// straight through unlabeled flat vertices, and stops at a labeled vertex.
// Returns the arc; fails if the walk does not terminate at a labeled vertex
// at the stated length (within tolerance).
Arc traceGeodesic(const Surface& s, CornerRef sourceWedge, Vec2 direction, double length);

// True when re-developing the arc's chain reproduces its stored vector and
// endpoint classes within tolerance.
bool revalidateArc(const Surface& s, const Arc& arc, std::string* whyNot = nullptr);

// Transversal-intersection test between two arcs (or an arc and itself when
// a == b): true if their interiors meet anywhere, including shared
// pass-through vertices. Touching at endpoint vertices is ignored.
bool arcsIntersect(const Surface& s, const Arc& a, const Arc& b);

} // namespace flatsurf
