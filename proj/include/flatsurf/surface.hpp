#pragma once

#include <array>
#include <string>
#include <vector>

#include "flatsurf/geometry.hpp"

namespace flatsurf {

// Tolerances, scaled where noted by the surface scale (longest side length).
struct Tolerances {
  double lengthRel = 1e-9;   // glued side length agreement, relative to scale
  double angle = 1e-9;       // radians
  double areaRel = 1e-12;    // minimum triangle area, relative to scale^2
  double clearanceRel = 1e-9; // arc interior clearance from labeled vertices
  double direction = 1e-12;  // relative cross-product threshold for collinearity
};

// A Euclidean triangle in its own planar chart. Side k joins corners k and
// (k+1)%3; the corner opposite side k is (k+2)%3.
struct Triangle {
  std::array<Vec2, 3> corners;

  Vec2 corner(int k) const { return corners[k % 3]; }
  double sideLength(int k) const { return norm(corners[(k + 1) % 3] - corners[k % 3]); }
  double angleAt(int k) const {
    return cornerAngle(corners[k % 3], corners[(k + 1) % 3], corners[(k + 2) % 3]);
  }
  double area() const { return triangleArea(corners[0], corners[1], corners[2]); }
  // +1 if corners are counterclockwise in the chart, -1 if clockwise.
  int chartOrientation() const {
    return cross(corners[1] - corners[0], corners[2] - corners[0]) >= 0.0 ? 1 : -1;
  }
};

// Identification of two triangle sides. Side endpoint 0 is corner `side`,
// endpoint 1 is corner `side+1`. reversed=false identifies endpoint 0 of one
// side with endpoint 1 of the other (orientation-compatible when both charts
// are counterclockwise); reversed=true identifies endpoint 0 with endpoint 0.
struct Gluing {
  int triA = -1, sideA = -1;
  int triB = -1, sideB = -1;
  bool reversed = false;
};

struct SideRef {
  int tri = -1, side = -1;
  bool operator==(const SideRef&) const = default;
  auto operator<=>(const SideRef&) const = default;
};

struct CornerRef {
  int tri = -1, corner = -1;
  bool operator==(const CornerRef&) const = default;
  auto operator<=>(const CornerRef&) const = default;
};

// A vertex of the glued surface: an equivalence class of triangle corners.
// Corners are stored in link order (consecutive corners share a glued side);
// the link is a cycle for interior vertices and a path for boundary vertices.
struct VertexClass {
  std::vector<CornerRef> corners;  // link order
  // Angular offset of each corner's wedge within the class, measured from the
  // link start; offset[i] = sum of corner angles before corner i.
  std::vector<double> offsets;
  // For corner i, the side of tri containing the wedge's reference ray (the
  // ray at angular coordinate offsets[i]).
  std::vector<int> referenceSides;
  double totalAngle = 0.0;
  bool onBoundary = false;
  bool labeled = false;
  std::string name;
};

struct TopologySummary {
  int eulerCharacteristic = 0;
  bool orientable = true;
  int boundaryComponents = 0;
  int genus = 0; // orientable genus, or crosscap number when non-orientable
};

class Surface {
public:
  Surface() = default;

  // Builds and fully validates a surface. labelHints selects vertex classes
  // by any member corner; singular classes are always labeled in addition.
  static Surface build(std::vector<Triangle> triangles, std::vector<Gluing> gluings,
                       const std::vector<CornerRef>& labelHints,
                       const Tolerances& tol = Tolerances());

  int triangleCount() const { return static_cast<int>(triangles_.size()); }
  const Triangle& triangle(int t) const { return triangles_[t]; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<Gluing>& gluings() const { return gluings_; }
  const Tolerances& tolerances() const { return tol_; }

  // Gluing index for a side, or -1 when the side is boundary.
  int gluingAt(int tri, int side) const { return sideGluing_[tri][side]; }
  bool isBoundarySide(int tri, int side) const { return gluingAt(tri, side) < 0; }
  // The other (tri, side) of a gluing, as seen from (tri, side).
  SideRef oppositeSide(int tri, int side) const;

  int classCount() const { return static_cast<int>(classes_.size()); }
  const VertexClass& vertexClass(int c) const { return classes_[c]; }
  int classOf(int tri, int corner) const { return cornerClass_[tri][corner]; }
  int classOf(CornerRef c) const { return cornerClass_[c.tri][c.corner]; }
  const std::vector<int>& labels() const { return labels_; }
  bool isLabeled(int classIndex) const { return classes_[classIndex].labeled; }
  int classByName(const std::string& name) const; // -1 if unknown

  // Cone angle of a vertex class (sum of incident corner angles).
  double coneAngle(int classIndex) const;
  // 2*pi - angle for interior classes, pi - angle for boundary classes.
  double curvature(int classIndex) const;
  bool isSingularClass(int classIndex) const;

  // Sum of curvatures minus 2*pi*chi; ~0 for every valid surface.
  double gaussBonnetResidual() const;

  TopologySummary topology() const;

  // Unglued sides grouped into boundary circles, each in walk order.
  const std::vector<std::vector<SideRef>>& boundaryCircles() const { return boundary_; }
  // Per circle side: the endpoint (0 or 1) at which the walk enters the side.
  const std::vector<std::vector<int>>& boundaryEntries() const { return boundaryEntry_; }

  double totalArea() const;
  // Longest side length; used to scale relative tolerances.
  double scale() const { return scale_; }
  double lengthTolerance() const { return tol_.lengthRel * scale_; }
  double clearance() const { return tol_.clearanceRel * scale_; }

  // Angular coordinate bookkeeping around a vertex class: position of a
  // direction within corner `li` (link index) measured from the link start.
  double angularCoordinate(int classIndex, int linkIndex, double withinWedge) const {
    return classes_[classIndex].offsets[linkIndex] + withinWedge;
  }
  int linkIndexOf(int classIndex, CornerRef c) const;

private:
  std::vector<Triangle> triangles_;
  std::vector<Gluing> gluings_;
  std::vector<std::array<int, 3>> sideGluing_;
  std::vector<std::array<int, 3>> cornerClass_;
  std::vector<VertexClass> classes_;
  std::vector<int> labels_;
  std::vector<std::vector<SideRef>> boundary_;
  std::vector<std::vector<int>> boundaryEntry_;
  Tolerances tol_;
  double scale_ = 1.0;

  void computeClasses();
  void computeBoundary();
};

// Endpoint correspondence of a gluing: endpoint e of side A maps to endpoint
// (reversed ? e : 1-e) of side B.
inline int matchedEndpoint(const Gluing& g, int endpoint) {
  return g.reversed ? endpoint : 1 - endpoint;
}

// Orientation parity of crossing a gluing: +1 when a development across it
// preserves handedness, -1 when it mirrors.
int gluingParity(const Surface& s, const Gluing& g);

// Develops the triangle on the far side of (tri, side), given the placement
// of (tri). The shared edge coincides and the new triangle lies on the
// opposite side of it.
Placement developAcross(const Surface& s, int tri, int side, const Placement& pl);

} // namespace flatsurf
