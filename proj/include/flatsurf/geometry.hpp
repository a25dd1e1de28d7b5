#pragma once

#include <array>
#include <cmath>
#include <optional>

namespace flatsurf {

struct Vec2 {
  double x = 0.0, y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline Vec2 normalized(Vec2 a) {
  double n = norm(a);
  return n > 0.0 ? Vec2{a.x / n, a.y / n} : Vec2{1.0, 0.0};
}
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

// Unsigned angle between two directions, in [0, pi].
inline double angleBetween(Vec2 a, Vec2 b) {
  return std::atan2(std::abs(cross(a, b)), dot(a, b));
}

inline double triangleArea(Vec2 a, Vec2 b, Vec2 c) {
  return 0.5 * std::abs(cross(b - a, c - a));
}

// Interior angle of the triangle (a,b,c) at corner a.
inline double cornerAngle(Vec2 a, Vec2 b, Vec2 c) {
  return std::atan2(std::abs(cross(b - a, c - a)), dot(b - a, c - a));
}

// Area of a triangle from its side lengths (numerically stable Heron).
double heronArea(double a, double b, double c);

// Angle opposite side c in a triangle with sides a, b, c.
double angleFromSides(double a, double b, double c);

// Distance from the origin to the segment [p, q].
double segmentDistanceToOrigin(Vec2 p, Vec2 q);

// Distance from point r to the segment [p, q].
double pointSegmentDistance(Vec2 r, Vec2 p, Vec2 q);

// True if open segments (a,b) and (c,d) intersect or overlap; touching at
// shared endpoints does not count. tol is an absolute distance tolerance.
bool openSegmentsIntersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double tol);

// Planar isometry p -> M p + t, with M in O(2).
struct Placement {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0; // row-major 2x2
  double tx = 0.0, ty = 0.0;

  Vec2 apply(Vec2 p) const { return {a * p.x + b * p.y + tx, c * p.x + d * p.y + ty}; }
  double det() const { return a * d - b * c; }

  static Placement translation(Vec2 t) { return {1, 0, 0, 1, t.x, t.y}; }

  // The rigid motion mapping p0 -> q0, p1 -> q1 (requires |p1-p0| == |q1-q0|).
  static Placement fromSegmentMatch(Vec2 p0, Vec2 p1, Vec2 q0, Vec2 q1, bool mirrored);
};

// True if triangles (a0,a1,a2) and (b0,b1,b2) overlap with positive area.
bool trianglesOverlap(const std::array<Vec2, 3>& A, const std::array<Vec2, 3>& B, double tol);

} // namespace flatsurf
