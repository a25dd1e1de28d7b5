#include "flatsurf/geometry.hpp"

#include <algorithm>

namespace flatsurf {

double heronArea(double a, double b, double c) {
  // Kahan's numerically stable variant; requires sorted inputs.
  double s[3] = {a, b, c};
  std::sort(s, s + 3);
  double x = s[0], y = s[1], z = s[2]; // x <= y <= z
  double t = (x + (y + z)) * (z - (y - x)) * (z + (y - x)) * (x + (y - z));
  return t > 0.0 ? 0.25 * std::sqrt(t) : 0.0;
}

double angleFromSides(double a, double b, double c) {
  double v = (a * a + b * b - c * c) / (2.0 * a * b);
  v = std::clamp(v, -1.0, 1.0);
  return std::acos(v);
}

double segmentDistanceToOrigin(Vec2 p, Vec2 q) {
  return pointSegmentDistance({0, 0}, p, q);
}

double pointSegmentDistance(Vec2 r, Vec2 p, Vec2 q) {
  Vec2 d = q - p;
  double l2 = norm2(d);
  if (l2 <= 0.0) return norm(r - p);
  double t = std::clamp(dot(r - p, d) / l2, 0.0, 1.0);
  return norm(r - (p + d * t));
}

bool openSegmentsIntersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double tol) {
  // Shrink both segments away from their endpoints so that touching at a
  // shared endpoint is ignored, then test for proximity.
  double lab = norm(b - a), lcd = norm(d - c);
  if (lab <= 2.0 * tol || lcd <= 2.0 * tol) return false;
  double sa = tol / lab, sc = tol / lcd;
  Vec2 a2 = a + (b - a) * sa, b2 = b - (b - a) * sa;
  Vec2 c2 = c + (d - c) * sc, d2 = d - (d - c) * sc;

  auto side = [&](Vec2 p, Vec2 q, Vec2 r) { return cross(q - p, r - p); };
  double d1 = side(a2, b2, c2), d2v = side(a2, b2, d2);
  double d3 = side(c2, d2, a2), d4 = side(c2, d2, b2);
  double s1 = lab, s2 = lcd;
  if (((d1 > tol * s1 && d2v < -tol * s1) || (d1 < -tol * s1 && d2v > tol * s1)) &&
      ((d3 > tol * s2 && d4 < -tol * s2) || (d3 < -tol * s2 && d4 > tol * s2)))
    return true;

  // Near-parallel / touching cases: proximity between the shrunk segments.
  auto segSegDist = [&](Vec2 p1, Vec2 q1, Vec2 p2, Vec2 q2) {
    double m = pointSegmentDistance(p1, p2, q2);
    m = std::min(m, pointSegmentDistance(q1, p2, q2));
    m = std::min(m, pointSegmentDistance(p2, p1, q1));
    m = std::min(m, pointSegmentDistance(q2, p1, q1));
    return m;
  };
  return segSegDist(a2, b2, c2, d2) <= tol;
}

Placement Placement::fromSegmentMatch(Vec2 p0, Vec2 p1, Vec2 q0, Vec2 q1, bool mirrored) {
  Vec2 u = p1 - p0, v = q1 - q0;
  double lu = norm(u), lv = norm(v);
  double cu = 1.0, su = 0.0;
  if (lu > 0.0 && lv > 0.0) {
    cu = (u.x * v.x + u.y * v.y) / (lu * lv);
    su = (u.x * v.y - u.y * v.x) / (lu * lv);
  }
  Placement pl;
  if (!mirrored) {
    pl.a = cu; pl.b = -su; pl.c = su; pl.d = cu;
  } else {
    // Rotation composed with reflection across the direction of u.
    Vec2 un = normalized(u);
    double fa = un.x * un.x - un.y * un.y, fb = 2.0 * un.x * un.y;
    // R * F where F = [[fa, fb], [fb, -fa]]
    pl.a = cu * fa - su * fb; pl.b = cu * fb + su * fa;
    pl.c = su * fa + cu * fb; pl.d = su * fb - cu * fa;
  }
  Vec2 rp0 = {pl.a * p0.x + pl.b * p0.y, pl.c * p0.x + pl.d * p0.y};
  pl.tx = q0.x - rp0.x;
  pl.ty = q0.y - rp0.y;
  return pl;
}

namespace {

// Project triangle onto axis, return [min,max].
std::pair<double, double> project(const std::array<Vec2, 3>& T, Vec2 axis) {
  double lo = dot(T[0], axis), hi = lo;
  for (int i = 1; i < 3; ++i) {
    double v = dot(T[i], axis);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

} // namespace

bool trianglesOverlap(const std::array<Vec2, 3>& A, const std::array<Vec2, 3>& B, double tol) {
  // Separating-axis test; an axis with a gap of at least -tol separates.
  for (int which = 0; which < 2; ++which) {
    const auto& T = which == 0 ? A : B;
    for (int i = 0; i < 3; ++i) {
      Vec2 e = T[(i + 1) % 3] - T[i];
      Vec2 axis = normalized(perp(e));
      auto [a0, a1] = project(A, axis);
      auto [b0, b1] = project(B, axis);
      if (a1 <= b0 + tol || b1 <= a0 + tol) return false;
    }
  }
  return true;
}

} // namespace flatsurf
