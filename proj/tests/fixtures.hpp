#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "flatsurf/surface.hpp"

// Shared corpus of test surfaces.
namespace fixtures {

using namespace flatsurf;

// Regular tetrahedron with unit edges: flat sphere, four cone points of
// angle pi. Faces: F0=(a,b,c), F1=(b,a,d), F2=(c,b,d), F3=(a,c,d).
inline Surface tetrahedron() {
  double h = std::sqrt(3.0) / 2.0;
  Triangle eq{{Vec2{0, 0}, Vec2{1, 0}, Vec2{0.5, h}}};
  std::vector<Triangle> tris(4, eq);
  std::vector<Gluing> gl = {
      {0, 0, 1, 0, false}, // ab
      {0, 1, 2, 0, false}, // bc
      {0, 2, 3, 0, false}, // ca
      {1, 1, 3, 2, false}, // ad
      {2, 1, 1, 2, false}, // bd
      {3, 1, 2, 2, false}, // cd
  };
  return Surface::build(tris, gl, {});
}

// Unit square torus from two right triangles; one vertex class of angle 2pi.
inline Surface squareTorus() {
  Triangle lower{{Vec2{0, 0}, Vec2{1, 0}, Vec2{1, 1}}};
  Triangle upper{{Vec2{0, 0}, Vec2{1, 1}, Vec2{0, 1}}};
  std::vector<Gluing> gl = {
      {0, 2, 1, 0, false}, // diagonal
      {0, 1, 1, 2, false}, // right side to left side
      {0, 0, 1, 1, false}, // bottom to top
  };
  return Surface::build({lower, upper}, gl, {{0, 0}});
}

// Unit square Moebius band: left and right sides glued with a flip; flat,
// one boundary circle, no singular points. Label at the (0,0)~(1,1) class.
inline Surface mobiusSquare() {
  Triangle lower{{Vec2{0, 0}, Vec2{1, 0}, Vec2{1, 1}}};
  Triangle upper{{Vec2{0, 0}, Vec2{1, 1}, Vec2{0, 1}}};
  std::vector<Gluing> gl = {
      {0, 2, 1, 0, false},
      {0, 1, 1, 2, true}, // flip
  };
  return Surface::build({lower, upper}, gl, {{0, 0}});
}

// Unit square cylinder (flat annulus): left and right glued without a flip.
// Labels at both boundary classes.
inline Surface flatAnnulus() {
  Triangle lower{{Vec2{0, 0}, Vec2{1, 0}, Vec2{1, 1}}};
  Triangle upper{{Vec2{0, 0}, Vec2{1, 1}, Vec2{0, 1}}};
  std::vector<Gluing> gl = {
      {0, 2, 1, 0, false},
      {0, 1, 1, 2, false},
  };
  return Surface::build({lower, upper}, gl, {{0, 0}, {1, 2}});
}

// Doubled unit equilateral triangle: flat sphere with three cone points of
// angle 2pi/3.
inline Surface doubledTriangle() {
  double h = std::sqrt(3.0) / 2.0;
  Triangle eq{{Vec2{0, 0}, Vec2{1, 0}, Vec2{0.5, h}}};
  std::vector<Gluing> gl = {
      {0, 0, 1, 0, true},
      {0, 1, 1, 1, true},
      {0, 2, 1, 2, true},
  };
  return Surface::build({eq, eq}, gl, {});
}

// Regular octagon with opposite sides identified by translation: genus-2
// translation surface, one cone point of angle 6pi. Unit side length.
inline Surface octagonGenus2() {
  constexpr double pi = std::numbers::pi;
  double R = 1.0 / (2.0 * std::sin(pi / 8.0));
  std::vector<Vec2> v;
  for (int i = 0; i < 8; ++i) {
    double ang = pi / 8.0 + i * pi / 4.0;
    v.push_back({R * std::cos(ang), R * std::sin(ang)});
  }
  std::vector<Triangle> tris;
  for (int k = 0; k < 6; ++k) tris.push_back({{v[0], v[k + 1], v[k + 2]}});
  std::vector<Gluing> gl;
  // fan diagonals: triangle k side 2 = (v[k+2], v[0]) ~ triangle k+1 side 0
  for (int k = 0; k + 1 < 6; ++k) gl.push_back({k, 2, k + 1, 0, false});
  // octagon sides in order: s0=(v0,v1)=T0 side0, s_i=(v_i,v_i+1)=T(i-1)
  // side1 for i=1..6, s7=(v7,v0)=T5 side2.
  auto octSide = [&](int i) -> SideRef {
    if (i == 0) return {0, 0};
    if (i <= 6) return {i - 1, 1};
    return {5, 2};
  };
  for (int i = 0; i < 4; ++i) {
    SideRef a = octSide(i), b = octSide(i + 4);
    gl.push_back({a.tri, a.side, b.tri, b.side, false});
  }
  return Surface::build(tris, gl, {});
}

// Pair of pants: double of a regular hexagon across three alternating sides.
inline Surface threeHoledSphere() {
  constexpr double pi = std::numbers::pi;
  std::vector<Vec2> h;
  for (int i = 0; i < 6; ++i)
    h.push_back({std::cos(i * pi / 3.0), std::sin(i * pi / 3.0)});
  std::vector<Triangle> tris;
  for (int k = 0; k < 4; ++k) tris.push_back({{h[0], h[k + 1], h[k + 2]}});
  for (int k = 0; k < 4; ++k) tris.push_back({{h[0], h[k + 1], h[k + 2]}}); // mirror copy
  std::vector<Gluing> gl;
  for (int k = 0; k + 1 < 4; ++k) {
    gl.push_back({k, 2, k + 1, 0, false});
    gl.push_back({4 + k, 2, 4 + k + 1, 0, false});
  }
  // hexagon boundary sides: s_i = (h_i, h_i+1): s0 = T0 side0; s1..s4 =
  // T(i-1) side1; s5 = T3 side2.
  auto hexSide = [&](int i) -> SideRef {
    if (i == 0) return {0, 0};
    if (i <= 4) return {i - 1, 1};
    return {3, 2};
  };
  // glue copies along alternating sides 0, 2, 4 (identity map => reversed)
  for (int i : {0, 2, 4}) {
    SideRef a = hexSide(i);
    gl.push_back({a.tri, a.side, a.tri + 4, a.side, true});
  }
  return Surface::build(tris, gl, {});
}

// Unit square disk (two triangles, no gluings beyond the diagonal).
inline Surface squareDisk() {
  Triangle lower{{Vec2{0, 0}, Vec2{1, 0}, Vec2{1, 1}}};
  Triangle upper{{Vec2{0, 0}, Vec2{1, 1}, Vec2{0, 1}}};
  std::vector<Gluing> gl = {{0, 2, 1, 0, false}};
  return Surface::build({lower, upper}, gl, {});
}

// 2x1 flat rectangle disk from four unit right triangles.
inline Surface rectangleDisk2x1() {
  Triangle t0{{Vec2{0, 0}, Vec2{1, 0}, Vec2{1, 1}}};
  Triangle t1{{Vec2{0, 0}, Vec2{1, 1}, Vec2{0, 1}}};
  Triangle t2{{Vec2{1, 0}, Vec2{2, 0}, Vec2{2, 1}}};
  Triangle t3{{Vec2{1, 0}, Vec2{2, 1}, Vec2{1, 1}}};
  std::vector<Gluing> gl = {
      {0, 2, 1, 0, false}, // diagonal square 1
      {2, 2, 3, 0, false}, // diagonal square 2
      {0, 1, 3, 2, false}, // shared vertical edge
  };
  return Surface::build({t0, t1, t2, t3}, gl, {});
}

// Very thin torus (1 x 0.001 rectangle with opposite sides glued): the
// pathological budget fixture.
inline Surface thinTorus() {
  double h = 1e-3;
  Triangle lower{{Vec2{0, 0}, Vec2{1, 0}, Vec2{1, h}}};
  Triangle upper{{Vec2{0, 0}, Vec2{1, h}, Vec2{0, h}}};
  std::vector<Gluing> gl = {
      {0, 2, 1, 0, false},
      {0, 1, 1, 2, false},
      {0, 0, 1, 1, false},
  };
  return Surface::build({lower, upper}, gl, {{0, 0}});
}

} // namespace fixtures
