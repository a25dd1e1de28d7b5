#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "flatsurf/errors.hpp"
#include "flatsurf/surface.hpp"

using namespace flatsurf;
constexpr double kPi = std::numbers::pi;

TEST_CASE("tetrahedron: four cone points of angle pi on a sphere") {
  Surface s = fixtures::tetrahedron();
  CHECK(s.classCount() == 4);
  for (int c = 0; c < s.classCount(); ++c) {
    CHECK(s.coneAngle(c) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(s.curvature(c) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(s.isLabeled(c));
  }
  TopologySummary topo = s.topology();
  CHECK(topo.eulerCharacteristic == 2);
  CHECK(topo.orientable);
  CHECK(topo.boundaryComponents == 0);
  CHECK(topo.genus == 0);
  CHECK(std::abs(s.gaussBonnetResidual()) < 1e-9);
}

TEST_CASE("square torus: one flat labeled vertex") {
  Surface s = fixtures::squareTorus();
  CHECK(s.classCount() == 1);
  CHECK(s.coneAngle(0) == doctest::Approx(2 * kPi).epsilon(1e-12));
  CHECK(s.curvature(0) == doctest::Approx(0.0).epsilon(1e-12));
  TopologySummary topo = s.topology();
  CHECK(topo.eulerCharacteristic == 0);
  CHECK(topo.orientable);
  CHECK(topo.genus == 1);
  CHECK(std::abs(s.gaussBonnetResidual()) < 1e-9);
}

TEST_CASE("moebius square: non-orientable, one boundary circle") {
  Surface s = fixtures::mobiusSquare();
  TopologySummary topo = s.topology();
  CHECK(topo.eulerCharacteristic == 0);
  CHECK(!topo.orientable);
  CHECK(topo.boundaryComponents == 1);
  CHECK(topo.genus == 1); // crosscap number
  CHECK(std::abs(s.gaussBonnetResidual()) < 1e-9);
}

TEST_CASE("octagon genus 2: one cone point of angle 6 pi") {
  Surface s = fixtures::octagonGenus2();
  CHECK(s.classCount() == 1);
  CHECK(s.coneAngle(0) == doctest::Approx(6 * kPi).epsilon(1e-12));
  CHECK(s.coneAngle(0) ==
        doctest::Approx(oracles::coneAngleBruteForce(s, 0, 0)).epsilon(1e-12));
  TopologySummary topo = s.topology();
  CHECK(topo.eulerCharacteristic == -2);
  CHECK(topo.orientable);
  CHECK(topo.genus == 2);
  CHECK(std::abs(s.gaussBonnetResidual()) < 1e-9);
}

TEST_CASE("doubled triangle: three cone points of angle 2pi/3") {
  Surface s = fixtures::doubledTriangle();
  CHECK(s.classCount() == 3);
  for (int c = 0; c < 3; ++c)
    CHECK(s.coneAngle(c) == doctest::Approx(2 * kPi / 3).epsilon(1e-12));
  CHECK(s.topology().eulerCharacteristic == 2);
  CHECK(std::abs(s.gaussBonnetResidual()) < 1e-9);
}

TEST_CASE("pair of pants: chi = -1 with three labeled boundary circles") {
  Surface s = fixtures::threeHoledSphere();
  TopologySummary topo = s.topology();
  CHECK(topo.eulerCharacteristic == -1);
  CHECK(topo.orientable);
  CHECK(topo.boundaryComponents == 3);
  CHECK(topo.genus == 0);
  CHECK(s.classCount() == 6);
  for (int c = 0; c < 6; ++c) {
    CHECK(s.coneAngle(c) == doctest::Approx(4 * kPi / 3).epsilon(1e-12));
    CHECK(s.isLabeled(c));
  }
  CHECK(std::abs(s.gaussBonnetResidual()) < 1e-9);
}

TEST_CASE("flat annulus and square disk") {
  Surface a = fixtures::flatAnnulus();
  TopologySummary ta = a.topology();
  CHECK(ta.eulerCharacteristic == 0);
  CHECK(ta.boundaryComponents == 2);
  CHECK(ta.orientable);
  CHECK(std::abs(a.gaussBonnetResidual()) < 1e-9);

  Surface d = fixtures::squareDisk();
  TopologySummary td = d.topology();
  CHECK(td.eulerCharacteristic == 1);
  CHECK(td.boundaryComponents == 1);
  CHECK(d.classCount() == 4);
  for (int c = 0; c < 4; ++c) {
    CHECK(d.coneAngle(c) == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(d.curvature(c) == doctest::Approx(kPi / 2).epsilon(1e-12));
  }
}

TEST_CASE("orientability matches the exhaustive oracle") {
  for (const Surface& s :
       {fixtures::tetrahedron(), fixtures::squareTorus(), fixtures::mobiusSquare(),
        fixtures::doubledTriangle(), fixtures::octagonGenus2(), fixtures::flatAnnulus(),
        fixtures::threeHoledSphere()}) {
    REQUIRE(s.triangleCount() <= 12);
    CHECK(s.topology().orientable == oracles::orientableBruteForce(s));
  }
}

TEST_CASE("singular points are labeled even without hints") {
  Surface s = fixtures::doubledTriangle(); // no hints supplied
  for (int c = 0; c < s.classCount(); ++c) CHECK(s.isLabeled(c));
}

TEST_CASE("build rejects malformed input") {
  double h = std::sqrt(3.0) / 2.0;
  Triangle eq{{Vec2{0, 0}, Vec2{1, 0}, Vec2{0.5, h}}};
  Triangle bigger{{Vec2{0, 0}, Vec2{1.1, 0}, Vec2{0.5, h}}};

  CHECK_THROWS_WITH_AS(Surface::build({eq, bigger}, {{0, 0, 1, 0, true}}, {}),
                       doctest::Contains("MismatchedEdgeLengths"), Error);
  CHECK_THROWS_WITH_AS(Surface::build({eq}, {{0, 0, 2, 0, false}}, {}),
                       doctest::Contains("DanglingGluing"), Error);
  // square disk with no labels and no singular boundary points: impossible
  // here (corners are singular); instead check the flat cylinder without
  // hints has no labels at all.
  Triangle lower{{Vec2{0, 0}, Vec2{1, 0}, Vec2{1, 1}}};
  Triangle upper{{Vec2{0, 0}, Vec2{1, 1}, Vec2{0, 1}}};
  std::vector<Gluing> gl = {{0, 2, 1, 0, false}, {0, 1, 1, 2, false}};
  CHECK_THROWS_AS(Surface::build({lower, upper}, gl, {}), Error);
  // degenerate triangle
  Triangle flat{{Vec2{0, 0}, Vec2{1, 0}, Vec2{2, 0}}};
  CHECK_THROWS_WITH_AS(Surface::build({flat}, {}, {{0, 0}}),
                       doctest::Contains("DegenerateTriangle"), Error);
}

TEST_CASE("gauss-bonnet residual is ~0 for assorted gluings") {
  for (const Surface& s :
       {fixtures::tetrahedron(), fixtures::squareTorus(), fixtures::mobiusSquare(),
        fixtures::doubledTriangle(), fixtures::octagonGenus2(), fixtures::flatAnnulus(),
        fixtures::threeHoledSphere(), fixtures::squareDisk(), fixtures::rectangleDisk2x1(),
        fixtures::thinTorus()}) {
    CHECK(std::abs(s.gaussBonnetResidual()) < 1e-9);
  }
}
