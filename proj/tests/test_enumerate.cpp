#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "flatsurf/enumerate.hpp"
#include "flatsurf/errors.hpp"
#include "flatsurf/surgery.hpp"

using namespace flatsurf;
constexpr double kPi = std::numbers::pi;

TEST_CASE("square torus arc counts match the primitive-vector oracle") {
  Surface s = fixtures::squareTorus();
  // Oracle-computed counts, frozen: L=1:2, sqrt2:4, 2:4, sqrt5:8, 3:8.
  CHECK(oracles::torusArcCount(1.0) == 2);
  CHECK(oracles::torusArcCount(std::sqrt(2.0)) == 4);
  CHECK(oracles::torusArcCount(2.0) == 4);
  CHECK(oracles::torusArcCount(std::sqrt(5.0)) == 8);
  CHECK(oracles::torusArcCount(3.0) == 8);

  for (double L : {1.0, std::sqrt(2.0), 2.0, std::sqrt(5.0), 3.0}) {
    std::vector<Arc> arcs = enumerateArcs(s, L);
    CHECK(static_cast<int>(arcs.size()) == oracles::torusArcCount(L));
  }
  // The spec's phrasing: L = 1 + 1e-6 gives the two unit loops.
  std::vector<Arc> arcs = enumerateArcs(s, 1.0 + 1e-6);
  REQUIRE(arcs.size() == 2);
  CHECK(arcs[0].length == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(arcs[1].length == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(arcs[0].isLoop());
}

TEST_CASE("square torus spectrum at L = 1.5") {
  Surface s = fixtures::squareTorus();
  auto rows = rawLengthSpectrum(s, 1.5);
  auto expect = oracles::torusSpectrum(1.5);
  REQUIRE(rows.size() == expect.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].length == doctest::Approx(expect[i].first).epsilon(1e-12));
    CHECK(rows[i].multiplicity == expect[i].second);
  }
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].length == doctest::Approx(1.0));
  CHECK(rows[0].multiplicity == 2);
  CHECK(rows[1].length == doctest::Approx(std::sqrt(2.0)));
  CHECK(rows[1].multiplicity == 2);
}

TEST_CASE("tetrahedron arcs at L slightly over 1 are exactly the six edges") {
  Surface s = fixtures::tetrahedron();
  std::vector<Arc> arcs = enumerateArcs(s, 1.0 + 1e-6);
  REQUIRE(arcs.size() == 6);
  std::set<std::pair<int, int>> pairs;
  for (const Arc& a : arcs) {
    CHECK(a.length == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.pureEdgeChain);
    pairs.insert({std::min(a.sourceClass, a.targetClass),
                  std::max(a.sourceClass, a.targetClass)});
  }
  CHECK(pairs.size() == 6); // all vertex pairs
}

TEST_CASE("monotonicity: arcs(L1) is a subset of arcs(L2)") {
  Surface s = fixtures::octagonGenus2();
  std::vector<Arc> small = enumerateArcs(s, 1.6);
  std::vector<Arc> big = enumerateArcs(s, 2.4);
  std::set<ArcKey> bigKeys;
  for (const Arc& a : big) bigKeys.insert(a.key);
  CHECK(small.size() <= big.size());
  for (const Arc& a : small) CHECK(bigKeys.count(a.key) == 1);
}

TEST_CASE("every arc re-validates by independent re-development") {
  for (const Surface& s : {fixtures::squareTorus(), fixtures::tetrahedron(),
                           fixtures::doubledTriangle(), fixtures::mobiusSquare()}) {
    std::vector<Arc> arcs = enumerateArcs(s, 2.2);
    CHECK(!arcs.empty());
    for (const Arc& a : arcs) {
      std::string why;
      bool ok = revalidateArc(s, a, &why);
      CHECK_MESSAGE(ok, why);
    }
  }
}

TEST_CASE("shortest arc on fixtures") {
  SUBCASE("square disk: diagonal and boundary edge") {
    Surface s = fixtures::squareDisk();
    int bl = s.classByName("v0"); // (0,0)
    REQUIRE(bl >= 0);
    // classes: v0=(0,0), then (1,0), (1,1), (0,1) in some deterministic order
    // use coordinates: find classes by corner refs
    int c00 = s.classOf(0, 0), c10 = s.classOf(0, 1), c11 = s.classOf(0, 2),
        c01 = s.classOf(1, 2);
    Arc diag = shortestArc(s, c00, c11);
    CHECK(diag.length == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    Arc edge = shortestArc(s, c00, c10);
    CHECK(edge.length == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(edge.pureEdgeChain);
    Arc other = shortestArc(s, c10, c01);
    CHECK(other.length == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("square torus: shortest loop-arc has length 1") {
    Surface s = fixtures::squareTorus();
    Arc a = shortestArc(s, 0, 0);
    CHECK(a.length == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("geodesic path across the 2x1 rectangle is the straight chord") {
  Surface s = fixtures::rectangleDisk2x1();
  // far corners: (0,0) is T0 corner 0; (2,1) is T2 corner 2.
  int a = s.classOf(0, 0), b = s.classOf(2, 2);
  MultiArc path = geodesicPath(s, a, b);
  CHECK(path.length == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  CHECK(path.segments.size() == 1);
  // adjacent corners: single boundary edge
  int c = s.classOf(2, 1); // (2,0)
  MultiArc edge = geodesicPath(s, b, c);
  CHECK(edge.length == doctest::Approx(1.0).epsilon(1e-12));
  // consistency: shortest arc endpoints give a one-segment path
  Arc sa = shortestArc(s, a, b);
  CHECK(sa.length == doctest::Approx(path.length).epsilon(1e-12));
}

TEST_CASE("boundary chain through a flat boundary vertex: length-2 run") {
  Surface s = fixtures::rectangleDisk2x1();
  int a = s.classOf(0, 0);  // (0,0)
  int b = s.classOf(2, 1);  // (2,0)
  std::vector<Arc> arcs = enumerateArcs(s, 2.0 + 1e-6, a, b);
  bool foundRun = false;
  for (const Arc& arc : arcs)
    if (arc.pureEdgeChain && std::abs(arc.length - 2.0) < 1e-9) foundRun = true;
  CHECK(foundRun);
}

TEST_CASE("spectrum is invariant under barycentric refinement (torus, tetra)") {
  for (const Surface& s : {fixtures::squareTorus(), fixtures::tetrahedron()}) {
    Refinement ref = barycentricRefine(s);
    auto before = rawLengthSpectrum(s, 2.0);
    auto after = rawLengthSpectrum(ref.refined, 2.0);
    REQUIRE(before.size() == after.size());
    for (size_t i = 0; i < before.size(); ++i) {
      CHECK(before[i].length == doctest::Approx(after[i].length).epsilon(1e-9));
      CHECK(before[i].multiplicity == after[i].multiplicity);
    }
  }
}

TEST_CASE("spectrum is invariant under triangle relabeling") {
  // Rebuild the tetrahedron with permuted triangle order.
  Surface s = fixtures::tetrahedron();
  std::vector<int> perm = {2, 0, 3, 1};
  std::vector<Triangle> tris(4);
  for (int i = 0; i < 4; ++i) tris[perm[i]] = s.triangle(i);
  std::vector<Gluing> gl;
  for (const Gluing& g : s.gluings())
    gl.push_back({perm[g.triA], g.sideA, perm[g.triB], g.sideB, g.reversed});
  Surface t = Surface::build(tris, gl, {});
  auto a = rawLengthSpectrum(s, 2.0);
  auto b = rawLengthSpectrum(t, 2.0);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].length == doctest::Approx(b[i].length).epsilon(1e-9));
    CHECK(a[i].multiplicity == b[i].multiplicity);
  }
}

TEST_CASE("holonomy vectors: distinct arcs never share vector and key") {
  Surface s = fixtures::octagonGenus2();
  std::vector<Arc> arcs = enumerateArcs(s, 2.6);
  for (size_t i = 0; i < arcs.size(); ++i)
    for (size_t j = i + 1; j < arcs.size(); ++j) {
      bool sameVec = norm(arcs[i].vector - arcs[j].vector) < 1e-9;
      CHECK(!(sameVec && arcs[i].key == arcs[j].key));
    }
}

TEST_CASE("search budget is enforced") {
  Surface s = fixtures::thinTorus();
  SearchOptions opts;
  opts.budgetPerWedge = 1'000'000;
  CHECK_THROWS_WITH_AS(enumerateArcs(s, 50.0, -1, -1, opts),
                       doctest::Contains("SearchBudgetExceeded"), Error);
}

TEST_CASE("empty spectrum below the shortest arc") {
  Surface s = fixtures::squareTorus();
  CHECK(rawLengthSpectrum(s, 0.5).empty());
}
