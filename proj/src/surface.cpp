#include "flatsurf/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <queue>
#include <set>

#include "flatsurf/errors.hpp"

namespace flatsurf {

namespace {

constexpr double kPi = std::numbers::pi;

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Corner incident to endpoint e of side s.
int cornerAtEndpoint(int side, int endpoint) { return (side + endpoint) % 3; }

} // namespace

const char* errorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::MismatchedEdgeLengths: return "MismatchedEdgeLengths";
    case ErrorCode::DanglingGluing: return "DanglingGluing";
    case ErrorCode::UnlabeledBoundary: return "UnlabeledBoundary";
    case ErrorCode::EmptyLabelSet: return "EmptyLabelSet";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::DisconnectedSurface: return "DisconnectedSurface";
    case ErrorCode::NonManifoldGluing: return "NonManifoldGluing";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::NoArcExists: return "NoArcExists";
    case ErrorCode::NearDegenerate: return "NearDegenerate";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::ChainNotGeodesic: return "ChainNotGeodesic";
    case ErrorCode::SeamMismatch: return "SeamMismatch";
    case ErrorCode::DegenerateSplit: return "DegenerateSplit";
    case ErrorCode::NearDegenerateCrossing: return "NearDegenerateCrossing";
    case ErrorCode::NotAFlatDisk: return "NotAFlatDisk";
    case ErrorCode::NotADisk: return "NotADisk";
    case ErrorCode::NotASphere: return "NotASphere";
    case ErrorCode::NotAMobiusBand: return "NotAMobiusBand";
    case ErrorCode::NoEssentialLoop: return "NoEssentialLoop";
    case ErrorCode::NotRenderable: return "NotRenderable";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "UnknownError";
}

SideRef Surface::oppositeSide(int tri, int side) const {
  int gi = gluingAt(tri, side);
  if (gi < 0) return {};
  const Gluing& g = gluings_[gi];
  if (g.triA == tri && g.sideA == side) return {g.triB, g.sideB};
  return {g.triA, g.sideA};
}

int Surface::classByName(const std::string& name) const {
  for (int i = 0; i < classCount(); ++i)
    if (classes_[i].name == name) return i;
  return -1;
}

Surface Surface::build(std::vector<Triangle> triangles, std::vector<Gluing> gluings,
                       const std::vector<CornerRef>& labelHints, const Tolerances& tol) {
  Surface s;
  s.triangles_ = std::move(triangles);
  s.gluings_ = std::move(gluings);
  s.tol_ = tol;

  const int nt = s.triangleCount();
  if (nt == 0) fail(ErrorCode::DegenerateTriangle, "surface has no triangles");

  s.scale_ = 0.0;
  for (const Triangle& t : s.triangles_)
    for (int k = 0; k < 3; ++k) s.scale_ = std::max(s.scale_, t.sideLength(k));
  if (s.scale_ <= 0.0) fail(ErrorCode::DegenerateTriangle, "zero-size triangle");

  for (int i = 0; i < nt; ++i) {
    const Triangle& t = s.triangles_[i];
    if (t.area() <= tol.areaRel * s.scale_ * s.scale_)
      fail(ErrorCode::DegenerateTriangle,
           "triangle " + std::to_string(i) + " is (near-)collinear");
  }

  // Gluing well-formedness.
  s.sideGluing_.assign(nt, {-1, -1, -1});
  for (int gi = 0; gi < static_cast<int>(s.gluings_.size()); ++gi) {
    const Gluing& g = s.gluings_[gi];
    for (auto [tri, side] : {std::pair{g.triA, g.sideA}, std::pair{g.triB, g.sideB}}) {
      if (tri < 0 || tri >= nt || side < 0 || side > 2)
        fail(ErrorCode::DanglingGluing,
             "gluing " + std::to_string(gi) + " references missing triangle/side");
      if (s.sideGluing_[tri][side] != -1)
        fail(ErrorCode::NonManifoldGluing, "side T" + std::to_string(tri) + "." +
                                               std::to_string(side) + " glued twice");
      s.sideGluing_[tri][side] = gi;
    }
    if (g.triA == g.triB && g.sideA == g.sideB)
      fail(ErrorCode::NonManifoldGluing, "side glued to itself");
    double la = s.triangles_[g.triA].sideLength(g.sideA);
    double lb = s.triangles_[g.triB].sideLength(g.sideB);
    if (std::abs(la - lb) > tol.lengthRel * s.scale_)
      fail(ErrorCode::MismatchedEdgeLengths,
           "glued sides differ in length: " + std::to_string(la) + " vs " + std::to_string(lb) +
               " (gluing " + std::to_string(gi) + ")");
  }

  // Connectivity over the triangle adjacency graph.
  {
    std::vector<char> seen(nt, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
      int t = q.front();
      q.pop();
      for (int k = 0; k < 3; ++k) {
        int gi = s.sideGluing_[t][k];
        if (gi < 0) continue;
        const Gluing& g = s.gluings_[gi];
        int other = g.triA == t && g.sideA == k ? g.triB : g.triA;
        if (!seen[other]) {
          seen[other] = 1;
          ++count;
          q.push(other);
        }
      }
    }
    if (count != nt) fail(ErrorCode::DisconnectedSurface, "surface is not connected");
  }

  s.computeClasses();
  s.computeBoundary();

  // Labels: hints plus every singular class.
  for (const CornerRef& hint : labelHints) {
    if (hint.tri < 0 || hint.tri >= nt || hint.corner < 0 || hint.corner > 2)
      fail(ErrorCode::UnknownVertex, "label hint references missing corner");
    s.classes_[s.classOf(hint)].labeled = true;
  }
  for (int c = 0; c < s.classCount(); ++c)
    if (s.isSingularClass(c)) s.classes_[c].labeled = true;
  for (int c = 0; c < s.classCount(); ++c)
    if (s.classes_[c].labeled) s.labels_.push_back(c);

  if (s.labels_.empty()) fail(ErrorCode::EmptyLabelSet, "surface has no labeled points");

  // Every boundary circle must carry a label.
  for (const auto& circle : s.boundary_) {
    bool hasLabel = false;
    for (const SideRef& sr : circle)
      for (int e = 0; e < 2; ++e)
        if (s.classes_[s.classOf(sr.tri, cornerAtEndpoint(sr.side, e))].labeled) hasLabel = true;
    if (!hasLabel)
      fail(ErrorCode::UnlabeledBoundary, "a boundary component has no labeled point");
  }

  return s;
}

void Surface::computeClasses() {
  const int nt = triangleCount();
  auto cornerId = [](int tri, int corner) { return 3 * tri + corner; };

  DisjointSets ds(3 * nt);
  for (const Gluing& g : gluings_) {
    for (int e = 0; e < 2; ++e) {
      int ca = cornerAtEndpoint(g.sideA, e);
      int cb = cornerAtEndpoint(g.sideB, matchedEndpoint(g, e));
      ds.unite(cornerId(g.triA, ca), cornerId(g.triB, cb));
    }
  }

  // Deterministic class ids ordered by smallest member corner.
  std::map<int, std::vector<CornerRef>> groups;
  for (int t = 0; t < nt; ++t)
    for (int c = 0; c < 3; ++c) groups[ds.find(cornerId(t, c))].push_back({t, c});

  cornerClass_.assign(nt, {-1, -1, -1});
  classes_.clear();
  std::vector<std::vector<CornerRef>> members;
  for (auto& [root, corners] : groups) members.push_back(corners);
  std::sort(members.begin(), members.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  for (int ci = 0; ci < static_cast<int>(members.size()); ++ci)
    for (const CornerRef& c : members[ci]) cornerClass_[c.tri][c.corner] = ci;

  // Link-order each class. Corner (t,c) has two "doors": side c (endpoint 0)
  // and side c+2 (endpoint 1). Neighbors are reached through glued doors.
  auto doorSide = [](const CornerRef& c, int door) {
    return door == 0 ? c.corner : (c.corner + 2) % 3;
  };
  auto doorEndpoint = [](int door) { return door == 0 ? 0 : 1; };
  auto neighborThrough = [&](const CornerRef& c, int door) -> std::pair<CornerRef, int> {
    int side = doorSide(c, door);
    int gi = sideGluing_[c.tri][side];
    if (gi < 0) return {{-1, -1}, -1};
    const Gluing& g = gluings_[gi];
    bool fromA = (g.triA == c.tri && g.sideA == side);
    int otherTri = fromA ? g.triB : g.triA;
    int otherSide = fromA ? g.sideB : g.sideA;
    int e = doorEndpoint(door);
    int oe = matchedEndpoint(g, e);
    CornerRef other{otherTri, cornerAtEndpoint(otherSide, oe)};
    // Which of the other corner's doors did we arrive through?
    int otherDoor = (oe == 0) ? 0 : 1;
    return {other, otherDoor};
  };

  classes_.resize(members.size());
  for (int ci = 0; ci < static_cast<int>(members.size()); ++ci) {
    VertexClass& vc = classes_[ci];
    const auto& corners = members[ci];

    // Start corner: a corner with an unglued door if one exists (boundary
    // class), otherwise the smallest corner; choose the smallest such.
    CornerRef start = corners.front();
    int startDoor = 0;
    bool boundary = false;
    for (const CornerRef& c : corners) {
      for (int door = 0; door < 2; ++door) {
        if (sideGluing_[c.tri][doorSide(c, door)] < 0) {
          if (!boundary || c < start) {
            start = c;
            startDoor = door;
          }
          boundary = true;
        }
      }
    }
    vc.onBoundary = boundary;

    CornerRef cur = start;
    int enteredThrough = startDoor; // door on the start side of the walk
    std::set<CornerRef> visited;
    while (true) {
      vc.corners.push_back(cur);
      vc.referenceSides.push_back(doorSide(cur, enteredThrough));
      visited.insert(cur);
      int exitDoor = 1 - enteredThrough;
      auto [next, nextDoor] = neighborThrough(cur, exitDoor);
      if (next.tri < 0) break;                       // boundary path ends
      if (visited.count(next)) break;                // cycle closed
      cur = next;
      enteredThrough = nextDoor;
    }
    if (vc.corners.size() != corners.size())
      fail(ErrorCode::NonManifoldGluing, "vertex link is not a single path or cycle");

    vc.offsets.resize(vc.corners.size());
    double acc = 0.0;
    for (size_t i = 0; i < vc.corners.size(); ++i) {
      vc.offsets[i] = acc;
      acc += triangles_[vc.corners[i].tri].angleAt(vc.corners[i].corner);
    }
    vc.totalAngle = acc;
    vc.name = "v" + std::to_string(ci);
  }
}

void Surface::computeBoundary() {
  boundary_.clear();
  // Free side-ends, grouped by vertex class. Each boundary class link is a
  // path, so it carries exactly two free ends; pairing them at each class and
  // joining the two ends of each side yields the boundary circles.
  using End = std::pair<SideRef, int>;
  std::vector<SideRef> unglued;
  std::map<int, std::vector<End>> atClass;
  for (int t = 0; t < triangleCount(); ++t)
    for (int k = 0; k < 3; ++k)
      if (sideGluing_[t][k] < 0) {
        unglued.push_back({t, k});
        for (int e = 0; e < 2; ++e)
          atClass[classOf(t, cornerAtEndpoint(k, e))].push_back({{t, k}, e});
      }
  for (const auto& [ci, ends] : atClass)
    if (ends.size() != 2)
      fail(ErrorCode::NonManifoldGluing, "boundary vertex with " +
                                             std::to_string(ends.size()) + " free side-ends");

  auto paired = [&](const End& arrival) -> End {
    int cls = classOf(arrival.first.tri, cornerAtEndpoint(arrival.first.side, arrival.second));
    const auto& ends = atClass[cls];
    return ends[0] == arrival ? ends[1] : ends[0];
  };

  std::set<SideRef> seen;
  for (const SideRef& sr : unglued) {
    if (seen.count(sr)) continue;
    std::vector<SideRef> circle;
    End start{sr, 0};
    End cur = start;
    do {
      circle.push_back(cur.first);
      seen.insert(cur.first);
      End arrival{cur.first, 1 - cur.second};
      cur = paired(arrival);
    } while (!(cur == start));
    boundary_.push_back(std::move(circle));
  }
}

double Surface::coneAngle(int classIndex) const {
  if (classIndex < 0 || classIndex >= classCount())
    fail(ErrorCode::UnknownVertex, "no vertex class " + std::to_string(classIndex));
  // Deterministic summation order (sorted by triangle id, then corner).
  std::vector<CornerRef> corners = classes_[classIndex].corners;
  std::sort(corners.begin(), corners.end());
  double sum = 0.0;
  for (const CornerRef& c : corners) sum += triangles_[c.tri].angleAt(c.corner);
  return sum;
}

double Surface::curvature(int classIndex) const {
  double theta = coneAngle(classIndex);
  return classes_[classIndex].onBoundary ? kPi - theta : 2.0 * kPi - theta;
}

bool Surface::isSingularClass(int classIndex) const {
  double theta = classes_[classIndex].totalAngle;
  double ref = classes_[classIndex].onBoundary ? kPi : 2.0 * kPi;
  return std::abs(theta - ref) > tol_.angle;
}

double Surface::gaussBonnetResidual() const {
  double sum = 0.0;
  for (int c = 0; c < classCount(); ++c) sum += curvature(c);
  return sum - 2.0 * kPi * topology().eulerCharacteristic;
}

double Surface::totalArea() const {
  double a = 0.0;
  for (const Triangle& t : triangles_) a += t.area();
  return a;
}

int Surface::linkIndexOf(int classIndex, CornerRef c) const {
  const VertexClass& vc = classes_[classIndex];
  for (int i = 0; i < static_cast<int>(vc.corners.size()); ++i)
    if (vc.corners[i] == c) return i;
  fail(ErrorCode::InternalError, "corner not in class");
}

int gluingParity(const Surface& s, const Gluing& g) {
  int oa = s.triangle(g.triA).chartOrientation();
  int ob = s.triangle(g.triB).chartOrientation();
  return oa * ob * (g.reversed ? -1 : 1);
}

TopologySummary Surface::topology() const {
  TopologySummary out;
  int V = classCount();
  int E = static_cast<int>(gluings_.size());
  for (const auto& circle : boundary_) E += static_cast<int>(circle.size());
  int F = triangleCount();
  out.eulerCharacteristic = V - E + F;
  out.boundaryComponents = static_cast<int>(boundary_.size());

  // Orientability: 2-color by crossing parity.
  std::vector<int> color(triangleCount(), 0);
  bool orientable = true;
  std::queue<int> q;
  color[0] = 1;
  q.push(0);
  while (!q.empty() && orientable) {
    int t = q.front();
    q.pop();
    for (int k = 0; k < 3; ++k) {
      int gi = sideGluing_[t][k];
      if (gi < 0) continue;
      const Gluing& g = gluings_[gi];
      int other = (g.triA == t && g.sideA == k) ? g.triB : g.triA;
      int want = color[t] * gluingParity(*this, g);
      if (color[other] == 0) {
        color[other] = want;
        q.push(other);
      } else if (color[other] != want) {
        orientable = false;
        break;
      }
    }
  }
  out.orientable = orientable;

  int chi = out.eulerCharacteristic, b = out.boundaryComponents;
  out.genus = orientable ? (2 - chi - b) / 2 : (2 - chi - b);
  return out;
}

Placement developAcross(const Surface& s, int tri, int side, const Placement& pl) {
  int gi = s.gluingAt(tri, side);
  if (gi < 0) fail(ErrorCode::InternalError, "developAcross over a boundary side");
  const Gluing& g = s.gluings()[gi];
  bool fromA = (g.triA == tri && g.sideA == side);
  int triB = fromA ? g.triB : g.triA;
  int sideB = fromA ? g.sideB : g.sideA;

  const Triangle& TA = s.triangle(tri);
  const Triangle& TB = s.triangle(triB);
  Vec2 a0 = TA.corner(side), a1 = TA.corner(side + 1);
  Vec2 b0 = TB.corner(sideB), b1 = TB.corner(sideB + 1);
  Vec2 q0 = pl.apply(a0), q1 = pl.apply(a1);

  // Endpoint 0 of side A matches endpoint (reversed ? 0 : 1) of side B.
  Vec2 pB0 = g.reversed ? b0 : b1;
  Vec2 pB1 = g.reversed ? b1 : b0;

  Vec2 apexA = pl.apply(TA.corner(side + 2));
  Vec2 apexBChart = TB.corner(sideB + 2);
  double sideA = cross(q1 - q0, apexA - q0);

  for (bool mirrored : {false, true}) {
    Placement cand = Placement::fromSegmentMatch(pB0, pB1, q0, q1, mirrored);
    Vec2 apexB = cand.apply(apexBChart);
    if (cross(q1 - q0, apexB - q0) * sideA < 0.0) return cand;
  }
  fail(ErrorCode::InternalError, "could not develop across gluing");
}

} // namespace flatsurf
