#include "flatsurf/loops.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "flatsurf/errors.hpp"
#include "flatsurf/surgery.hpp"

namespace flatsurf {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::pair<double, double> junctionAngles(const Surface& s, int classIndex, double angleIn,
                                         double angleOut) {
  double theta = s.vertexClass(classIndex).totalAngle;
  double a = std::fmod(angleOut - angleIn, theta);
  if (a < 0) a += theta;
  return {a, theta - a};
}

bool loopIsSimple(const Surface& s, const MultiArc& path, int baseClass) {
  // No repeated intermediate vertex, no revisit of the base mid-loop.
  std::set<int> seen;
  for (size_t j = 1; j < path.segments.size(); ++j) {
    int cls = path.classAt(static_cast<int>(j));
    if (cls == baseClass) return false;
    if (!seen.insert(cls).second) return false;
  }
  // No arc used twice.
  std::set<ArcKey> usedArcs;
  for (const Arc& a : path.segments)
    if (!usedArcs.insert(a.key).second) return false;
  // No transverse crossings, within or between segments.
  for (size_t i = 0; i < path.segments.size(); ++i) {
    if (arcsIntersect(s, path.segments[i], path.segments[i])) return false;
    for (size_t j = i + 1; j < path.segments.size(); ++j)
      if (arcsIntersect(s, path.segments[i], path.segments[j])) return false;
  }
  return true;
}

std::vector<GeodesicLoop> enumerateLoops(const Surface& s, double maxLength, int base,
                                         const SearchOptions& opts) {
  std::vector<Arc> arcs = enumerateArcs(s, maxLength, -1, -1, opts);
  double angleTol = 100.0 * s.tolerances().angle;
  double emitTol = 1e-9 * std::max(1.0, s.scale());

  std::vector<int> bases;
  if (base >= 0) bases.push_back(base);
  else bases = s.labels();

  // Directed arc uses grouped by departure class.
  struct Use {
    int arcIndex;
    bool reversed;
    int from, to;
    double departAngle, arriveAngle;
  };
  std::map<int, std::vector<Use>> uses;
  for (int ai = 0; ai < static_cast<int>(arcs.size()); ++ai) {
    const Arc& a = arcs[ai];
    uses[a.sourceClass].push_back({ai, false, a.sourceClass, a.targetClass, a.sourceAngle,
                                   a.targetAngle});
    uses[a.targetClass].push_back({ai, true, a.targetClass, a.sourceClass, a.targetAngle,
                                   a.sourceAngle});
  }

  std::vector<GeodesicLoop> out;
  std::map<std::pair<int, std::vector<int64_t>>, bool> dedup;
  long long visits = 0;

  struct Frame {
    int cls;
    double length;
    double arriveAngle; // coordinate of the ray back along the previous arc
    std::vector<std::pair<int, bool>> hops;
  };

  for (int b : bases) {
    std::vector<Frame> stack;
    stack.push_back({b, 0.0, 0.0, {}});
    while (!stack.empty()) {
      if (++visits > opts.budgetPerWedge)
        fail(ErrorCode::SearchBudgetExceeded, "loop enumeration budget exceeded");
      Frame f = std::move(stack.back());
      stack.pop_back();

      if (!f.hops.empty() && f.cls == b && f.length <= maxLength + emitTol) {
        // Canonical key: the hop list or its reversal, whichever is smaller.
        std::vector<int64_t> enc;
        for (auto [ai, rev] : f.hops) {
          enc.push_back(ai);
          enc.push_back(rev ? 1 : 0);
        }
        std::vector<int64_t> renc;
        for (size_t i = f.hops.size(); i-- > 0;) {
          renc.push_back(f.hops[i].first);
          renc.push_back(f.hops[i].second ? 0 : 1);
        }
        std::vector<int64_t> key = std::min(enc, renc);
        if (!dedup.count({b, key})) {
          dedup[{b, key}] = true;
          GeodesicLoop loop;
          loop.baseClass = b;
          loop.length = f.length;
          for (auto [ai, rev] : f.hops) {
            loop.path.segments.push_back(arcs[ai]);
            loop.path.reversedFlags.push_back(rev);
          }
          loop.path.length = f.length;
          loop.simple = loopIsSimple(s, loop.path, b);
          out.push_back(std::move(loop));
        }
        // A loop may continue past the base (with the turning condition),
        // so fall through to extensions as well.
      }

      auto it = uses.find(f.cls);
      if (it == uses.end()) continue;
      for (const Use& u : it->second) {
        double nl = f.length + arcs[u.arcIndex].length;
        if (nl > maxLength + emitTol) continue;
        if (!f.hops.empty()) {
          auto [a1, a2] = junctionAngles(s, f.cls, f.arriveAngle, u.departAngle);
          if (a1 < kPi - angleTol || a2 < kPi - angleTol) continue;
        }
        Frame nf;
        nf.cls = u.to;
        nf.length = nl;
        nf.arriveAngle = u.arriveAngle;
        nf.hops = f.hops;
        nf.hops.push_back({u.arcIndex, u.reversed});
        stack.push_back(std::move(nf));
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const GeodesicLoop& a, const GeodesicLoop& b) {
    if (a.length != b.length) return a.length < b.length;
    if (a.baseClass != b.baseClass) return a.baseClass < b.baseClass;
    return a.path.segments.front().key < b.path.segments.front().key;
  });
  return out;
}

LoopClass classifySimpleLoop(const Surface& s, const GeodesicLoop& loop) {
  if (!loop.simple) fail(ErrorCode::NotSimple, "loop is not simple");

  // A single traversal of a boundary circle is boundary-parallel by
  // definition; cutting along it would be a no-op.
  bool allBoundaryRuns = true;
  for (const Arc& a : loop.path.segments) {
    if (!a.pureEdgeChain) allBoundaryRuns = false;
    for (const EdgeRun& r : a.edgeRuns)
      if (r.gluing >= 0) allBoundaryRuns = false;
  }
  if (allBoundaryRuns) return LoopClass::BoundaryParallel;

  PathEmbedding emb = embedPath(s, loop.path.segments);
  CutRecord rec = cutAlong(emb);

  std::set<std::tuple<int, int, int>> seamSides;
  for (const CutRecord::Seam& seam : rec.seams) {
    seamSides.insert({seam.childA, seam.triA, seam.sideA});
    seamSides.insert({seam.childB, seam.triB, seam.sideB});
  }

  for (int c = 0; c < static_cast<int>(rec.children.size()); ++c) {
    const Surface& child = rec.children[c];
    TopologySummary topo = child.topology();
    int circles = static_cast<int>(child.boundaryCircles().size());
    int allSeamCircles = 0, allOriginalCircles = 0;
    for (const auto& circle : child.boundaryCircles()) {
      bool anySeam = false, anyOriginal = false;
      for (const SideRef& sr : circle) {
        if (seamSides.count({c, sr.tri, sr.side})) anySeam = true;
        else anyOriginal = true;
      }
      if (anySeam && !anyOriginal) ++allSeamCircles;
      if (anyOriginal && !anySeam) ++allOriginalCircles;
    }
    if (topo.eulerCharacteristic == 1 && circles == 1 && allSeamCircles == 1)
      return LoopClass::Null;
    if (topo.eulerCharacteristic == 0 && circles == 2 && allSeamCircles == 1 &&
        allOriginalCircles == 1)
      return LoopClass::BoundaryParallel;
  }
  return LoopClass::Essential;
}

GeodesicLoop shortestEssentialLoop(const Surface& s, const SearchOptions& opts) {
  TopologySummary topo = s.topology();
  bool hypothesis = (topo.orientable ? topo.genus >= 1 : true) && topo.boundaryComponents <= 1;
  if (!hypothesis)
    fail(ErrorCode::NoEssentialLoop,
         "surface must have positive genus (or be non-orientable) with at most one boundary "
         "component");

  double L = 1e300;
  for (const Triangle& t : s.triangles())
    for (int k = 0; k < 3; ++k) L = std::min(L, t.sideLength(k));

  for (int round = 0; round < 48; ++round) {
    std::vector<GeodesicLoop> loops = enumerateLoops(s, L, -1, opts);
    for (GeodesicLoop& loop : loops) {
      if (!loop.simple) continue; // Lemma: the shortest essential loop is simple
      LoopClass cls = classifySimpleLoop(s, loop);
      if (cls == LoopClass::Essential) {
        loop.homotopy = LoopClass::Essential;
        return loop;
      }
    }
    L *= 2.0;
  }
  fail(ErrorCode::NoEssentialLoop, "no essential loop found within the search budget");
}

} // namespace flatsurf
