#include "flatsurf/arc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "flatsurf/errors.hpp"

namespace flatsurf {

namespace {

struct Interval {
  double lo = 0.0, hi = 1.0;
  bool empty() const { return hi <= lo; }
};

// Clip the segment p(t) = A + t(B-A), t in [0,1], against a placed triangle.
Interval clipToTriangle(Vec2 A, Vec2 B, const std::array<Vec2, 3>& tri, double tol) {
  Interval iv;
  double orient = cross(tri[1] - tri[0], tri[2] - tri[0]) >= 0 ? 1.0 : -1.0;
  for (int k = 0; k < 3 && !iv.empty(); ++k) {
    Vec2 p = tri[k], q = tri[(k + 1) % 3];
    // inside: orient * cross(q-p, x-p) >= -tol
    double fa = orient * cross(q - p, A - p);
    double fb = orient * cross(q - p, B - p);
    double scale = norm(q - p);
    double cut = -tol * scale;
    if (fa < cut && fb < cut) return {1.0, 0.0};
    if (std::abs(fb - fa) < 1e-300) continue;
    double t = (cut - fa) / (fb - fa);
    if (fa < cut) iv.lo = std::max(iv.lo, t);
    else if (fb < cut) iv.hi = std::min(iv.hi, t);
  }
  return iv;
}

struct VertexEvent {
  double param;
  int classIndex;
  Vec2 image;
};

int findCornerNear(const Surface& s, int tri, const Placement& pl, Vec2 p, double tol) {
  int best = -1;
  double bestD = tol;
  for (int k = 0; k < 3; ++k) {
    double d = norm(pl.apply(s.triangle(tri).corner(k)) - p);
    if (d < bestD) {
      bestD = d;
      best = k;
    }
  }
  return best;
}

Placement inversePlacement(const Placement& pl) {
  // Orthogonal linear part: inverse = transpose.
  Placement inv;
  inv.a = pl.a; inv.b = pl.c; inv.c = pl.b; inv.d = pl.d;
  inv.tx = -(inv.a * pl.tx + inv.b * pl.ty);
  inv.ty = -(inv.c * pl.tx + inv.d * pl.ty);
  return inv;
}

} // namespace

ArcKey reversedKey(const ArcKey& key) {
  ArcKey out;
  size_t n = key.size() / 4;
  out.reserve(key.size());
  for (size_t r = n; r-- > 0;) {
    int64_t t0 = key[4 * r], t1 = key[4 * r + 1], t2 = key[4 * r + 2], t3 = key[4 * r + 3];
    switch (t0) {
      case 2: out.insert(out.end(), {2, t1, t3, t2}); break;
      case 3: out.insert(out.end(), {4, t1, t3, t2}); break;
      case 4: out.insert(out.end(), {3, t1, t3, t2}); break;
      default: out.insert(out.end(), {t0, t1, t2, t3}); break;
    }
  }
  return out;
}

std::string keyToString(const ArcKey& key) {
  std::ostringstream os;
  size_t n = key.size() / 4;
  for (size_t r = 0; r < n; ++r) {
    if (r) os << ' ';
    int64_t t0 = key[4 * r], t1 = key[4 * r + 1], t2 = key[4 * r + 2], t3 = key[4 * r + 3];
    switch (t0) {
      case 1: os << "v" << t1; break;
      case 2: os << "T" << t1 << "[" << t2 << ">" << t3 << "]"; break;
      case 3: os << "T" << t1 << "[" << t2 << ">c" << t3 << "]"; break;
      case 4: os << "T" << t1 << "[c" << t2 << ">" << t3 << "]"; break;
      case 5: os << "pass(v" << t1 << ")"; break;
      case 6: os << "E" << t1; break;
      case 7: os << "B" << t1 << "." << t2; break;
      default: os << "?"; break;
    }
  }
  return os.str();
}

std::vector<Placement> placeChain(const Surface& s, CornerRef sourceWedge,
                                  const std::vector<ChainStep>& chain) {
  if (chain.empty() || chain.front().tri != sourceWedge.tri)
    fail(ErrorCode::InternalError, "chain head does not match source wedge");
  std::vector<Placement> out;
  out.reserve(chain.size());
  Vec2 c0 = s.triangle(sourceWedge.tri).corner(sourceWedge.corner);
  out.push_back(Placement::translation({-c0.x, -c0.y}));
  for (size_t i = 1; i < chain.size(); ++i) {
    SideRef back = s.oppositeSide(chain[i].tri, chain[i].entrySide);
    if (back.tri != chain[i - 1].tri)
      fail(ErrorCode::InternalError, "chain steps are not glued consecutively");
    out.push_back(developAcross(s, back.tri, back.side, out[i - 1]));
  }
  return out;
}

Arc arcFromChain(const Surface& s, CornerRef sourceWedge, const std::vector<ChainStep>& chain,
                 int targetCorner) {
  Arc arc;
  arc.sourceWedge = sourceWedge;
  arc.chain = chain;
  arc.targetCorner = targetCorner;
  arc.sourceClass = s.classOf(sourceWedge);

  std::vector<Placement> pl = placeChain(s, sourceWedge, chain);
  const ChainStep& last = chain.back();
  arc.targetWedge = {last.tri, targetCorner};
  arc.targetClass = s.classOf(last.tri, targetCorner);

  Vec2 T = pl.back().apply(s.triangle(last.tri).corner(targetCorner));
  arc.vector = T;
  arc.length = norm(T);
  if (arc.length <= s.clearance())
    fail(ErrorCode::InternalError, "zero-length arc");

  const double clear = s.clearance();
  const double cornerTol = 1e-6 * s.scale();
  double len2 = norm2(T);

  // Vertex events strictly inside the open segment.
  std::vector<VertexEvent> events;
  std::set<std::pair<int, int64_t>> seenEvents; // (class, quantized param)
  for (size_t i = 0; i < chain.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      Vec2 img = pl[i].apply(s.triangle(chain[i].tri).corner(k));
      double along = dot(img, T) / len2;
      if (along * arc.length < clear || (1.0 - along) * arc.length < clear) continue;
      double offLine = std::abs(cross(img, T)) / arc.length;
      double dist = pointSegmentDistance(img, {0, 0}, T);
      int classIndex = s.classOf(chain[i].tri, k);
      if (dist < clear) {
        if (s.isLabeled(classIndex))
          fail(ErrorCode::NearDegenerate,
               "segment passes within clearance of labeled vertex " +
                   s.vertexClass(classIndex).name);
        if (offLine < clear) {
          int64_t qp = static_cast<int64_t>(std::llround(along * arc.length / (4.0 * clear)));
          if (seenEvents.insert({classIndex, qp}).second)
            events.push_back({along, classIndex, img});
        }
      }
    }
  }
  std::sort(events.begin(), events.end(), [](const VertexEvent& a, const VertexEvent& b) {
    return a.param != b.param ? a.param < b.param : a.classIndex < b.classIndex;
  });
  for (const VertexEvent& e : events) arc.passClasses.push_back(e.classIndex);

  // Stretch boundaries: source, events, target.
  struct Waypoint {
    double param;
    Vec2 image;
    int classIndex;
  };
  std::vector<Waypoint> pts;
  pts.push_back({0.0, {0, 0}, arc.sourceClass});
  for (const VertexEvent& e : events) pts.push_back({e.param, e.image, e.classIndex});
  pts.push_back({1.0, T, arc.targetClass});

  // Tokens.
  ArcKey fwd;
  auto tok = [&fwd](int64_t a, int64_t b, int64_t c, int64_t d) {
    fwd.insert(fwd.end(), {a, b, c, d});
  };
  tok(1, arc.sourceClass, 0, 0);

  const double dropLen = 1e-12 * s.scale();
  bool allRuns = true;

  for (size_t w = 0; w + 1 < pts.size(); ++w) {
    Vec2 A = pts[w].image, B = pts[w + 1].image;
    double stretchLen = norm(B - A);
    if (stretchLen <= 2.0 * clear) continue; // coincident events

    // Clip every chain step against this stretch.
    std::vector<std::pair<int, Interval>> clips; // (step index, interval)
    for (size_t i = 0; i < chain.size(); ++i) {
      std::array<Vec2, 3> placed;
      for (int k = 0; k < 3; ++k) placed[k] = pl[i].apply(s.triangle(chain[i].tri).corner(k));
      Interval iv = clipToTriangle(A, B, placed, dropLen);
      if (!iv.empty() && (iv.hi - iv.lo) * stretchLen > dropLen) clips.push_back({(int)i, iv});
    }

    // Edge run: some overlapping step has a side matching (A, B).
    int runGluing = -2;
    SideRef runSide;
    for (auto& [i, iv] : clips) {
      const Triangle& tri = s.triangle(chain[i].tri);
      for (int k = 0; k < 3; ++k) {
        Vec2 p = pl[i].apply(tri.corner(k)), q = pl[i].apply(tri.corner(k + 1));
        bool fwdMatch = norm(p - A) < cornerTol && norm(q - B) < cornerTol;
        bool revMatch = norm(p - B) < cornerTol && norm(q - A) < cornerTol;
        if (!fwdMatch && !revMatch) continue;
        int gi = s.gluingAt(chain[i].tri, k);
        SideRef cand{chain[i].tri, k};
        if (runGluing == -2 || (gi >= 0 && gi < runGluing) ||
            (gi == runGluing && gi < 0 && cand < runSide)) {
          runGluing = gi;
          runSide = cand;
        }
      }
    }
    if (runGluing != -2) {
      arc.edgeRuns.push_back({runGluing, runSide});
      arc.pathSteps.push_back({1, static_cast<int>(arc.edgeRuns.size()) - 1});
      if (runGluing >= 0) tok(6, runGluing, 0, 0);
      else tok(7, runSide.tri, runSide.side, 0);
    } else {
      allRuns = false;
      // Transversal crossings, in chain order.
      for (size_t oi = 0; oi < clips.size(); ++oi) {
        auto [i, iv] = clips[oi];
        TriChord chord;
        chord.tri = chain[i].tri;
        Vec2 X0 = A + (B - A) * iv.lo;
        Vec2 X1 = A + (B - A) * iv.hi;
        Placement inv = inversePlacement(pl[i]);
        chord.a = inv.apply(X0);
        chord.b = inv.apply(X1);

        const Triangle& tri = s.triangle(chord.tri);
        auto classify = [&](Vec2 X, Vec2 chartX, int& side, int& corner, double& par) {
          corner = findCornerNear(s, chord.tri, pl[i], X, cornerTol);
          if (corner >= 0) {
            side = -1;
            par = 0.0;
            return;
          }
          double best = 1e300;
          for (int k = 0; k < 3; ++k) {
            double d = pointSegmentDistance(chartX, tri.corner(k), tri.corner(k + 1));
            if (d < best) {
              best = d;
              side = k;
            }
          }
          Vec2 p = tri.corner(side), q = tri.corner(side + 1);
          par = dot(chartX - p, q - p) / norm2(q - p);
          par = std::clamp(par, 0.0, 1.0);
        };
        classify(X0, chord.a, chord.sideA, chord.cornerA, chord.paramA);
        classify(X1, chord.b, chord.sideB, chord.cornerB, chord.paramB);
        arc.chords.push_back(chord);
        arc.pathSteps.push_back({0, static_cast<int>(arc.chords.size()) - 1});

        if (chord.cornerA >= 0 && chord.cornerB >= 0)
          fail(ErrorCode::InternalError, "chord with two corner endpoints");
        if (chord.cornerA >= 0) tok(4, chord.tri, chord.cornerA, chord.sideB);
        else if (chord.cornerB >= 0) tok(3, chord.tri, chord.sideA, chord.cornerB);
        else tok(2, chord.tri, chord.sideA, chord.sideB);
      }
    }
    if (w + 2 < pts.size()) tok(5, pts[w + 1].classIndex, 0, 0);
  }
  tok(1, arc.targetClass, 0, 0);
  arc.pureEdgeChain = allRuns;

  ArcKey rev = reversedKey(fwd);
  arc.key = std::min(fwd, rev);

  // Endpoint angular coordinates.
  auto endpointAngle = [&](CornerRef wedge, const Placement& wplace, Vec2 rayDir) {
    int cls = s.classOf(wedge);
    const VertexClass& vc = s.vertexClass(cls);
    int li = s.linkIndexOf(cls, wedge);
    int refSide = vc.referenceSides[li];
    const Triangle& tri = s.triangle(wedge.tri);
    // reference ray: from the wedge corner along refSide toward its other end
    int other = refSide == wedge.corner ? (wedge.corner + 1) % 3 : (wedge.corner + 2) % 3;
    Vec2 cornerImg = wplace.apply(tri.corner(wedge.corner));
    Vec2 refRay = wplace.apply(tri.corner(other)) - cornerImg;
    double within = angleBetween(refRay, rayDir);
    double coord = vc.offsets[li] + within;
    if (!vc.onBoundary && coord >= vc.totalAngle) coord -= vc.totalAngle;
    return coord;
  };
  arc.sourceAngle = endpointAngle(sourceWedge, pl.front(), T);
  Vec2 backDir = pts[pts.size() - 2].image - T;
  arc.targetAngle = endpointAngle(arc.targetWedge, pl.back(), backDir);

  return arc;
}

namespace {

// Fan rotation helper for traceGeodesic: at vertex image `v` in triangle
// `tri` (placed), find where the straight continuation in direction d goes.
struct FanResult {
  enum Kind { Interior, EdgeRun, Rotate } kind;
  int side = -1; // Interior: unused; EdgeRun: side containing v collinear
                 // with d; Rotate: side incident to v to cross next
};

FanResult probeWedge(const Surface& s, int tri, int cornerAtV, const Placement& pl, Vec2 v,
                     Vec2 d, double dirTol) {
  const Triangle& T = s.triangle(tri);
  int sideOut = cornerAtV;                // side from corner toward corner+1
  int sideIn = (cornerAtV + 2) % 3;       // side from corner+2 toward corner
  Vec2 r1 = pl.apply(T.corner(cornerAtV + 1)) - v;
  Vec2 r2 = pl.apply(T.corner(cornerAtV + 2)) - v;
  double c1 = cross(r1, d), c2 = cross(r2, d);
  double n1 = norm(r1), n2 = norm(r2), nd = norm(d);

  if (std::abs(c1) <= dirTol * n1 * nd && dot(r1, d) > 0) return {FanResult::EdgeRun, sideOut};
  if (std::abs(c2) <= dirTol * n2 * nd && dot(r2, d) > 0) return {FanResult::EdgeRun, sideIn};

  double orient = cross(r1, r2) >= 0 ? 1.0 : -1.0;
  bool insideR1 = c1 * orient > 0;
  bool insideR2 = c2 * orient < 0;
  if (insideR1 && insideR2) return {FanResult::Interior, -1};
  // Rotate across the wedge side "beyond" which d lies.
  if (!insideR1) return {FanResult::Rotate, sideOut};
  return {FanResult::Rotate, sideIn};
}

} // namespace

Arc traceGeodesic(const Surface& s, CornerRef sourceWedge, Vec2 direction, double length) {
  const double dirTol = s.tolerances().direction;
  const double lenTol = 10.0 * s.lengthTolerance();
  Vec2 d = direction; // not normalized; only its direction is used

  std::vector<ChainStep> chain;
  CornerRef startWedge = sourceWedge;

  // Current state: a vertex event at image v inside triangle fan, or an
  // interior walk through a triangle.
  int tri = sourceWedge.tri;
  int cornerAtV = sourceWedge.corner;
  Placement pl = Placement::translation({-s.triangle(tri).corner(cornerAtV).x,
                                         -s.triangle(tri).corner(cornerAtV).y});
  Vec2 v{0, 0};
  bool atVertex = true;
  int entrySide = -1;
  int guard = 0;
  const int guardMax = 100000;

  while (true) {
    if (++guard > guardMax) fail(ErrorCode::SearchBudgetExceeded, "trace did not terminate");
    if (atVertex) {
      FanResult fr = probeWedge(s, tri, cornerAtV, pl, v, d, dirTol);
      if (fr.kind == FanResult::Rotate) {
        int gi = s.gluingAt(tri, fr.side);
        if (gi < 0)
          fail(ErrorCode::ChainNotGeodesic, "trace direction leaves the surface at a vertex");
        Placement next = developAcross(s, tri, fr.side, pl);
        SideRef other = s.oppositeSide(tri, fr.side);
        // corner of the new triangle at v
        int nc = findCornerNear(s, other.tri, next, v, 1e-6 * s.scale());
        if (nc < 0) fail(ErrorCode::InternalError, "fan rotation lost the vertex");
        tri = other.tri;
        entrySide = other.side;
        pl = next;
        cornerAtV = nc;
        if (chain.empty()) {
          startWedge = {tri, nc}; // still at the source vertex
        } else {
          chain.push_back({tri, entrySide});
        }
        continue;
      }
      if (chain.empty()) {
        startWedge = {tri, cornerAtV};
        chain.push_back({tri, -1});
      }
      if (fr.kind == FanResult::EdgeRun) {
        // advance to the far endpoint of the collinear side
        int farCorner = fr.side == cornerAtV ? (cornerAtV + 1) % 3 : (cornerAtV + 2) % 3;
        Vec2 w = pl.apply(s.triangle(tri).corner(farCorner));
        int cls = s.classOf(tri, farCorner);
        if (norm(w) > length + lenTol)
          fail(ErrorCode::ChainNotGeodesic, "trace overshoots along an edge");
        if (s.isLabeled(cls)) {
          if (std::abs(norm(w) - length) > lenTol)
            fail(ErrorCode::ChainNotGeodesic, "trace hits a labeled vertex early");
          return arcFromChain(s, startWedge, chain, farCorner);
        }
        v = w;
        cornerAtV = farCorner;
        continue;
      }
      // Interior: fall through to the straight walk inside this triangle.
      atVertex = false;
      continue;
    }

    // Straight walk: from point v in direction d inside (tri, pl).
    std::array<Vec2, 3> placed;
    for (int k = 0; k < 3; ++k) placed[k] = pl.apply(s.triangle(tri).corner(k));
    // Find exit: the largest t with v + t*d inside; then classify.
    double tExit = 1e300;
    int exitSide = -1;
    double orient = cross(placed[1] - placed[0], placed[2] - placed[0]) >= 0 ? 1.0 : -1.0;
    for (int k = 0; k < 3; ++k) {
      Vec2 p = placed[k], q = placed[(k + 1) % 3];
      double denom = orient * cross(q - p, d);
      if (denom >= 0) continue; // moving away from or parallel to this side
      double t = -(orient * cross(q - p, v - p)) / denom;
      if (t < tExit) {
        tExit = t;
        exitSide = k;
      }
    }
    if (exitSide < 0) fail(ErrorCode::InternalError, "straight walk found no exit");
    Vec2 x = v + d * tExit;

    // Target reached inside this triangle?
    if (norm(x) > length + lenTol) {
      fail(ErrorCode::ChainNotGeodesic, "trace overshoots inside a triangle");
    }

    int hitCorner = findCornerNear(s, tri, pl, x, 1e-6 * s.scale());
    if (hitCorner >= 0) {
      int cls = s.classOf(tri, hitCorner);
      if (s.isLabeled(cls)) {
        if (std::abs(norm(x) - length) > lenTol)
          fail(ErrorCode::ChainNotGeodesic, "trace hits a labeled vertex early");
        return arcFromChain(s, startWedge, chain, hitCorner);
      }
      v = x;
      cornerAtV = hitCorner;
      atVertex = true;
      continue;
    }
    int gi = s.gluingAt(tri, exitSide);
    if (gi < 0) fail(ErrorCode::ChainNotGeodesic, "trace exits through the boundary");
    Placement next = developAcross(s, tri, exitSide, pl);
    SideRef other = s.oppositeSide(tri, exitSide);
    tri = other.tri;
    pl = next;
    v = x;
    chain.push_back({tri, other.side});
  }
}

bool revalidateArc(const Surface& s, const Arc& arc, std::string* whyNot) {
  auto fails = [&](const std::string& msg) {
    if (whyNot) *whyNot = msg;
    return false;
  };
  try {
    Arc redo = arcFromChain(s, arc.sourceWedge, arc.chain, arc.targetCorner);
    if (norm(redo.vector - arc.vector) > 1e-9 * std::max(1.0, s.scale()))
      return fails("re-developed vector differs");
    if (redo.sourceClass != arc.sourceClass || redo.targetClass != arc.targetClass)
      return fails("endpoint classes differ");
    if (redo.key != arc.key) return fails("canonical key differs");
    // Independent straight-line walk.
    Arc traced = traceGeodesic(s, arc.sourceWedge, arc.vector, arc.length);
    if (traced.key != arc.key) return fails("traced key differs");
    if (std::abs(traced.length - arc.length) > 1e-9 * std::max(1.0, s.scale()))
      return fails("traced length differs");
  } catch (const Error& e) {
    return fails(e.what());
  }
  return true;
}

bool arcsIntersect(const Surface& s, const Arc& a, const Arc& b) {
  bool self = (&a == &b) || a.key == b.key;
  const double tol = s.clearance();

  // Shared pass-through vertices.
  if (self) {
    std::set<int> seen;
    for (int c : a.passClasses)
      if (!seen.insert(c).second) return true;
    std::set<int> runs;
    for (const EdgeRun& r : a.edgeRuns) {
      int id = r.gluing >= 0 ? r.gluing : -(1 + r.side.tri * 3 + r.side.side);
      if (!runs.insert(id).second) return true;
    }
  } else {
    std::set<int> pa(a.passClasses.begin(), a.passClasses.end());
    for (int c : b.passClasses)
      if (pa.count(c)) return true;
    std::set<int> ra, rb;
    for (const EdgeRun& r : a.edgeRuns)
      ra.insert(r.gluing >= 0 ? r.gluing : -(1 + r.side.tri * 3 + r.side.side));
    for (const EdgeRun& r : b.edgeRuns)
      if (ra.count(r.gluing >= 0 ? r.gluing : -(1 + r.side.tri * 3 + r.side.side))) return true;
  }

  // Chord-chord crossings in shared triangles.
  std::map<int, std::vector<const TriChord*>> byTri;
  for (const TriChord& c : a.chords) byTri[c.tri].push_back(&c);
  for (const TriChord& c : b.chords) {
    auto it = byTri.find(c.tri);
    if (it == byTri.end()) continue;
    for (const TriChord* o : it->second) {
      if (self && o == &c) continue;
      if (openSegmentsIntersect(o->a, o->b, c.a, c.b, tol)) return true;
    }
  }

  // Edge runs of one arc crossed transversally by chords of the other.
  auto runCrossedBy = [&](const std::vector<EdgeRun>& runs, const std::vector<TriChord>& chords) {
    for (const EdgeRun& r : runs) {
      std::vector<SideRef> sides{r.side};
      if (r.gluing >= 0) {
        const Gluing& g = s.gluings()[r.gluing];
        sides.push_back({g.triA, g.sideA});
        sides.push_back({g.triB, g.sideB});
      }
      for (const TriChord& c : chords) {
        for (const SideRef& sr : sides) {
          if (c.tri != sr.tri) continue;
          double eps = 1e-9;
          if ((c.sideA == sr.side && c.paramA > eps && c.paramA < 1 - eps) ||
              (c.sideB == sr.side && c.paramB > eps && c.paramB < 1 - eps))
            return true;
        }
      }
    }
    return false;
  };
  if (runCrossedBy(a.edgeRuns, b.chords)) return true;
  if (!self && runCrossedBy(b.edgeRuns, a.chords)) return true;
  return false;
}

} // namespace flatsurf
