#include "flatsurf/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "flatsurf/errors.hpp"

namespace flatsurf {

namespace {

struct Piece {
  int parentTri;
  std::array<Vec2, 3> corners;
};

// Quantized point key for exact-ish matching of shared subdivision points.
std::pair<int64_t, int64_t> quantize(Vec2 p, double q) {
  return {static_cast<int64_t>(std::llround(p.x / q)), static_cast<int64_t>(std::llround(p.y / q))};
}

struct AssembledRefinement {
  Refinement ref;
  // (parentTri, endpoint keys) -> refined gluing index, for internal edges.
  std::map<std::tuple<int, int64_t, int64_t, int64_t, int64_t>, int> internalEdge;
  // parent gluing index -> refined gluing indices on it.
  std::map<int, std::vector<int>> subGluings;
};

AssembledRefinement assembleRefined(const Surface& parent, const std::vector<Piece>& pieces) {
  AssembledRefinement out;
  Refinement& ref = out.ref;
  const double scale = parent.scale();
  const double tol = 1e-7 * scale;
  const double q = 1e-11 * scale;

  std::vector<Triangle> tris;
  tris.reserve(pieces.size());
  ref.parentTri.reserve(pieces.size());
  for (const Piece& p : pieces) {
    tris.push_back({p.corners});
    ref.parentTri.push_back(p.parentTri);
  }

  // Side and corner provenance.
  ref.sides.assign(pieces.size(), {});
  ref.parentCorner.assign(pieces.size(), {-1, -1, -1});
  for (size_t i = 0; i < pieces.size(); ++i) {
    const Triangle& pt = parent.triangle(pieces[i].parentTri);
    for (int k = 0; k < 3; ++k) {
      Vec2 P = tris[i].corner(k), Q = tris[i].corner(k + 1);
      SideProvenance prov;
      for (int ps = 0; ps < 3; ++ps) {
        Vec2 A = pt.corner(ps), B = pt.corner(ps + 1);
        if (pointSegmentDistance(P, A, B) < tol && pointSegmentDistance(Q, A, B) < tol) {
          double l2 = norm2(B - A);
          prov.parentSide = ps;
          prov.u0 = dot(P - A, B - A) / l2;
          prov.u1 = dot(Q - A, B - A) / l2;
          break;
        }
      }
      ref.sides[i][k] = prov;
      for (int pc = 0; pc < 3; ++pc)
        if (norm(P - pt.corner(pc)) < tol) ref.parentCorner[i][k] = pc;
    }
  }

  // Gluings: internal edges match within a parent triangle by endpoints.
  std::vector<Gluing> gluings;
  std::map<std::tuple<int, int64_t, int64_t, int64_t, int64_t>, std::vector<std::pair<int, int>>>
      internal;
  for (size_t i = 0; i < pieces.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      if (ref.sides[i][k].parentSide >= 0) continue;
      auto ka = quantize(tris[i].corner(k), q);
      auto kb = quantize(tris[i].corner(k + 1), q);
      auto key = ka <= kb ? std::make_tuple(pieces[i].parentTri, ka.first, ka.second, kb.first,
                                            kb.second)
                          : std::make_tuple(pieces[i].parentTri, kb.first, kb.second, ka.first,
                                            ka.second);
      internal[key].push_back({static_cast<int>(i), k});
    }
  }
  for (auto& [key, sides] : internal) {
    if (sides.size() != 2)
      fail(ErrorCode::InternalError,
           "internal subdivision edge shared by " + std::to_string(sides.size()) + " pieces");
    auto [t1, s1] = sides[0];
    auto [t2, s2] = sides[1];
    // reversed flag from endpoint correspondence in the common chart
    bool reversed = norm(tris[t1].corner(s1) - tris[t2].corner(s2)) < tol;
    out.internalEdge[key] = static_cast<int>(gluings.size());
    gluings.push_back({t1, s1, t2, s2, reversed});
  }

  // Sub-sides on parent sides, grouped per (parentTri, parentSide).
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> onParentSide;
  for (size_t i = 0; i < pieces.size(); ++i)
    for (int k = 0; k < 3; ++k)
      if (ref.sides[i][k].parentSide >= 0)
        onParentSide[{pieces[i].parentTri, ref.sides[i][k].parentSide}].push_back(
            {static_cast<int>(i), k});

  for (int gi = 0; gi < static_cast<int>(parent.gluings().size()); ++gi) {
    const Gluing& g = parent.gluings()[gi];
    auto itA = onParentSide.find({g.triA, g.sideA});
    auto itB = onParentSide.find({g.triB, g.sideB});
    if (itA == onParentSide.end() || itB == onParentSide.end())
      fail(ErrorCode::InternalError, "parent side not covered by refined sides");
    // Map a param on side B into side A's frame.
    auto phi = [&](double u) { return g.reversed ? u : 1.0 - u; };
    double paramTol = 1e-6;
    for (auto [ta, sa] : itA->second) {
      const SideProvenance& pa = ref.sides[ta][sa];
      double mid = 0.5 * (pa.u0 + pa.u1);
      bool matched = false;
      for (auto [tb, sb] : itB->second) {
        const SideProvenance& pb = ref.sides[tb][sb];
        double bmid = phi(0.5 * (pb.u0 + pb.u1));
        if (std::abs(bmid - mid) > paramTol) continue;
        // endpoint correspondence: does A's endpoint0 match B's endpoint1?
        bool reversed;
        if (std::abs(phi(pb.u1) - pa.u0) < paramTol) reversed = false;
        else if (std::abs(phi(pb.u0) - pa.u0) < paramTol) reversed = true;
        else fail(ErrorCode::InternalError, "sub-side endpoints do not align");
        out.subGluings[gi].push_back(static_cast<int>(gluings.size()));
        gluings.push_back({ta, sa, tb, sb, reversed});
        matched = true;
        break;
      }
      if (!matched) fail(ErrorCode::InternalError, "unmatched sub-side across a gluing");
    }
  }

  // Labels: one hint per labeled parent class.
  std::vector<CornerRef> hints;
  for (int cls : parent.labels()) {
    bool found = false;
    for (const CornerRef& c : parent.vertexClass(cls).corners) {
      if (found) break;
      Vec2 pos = parent.triangle(c.tri).corner(c.corner);
      for (size_t i = 0; i < pieces.size() && !found; ++i) {
        if (pieces[i].parentTri != c.tri) continue;
        for (int k = 0; k < 3 && !found; ++k) {
          if (norm(tris[i].corner(k) - pos) < tol) {
            hints.push_back({static_cast<int>(i), k});
            found = true;
          }
        }
      }
    }
    if (!found) fail(ErrorCode::InternalError, "lost a labeled vertex during refinement");
  }

  ref.refined = Surface::build(std::move(tris), std::move(gluings), hints, parent.tolerances());

  double a0 = parent.totalArea(), a1 = ref.refined.totalArea();
  if (std::abs(a0 - a1) > 1e-9 * a0)
    fail(ErrorCode::InternalError, "refinement does not preserve area");
  return out;
}

} // namespace

Refinement identityRefinement(const Surface& s) {
  Refinement ref;
  ref.refined = s;
  ref.parentTri.resize(s.triangleCount());
  ref.sides.resize(s.triangleCount());
  ref.parentCorner.resize(s.triangleCount());
  for (int i = 0; i < s.triangleCount(); ++i) {
    ref.parentTri[i] = i;
    for (int k = 0; k < 3; ++k) {
      ref.sides[i][k] = {k, 0.0, 1.0};
      ref.parentCorner[i][k] = k;
    }
  }
  return ref;
}

Refinement refineAtPoint(const Surface& s, int tri, double b0, double b1, double b2) {
  if (tri < 0 || tri >= s.triangleCount())
    fail(ErrorCode::UnknownVertex, "no triangle " + std::to_string(tri));
  double sum = b0 + b1 + b2;
  if (std::abs(sum - 1.0) > 1e-6) fail(ErrorCode::DegenerateSplit, "barycentric sum is not 1");
  const double eps = 1e-7;
  std::array<double, 3> b{b0, b1, b2};
  int zeros = 0, zeroAt = -1;
  for (int i = 0; i < 3; ++i)
    if (b[i] < eps) {
      ++zeros;
      zeroAt = i;
    }
  const Triangle& T = s.triangle(tri);
  Vec2 P = T.corner(0) * b[0] + T.corner(1) * b[1] + T.corner(2) * b[2];

  std::vector<Piece> pieces;
  if (zeros >= 2) fail(ErrorCode::DegenerateSplit, "split point is a corner");
  if (zeros == 1) {
    // Point on side (zeroAt+1): split both incident triangles.
    int side = (zeroAt + 1) % 3;
    double u = dot(P - T.corner(side), T.corner(side + 1) - T.corner(side)) /
               norm2(T.corner(side + 1) - T.corner(side));
    if (u < eps || u > 1 - eps) fail(ErrorCode::DegenerateSplit, "split point is a corner");
    for (int i = 0; i < s.triangleCount(); ++i) {
      if (i == tri) {
        pieces.push_back({i, {T.corner(side), P, T.corner(side + 2)}});
        pieces.push_back({i, {P, T.corner(side + 1), T.corner(side + 2)}});
      } else if (int gi = s.gluingAt(tri, side); gi >= 0 && [&] {
                   SideRef o = s.oppositeSide(tri, side);
                   return o.tri == i;
                 }()) {
        SideRef o = s.oppositeSide(tri, side);
        const Gluing& g = s.gluings()[gi];
        const Triangle& U = s.triangle(i);
        double v = g.reversed ? u : 1.0 - u;
        Vec2 Q = U.corner(o.side) + (U.corner(o.side + 1) - U.corner(o.side)) * v;
        pieces.push_back({i, {U.corner(o.side), Q, U.corner(o.side + 2)}});
        pieces.push_back({i, {Q, U.corner(o.side + 1), U.corner(o.side + 2)}});
      } else {
        pieces.push_back({i, s.triangle(i).corners});
      }
    }
  } else {
    for (int i = 0; i < s.triangleCount(); ++i) {
      if (i == tri) {
        pieces.push_back({i, {T.corner(0), T.corner(1), P}});
        pieces.push_back({i, {T.corner(1), T.corner(2), P}});
        pieces.push_back({i, {T.corner(2), T.corner(0), P}});
      } else {
        pieces.push_back({i, s.triangle(i).corners});
      }
    }
  }
  return assembleRefined(s, pieces).ref;
}

Refinement barycentricRefine(const Surface& s) {
  std::vector<Piece> pieces;
  for (int i = 0; i < s.triangleCount(); ++i) {
    const Triangle& T = s.triangle(i);
    Vec2 c0 = T.corner(0), c1 = T.corner(1), c2 = T.corner(2);
    Vec2 m01 = (c0 + c1) * 0.5, m12 = (c1 + c2) * 0.5, m20 = (c2 + c0) * 0.5;
    Vec2 g = (c0 + c1 + c2) * (1.0 / 3.0);
    pieces.push_back({i, {c0, m01, g}});
    pieces.push_back({i, {m01, c1, g}});
    pieces.push_back({i, {c1, m12, g}});
    pieces.push_back({i, {m12, c2, g}});
    pieces.push_back({i, {c2, m20, g}});
    pieces.push_back({i, {m20, c0, g}});
  }
  return assembleRefined(s, pieces).ref;
}

namespace {

// Ear-clips a convex polygon (given as indices into a point table), emitting
// triangles deterministically; tolerates collinear boundary runs.
void earClip(std::vector<int> poly, const std::vector<Vec2>& pts, double areaTol,
             std::vector<std::array<int, 3>>& out) {
  while (poly.size() > 3) {
    bool clipped = false;
    for (size_t i = 0; i < poly.size(); ++i) {
      int a = poly[(i + poly.size() - 1) % poly.size()];
      int v = poly[i];
      int b = poly[(i + 1) % poly.size()];
      if (triangleArea(pts[a], pts[v], pts[b]) > areaTol) {
        out.push_back({a, v, b});
        poly.erase(poly.begin() + static_cast<long>(i));
        clipped = true;
        break;
      }
    }
    if (!clipped) fail(ErrorCode::InternalError, "no valid ear in convex piece");
  }
  if (triangleArea(pts[poly[0]], pts[poly[1]], pts[poly[2]]) <= areaTol)
    fail(ErrorCode::InternalError, "degenerate final piece");
  out.push_back({poly[0], poly[1], poly[2]});
}

void splitPolygon(const std::vector<int>& poly, std::vector<std::pair<int, int>> chords,
                  const std::vector<Vec2>& pts, double areaTol,
                  std::vector<std::array<int, 3>>& out) {
  if (chords.empty()) {
    earClip(poly, pts, areaTol, out);
    return;
  }
  auto [p, qq] = chords.front();
  chords.erase(chords.begin());
  auto ip = std::find(poly.begin(), poly.end(), p);
  auto iq = std::find(poly.begin(), poly.end(), qq);
  if (ip == poly.end() || iq == poly.end())
    fail(ErrorCode::InternalError, "chord endpoint missing from polygon");
  size_t a = static_cast<size_t>(ip - poly.begin());
  size_t bpos = static_cast<size_t>(iq - poly.begin());
  std::vector<int> polyA, polyB;
  for (size_t i = a;; i = (i + 1) % poly.size()) {
    polyA.push_back(poly[i]);
    if (i == bpos) break;
  }
  for (size_t i = bpos;; i = (i + 1) % poly.size()) {
    polyB.push_back(poly[i]);
    if (i == a) break;
  }
  std::set<int> inA(polyA.begin(), polyA.end());
  std::vector<std::pair<int, int>> chordsA, chordsB;
  for (auto& ch : chords) {
    auto side = [&](int x) {
      if (x == p || x == qq) return 0;
      return inA.count(x) ? 1 : 2;
    };
    int sa = side(ch.first), sb = side(ch.second);
    int where = std::max(sa, sb);
    if (sa != 0 && sb != 0 && sa != sb)
      fail(ErrorCode::InternalError, "crossing chords in one triangle");
    if (where <= 1) chordsA.push_back(ch);
    else chordsB.push_back(ch);
  }
  splitPolygon(polyA, chordsA, pts, areaTol, out);
  splitPolygon(polyB, chordsB, pts, areaTol, out);
}

} // namespace

PathEmbedding embedPath(const Surface& s, const std::vector<Arc>& arcs) {
  const double scale = s.scale();
  // 1. Collect side-crossing params per gluing, in the A-side frame.
  std::map<int, std::vector<double>> rawSplits;
  auto paramOnA = [&](const Gluing& g, int tri, int side, double u) {
    if (g.triA == tri && g.sideA == side) return u;
    return g.reversed ? u : 1.0 - u;
  };
  for (const Arc& arc : arcs) {
    for (const TriChord& ch : arc.chords) {
      for (int e = 0; e < 2; ++e) {
        int side = e == 0 ? ch.sideA : ch.sideB;
        double par = e == 0 ? ch.paramA : ch.paramB;
        if (side < 0) continue;
        int gi = s.gluingAt(ch.tri, side);
        if (gi < 0)
          fail(ErrorCode::InternalError, "arc chord crosses a boundary side");
        rawSplits[gi].push_back(paramOnA(s.gluings()[gi], ch.tri, side, par));
      }
    }
  }
  // 2. Cluster params per gluing.
  std::map<int, std::vector<double>> splits;
  for (auto& [gi, params] : rawSplits) {
    std::sort(params.begin(), params.end());
    double sideLen = s.triangle(s.gluings()[gi].triA).sideLength(s.gluings()[gi].sideA);
    double ptol = 1e-8 * scale / sideLen;
    std::vector<double> merged;
    size_t i = 0;
    while (i < params.size()) {
      size_t j = i;
      double sum = 0.0;
      while (j < params.size() && params[j] - params[i] <= ptol) sum += params[j++];
      merged.push_back(sum / static_cast<double>(j - i));
      i = j;
    }
    splits[gi] = std::move(merged);
  }

  // 3. Per-triangle point tables and chords.
  int nt = s.triangleCount();
  std::vector<std::vector<Vec2>> pts(nt);
  std::vector<std::vector<std::vector<int>>> sidePts(nt); // per side, point ids by param
  for (int t = 0; t < nt; ++t) {
    const Triangle& T = s.triangle(t);
    for (int k = 0; k < 3; ++k) pts[t].push_back(T.corner(k));
    sidePts[t].resize(3);
    for (int k = 0; k < 3; ++k) {
      int gi = s.gluingAt(t, k);
      if (gi < 0) continue;
      auto it = splits.find(gi);
      if (it == splits.end()) continue;
      const Gluing& g = s.gluings()[gi];
      std::vector<double> local;
      for (double uA : it->second)
        local.push_back((g.triA == t && g.sideA == k) ? uA : (g.reversed ? uA : 1.0 - uA));
      std::sort(local.begin(), local.end());
      for (double u : local) {
        Vec2 P = T.corner(k) + (T.corner(k + 1) - T.corner(k)) * u;
        sidePts[t][k].push_back(static_cast<int>(pts[t].size()));
        pts[t].push_back(P);
      }
    }
  }
  auto sidePointId = [&](int t, int side, double param) {
    const Triangle& T = s.triangle(t);
    Vec2 want = T.corner(side) + (T.corner(side + 1) - T.corner(side)) * param;
    int best = -1;
    double bestD = 1e300;
    for (int id : sidePts[t][side]) {
      double d = norm(pts[t][id] - want);
      if (d < bestD) {
        bestD = d;
        best = id;
      }
    }
    if (best < 0 || bestD > 1e-6 * scale)
      fail(ErrorCode::InternalError, "chord endpoint not found among side splits");
    return best;
  };

  std::vector<std::vector<std::pair<int, int>>> triChords(nt);
  std::vector<std::vector<std::pair<int, int>>> chordPts; // per arc, per chord
  for (const Arc& arc : arcs) {
    chordPts.emplace_back();
    for (const TriChord& ch : arc.chords) {
      int pa = ch.cornerA >= 0 ? ch.cornerA : sidePointId(ch.tri, ch.sideA, ch.paramA);
      int pb = ch.cornerB >= 0 ? ch.cornerB : sidePointId(ch.tri, ch.sideB, ch.paramB);
      if (pa == pb) fail(ErrorCode::NearDegenerateCrossing, "degenerate chord");
      triChords[ch.tri].push_back({pa, pb});
      chordPts.back().push_back({pa, pb});
    }
  }

  // 4. Subdivide.
  std::vector<Piece> pieces;
  const double areaTol = 1e-11 * scale * scale;
  for (int t = 0; t < nt; ++t) {
    bool trivial = triChords[t].empty();
    for (int k = 0; k < 3; ++k)
      if (!sidePts[t][k].empty()) trivial = false;
    if (trivial) {
      pieces.push_back({t, s.triangle(t).corners});
      continue;
    }
    std::vector<int> poly;
    for (int k = 0; k < 3; ++k) {
      poly.push_back(k);
      for (int id : sidePts[t][k]) poly.push_back(id);
    }
    std::vector<std::array<int, 3>> local;
    splitPolygon(poly, triChords[t], pts[t], areaTol, local);
    for (auto& tri3 : local)
      pieces.push_back({t, {pts[t][tri3[0]], pts[t][tri3[1]], pts[t][tri3[2]]}});
  }

  AssembledRefinement assembled = assembleRefined(s, pieces);
  PathEmbedding emb;
  emb.refinement = std::move(assembled.ref);

  // 5. Chain edges per arc.
  const double q = 1e-11 * scale;
  for (size_t arcIdx = 0; arcIdx < arcs.size(); ++arcIdx) {
    const Arc& arc = arcs[arcIdx];
    EmbeddedArc ea;
    ea.arc = arc;
    for (auto [kind, idx] : arc.pathSteps) {
      if (kind == 0) {
        const TriChord& ch = arc.chords[idx];
        auto [pa, pb] = chordPts[arcIdx][idx];
        auto ka = quantize(pts[ch.tri][pa], q), kb = quantize(pts[ch.tri][pb], q);
        auto key = ka <= kb
                       ? std::make_tuple(ch.tri, ka.first, ka.second, kb.first, kb.second)
                       : std::make_tuple(ch.tri, kb.first, kb.second, ka.first, ka.second);
        auto it = assembled.internalEdge.find(key);
        if (it == assembled.internalEdge.end())
          fail(ErrorCode::InternalError, "embedded chord has no internal edge");
        ea.chainGluings.push_back(it->second);
      } else {
        const EdgeRun& run = arc.edgeRuns[idx];
        if (run.gluing < 0) {
          ea.boundaryRuns.push_back(run.side);
          continue;
        }
        auto it = assembled.subGluings.find(run.gluing);
        if (it == assembled.subGluings.end() || it->second.size() != 1)
          fail(ErrorCode::InternalError, "edge run was split during embedding");
        ea.chainGluings.push_back(it->second.front());
      }
    }
    emb.arcs.push_back(std::move(ea));
  }
  return emb;
}

CutRecord cutAlong(const PathEmbedding& embedding) {
  const Surface& R = embedding.refinement.refined;
  CutRecord rec;
  rec.embedding = embedding;

  std::set<int> cut;
  for (const EmbeddedArc& ea : embedding.arcs)
    for (int gi : ea.chainGluings)
      if (!cut.insert(gi).second)
        fail(ErrorCode::NotSimple, "cut path repeats a mesh edge");

  // Remaining gluings define the children.
  std::vector<Gluing> kept;
  for (int gi = 0; gi < static_cast<int>(R.gluings().size()); ++gi)
    if (!cut.count(gi)) kept.push_back(R.gluings()[gi]);

  // Components.
  int nt = R.triangleCount();
  std::vector<int> comp(nt, -1);
  std::vector<std::vector<int>> adj(nt);
  for (const Gluing& g : kept) {
    adj[g.triA].push_back(g.triB);
    adj[g.triB].push_back(g.triA);
  }
  int ncomp = 0;
  for (int t = 0; t < nt; ++t) {
    if (comp[t] >= 0) continue;
    std::queue<int> qu;
    qu.push(t);
    comp[t] = ncomp;
    while (!qu.empty()) {
      int u = qu.front();
      qu.pop();
      for (int v : adj[u])
        if (comp[v] < 0) {
          comp[v] = ncomp;
          qu.push(v);
        }
    }
    ++ncomp;
  }

  rec.childTriToRefined.assign(ncomp, {});
  rec.refinedTriChild.assign(nt, {-1, -1});
  std::vector<std::vector<int>> refinedToChildTri(ncomp, std::vector<int>(nt, -1));
  for (int t = 0; t < nt; ++t) {
    int c = comp[t];
    refinedToChildTri[c][t] = static_cast<int>(rec.childTriToRefined[c].size());
    rec.refinedTriChild[t] = {c, refinedToChildTri[c][t]};
    rec.childTriToRefined[c].push_back(t);
  }

  for (int c = 0; c < ncomp; ++c) {
    std::vector<Triangle> tris;
    for (int rt : rec.childTriToRefined[c]) tris.push_back(R.triangle(rt));
    std::vector<Gluing> gl;
    for (const Gluing& g : kept)
      if (comp[g.triA] == c)
        gl.push_back({refinedToChildTri[c][g.triA], g.sideA, refinedToChildTri[c][g.triB],
                      g.sideB, g.reversed});
    // Copies of labeled refined vertices stay labeled.
    std::vector<CornerRef> hints;
    for (int cls : R.labels())
      for (const CornerRef& cr : R.vertexClass(cls).corners)
        if (comp[cr.tri] == c) hints.push_back({refinedToChildTri[c][cr.tri], cr.corner});
    rec.children.push_back(Surface::build(std::move(tris), std::move(gl), hints,
                                          R.tolerances()));
  }

  // Seams.
  for (const EmbeddedArc& ea : embedding.arcs) {
    for (int gi : ea.chainGluings) {
      const Gluing& g = R.gluings()[gi];
      CutRecord::Seam seam;
      seam.arcIndex = static_cast<int>(&ea - embedding.arcs.data());
      seam.refinedGluing = gi;
      seam.childA = comp[g.triA];
      seam.triA = refinedToChildTri[comp[g.triA]][g.triA];
      seam.sideA = g.sideA;
      seam.childB = comp[g.triB];
      seam.triB = refinedToChildTri[comp[g.triB]][g.triB];
      seam.sideB = g.sideB;
      rec.seams.push_back(seam);
    }
  }
  return rec;
}

Surface reglue(const CutRecord& rec) {
  const Surface& R = rec.embedding.refinement.refined;
  int nt = R.triangleCount();
  std::vector<Triangle> tris(nt);
  for (int t = 0; t < nt; ++t) {
    auto [c, ct] = rec.refinedTriChild[t];
    if (c < 0 || ct >= rec.children[c].triangleCount())
      fail(ErrorCode::SeamMismatch, "children no longer cover the cut surface");
    tris[t] = rec.children[c].triangle(ct);
    // The metric must be untouched.
    for (int k = 0; k < 3; ++k)
      if (std::abs(tris[t].sideLength(k) - R.triangle(t).sideLength(k)) > R.lengthTolerance())
        fail(ErrorCode::SeamMismatch, "child triangle metric was altered");
  }
  std::vector<Gluing> gluings;
  for (int c = 0; c < static_cast<int>(rec.children.size()); ++c)
    for (const Gluing& g : rec.children[c].gluings())
      gluings.push_back({rec.childTriToRefined[c][g.triA], g.sideA,
                         rec.childTriToRefined[c][g.triB], g.sideB, g.reversed});
  for (const CutRecord::Seam& seam : rec.seams)
    gluings.push_back({rec.childTriToRefined[seam.childA][seam.triA], seam.sideA,
                       rec.childTriToRefined[seam.childB][seam.triB], seam.sideB,
                       R.gluings()[seam.refinedGluing].reversed});
  std::vector<CornerRef> hints;
  for (int c = 0; c < static_cast<int>(rec.children.size()); ++c)
    for (int cls : rec.children[c].labels())
      for (const CornerRef& cr : rec.children[c].vertexClass(cls).corners) {
        hints.push_back({rec.childTriToRefined[c][cr.tri], cr.corner});
        break;
      }
  try {
    return Surface::build(std::move(tris), std::move(gluings), hints, R.tolerances());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MismatchedEdgeLengths)
      fail(ErrorCode::SeamMismatch, std::string("reglue failed: ") + e.what());
    throw;
  }
}

std::vector<ChainStep> pullBackChain(const Surface& parent, const Refinement& ref,
                                     CornerRef refinedWedge, const std::vector<ChainStep>& chain,
                                     CornerRef& parentWedgeOut) {
  (void)parent;
  int headCorner = ref.parentCorner[refinedWedge.tri][refinedWedge.corner];
  if (headCorner < 0)
    fail(ErrorCode::InternalError, "refined wedge does not sit at a parent corner");
  parentWedgeOut = {ref.parentTri[refinedWedge.tri], headCorner};

  std::vector<ChainStep> out;
  out.push_back({parentWedgeOut.tri, -1});
  for (size_t i = 1; i < chain.size(); ++i) {
    const SideProvenance& prov = ref.sides[chain[i].tri][chain[i].entrySide];
    if (prov.parentSide < 0) continue;
    out.push_back({ref.parentTri[chain[i].tri], prov.parentSide});
  }
  return out;
}

Arc pullBackArc(const Surface& parent, const CutRecord& rec, int childIndex,
                const Arc& childArc) {
  const Refinement& ref = rec.embedding.refinement;
  const std::vector<int>& map = rec.childTriToRefined[childIndex];
  std::vector<ChainStep> refinedChain;
  for (const ChainStep& st : childArc.chain) refinedChain.push_back({map[st.tri], st.entrySide});
  CornerRef refinedWedge{map[childArc.sourceWedge.tri], childArc.sourceWedge.corner};

  CornerRef parentWedge;
  std::vector<ChainStep> parentChain =
      pullBackChain(parent, ref, refinedWedge, refinedChain, parentWedge);

  int lastRefined = map[childArc.chain.back().tri];
  int pt = ref.parentTri[lastRefined];
  int targetCorner = ref.parentCorner[lastRefined][childArc.targetCorner];
  if (targetCorner < 0)
    fail(ErrorCode::InternalError, "refined target does not sit at a parent corner");
  if (parentChain.back().tri != pt)
    fail(ErrorCode::InternalError, "pulled-back chain does not end at the target triangle");
  return arcFromChain(parent, parentWedge, parentChain, targetCorner);
}

} // namespace flatsurf
