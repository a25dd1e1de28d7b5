#include "flatsurf/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <future>
#include <map>
#include <queue>
#include <set>

#include "flatsurf/errors.hpp"

namespace flatsurf {

namespace {

// A live branch of the wedge search. Rays from the origin within the sector
// [lo, hi] (counterclockwise, possibly closed at either bound) enter `tri`
// through `entrySide`.
struct SearchState {
  int tri = -1;
  int entrySide = -1;
  Placement place;
  Vec2 lo, hi;
  bool closedLo = false, closedHi = false;
  int parent = -1; // index into the state arena
};

struct WedgeSearch {
  const Surface& s;
  double maxLength;
  long long budget;
  std::vector<Arc>& out;
  std::vector<std::string>& diagnostics;

  std::vector<SearchState> arena;
  std::deque<int> active;
  long long developed = 0;
  double dirTol;
  double emitTol;

  WedgeSearch(const Surface& surface, double L, long long budget, std::vector<Arc>& sink,
              std::vector<std::string>& diag)
      : s(surface), maxLength(L), budget(budget), out(sink), diagnostics(diag) {
    dirTol = s.tolerances().direction;
    emitTol = 1e-9 * std::max(1.0, s.scale());
  }

  bool sectorNonempty(Vec2 lo, Vec2 hi, bool cl, bool ch) const {
    double c = cross(lo, hi);
    double t = dirTol * norm(lo) * norm(hi);
    if (c > t) return true;
    if (c < -t) return false;
    return dot(lo, hi) > 0 && cl && ch; // a single owned ray
  }

  // Minimum distance from the origin to the part of segment [w0, w1] whose
  // directions lie inside the sector.
  std::optional<double> windowDistance(Vec2 w0, Vec2 w1, Vec2 lo, Vec2 hi) const {
    double u0 = 0.0, u1 = 1.0;
    for (int which = 0; which < 2; ++which) {
      Vec2 b = which == 0 ? lo : hi;
      // keep cross(b, P(u)) >= 0 for lo, <= 0 for hi
      double f0 = cross(b, w0), f1 = cross(b, w1);
      double sign = which == 0 ? 1.0 : -1.0;
      f0 *= sign;
      f1 *= sign;
      if (f0 < 0 && f1 < 0) return std::nullopt;
      if (f0 < 0 || f1 < 0) {
        double t = f0 / (f0 - f1);
        if (f0 < 0) u0 = std::max(u0, t);
        else u1 = std::min(u1, t);
      }
    }
    if (u1 < u0) return std::nullopt;
    Vec2 p = w0 + (w1 - w0) * u0;
    Vec2 q = w0 + (w1 - w0) * u1;
    return segmentDistanceToOrigin(p, q);
  }

  std::vector<ChainStep> chainOf(int stateIndex) const {
    std::vector<ChainStep> chain;
    for (int i = stateIndex; i >= 0; i = arena[i].parent)
      chain.push_back({arena[i].tri, arena[i].entrySide});
    std::reverse(chain.begin(), chain.end());
    return chain;
  }

  void emit(CornerRef wedge, int stateIndex, int targetCorner, int fromFilter, int toFilter) {
    const SearchState& st = arena[stateIndex];
    int targetClass = s.classOf(st.tri, targetCorner);
    int sourceClass = s.classOf(wedge);
    if (fromFilter >= 0 || toFilter >= 0) {
      int a = fromFilter >= 0 ? fromFilter : toFilter;
      int b = toFilter >= 0 ? toFilter : fromFilter;
      bool match = (sourceClass == a && targetClass == b) || (sourceClass == b && targetClass == a);
      if (!match) return;
    }
    try {
      out.push_back(arcFromChain(s, wedge, chainOf(stateIndex), targetCorner));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NearDegenerate) diagnostics.push_back(e.what());
      else throw;
    }
  }

  void push(SearchState st) {
    if (!sectorNonempty(st.lo, st.hi, st.closedLo, st.closedHi)) return;
    if (s.isBoundarySide(st.tri, st.entrySide))
      fail(ErrorCode::InternalError, "search state entered through a boundary side");
    arena.push_back(st);
    active.push_back(static_cast<int>(arena.size()) - 1);
  }

  // Expand rays of `st` across (tri, exitSide); pushes the neighbor state.
  void expandThrough(const SearchState& st, int stateIndex, int exitSide, Vec2 lo, Vec2 hi,
                     bool cl, bool ch) {
    if (!sectorNonempty(lo, hi, cl, ch)) return;
    const Triangle& tri = s.triangle(st.tri);
    Vec2 w0 = st.place.apply(tri.corner(exitSide));
    Vec2 w1 = st.place.apply(tri.corner(exitSide + 1));
    auto dist = windowDistance(w0, w1, lo, hi);
    if (!dist || *dist > maxLength + emitTol) return;
    if (s.isBoundarySide(st.tri, exitSide)) return; // rays stop at the boundary
    SideRef other = s.oppositeSide(st.tri, exitSide);
    SearchState next;
    next.tri = other.tri;
    next.entrySide = other.side;
    next.place = developAcross(s, st.tri, exitSide, st.place);
    next.lo = lo;
    next.hi = hi;
    next.closedLo = cl;
    next.closedHi = ch;
    next.parent = stateIndex;
    push(next);
  }

  void processState(int stateIndex, CornerRef wedge, int fromFilter, int toFilter) {
    if (++developed > budget)
      fail(ErrorCode::SearchBudgetExceeded,
           "developed-triangle budget (" + std::to_string(budget) + ") exceeded");
    SearchState st = arena[stateIndex]; // copy; arena may reallocate
    const Triangle& tri = s.triangle(st.tri);
    int apexCorner = (st.entrySide + 2) % 3;
    Vec2 A = st.place.apply(tri.corner(st.entrySide));
    Vec2 B = st.place.apply(tri.corner(st.entrySide + 1));
    Vec2 C = st.place.apply(tri.corner(apexCorner));
    double o = cross(B - A, C - A) >= 0 ? 1.0 : -1.0;
    int sideAfterB = (st.entrySide + 1) % 3; // segment B-C
    int sideBeforeA = (st.entrySide + 2) % 3; // segment C-A

    double tLo = dirTol * norm(st.lo) * norm(C);
    double tHi = dirTol * norm(st.hi) * norm(C);
    double cLo = cross(st.lo, C);
    double cHi = cross(C, st.hi);
    bool insideLo = cLo > tLo, insideHi = cHi > tHi;
    bool onLo = std::abs(cLo) <= tLo && dot(st.lo, C) > 0;
    bool onHi = std::abs(cHi) <= tHi && dot(st.hi, C) > 0;

    bool apexInCone = (insideLo || onLo) && (insideHi || onHi);
    if (!apexInCone) {
      // The whole sector exits through a single far side.
      int exitSide;
      if (!insideHi && !onHi) exitSide = o > 0 ? sideAfterB : sideBeforeA;
      else exitSide = o > 0 ? sideBeforeA : sideAfterB;
      expandThrough(st, stateIndex, exitSide, st.lo, st.hi, st.closedLo, st.closedHi);
      return;
    }

    bool reachable = (insideLo && insideHi) || (onLo && st.closedLo) || (onHi && st.closedHi);
    int apexClass = s.classOf(st.tri, apexCorner);
    bool labeled = s.isLabeled(apexClass);
    if (reachable && labeled && norm(C) <= maxLength + emitTol)
      emit(wedge, stateIndex, apexCorner, fromFilter, toFilter);

    bool passOwned = reachable && !labeled;
    // Clockwise child [lo, C): never owns the apex ray.
    expandThrough(st, stateIndex, o > 0 ? sideAfterB : sideBeforeA, st.lo, C, st.closedLo, false);
    // Counterclockwise child [C, hi]: owns the apex ray on a flat pass.
    expandThrough(st, stateIndex, o > 0 ? sideBeforeA : sideAfterB, C, st.hi, passOwned,
                  st.closedHi);
  }

  // Runs the search for one wedge of the source class.
  void run(CornerRef wedge, bool ownEntry, bool ownExit, int fromFilter, int toFilter) {
    const Triangle& tri = s.triangle(wedge.tri);
    int c = wedge.corner;
    Placement pl = Placement::translation({-tri.corner(c).x, -tri.corner(c).y});

    int cls = s.classOf(wedge);
    const VertexClass& vc = s.vertexClass(cls);
    int li = s.linkIndexOf(cls, wedge);
    int refSide = vc.referenceSides[li];
    // Rays along the wedge's two sides; the entry bound is the reference side.
    int sideTowardNext = c;            // toward corner c+1
    int sideTowardPrev = (c + 2) % 3;  // toward corner c+2
    Vec2 dNext = pl.apply(tri.corner(c + 1));
    Vec2 dPrev = pl.apply(tri.corner(c + 2));
    Vec2 dEntry = refSide == sideTowardNext ? dNext : dPrev;
    Vec2 dExit = refSide == sideTowardNext ? dPrev : dNext;

    // Emit mesh-edge arcs along owned bounds, and open bounds past labels.
    bool contEntry = ownEntry, contExit = ownExit;
    auto boundCorner = [&](bool entryBound) {
      int side = entryBound ? refSide : (refSide == sideTowardNext ? sideTowardPrev : sideTowardNext);
      int corner = side == c ? (c + 1) % 3 : (c + 2) % 3;
      return std::pair{side, corner};
    };
    for (int which = 0; which < 2; ++which) {
      bool entryBound = which == 0;
      bool owned = entryBound ? ownEntry : ownExit;
      if (!owned) continue;
      auto [side, corner] = boundCorner(entryBound);
      int cornerClass = s.classOf(wedge.tri, corner);
      if (s.isLabeled(cornerClass)) {
        if (tri.sideLength(side) <= maxLength + emitTol) {
          // Direct emission: a mesh-edge arc needs only the head triangle.
          std::vector<ChainStep> chain{{wedge.tri, -1}};
          int targetCorner = corner;
          int targetClass = cornerClass;
          int sourceClass = cls;
          bool match = true;
          if (fromFilter >= 0 || toFilter >= 0) {
            int a = fromFilter >= 0 ? fromFilter : toFilter;
            int b = toFilter >= 0 ? toFilter : fromFilter;
            match = (sourceClass == a && targetClass == b) ||
                    (sourceClass == b && targetClass == a);
          }
          if (match) {
            try {
              out.push_back(arcFromChain(s, wedge, chain, targetCorner));
            } catch (const Error& e) {
              if (e.code() == ErrorCode::NearDegenerate) diagnostics.push_back(e.what());
              else throw;
            }
          }
        }
        // The ray cannot continue through a labeled point.
        if (entryBound) contEntry = false;
        else contExit = false;
      }
    }

    arena.clear();
    active.clear();
    // The head triangle as a pseudo-state: rays exit through the opposite side.
    SearchState head;
    head.tri = wedge.tri;
    head.entrySide = -1;
    head.place = pl;
    // Sector in counterclockwise order.
    if (cross(dEntry, dExit) >= 0) {
      head.lo = dEntry;
      head.hi = dExit;
      head.closedLo = contEntry;
      head.closedHi = contExit;
    } else {
      head.lo = dExit;
      head.hi = dEntry;
      head.closedLo = contExit;
      head.closedHi = contEntry;
    }
    head.parent = -1;
    arena.push_back(head);
    expandThrough(head, 0, (c + 1) % 3, head.lo, head.hi, head.closedLo, head.closedHi);

    while (!active.empty()) {
      int idx = active.front();
      active.pop_front();
      processState(idx, wedge, fromFilter, toFilter);
    }
  }
};

// Wedge ownership of the bounding rays around one vertex class: wedge i owns
// its entry bound; the last wedge of a boundary link also owns its exit bound.
struct WedgeTask {
  CornerRef wedge;
  bool ownEntry, ownExit;
};

std::vector<WedgeTask> wedgeTasks(const Surface& s, int classIndex) {
  const VertexClass& vc = s.vertexClass(classIndex);
  std::vector<WedgeTask> tasks;
  int m = static_cast<int>(vc.corners.size());
  for (int i = 0; i < m; ++i) {
    bool ownExit = vc.onBoundary && i == m - 1;
    tasks.push_back({vc.corners[i], true, ownExit});
  }
  return tasks;
}

} // namespace

int MultiArc::classAt(int junction) const {
  if (junction == 0) {
    const Arc& a = segments.front();
    return reversedFlags.front() ? a.targetClass : a.sourceClass;
  }
  const Arc& a = segments[junction - 1];
  return reversedFlags[junction - 1] ? a.sourceClass : a.targetClass;
}

std::vector<Arc> enumerateArcs(const Surface& s, double maxLength, int fromClass, int toClass,
                               const SearchOptions& opts) {
  if (maxLength <= 0) fail(ErrorCode::InternalError, "maxLength must be positive");

  std::vector<int> sources;
  if (fromClass >= 0) sources.push_back(fromClass);
  else if (toClass >= 0) sources.push_back(toClass);
  else sources = s.labels();
  for (int c : sources)
    if (c < 0 || c >= s.classCount() || !s.isLabeled(c))
      fail(ErrorCode::UnknownVertex, "endpoint filter is not a labeled vertex");

  std::vector<WedgeTask> tasks;
  for (int c : sources)
    for (const WedgeTask& t : wedgeTasks(s, c)) tasks.push_back(t);

  std::vector<Arc> all;
  std::vector<std::string> diagnostics;

  auto runTask = [&](const WedgeTask& t, std::vector<Arc>& sink,
                     std::vector<std::string>& diag) {
    WedgeSearch search(s, maxLength, opts.budgetPerWedge, sink, diag);
    search.run(t.wedge, t.ownEntry, t.ownExit, fromClass, toClass);
  };

  if (opts.threads <= 1 || tasks.size() <= 1) {
    for (const WedgeTask& t : tasks) runTask(t, all, diagnostics);
  } else {
    std::vector<std::future<std::pair<std::vector<Arc>, std::vector<std::string>>>> futs;
    for (const WedgeTask& t : tasks)
      futs.push_back(std::async(std::launch::async, [&, t]() {
        std::vector<Arc> sink;
        std::vector<std::string> diag;
        runTask(t, sink, diag);
        return std::pair{std::move(sink), std::move(diag)};
      }));
    for (auto& f : futs) {
      auto [sink, diag] = f.get();
      all.insert(all.end(), sink.begin(), sink.end());
      diagnostics.insert(diagnostics.end(), diag.begin(), diag.end());
    }
  }

  // De-duplicate across directions and wedge encodings; sort by length, key.
  std::map<ArcKey, Arc> unique;
  for (Arc& a : all) {
    auto it = unique.find(a.key);
    if (it == unique.end()) unique.emplace(a.key, std::move(a));
  }
  std::vector<Arc> result;
  result.reserve(unique.size());
  for (auto& [k, a] : unique) result.push_back(std::move(a));
  std::sort(result.begin(), result.end(), [](const Arc& a, const Arc& b) {
    return a.length != b.length ? a.length < b.length : a.key < b.key;
  });
  return result;
}

std::vector<SpectrumRow> rawLengthSpectrum(const Surface& s, double maxLength,
                                           const SearchOptions& opts) {
  std::vector<Arc> arcs = enumerateArcs(s, maxLength, -1, -1, opts);
  std::vector<SpectrumRow> rows;
  double tol = 1e-9 * std::max(1.0, s.scale());
  for (Arc& a : arcs) {
    if (!rows.empty() && std::abs(rows.back().length - a.length) <= tol) {
      rows.back().multiplicity++;
    } else {
      rows.push_back({a.length, 1, a});
    }
  }
  return rows;
}

Arc shortestArc(const Surface& s, int p, int q, const SearchOptions& opts) {
  if (p < 0 || p >= s.classCount() || q < 0 || q >= s.classCount() || !s.isLabeled(p) ||
      !s.isLabeled(q))
    fail(ErrorCode::UnknownVertex, "shortestArc endpoints must be labeled vertices");
  double L = 1e300;
  for (const Triangle& t : s.triangles())
    for (int k = 0; k < 3; ++k) L = std::min(L, t.sideLength(k));
  for (int round = 0; round < 64; ++round) {
    std::vector<Arc> arcs = enumerateArcs(s, L, p, q, opts);
    if (!arcs.empty()) return arcs.front();
    L *= 2.0;
  }
  fail(ErrorCode::NoArcExists, "no arc joins the requested vertices");
}

MultiArc geodesicPath(const Surface& s, int p, int q, const SearchOptions& opts) {
  if (p == q) fail(ErrorCode::InternalError, "geodesicPath endpoints must differ");
  double L = 1e300;
  for (const Triangle& t : s.triangles())
    for (int k = 0; k < 3; ++k) L = std::min(L, t.sideLength(k));

  for (int round = 0; round < 64; ++round) {
    std::vector<Arc> arcs = enumerateArcs(s, L, -1, -1, opts);
    // Dijkstra over labeled classes; deterministic tie-breaks by arc key.
    int n = s.classCount();
    std::vector<double> dist(n, 1e300);
    std::vector<std::pair<int, bool>> via(n, {-1, false}); // arc index, reversed
    std::vector<int> prev(n, -1);
    using QE = std::pair<double, int>;
    std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
    dist[p] = 0.0;
    pq.push({0.0, p});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u] + 1e-15) continue;
      for (int ai = 0; ai < static_cast<int>(arcs.size()); ++ai) {
        const Arc& a = arcs[ai];
        for (int dir = 0; dir < (a.isLoop() ? 1 : 2); ++dir) {
          int from = dir == 0 ? a.sourceClass : a.targetClass;
          int to = dir == 0 ? a.targetClass : a.sourceClass;
          if (from != u) continue;
          double nd = d + a.length;
          if (nd < dist[to] - 1e-15) {
            dist[to] = nd;
            via[to] = {ai, dir == 1};
            prev[to] = u;
            pq.push({nd, to});
          }
        }
      }
    }
    if (dist[q] <= L) {
      MultiArc path;
      int cur = q;
      std::vector<std::pair<int, bool>> hops;
      while (cur != p) {
        hops.push_back(via[cur]);
        cur = prev[cur];
      }
      std::reverse(hops.begin(), hops.end());
      for (auto [ai, rev] : hops) {
        path.segments.push_back(arcs[ai]);
        path.reversedFlags.push_back(rev);
        path.length += arcs[ai].length;
      }
      return path;
    }
    L *= 2.0;
  }
  fail(ErrorCode::NoArcExists, "no geodesic path found");
}

} // namespace flatsurf
