#pragma once

#include <array>
#include <vector>

#include "flatsurf/arc.hpp"
#include "flatsurf/surface.hpp"

namespace flatsurf {

// Provenance of a refined triangle side: either a sub-interval of a parent
// triangle side or an edge internal to a parent triangle.
struct SideProvenance {
  int parentSide = -1; // -1 when internal
  double u0 = 0.0, u1 = 0.0;
};

// A surface obtained by subdividing triangles of a parent surface in place
// (child charts reuse parent chart coordinates).
struct Refinement {
  Surface refined;
  std::vector<int> parentTri;                        // per refined triangle
  std::vector<std::array<SideProvenance, 3>> sides;  // per refined triangle
  // Parent corner index whose chart position this refined corner occupies,
  // or -1; carries wedges between the two surfaces.
  std::vector<std::array<int, 3>> parentCorner;
};

// Identity refinement (every triangle kept as is).
Refinement identityRefinement(const Surface& s);

// Splits one triangle at a barycentric point: 3 children for an interior
// point, 2+2 children (both sides of the gluing) for an edge point.
Refinement refineAtPoint(const Surface& s, int tri, double b0, double b1, double b2);

// One round of barycentric subdivision (6 children per triangle).
Refinement barycentricRefine(const Surface& s);

// A path of arcs embedded into the mesh: every crossed triangle is subdivided
// along the chords so the path becomes a chain of mesh edges.
struct EmbeddedArc {
  Arc arc;                        // on the parent surface
  std::vector<int> chainGluings;  // refined gluing indices along the arc
  std::vector<SideRef> boundaryRuns; // boundary portions (not cut)
};

struct PathEmbedding {
  Refinement refinement;
  std::vector<EmbeddedArc> arcs;
};

// Subdivides the surface so that each given arc becomes a chain of mesh
// edges. The arcs must be pairwise disjoint except at endpoints.
PathEmbedding embedPath(const Surface& s, const std::vector<Arc>& arcs);

// Result of cutting along embedded arcs: the refined surface with the chain
// gluings removed, split into connected components.
struct CutRecord {
  PathEmbedding embedding;
  std::vector<Surface> children;
  std::vector<std::vector<int>> childTriToRefined; // per child, per triangle
  std::vector<std::array<int, 2>> refinedTriChild; // per refined tri: (child, index)

  struct Seam {
    int arcIndex = -1;
    int refinedGluing = -1;
    int childA = -1, triA = -1, sideA = -1; // copy on side A
    int childB = -1, triB = -1, sideB = -1; // copy on side B
  };
  std::vector<Seam> seams;
};

// Cuts the surface along every interior chain edge of the embedding.
// Labels of the children are the copies of labeled parent points.
CutRecord cutAlong(const PathEmbedding& embedding);

// Reassembles the refined surface from the (possibly modified) children.
// Fails with SeamMismatch if seam side lengths were altered.
Surface reglue(const CutRecord& record);

// Maps an arc living on a child of the cut back to the parent surface the
// embedding started from.
Arc pullBackArc(const Surface& parent, const CutRecord& record, int childIndex,
                const Arc& childArc);

// Maps a chain step list on the refined surface down to the parent surface.
std::vector<ChainStep> pullBackChain(const Surface& parent, const Refinement& ref,
                                     CornerRef refinedWedge, const std::vector<ChainStep>& chain,
                                     CornerRef& parentWedgeOut);

} // namespace flatsurf
