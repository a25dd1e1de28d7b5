#pragma once

#include <optional>
#include <vector>

#include "flatsurf/arc.hpp"
#include "flatsurf/surface.hpp"

namespace flatsurf {

struct SearchOptions {
  // Cap on developed triangles per source wedge; exceeding it raises
  // SearchBudgetExceeded instead of truncating silently.
  long long budgetPerWedge = 1'000'000;
  int threads = 1;
};

// All arcs of length <= maxLength (within tolerance), optionally restricted
// to the unordered endpoint pair {from, to}. Arcs are unoriented, de-duplicated
// across both traversal directions and sorted by (length, canonical key).
std::vector<Arc> enumerateArcs(const Surface& s, double maxLength, int fromClass = -1,
                               int toClass = -1, const SearchOptions& opts = {});

struct SpectrumRow {
  double length = 0.0;
  int multiplicity = 0;
  Arc witness;
};

// Distinct arc lengths <= maxLength with multiplicities.
std::vector<SpectrumRow> rawLengthSpectrum(const Surface& s, double maxLength,
                                           const SearchOptions& opts = {});

// Shortest arc joining p and q (p == q allowed); ties broken by canonical key.
Arc shortestArc(const Surface& s, int p, int q, const SearchOptions& opts = {});

// A geodesic path between two labeled points realized as a chain of arcs
// meeting the turning condition at intermediate labeled points.
struct MultiArc {
  std::vector<Arc> segments;
  std::vector<bool> reversedFlags; // per segment: traversed target->source
  double length = 0.0;

  int classAt(int junction) const; // 0..segments.size()
};

// Globally length-minimizing path from p to q (distinct labels).
MultiArc geodesicPath(const Surface& s, int p, int q, const SearchOptions& opts = {});

} // namespace flatsurf
