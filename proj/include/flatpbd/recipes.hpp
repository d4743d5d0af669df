#pragma once

#include <string>
#include <vector>

#include "flatpbd/compose.hpp"
#include "flatpbd/design.hpp"
#include "flatpbd/geometry.hpp"

namespace flatpbd {

// TD(k,n) = GDD(n^k, {k}). Field-backed for n in {2,3,4,5,7,8} (then
// k <= n+1), plain modular arithmetic for larger primes (then k <= n).
GroupedDesign transversal_design(int k, int n);

// Truncates group `gi` of a GDD to its first `size` points (empty groups
// are dropped by truncate()).
GroupedDesign truncate_group(const GroupedDesign& gdd, int gi, int size);

// Relabels to the canonical template layout: groups descending by size on
// contiguous points, blocks sorted. Verifies against `k` and throws on
// failure.
GddTemplate canonicalize_template(const GroupedDesign& gdd, const SizeSet& k,
                                  const std::string& provenance);

// Parallel classes of an affine plane AG_2(q): lines grouped by direction,
// classes in lexicographic direction order.
std::vector<std::vector<int>> affine_parallel_classes(const Geometry& ag);

// AG_2(q) with `s` parallel classes each extended by a fresh point, plus
// (for s >= 3) one block holding the fresh points. PBD(q^2 + s).
IncidenceDesign extend_affine_plane(const Geometry& ag, int s);

}  // namespace flatpbd
