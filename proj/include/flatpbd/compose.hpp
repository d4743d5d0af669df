#pragma once

#include <functional>
#include <map>
#include <vector>

#include "flatpbd/design.hpp"

namespace flatpbd {

// Verified ingredient design for a weight type: groups and blocks on
// canonical points 0..v-1, groups in descending size order.
struct GddTemplate {
  TypeMultiset type;
  SizeSet k;
  GroupedDesign gdd;
  std::string provenance;  // recipe name or "search"
};

// Point -> nonnegative weight, defined on every master point.
using WeightAssignment = std::vector<int>;

// Master point -> contiguous range [first, first + length) of output
// points. Ranges within a master group are adjacent, so an output group
// is the union of its points' ranges.
struct ExpansionMap {
  struct Range {
    int first = 0;
    int length = 0;
  };
  std::vector<Range> ranges;
  int output_points = 0;
};

using IngredientProvider = std::function<const GddTemplate&(const TypeMultiset&)>;

// Construction "filling groups": adds, per group, a relabelled pairwise
// balanced design on the group (plus_point = false) or on the group plus
// one shared new point (plus_point = true, output has v+1 points).
// `fillers` maps a group size g to a PBD on g (or g+1) points; size-1
// groups need no filler without the extra point.
IncidenceDesign fill_groups(const GroupedDesign& gdd,
                            const std::map<int, IncidenceDesign>& fillers,
                            bool plus_point);

// Wilson's fundamental construction: every master point is replaced by
// weight(point) copies, every master block by a relabelled ingredient GDD
// whose type matches the block's surviving weights (zero-weight points
// are dropped; blocks with at most one surviving group contribute
// nothing). Ingredient groups align with the expanded master points and
// are not emitted as blocks.
std::pair<GroupedDesign, ExpansionMap> fundamental_construction(
    const GroupedDesign& master, const WeightAssignment& weights,
    const IngredientProvider& provider);

// The weight {0,1} special case: restrict blocks to `keep`, drop blocks
// with fewer than two surviving points, renumber. Legality of the result
// is the caller's concern.
IncidenceDesign truncate(const IncidenceDesign& design,
                         const std::vector<int>& keep);
GroupedDesign truncate(const GroupedDesign& gdd, const std::vector<int>& keep);

}  // namespace flatpbd
