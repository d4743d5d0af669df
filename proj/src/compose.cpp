#include "flatpbd/compose.hpp"

#include <algorithm>
#include <string>

#include "flatpbd/errors.hpp"

namespace flatpbd {
namespace {

// Renumbering map for a kept subset; -1 for dropped points.
std::vector<int> relabel_map(int v, const std::vector<int>& keep) {
  std::vector<char> kept(static_cast<std::size_t>(v), 0);
  for (int p : keep) {
    if (p < 0 || p >= v) throw PreconditionError("truncate: point out of range");
    kept[static_cast<std::size_t>(p)] = 1;
  }
  std::vector<int> map(static_cast<std::size_t>(v), -1);
  int next = 0;
  for (int p = 0; p < v; ++p)
    if (kept[static_cast<std::size_t>(p)]) map[static_cast<std::size_t>(p)] = next++;
  return map;
}

std::vector<Block> truncate_blocks(const std::vector<Block>& blocks,
                                   const std::vector<int>& map) {
  std::vector<Block> out;
  for (const Block& block : blocks) {
    Block nb;
    for (int p : block)
      if (map[static_cast<std::size_t>(p)] >= 0)
        nb.push_back(map[static_cast<std::size_t>(p)]);
    if (nb.size() >= 2) out.push_back(std::move(nb));
  }
  return out;
}

}  // namespace

IncidenceDesign fill_groups(const GroupedDesign& gdd,
                            const std::map<int, IncidenceDesign>& fillers,
                            bool plus_point) {
  IncidenceDesign out;
  out.v = gdd.v + (plus_point ? 1 : 0);
  out.blocks = gdd.blocks;
  const int infinity = gdd.v;

  for (const auto& group : gdd.groups) {
    const int g = static_cast<int>(group.size());
    if (g == 1 && !plus_point) continue;  // nothing to fill
    const int want = g + (plus_point ? 1 : 0);
    auto it = fillers.find(g);
    if (it == fillers.end())
      throw PreconditionError("fill_groups: no filler for group size " +
                              std::to_string(g));
    const IncidenceDesign& filler = it->second;
    if (filler.v != want)
      throw PreconditionError("fill_groups: filler for group size " +
                              std::to_string(g) + " has " +
                              std::to_string(filler.v) + " points, expected " +
                              std::to_string(want));
    // Filler points 0..g-1 map onto the group in index order; the last
    // filler point becomes the shared new point in the plus_point case.
    for (const Block& fb : filler.blocks) {
      Block nb;
      nb.reserve(fb.size());
      for (int p : fb)
        nb.push_back(p < g ? group[static_cast<std::size_t>(p)] : infinity);
      canonicalize_block(nb);
      out.blocks.push_back(std::move(nb));
    }
  }
  return out;
}

std::pair<GroupedDesign, ExpansionMap> fundamental_construction(
    const GroupedDesign& master, const WeightAssignment& weights,
    const IngredientProvider& provider) {
  if (static_cast<int>(weights.size()) != master.v)
    throw PreconditionError("fundamental_construction: weight for every point");
  for (int w : weights)
    if (w < 0) throw PreconditionError("fundamental_construction: negative weight");

  // Output points, allocated contiguously group by group (WFC output type:
  // the new group sizes are the weight sums over the old groups).
  ExpansionMap expansion;
  expansion.ranges.resize(static_cast<std::size_t>(master.v));
  GroupedDesign out;
  int next = 0;
  for (const auto& group : master.groups) {
    std::vector<int> new_group;
    for (int p : group) {
      int w = weights[static_cast<std::size_t>(p)];
      expansion.ranges[static_cast<std::size_t>(p)] = {next, w};
      for (int c = 0; c < w; ++c) new_group.push_back(next + c);
      next += w;
    }
    if (!new_group.empty()) out.groups.push_back(std::move(new_group));
  }
  out.v = next;
  expansion.output_points = next;

  for (const Block& block : master.blocks) {
    // Surviving points of the block, heaviest first (ties by index), to
    // pair positionally with the template's descending group sizes.
    std::vector<int> survivors;
    for (int p : block)
      if (weights[static_cast<std::size_t>(p)] > 0) survivors.push_back(p);
    if (survivors.size() <= 1) continue;
    std::stable_sort(survivors.begin(), survivors.end(), [&](int a, int b) {
      return weights[static_cast<std::size_t>(a)] > weights[static_cast<std::size_t>(b)];
    });

    std::vector<int> block_weights;
    block_weights.reserve(survivors.size());
    for (int p : survivors) block_weights.push_back(weights[static_cast<std::size_t>(p)]);
    const GddTemplate& ingredient = provider(TypeMultiset::of_sizes(block_weights));

    if (ingredient.gdd.groups.size() != survivors.size())
      throw InternalError("fundamental_construction: ingredient group count "
                          "does not match block weights");
    // template point -> output point
    std::vector<int> point_map(static_cast<std::size_t>(ingredient.gdd.v), -1);
    for (std::size_t gi = 0; gi < survivors.size(); ++gi) {
      const auto& tgroup = ingredient.gdd.groups[gi];
      const ExpansionMap::Range range =
          expansion.ranges[static_cast<std::size_t>(survivors[gi])];
      if (static_cast<int>(tgroup.size()) != range.length)
        throw InternalError(
            "fundamental_construction: ingredient type mismatch for " +
            ingredient.type.to_string());
      for (std::size_t c = 0; c < tgroup.size(); ++c)
        point_map[static_cast<std::size_t>(tgroup[c])] =
            range.first + static_cast<int>(c);
    }
    for (const Block& tb : ingredient.gdd.blocks) {
      Block nb;
      nb.reserve(tb.size());
      for (int p : tb) nb.push_back(point_map[static_cast<std::size_t>(p)]);
      canonicalize_block(nb);
      out.blocks.push_back(std::move(nb));
    }
  }
  return {std::move(out), std::move(expansion)};
}

IncidenceDesign truncate(const IncidenceDesign& design,
                         const std::vector<int>& keep) {
  std::vector<int> map = relabel_map(design.v, keep);
  IncidenceDesign out;
  out.v = 0;
  for (int m : map)
    if (m >= 0) ++out.v;
  out.blocks = truncate_blocks(design.blocks, map);
  if (!design.labels.empty()) {
    out.labels.resize(static_cast<std::size_t>(out.v));
    for (int p = 0; p < design.v; ++p)
      if (map[static_cast<std::size_t>(p)] >= 0)
        out.labels[static_cast<std::size_t>(map[static_cast<std::size_t>(p)])] =
            design.labels[static_cast<std::size_t>(p)];
  }
  return out;
}

GroupedDesign truncate(const GroupedDesign& gdd, const std::vector<int>& keep) {
  std::vector<int> map = relabel_map(gdd.v, keep);
  GroupedDesign out;
  out.v = 0;
  for (int m : map)
    if (m >= 0) ++out.v;
  for (const auto& group : gdd.groups) {
    std::vector<int> ng;
    for (int p : group)
      if (map[static_cast<std::size_t>(p)] >= 0)
        ng.push_back(map[static_cast<std::size_t>(p)]);
    if (!ng.empty()) out.groups.push_back(std::move(ng));
  }
  out.blocks = truncate_blocks(gdd.blocks, map);
  return out;
}

}  // namespace flatpbd
