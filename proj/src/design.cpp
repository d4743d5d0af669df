#include "flatpbd/design.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "flatpbd/errors.hpp"

namespace flatpbd {

TypeMultiset TypeMultiset::of_sizes(const std::vector<int>& sizes) {
  std::map<int, int> counts;
  for (int g : sizes) {
    if (g < 1) throw PreconditionError("TypeMultiset: group size < 1");
    ++counts[g];
  }
  TypeMultiset t;
  t.entries_.assign(counts.begin(), counts.end());
  return t;
}

int TypeMultiset::total_points() const {
  int total = 0;
  for (auto [g, u] : entries_) total += g * u;
  return total;
}

int TypeMultiset::group_count() const {
  int total = 0;
  for (auto [g, u] : entries_) total += u;
  return total;
}

std::vector<int> TypeMultiset::sizes_descending() const {
  std::vector<int> out;
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    out.insert(out.end(), static_cast<std::size_t>(it->second), it->first);
  return out;
}

std::string TypeMultiset::to_string() const {
  std::string s;
  for (auto [g, u] : entries_) {
    if (!s.empty()) s += ' ';
    s += std::to_string(g) + '^' + std::to_string(u);
  }
  return s;
}

TypeMultiset GroupedDesign::type() const {
  std::vector<int> sizes;
  sizes.reserve(groups.size());
  for (const auto& g : groups) sizes.push_back(static_cast<int>(g.size()));
  return TypeMultiset::of_sizes(sizes);
}

std::vector<int> GroupedDesign::group_of_points() const {
  std::vector<int> owner(static_cast<std::size_t>(v), -1);
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    if (groups[gi].empty()) throw PreconditionError("GroupedDesign: empty group");
    for (int p : groups[gi]) {
      if (p < 0 || p >= v || owner[static_cast<std::size_t>(p)] != -1)
        throw PreconditionError("GroupedDesign: groups do not partition points");
      owner[static_cast<std::size_t>(p)] = static_cast<int>(gi);
    }
  }
  for (int o : owner)
    if (o == -1) throw PreconditionError("GroupedDesign: uncovered point");
  return owner;
}

GroupedDesign as_gdd(const IncidenceDesign& design) {
  GroupedDesign g;
  g.v = design.v;
  g.groups.reserve(static_cast<std::size_t>(design.v));
  for (int p = 0; p < design.v; ++p) g.groups.push_back({p});
  g.blocks = design.blocks;
  return g;
}

IncidenceDesign as_pbd(const GroupedDesign& gdd) {
  IncidenceDesign d;
  d.v = gdd.v;
  d.blocks = gdd.blocks;
  return d;
}

void canonicalize_block(Block& block) {
  std::sort(block.begin(), block.end());
  if (std::adjacent_find(block.begin(), block.end()) != block.end())
    throw PreconditionError("block has a repeated point");
}

SizeSet sizes(std::initializer_list<int> ks) {
  SizeSet s(ks);
  std::sort(s.begin(), s.end());
  return s;
}

std::string sizes_to_string(const SizeSet& k) {
  std::string s;
  for (int x : k) {
    if (!s.empty()) s += ',';
    s += std::to_string(x);
  }
  return s;
}

}  // namespace flatpbd
