#pragma once

#include <string>
#include <utility>
#include <vector>

namespace flatpbd {

// Blocks are sorted vectors of distinct point indices in [0, v).
using Block = std::vector<int>;

// A point set with a block family: the pairwise-balanced-design role.
// Balance itself is a verified property (see verify.hpp), not an
// invariant of the struct.
struct IncidenceDesign {
  int v = 0;
  std::vector<Block> blocks;
  // Optional human-readable point labels (geometric coordinates for the
  // PG/AG builders). Empty when not applicable; never serialized.
  std::vector<std::string> labels;
};

// Group sizes with multiplicities, the "exponential notation" g^u.
// Canonical order: ascending by group size.
class TypeMultiset {
 public:
  TypeMultiset() = default;

  // From a list of group sizes (any order).
  static TypeMultiset of_sizes(const std::vector<int>& sizes);

  const std::vector<std::pair<int, int>>& entries() const { return entries_; }
  int total_points() const;
  int group_count() const;
  // Flattened descending size list, matching canonical template group order.
  std::vector<int> sizes_descending() const;

  std::string to_string() const;  // e.g. "1^2 3^3"

  friend bool operator==(const TypeMultiset& a, const TypeMultiset& b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator<(const TypeMultiset& a, const TypeMultiset& b) {
    return a.entries_ < b.entries_;
  }

 private:
  std::vector<std::pair<int, int>> entries_;  // (size, multiplicity), size asc
};

// Points partitioned into groups plus a block family: the
// group-divisible-design role.
struct GroupedDesign {
  int v = 0;
  std::vector<std::vector<int>> groups;  // partition of [0, v), cells sorted
  std::vector<Block> blocks;

  TypeMultiset type() const;
  // Group index per point; throws if groups do not partition [0, v).
  std::vector<int> group_of_points() const;
};

// A PBD is a GDD with singleton groups.
GroupedDesign as_gdd(const IncidenceDesign& design);
IncidenceDesign as_pbd(const GroupedDesign& gdd);  // forgets the partition

// Canonicalizes a block in place (sorts, rejects duplicates).
void canonicalize_block(Block& block);

// Set of allowed block sizes; kept sorted.
using SizeSet = std::vector<int>;
SizeSet sizes(std::initializer_list<int> ks);
std::string sizes_to_string(const SizeSet& k);

}  // namespace flatpbd
