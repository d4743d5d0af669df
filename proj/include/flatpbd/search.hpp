#pragma once

#include <cstdint>
#include <string>

#include "flatpbd/compose.hpp"
#include "flatpbd/design.hpp"

namespace flatpbd {

// Brute-force oracle request: find any GDD of the given type and block
// sizes on canonical points (groups contiguous, descending size).
struct SearchSpec {
  TypeMultiset type;
  SizeSet k;
  long long node_budget = 50'000'000;
  std::uint64_t seed = 0;  // nonzero seeds permute candidate order
};

enum class SearchStatus {
  kFound,
  kNotFoundProven,     // preflight infeasibility or exhausted search space
  kBudgetExhausted,
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::kBudgetExhausted;
  GddTemplate design;  // valid iff status == kFound
  std::string note;    // infeasibility reason / exhaustion note
  long long nodes = 0;
};

// Counting preflight: returns a nonempty reason when no design of this
// shape can exist (e.g. the cross-pair count is not a sum of per-block
// pair counts). An empty string means "not obviously impossible".
std::string infeasibility_reason(const TypeMultiset& type, const SizeSet& k);

// Exact-cover backtracking over cross pairs. Deterministic for a given
// spec; any found design passes verify_gdd before being returned.
SearchOutcome search_design(const SearchSpec& spec);

// Canonical group layout used by searched and catalogued templates:
// contiguous point ranges, sizes descending.
GroupedDesign canonical_group_layout(const TypeMultiset& type);

}  // namespace flatpbd
