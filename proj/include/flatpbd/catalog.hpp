#pragma once

#include <string>
#include <vector>

#include "flatpbd/compose.hpp"
#include "flatpbd/design.hpp"

namespace flatpbd {

// The fixed designs every recursive construction consumes. Entries are
// generated by deterministic recipes (tools/catalog_gen), shipped frozen
// as an embedded bundle in the cli-io design format, and re-verified on
// load. All lookups are referentially transparent.

// Ingredient GDD for a weight type, exact match on (type, K).
// Throws NotInCatalog for unsupported types.
const GddTemplate& get_ingredient(const TypeMultiset& type, const SizeSet& k);

// Verified PBD(v, {3,4,5}) for 1 <= v <= 62. Throws NoDesignExists for
// v in {2, 6, 8}.
const IncidenceDesign& small_pbd(int v);
std::string small_pbd_provenance(int v);

// Idempotent latin square of order n in {3, 4, 5} (cell (i,i) = i).
// Throws NoDesignExists for n = 2; larger orders come from gluing.
const std::vector<std::vector<int>>& idempotent_square(int n);

// All ingredient templates, bundle order (for tests and export).
const std::vector<GddTemplate>& catalog_templates();
std::vector<int> catalog_pbd_orders();

// Replace the embedded bundle with an external file. Must be called
// before the first catalog access.
void set_catalog_override(const std::string& path);

// Re-runs every recipe and renders the canonical bundle (JSONL, one
// document per entry). tools/catalog_gen writes this to data/catalog.jsonl;
// tests pin the embedded bundle against it.
std::string render_catalog_bundle();

namespace detail {
const char* embedded_catalog_bundle();
}

}  // namespace flatpbd
