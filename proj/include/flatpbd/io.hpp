#pragma once

#include <string>
#include <utility>
#include <vector>

#include "flatpbd/design.hpp"

namespace flatpbd {

// Ordered scalar metadata recorded in a design file's meta object.
// Insertion order is preserved on disk, so writers are byte-deterministic.
struct MetaEntry {
  std::string key;
  bool is_number = false;
  long long number = 0;
  std::string text;

  static MetaEntry num(std::string key, long long value) {
    return {std::move(key), true, value, {}};
  }
  static MetaEntry str(std::string key, std::string value) {
    return {std::move(key), false, 0, std::move(value)};
  }
};
using Meta = std::vector<MetaEntry>;

// On-disk document: a PBD, a GDD or a latin square plus metadata.
// Canonical form: fixed key order, block lists sorted lexicographically,
// 0-based indices. serialize(parse(bytes)) == bytes for canonical input.
struct DesignFile {
  int format_version = 1;
  std::string kind;                      // "pbd" | "gdd" | "latin"
  int v = 0;
  std::vector<std::vector<int>> groups;  // gdd only
  std::vector<Block> blocks;             // pbd / gdd
  std::vector<std::vector<int>> grid;    // latin only
  Meta meta;

  IncidenceDesign to_pbd() const;  // kind must be "pbd"
  GroupedDesign to_gdd() const;    // kind must be "gdd"
};

DesignFile make_pbd_file(const IncidenceDesign& design, Meta meta = {});
DesignFile make_gdd_file(const GroupedDesign& gdd, Meta meta = {});
DesignFile make_latin_file(const std::vector<std::vector<int>>& grid,
                           Meta meta = {});

// Canonical serializations: pretty (2-space indent, for files) and
// compact (one line, for bundles).
std::string serialize(const DesignFile& file);
std::string serialize_compact(const DesignFile& file);

// Strict parse: structural and semantic validation with a positioned
// error message. Throws ParseError.
DesignFile parse_design_file(const std::string& text);

// Latin square text form: first line n, then n rows of symbols.
std::string latin_to_text(const std::vector<std::vector<int>>& grid);
std::vector<std::vector<int>> latin_from_text(const std::string& text);

std::string meta_lookup(const Meta& meta, const std::string& key);  // "" if absent

}  // namespace flatpbd
