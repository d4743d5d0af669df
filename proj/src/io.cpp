#include "flatpbd/io.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "flatpbd/errors.hpp"

namespace flatpbd {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json meta_to_json(const Meta& meta) {
  ordered_json m = ordered_json::object();
  for (const MetaEntry& e : meta) {
    if (e.is_number)
      m[e.key] = e.number;
    else
      m[e.key] = e.text;
  }
  return m;
}

Meta meta_from_json(const ordered_json& m) {
  Meta meta;
  for (auto it = m.begin(); it != m.end(); ++it) {
    if (it.value().is_number_integer())
      meta.push_back(MetaEntry::num(it.key(), it.value().get<long long>()));
    else if (it.value().is_string())
      meta.push_back(MetaEntry::str(it.key(), it.value().get<std::string>()));
    else
      throw ParseError("meta." + it.key() + ": values must be integers or strings");
  }
  return meta;
}

std::vector<std::vector<int>> int_lists(const ordered_json& j,
                                        const std::string& where, int v) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  std::vector<std::vector<int>> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& row = j[i];
    if (!row.is_array())
      throw ParseError(where + "[" + std::to_string(i) + "]: expected an array");
    std::vector<int> cell;
    cell.reserve(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto& x = row[c];
      if (!x.is_number_integer())
        throw ParseError(where + "[" + std::to_string(i) + "][" +
                         std::to_string(c) + "]: expected an integer");
      long long value = x.get<long long>();
      if (value < 0 || value >= v)
        throw ParseError(where + "[" + std::to_string(i) + "][" +
                         std::to_string(c) + "]: index " + std::to_string(value) +
                         " out of range [0," + std::to_string(v) + ")");
      cell.push_back(static_cast<int>(value));
    }
    out.push_back(std::move(cell));
  }
  return out;
}

ordered_json to_json(const DesignFile& file) {
  ordered_json j = ordered_json::object();
  j["format_version"] = file.format_version;
  j["kind"] = file.kind;
  j["v"] = file.v;
  if (file.kind == "gdd") j["groups"] = file.groups;
  if (file.kind == "pbd" || file.kind == "gdd") j["blocks"] = file.blocks;
  if (file.kind == "latin") j["grid"] = file.grid;
  j["meta"] = meta_to_json(file.meta);
  return j;
}

void validate(const DesignFile& file) {
  if (file.format_version != 1)
    throw ParseError("format_version: only version 1 is supported");
  if (file.kind != "pbd" && file.kind != "gdd" && file.kind != "latin")
    throw ParseError("kind: expected pbd, gdd or latin");
  if (file.v < 0) throw ParseError("v: must be nonnegative");
  if (file.kind == "latin") {
    if (static_cast<int>(file.grid.size()) != file.v)
      throw ParseError("grid: expected " + std::to_string(file.v) + " rows");
    for (const auto& row : file.grid)
      if (static_cast<int>(row.size()) != file.v)
        throw ParseError("grid: expected " + std::to_string(file.v) +
                         " symbols per row");
  }
}

}  // namespace

IncidenceDesign DesignFile::to_pbd() const {
  if (kind != "pbd") throw PreconditionError("to_pbd: kind is " + kind);
  IncidenceDesign d;
  d.v = v;
  d.blocks = blocks;
  return d;
}

GroupedDesign DesignFile::to_gdd() const {
  if (kind != "gdd") throw PreconditionError("to_gdd: kind is " + kind);
  GroupedDesign g;
  g.v = v;
  g.groups = groups;
  g.blocks = blocks;
  g.group_of_points();  // validates the partition
  return g;
}

DesignFile make_pbd_file(const IncidenceDesign& design, Meta meta) {
  DesignFile f;
  f.kind = "pbd";
  f.v = design.v;
  f.blocks = design.blocks;
  for (Block& b : f.blocks) canonicalize_block(b);
  std::sort(f.blocks.begin(), f.blocks.end());
  f.meta = std::move(meta);
  return f;
}

DesignFile make_gdd_file(const GroupedDesign& gdd, Meta meta) {
  DesignFile f;
  f.kind = "gdd";
  f.v = gdd.v;
  f.groups = gdd.groups;
  for (auto& g : f.groups) std::sort(g.begin(), g.end());
  f.blocks = gdd.blocks;
  for (Block& b : f.blocks) canonicalize_block(b);
  std::sort(f.blocks.begin(), f.blocks.end());
  f.meta = std::move(meta);
  return f;
}

DesignFile make_latin_file(const std::vector<std::vector<int>>& grid, Meta meta) {
  DesignFile f;
  f.kind = "latin";
  f.v = static_cast<int>(grid.size());
  f.grid = grid;
  f.meta = std::move(meta);
  return f;
}

std::string serialize(const DesignFile& file) {
  return to_json(file).dump(2) + "\n";
}

std::string serialize_compact(const DesignFile& file) {
  return to_json(file).dump();
}

DesignFile parse_design_file(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON at byte ") +
                     std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError("top level: expected an object");

  static const std::vector<std::string> known = {
      "format_version", "kind", "v", "groups", "blocks", "grid", "meta"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw ParseError("unknown key: " + it.key());

  DesignFile f;
  if (!j.contains("format_version") || !j["format_version"].is_number_integer())
    throw ParseError("format_version: missing or not an integer");
  f.format_version = j["format_version"].get<int>();
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ParseError("kind: missing or not a string");
  f.kind = j["kind"].get<std::string>();
  if (!j.contains("v") || !j["v"].is_number_integer())
    throw ParseError("v: missing or not an integer");
  f.v = j["v"].get<int>();

  if (f.kind == "gdd") {
    if (!j.contains("groups")) throw ParseError("groups: required for kind gdd");
    f.groups = int_lists(j["groups"], "groups", f.v);
  } else if (j.contains("groups")) {
    throw ParseError("groups: only valid for kind gdd");
  }
  if (f.kind == "pbd" || f.kind == "gdd") {
    if (!j.contains("blocks")) throw ParseError("blocks: required");
    f.blocks = int_lists(j["blocks"], "blocks", f.v);
  } else if (j.contains("blocks")) {
    throw ParseError("blocks: only valid for kind pbd or gdd");
  }
  if (f.kind == "latin") {
    if (!j.contains("grid")) throw ParseError("grid: required for kind latin");
    f.grid = int_lists(j["grid"], "grid", f.v);
  } else if (j.contains("grid")) {
    throw ParseError("grid: only valid for kind latin");
  }
  if (j.contains("meta")) {
    if (!j["meta"].is_object()) throw ParseError("meta: expected an object");
    f.meta = meta_from_json(j["meta"]);
  }
  validate(f);
  if (f.kind == "gdd") {
    try {
      f.to_gdd();
    } catch (const PreconditionError& e) {
      throw ParseError(std::string("groups: ") + e.what());
    }
  }
  return f;
}

std::string latin_to_text(const std::vector<std::vector<int>>& grid) {
  std::ostringstream out;
  out << grid.size() << "\n";
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ' ';
      out << row[c];
    }
    out << "\n";
  }
  return out.str();
}

std::vector<std::vector<int>> latin_from_text(const std::string& text) {
  std::istringstream in(text);
  long long n = -1;
  if (!(in >> n) || n < 0) throw ParseError("latin text: bad order line");
  std::vector<std::vector<int>> grid(static_cast<std::size_t>(n),
                                     std::vector<int>(static_cast<std::size_t>(n)));
  for (long long r = 0; r < n; ++r)
    for (long long c = 0; c < n; ++c) {
      long long x;
      if (!(in >> x) || x < 0 || x >= n)
        throw ParseError("latin text: bad symbol at row " + std::to_string(r) +
                         ", column " + std::to_string(c));
      grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          static_cast<int>(x);
    }
  long long extra;
  if (in >> extra) throw ParseError("latin text: trailing data");
  return grid;
}

std::string meta_lookup(const Meta& meta, const std::string& key) {
  for (const MetaEntry& e : meta)
    if (e.key == key) return e.is_number ? std::to_string(e.number) : e.text;
  return "";
}

}  // namespace flatpbd
