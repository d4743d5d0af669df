#include "flatpbd/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>

#include "flatpbd/errors.hpp"
#include "flatpbd/flats.hpp"
#include "flatpbd/geometry.hpp"
#include "flatpbd/io.hpp"
#include "flatpbd/recipes.hpp"
#include "flatpbd/search.hpp"
#include "flatpbd/verify.hpp"

namespace flatpbd {
namespace {

const SizeSet& k345() {
  static const SizeSet k = sizes({3, 4, 5});
  return k;
}
const SizeSet& k34() {
  static const SizeSet k = sizes({3, 4});
  return k;
}

constexpr long long kRecipeSearchBudget = 20'000'000;

struct CatalogData {
  std::vector<GddTemplate> templates;
  std::map<std::string, std::size_t> template_index;
  std::map<int, IncidenceDesign> pbds;
  std::map<int, std::string> pbd_provenance;
  std::map<int, std::vector<std::vector<int>>> squares;
  std::map<int, std::string> square_provenance;
};

std::string template_key(const TypeMultiset& type, const SizeSet& k) {
  return type.to_string() + " | " + sizes_to_string(k);
}

SizeSet parse_sizes(const std::string& text) {
  SizeSet k;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) k.push_back(std::stoi(item));
  std::sort(k.begin(), k.end());
  return k;
}

bool is_idempotent_latin(const std::vector<std::vector<int>>& grid) {
  const int n = static_cast<int>(grid.size());
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(grid[static_cast<std::size_t>(i)].size()) != n)
      return false;
    if (grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] != i)
      return false;
    std::vector<char> row(static_cast<std::size_t>(n), 0),
        col(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < n; ++j) {
      int r = grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      int c = grid[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (r < 0 || r >= n || c < 0 || c >= n) return false;
      if (row[static_cast<std::size_t>(r)] || col[static_cast<std::size_t>(c)])
        return false;
      row[static_cast<std::size_t>(r)] = col[static_cast<std::size_t>(c)] = 1;
    }
  }
  return true;
}

// ---------------------------------------------------------------------
// Ingredient recipes: the fixed small GDDs the inflation routes consume.
// ---------------------------------------------------------------------

GddTemplate single_block_template(int size, const SizeSet& k) {
  GroupedDesign g;
  g.v = size;
  for (int p = 0; p < size; ++p) g.groups.push_back({p});
  Block all(static_cast<std::size_t>(size));
  std::iota(all.begin(), all.end(), 0);
  g.blocks.push_back(std::move(all));
  return canonicalize_template(g, k, "single-block");
}

// Fano plane with one line as the group: type 1^4 3^1.
GddTemplate fano_line_template() {
  Geometry pg = build_projective_space(2, 2);
  const Block group = pg.lines.front();
  GroupedDesign g;
  g.v = pg.v();
  g.groups.push_back(group);
  for (int p = 0; p < g.v; ++p)
    if (!std::binary_search(group.begin(), group.end(), p)) g.groups.push_back({p});
  for (const Block& line : pg.lines)
    if (line != group) g.blocks.push_back(line);
  return canonicalize_template(g, k345(), "fano-line");
}

// AG_2(3) with two lines of one parallel class as groups: type 1^3 3^2.
// The third class line stays a block, covering the singleton pairs.
GddTemplate affine_class_template() {
  Geometry ag = build_affine_space(2, 3);
  auto classes = affine_parallel_classes(ag);
  int l1 = classes[0][0], l2 = classes[0][1];
  GroupedDesign g;
  g.v = ag.v();
  g.groups.push_back(ag.lines[static_cast<std::size_t>(l1)]);
  g.groups.push_back(ag.lines[static_cast<std::size_t>(l2)]);
  std::vector<char> grouped(static_cast<std::size_t>(g.v), 0);
  for (int p : g.groups[0]) grouped[static_cast<std::size_t>(p)] = 1;
  for (int p : g.groups[1]) grouped[static_cast<std::size_t>(p)] = 1;
  for (int p = 0; p < g.v; ++p)
    if (!grouped[static_cast<std::size_t>(p)]) g.groups.push_back({p});
  for (std::size_t li = 0; li < ag.lines.size(); ++li)
    if (static_cast<int>(li) != l1 && static_cast<int>(li) != l2)
      g.blocks.push_back(ag.lines[li]);
  return canonicalize_template(g, k345(), "affine-class");
}

// {3}-GDD of type 3^5 on Z_15: groups {i, i+5, i+10}, base blocks
// {0,1,4} and {0,2,8} developed mod 15 (difference classes 1,3,4 and
// 2,6,7; the group differences 5,10 stay uncovered).
GddTemplate z15_template() {
  GroupedDesign g;
  g.v = 15;
  for (int i = 0; i < 5; ++i) g.groups.push_back({i, i + 5, i + 10});
  for (int s = 0; s < 15; ++s) {
    g.blocks.push_back(Block{s, (s + 1) % 15, (s + 4) % 15});
    g.blocks.push_back(Block{s, (s + 2) % 15, (s + 8) % 15});
  }
  for (Block& b : g.blocks) canonicalize_block(b);
  return canonicalize_template(g, k345(), "z15-difference-family");
}

// Type 4^i 5^(5-i): truncate TD(5,5) along the conic {(g, g^2)}, which
// meets every block in at most two points, so block sizes stay >= 3.
GddTemplate heavy_template(int i) {
  if (i == 0)
    return canonicalize_template(transversal_design(5, 5), k345(), "TD(5,5)");
  if (i == 5)
    return canonicalize_template(transversal_design(5, 4), k345(),
                                 "punctured-plane TD(5,4)");
  GroupedDesign td = transversal_design(5, 5);
  std::vector<char> drop(static_cast<std::size_t>(td.v), 0);
  for (int gi = 0; gi < i; ++gi) drop[static_cast<std::size_t>(gi * 5 + (gi * gi) % 5)] = 1;
  std::vector<int> keep;
  for (int p = 0; p < td.v; ++p)
    if (!drop[static_cast<std::size_t>(p)]) keep.push_back(p);
  return canonicalize_template(truncate(td, keep), k345(),
                               "conic-truncation TD(5,5) i=" + std::to_string(i));
}

// Types 3^4 4^1 (remove 4 points) and 3^3 4^2 (remove 3): truncate one
// point from distinct groups of TD(5,4) along a cap, so no block loses
// three points.
GddTemplate cap_truncation_template(int removals) {
  GroupedDesign td = transversal_design(5, 4);
  PairIndex pairs(td.v, td.blocks);
  std::vector<int> chosen;
  for (int gi = 0; gi < removals; ++gi) {
    bool placed = false;
    for (int x = gi * 4; x < gi * 4 + 4 && !placed; ++x) {
      bool ok = true;
      for (std::size_t a = 0; a < chosen.size() && ok; ++a)
        for (std::size_t b = a + 1; b < chosen.size() && ok; ++b) {
          const Block& block =
              td.blocks[static_cast<std::size_t>(pairs.block_at(chosen[a], chosen[b]))];
          ok = !std::binary_search(block.begin(), block.end(), x);
        }
      if (ok) {
        chosen.push_back(x);
        placed = true;
      }
    }
    if (!placed) throw InternalError("cap_truncation_template: no cap point");
  }
  std::vector<char> drop(static_cast<std::size_t>(td.v), 0);
  for (int p : chosen) drop[static_cast<std::size_t>(p)] = 1;
  std::vector<int> keep;
  for (int p = 0; p < td.v; ++p)
    if (!drop[static_cast<std::size_t>(p)]) keep.push_back(p);
  return canonicalize_template(truncate(td, keep), k345(),
                               "cap-truncation TD(5,4) r=" + std::to_string(removals));
}

// Type 1^1 3^3 with K = {3,4}: TD(3,3) plus a new point on one parallel
// class.
GddTemplate td33_plus_point_template() {
  GroupedDesign g;
  g.v = 10;
  for (int f = 0; f < 3; ++f) g.groups.push_back({3 * f, 3 * f + 1, 3 * f + 2});
  g.groups.push_back({9});
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      Block block{a, 3 + (a + b) % 3, 6 + (a + 2 * b) % 3};
      if (b == 0) block.push_back(9);
      canonicalize_block(block);
      g.blocks.push_back(std::move(block));
    }
  }
  return canonicalize_template(g, k34(), "TD(3,3)+point");
}

GddTemplate searched_template(const TypeMultiset& type, const SizeSet& k) {
  SearchSpec spec;
  spec.type = type;
  spec.k = k;
  spec.node_budget = kRecipeSearchBudget;
  spec.seed = 0;
  SearchOutcome outcome = search_design(spec);
  if (outcome.status != SearchStatus::kFound)
    throw InternalError("catalog recipe search failed for type " +
                        type.to_string() + ": " + outcome.note);
  return outcome.design;
}

// ---------------------------------------------------------------------
// Small PBDs, v <= 62.
// ---------------------------------------------------------------------

IncidenceDesign single_block_pbd(int v) {
  IncidenceDesign d;
  d.v = v;
  if (v >= 2) {
    Block all(static_cast<std::size_t>(v));
    std::iota(all.begin(), all.end(), 0);
    d.blocks.push_back(std::move(all));
  }
  return d;
}

// TD(5,n) with the last two groups truncated to s and t points.
GroupedDesign td5_truncated(int n, int s, int t) {
  GroupedDesign td = transversal_design(5, n);
  std::vector<int> keep;
  for (int p = 0; p < 3 * n; ++p) keep.push_back(p);
  for (int x = 0; x < s; ++x) keep.push_back(3 * n + x);
  for (int x = 0; x < t; ++x) keep.push_back(4 * n + x);
  return truncate(td, keep);
}

struct TdFillRecipe {
  int n, s, t;
};

// v -> TD(5,n) truncate-and-fill parameters. Every filler order is
// available (built at a smaller v, never 2, 6 or 8).
const std::map<int, TdFillRecipe>& td_fill_recipes() {
  static const std::map<int, TdFillRecipe> recipes = {
      {12, {4, 0, 0}}, {13, {4, 0, 1}}, {14, {4, 1, 1}}, {18, {5, 0, 3}},
      {19, {4, 3, 4}}, {20, {4, 4, 4}}, {22, {5, 3, 4}}, {23, {5, 3, 5}},
      {24, {5, 4, 5}}, {26, {7, 1, 4}}, {28, {7, 0, 7}}, {29, {7, 1, 7}},
      {30, {7, 4, 5}}, {32, {7, 4, 7}}, {33, {7, 5, 7}}, {34, {11, 0, 1}},
      {35, {7, 7, 7}}, {36, {11, 0, 3}}, {37, {11, 0, 4}}, {38, {11, 0, 5}},
      {39, {11, 1, 5}}, {41, {11, 1, 7}}, {42, {11, 0, 9}}, {43, {11, 0, 10}},
      {44, {11, 0, 11}}, {45, {11, 1, 11}}, {46, {11, 3, 10}}, {47, {11, 3, 11}},
      {48, {11, 4, 11}}, {49, {11, 5, 11}}, {50, {11, 7, 10}}, {51, {11, 7, 11}},
      {52, {11, 9, 10}}, {53, {11, 9, 11}}, {54, {11, 10, 11}}, {55, {11, 11, 11}},
      {56, {13, 4, 13}}, {57, {13, 5, 13}}, {58, {13, 9, 10}}, {59, {13, 7, 13}},
      {60, {13, 10, 11}}, {61, {13, 9, 13}}, {62, {13, 10, 13}},
  };
  return recipes;
}

struct GeometryRecipe {
  bool projective;
  int d, q;
};

const std::map<int, GeometryRecipe>& geometry_recipes() {
  static const std::map<int, GeometryRecipe> recipes = {
      {7, {true, 2, 2}},  {9, {false, 2, 3}},  {13, {true, 2, 3}},
      {15, {true, 3, 2}}, {16, {false, 2, 4}}, {21, {true, 2, 4}},
      {25, {false, 2, 5}}, {27, {false, 3, 3}}, {31, {true, 4, 2}},
      {40, {true, 3, 3}},
  };
  return recipes;
}

std::map<int, IncidenceDesign> fillers_for(const CatalogData& data,
                                           const GroupedDesign& gdd,
                                           int plus = 0) {
  std::map<int, IncidenceDesign> fillers;
  for (const auto& group : gdd.groups) {
    int g = static_cast<int>(group.size());
    if (g == 1 && plus == 0) continue;
    fillers[g] = data.pbds.at(g + plus);
  }
  return fillers;
}

std::pair<IncidenceDesign, std::string> build_small_pbd(const CatalogData& data,
                                                        int v) {
  if (v == 1 || v == 3 || v == 4 || v == 5)
    return {single_block_pbd(v), "trivial"};
  if (auto it = geometry_recipes().find(v); it != geometry_recipes().end()) {
    const auto& r = it->second;
    Geometry g = r.projective ? build_projective_space(r.d, r.q)
                              : build_affine_space(r.d, r.q);
    IncidenceDesign d = g.design();
    d.labels.clear();
    return {std::move(d), std::string(r.projective ? "PG(" : "AG(") +
                              std::to_string(r.d) + "," + std::to_string(r.q) + ")"};
  }
  if (v == 10) {
    GroupedDesign td = transversal_design(3, 3);
    return {fill_groups(td, fillers_for(data, td, 1), true), "TD(3,3)+point"};
  }
  if (v == 11) {
    SearchSpec spec;
    spec.type = TypeMultiset::of_sizes(std::vector<int>(11, 1));
    spec.k = k345();
    spec.node_budget = kRecipeSearchBudget;
    SearchOutcome outcome = search_design(spec);
    if (outcome.status != SearchStatus::kFound)
      throw InternalError("PBD(11) search failed: " + outcome.note);
    return {as_pbd(outcome.design.gdd), "search"};
  }
  if (v == 17)
    return {extend_affine_plane(build_affine_space(2, 4), 1), "AG(2,4)+1"};
  if (auto it = td_fill_recipes().find(v); it != td_fill_recipes().end()) {
    const auto& r = it->second;
    GroupedDesign gdd = td5_truncated(r.n, r.s, r.t);
    return {fill_groups(gdd, fillers_for(data, gdd), false),
            "fill TD(5," + std::to_string(r.n) + ")-" + std::to_string(r.s) +
                "-" + std::to_string(r.t)};
  }
  if (v == 14) {
    const GddTemplate& aux =
        data.templates[data.template_index.at(
            template_key(TypeMultiset::of_sizes({3, 3, 3, 4}), k34()))];
    return {fill_groups(aux.gdd, fillers_for(data, aux.gdd, 1), true),
            "fill 3^3 4^1 + point"};
  }
  throw InternalError("no small PBD recipe for v = " + std::to_string(v));
}

// ---------------------------------------------------------------------
// Catalog assembly, bundle render, bundle load.
// ---------------------------------------------------------------------

void add_template(CatalogData& data, GddTemplate tpl) {
  std::string key = template_key(tpl.type, tpl.k);
  if (data.template_index.count(key))
    throw InternalError("duplicate catalog template " + key);
  data.template_index[key] = data.templates.size();
  data.templates.push_back(std::move(tpl));
}

CatalogData build_catalog_from_recipes() {
  CatalogData data;

  // K = {3,4,5}: the 1^i 3^(5-i) family.
  add_template(data, single_block_template(5, k345()));
  add_template(data, fano_line_template());
  add_template(data, affine_class_template());
  add_template(data, searched_template(TypeMultiset::of_sizes({1, 1, 3, 3, 3}), k345()));
  add_template(data, searched_template(TypeMultiset::of_sizes({1, 3, 3, 3, 3}), k345()));
  add_template(data, z15_template());
  // K = {3,4,5}: the 4^i 5^(5-i) family.
  for (int i = 0; i <= 5; ++i) add_template(data, heavy_template(i));
  // K = {3,4,5}: auxiliaries for the even-top fallback.
  add_template(data, cap_truncation_template(4));  // 3^4 4^1
  add_template(data, cap_truncation_template(3));  // 3^3 4^2
  // K = {3,4}: the 1^i 3^(4-i) family plus the punctured-line auxiliary.
  add_template(data, single_block_template(4, k34()));
  add_template(data, td33_plus_point_template());
  add_template(data, canonicalize_template(transversal_design(4, 3), k34(), "TD(4,3)"));
  add_template(data, searched_template(TypeMultiset::of_sizes({3, 3, 3, 4}), k34()));

  for (int v = 1; v <= 62; ++v) {
    if (v == 2 || v == 6 || v == 8) continue;
    auto [design, provenance] = build_small_pbd(data, v);
    VerificationReport report = verify_pbd(design, k345());
    if (!report.passed)
      throw InternalError("small PBD recipe v=" + std::to_string(v) +
                          " failed verification: " + report.summary());
    data.pbds[v] = std::move(design);
    data.pbd_provenance[v] = provenance;
  }

  data.squares[3] = {{0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  data.square_provenance[3] = "cyclic (n+1)/2*(i+j)";
  data.squares[4] = {{0, 2, 3, 1}, {3, 1, 0, 2}, {1, 3, 2, 0}, {2, 0, 1, 3}};
  data.square_provenance[4] = "backtracking search (row-major first), frozen";
  data.squares[5] = {{0, 3, 1, 4, 2},
                     {3, 1, 4, 2, 0},
                     {1, 4, 2, 0, 3},
                     {4, 2, 0, 3, 1},
                     {2, 0, 3, 1, 4}};
  data.square_provenance[5] = "cyclic (n+1)/2*(i+j)";
  for (const auto& [n, grid] : data.squares)
    if (!is_idempotent_latin(grid))
      throw InternalError("idempotent square recipe n=" + std::to_string(n) +
                          " is invalid");
  return data;
}

std::string render_bundle(const CatalogData& data) {
  std::string out;
  for (const GddTemplate& tpl : data.templates) {
    Meta meta;
    meta.push_back(MetaEntry::str("catalog", "ingredient"));
    meta.push_back(MetaEntry::str("type", tpl.type.to_string()));
    meta.push_back(MetaEntry::str("k", sizes_to_string(tpl.k)));
    meta.push_back(MetaEntry::str("provenance", tpl.provenance));
    out += serialize_compact(make_gdd_file(tpl.gdd, std::move(meta)));
    out += '\n';
  }
  for (const auto& [v, design] : data.pbds) {
    Meta meta;
    meta.push_back(MetaEntry::str("catalog", "pbd"));
    meta.push_back(MetaEntry::str("provenance", data.pbd_provenance.at(v)));
    out += serialize_compact(make_pbd_file(design, std::move(meta)));
    out += '\n';
  }
  for (const auto& [n, grid] : data.squares) {
    Meta meta;
    meta.push_back(MetaEntry::str("catalog", "idempotent"));
    meta.push_back(MetaEntry::str("provenance", data.square_provenance.at(n)));
    out += serialize_compact(make_latin_file(grid, std::move(meta)));
    out += '\n';
  }
  return out;
}

CatalogData load_from_bundle(const std::string& text) {
  CatalogData data;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    DesignFile file;
    try {
      file = parse_design_file(line);
    } catch (const ParseError& e) {
      throw ParseError("catalog bundle line " + std::to_string(line_no) + ": " +
                       e.what());
    }
    const std::string cat = meta_lookup(file.meta, "catalog");
    const std::string provenance = meta_lookup(file.meta, "provenance");
    if (cat == "ingredient") {
      GroupedDesign gdd = file.to_gdd();
      SizeSet k = parse_sizes(meta_lookup(file.meta, "k"));
      VerificationReport report = verify_gdd(gdd, k);
      if (!report.passed)
        throw InternalError("catalog bundle line " + std::to_string(line_no) +
                            ": ingredient failed verification: " +
                            report.summary());
      GddTemplate tpl{gdd.type(), k, std::move(gdd), provenance};
      add_template(data, std::move(tpl));
    } else if (cat == "pbd") {
      IncidenceDesign design = file.to_pbd();
      VerificationReport report = verify_pbd(design, k345());
      if (!report.passed)
        throw InternalError("catalog bundle line " + std::to_string(line_no) +
                            ": PBD failed verification: " + report.summary());
      data.pbd_provenance[design.v] = provenance;
      data.pbds[design.v] = std::move(design);
    } else if (cat == "idempotent") {
      if (!is_idempotent_latin(file.grid))
        throw InternalError("catalog bundle line " + std::to_string(line_no) +
                            ": square is not idempotent latin");
      data.square_provenance[file.v] = provenance;
      data.squares[file.v] = file.grid;
    } else {
      throw ParseError("catalog bundle line " + std::to_string(line_no) +
                       ": unknown catalog kind '" + cat + "'");
    }
  }
  return data;
}

std::mutex catalog_mutex;
std::optional<CatalogData> catalog_data;
std::string override_path;

const CatalogData& catalog() {
  std::lock_guard<std::mutex> lock(catalog_mutex);
  if (!catalog_data) {
    std::string text;
    if (!override_path.empty()) {
      std::ifstream in(override_path, std::ios::binary);
      if (!in) throw PreconditionError("cannot open catalog file " + override_path);
      std::ostringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    } else {
      text = detail::embedded_catalog_bundle();
    }
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
      catalog_data = build_catalog_from_recipes();  // bootstrap before freezing
    else
      catalog_data = load_from_bundle(text);
  }
  return *catalog_data;
}

}  // namespace

const GddTemplate& get_ingredient(const TypeMultiset& type, const SizeSet& k) {
  const CatalogData& data = catalog();
  auto it = data.template_index.find(template_key(type, k));
  if (it == data.template_index.end())
    throw NotInCatalog("no catalog ingredient of type " + type.to_string() +
                       " with K = {" + sizes_to_string(k) + "}");
  return data.templates[it->second];
}

const IncidenceDesign& small_pbd(int v) {
  if (v == 2 || v == 6 || v == 8)
    throw NoDesignExists("no PBD(v,{3,4,5}) exists for v = " + std::to_string(v));
  if (v < 1 || v > 62)
    throw PreconditionError("small_pbd: v must be in [1,62], got " +
                            std::to_string(v));
  return catalog().pbds.at(v);
}

std::string small_pbd_provenance(int v) {
  auto it = catalog().pbd_provenance.find(v);
  return it == catalog().pbd_provenance.end() ? "" : it->second;
}

const std::vector<std::vector<int>>& idempotent_square(int n) {
  if (n == 2)
    throw NoDesignExists("no idempotent latin square of order 2 exists");
  const CatalogData& data = catalog();
  auto it = data.squares.find(n);
  if (it == data.squares.end())
    throw PreconditionError(
        "idempotent_square: order " + std::to_string(n) +
        " is not in the catalog (larger orders come from glue_latin)");
  return it->second;
}

const std::vector<GddTemplate>& catalog_templates() { return catalog().templates; }

std::vector<int> catalog_pbd_orders() {
  std::vector<int> out;
  for (const auto& [v, design] : catalog().pbds) out.push_back(v);
  return out;
}

void set_catalog_override(const std::string& path) {
  std::lock_guard<std::mutex> lock(catalog_mutex);
  if (catalog_data)
    throw PreconditionError("set_catalog_override: catalog already loaded");
  override_path = path;
}

std::string render_catalog_bundle() {
  return render_bundle(build_catalog_from_recipes());
}

}  // namespace flatpbd
