#include <doctest.h>

#include <map>
#include <numeric>

#include "flatpbd/catalog.hpp"
#include "flatpbd/compose.hpp"
#include "flatpbd/errors.hpp"
#include "flatpbd/flats.hpp"
#include "flatpbd/geometry.hpp"
#include "flatpbd/recipes.hpp"
#include "flatpbd/rng.hpp"
#include "flatpbd/verify.hpp"

using namespace flatpbd;

namespace {

// Provider returning a fresh single-block template of type 1^k.
const GddTemplate& single_block_provider(const TypeMultiset& type) {
  static std::map<std::string, GddTemplate> cache;
  auto it = cache.find(type.to_string());
  if (it == cache.end()) {
    int k = type.group_count();
    GroupedDesign g;
    g.v = k;
    for (int p = 0; p < k; ++p) g.groups.push_back({p});
    Block all(static_cast<std::size_t>(k));
    std::iota(all.begin(), all.end(), 0);
    g.blocks.push_back(std::move(all));
    it = cache.emplace(type.to_string(),
                       GddTemplate{type, sizes({2, 3, 4, 5}), g, "test"})
             .first;
  }
  return it->second;
}

const GddTemplate& catalog_provider(const TypeMultiset& type) {
  return get_ingredient(type, sizes({3, 4, 5}));
}

}  // namespace

TEST_CASE("truncate: punctured Fano keeps its 2-blocks") {
  IncidenceDesign fano = build_projective_space(2, 2).design();
  std::vector<int> keep;
  for (int p = 1; p < 7; ++p) keep.push_back(p);
  IncidenceDesign punctured = truncate(fano, keep);
  CHECK(punctured.v == 6);
  VerificationReport report = verify_pbd(punctured, sizes({2, 3}));
  CHECK(report.block_size_histogram[2] == 3);
  CHECK(report.block_size_histogram[3] == 4);
  CHECK(report.passed);  // still pairwise balanced, only sizes changed
}

TEST_CASE("truncate: identity and single-line cases") {
  IncidenceDesign pg = build_projective_space(2, 4).design();
  std::vector<int> all(static_cast<std::size_t>(pg.v));
  std::iota(all.begin(), all.end(), 0);
  IncidenceDesign same = truncate(pg, all);
  CHECK(same.v == pg.v);
  CHECK(same.blocks == pg.blocks);

  // Keeping one line leaves that line; every other line meets it at most
  // once and is discarded.
  IncidenceDesign one = truncate(pg, pg.blocks[0]);
  CHECK(one.v == 5);
  REQUIRE(one.blocks.size() == 1);
  CHECK(one.blocks[0].size() == 5);
}

TEST_CASE("fill_groups: punctured plane plus single blocks") {
  const GddTemplate& td54 =
      get_ingredient(TypeMultiset::of_sizes({4, 4, 4, 4, 4}), sizes({3, 4, 5}));
  std::map<int, IncidenceDesign> fillers{{4, small_pbd(4)}};
  IncidenceDesign filled = fill_groups(td54.gdd, fillers, false);
  CHECK(filled.v == 20);
  CHECK(verify_pbd(filled, sizes({4, 5})).passed);
}

TEST_CASE("fill_groups: extra point variant") {
  GroupedDesign td = transversal_design(3, 3);
  std::map<int, IncidenceDesign> fillers{{3, small_pbd(4)}};
  IncidenceDesign filled = fill_groups(td, fillers, true);
  CHECK(filled.v == 10);
  CHECK(verify_pbd(filled, sizes({3, 4})).passed);
}

TEST_CASE("fill_groups: singleton groups need no filler") {
  GroupedDesign pbd_as_gdd = as_gdd(build_projective_space(2, 2).design());
  IncidenceDesign same = fill_groups(pbd_as_gdd, {}, false);
  CHECK(same.v == 7);
  CHECK(same.blocks == pbd_as_gdd.blocks);
}

TEST_CASE("fill_groups: missing or mismatched fillers are rejected") {
  GroupedDesign td = transversal_design(3, 3);
  CHECK_THROWS_AS(fill_groups(td, {}, false), PreconditionError);
  std::map<int, IncidenceDesign> wrong{{3, small_pbd(5)}};
  CHECK_THROWS_AS(fill_groups(td, wrong, false), PreconditionError);
}

TEST_CASE("fundamental_construction: weight 1 is the identity") {
  GroupedDesign master = as_gdd(build_projective_space(2, 4).design());
  WeightAssignment weights(21, 1);
  auto [out, expansion] =
      fundamental_construction(master, weights, single_block_provider);
  CHECK(out.v == 21);
  CHECK(out.groups == master.groups);
  CHECK(out.blocks == master.blocks);
  CHECK(expansion.output_points == 21);
}

TEST_CASE("fundamental_construction: grouped master keeps its partition shape") {
  GroupedDesign td = transversal_design(3, 3);
  WeightAssignment ones(9, 1);
  auto [same, expansion1] = fundamental_construction(td, ones, single_block_provider);
  CHECK(same.groups == td.groups);
  CHECK(same.blocks == td.blocks);

  // Doubling every point doubles each group: type 3^3 becomes 6^3. Every
  // block needs a type-2^3 ingredient, served by TD(3,2).
  static const GddTemplate doubler =
      canonicalize_template(transversal_design(3, 2), sizes({3}), "test");
  WeightAssignment twos(9, 2);
  auto provider = [](const TypeMultiset& type) -> const GddTemplate& {
    REQUIRE(type == TypeMultiset::of_sizes({2, 2, 2}));
    return doubler;
  };
  auto [doubled, expansion2] = fundamental_construction(td, twos, provider);
  CHECK(doubled.v == 18);
  CHECK(doubled.type() == TypeMultiset::of_sizes({6, 6, 6}));
  CHECK(verify_gdd(doubled, sizes({3})).passed);
}

TEST_CASE("fundamental_construction: weight 3 expansion of PG_2(4)") {
  GroupedDesign master = as_gdd(build_projective_space(2, 4).design());
  WeightAssignment weights(21, 3);
  auto [out, expansion] =
      fundamental_construction(master, weights, catalog_provider);
  CHECK(out.v == 63);
  CHECK(out.groups.size() == 21);
  CHECK(verify_gdd(out, sizes({3, 4, 5})).passed);
  // Block-size multiset is the union over ingredients: 21 lines, 30
  // triples each.
  CHECK(out.blocks.size() == 21 * 30);

  auto [again, expansion2] =
      fundamental_construction(master, weights, catalog_provider);
  CHECK(again.blocks == out.blocks);
  CHECK(again.groups == out.groups);
}

TEST_CASE("fundamental_construction: single-block master reproduces the ingredient") {
  IncidenceDesign line = build_projective_space(1, 4).design();
  GroupedDesign master = as_gdd(line);
  WeightAssignment weights{5, 5, 4, 4, 4};
  auto [out, expansion] =
      fundamental_construction(master, weights, catalog_provider);
  const GddTemplate& ingredient =
      get_ingredient(TypeMultiset::of_sizes({4, 4, 4, 5, 5}), sizes({3, 4, 5}));
  CHECK(out.v == 22);
  CHECK(out.blocks == ingredient.gdd.blocks);
  CHECK(out.groups == ingredient.gdd.groups);
}

TEST_CASE("fundamental_construction: zero weights drop points and short blocks") {
  GroupedDesign master = as_gdd(build_projective_space(2, 2).design());
  WeightAssignment weights(7, 1);
  weights[0] = 0;
  auto [out, expansion] =
      fundamental_construction(master, weights, single_block_provider);
  CHECK(out.v == 6);
  // Lines through the dropped point survive as pairs, the rest as triples.
  std::map<int, int> histogram;
  for (const Block& b : out.blocks) ++histogram[static_cast<int>(b.size())];
  CHECK(histogram[2] == 3);
  CHECK(histogram[3] == 4);
  CHECK(expansion.ranges[0].length == 0);
}

TEST_CASE("fundamental_construction: missing ingredient aborts with the type") {
  GroupedDesign master = as_gdd(build_projective_space(1, 4).design());
  WeightAssignment weights{2, 2, 2, 2, 2};
  CHECK_THROWS_WITH_AS(
      fundamental_construction(master, weights, catalog_provider),
      doctest::Contains("2^5"), NotInCatalog);
}

TEST_CASE("sub-design preservation: triples in the tripled plane stay small") {
  GroupedDesign master = as_gdd(build_projective_space(2, 4).design());
  WeightAssignment weights(21, 3);
  auto [gdd, expansion] =
      fundamental_construction(master, weights, catalog_provider);
  std::map<int, IncidenceDesign> fillers{{3, small_pbd(3)}};
  IncidenceDesign filled = fill_groups(gdd, fillers, false);
  CHECK(verify_pbd(filled, sizes({3, 4, 5})).passed);

  PairIndex index(filled.v, filled.blocks);
  FlatCloser closer(index, filled.blocks);
  SplitMix64 g(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> seed = sample_subset(g, filled.v, 3);
    CHECK(closer.close_size(seed) <= 63);
  }
}
