#include <doctest.h>

#include <algorithm>
#include <set>

#include "flatpbd/construct.hpp"
#include "flatpbd/flats.hpp"
#include "flatpbd/geometry.hpp"
#include "flatpbd/rng.hpp"

using namespace flatpbd;

namespace {

// Independent closure oracle: rescan every block until nothing grows.
// Deliberately ignores the pair index so it exercises none of the code
// paths the production closure uses.
std::vector<int> closure_by_rescan(const IncidenceDesign& design,
                                   const std::vector<int>& seed) {
  std::set<int> y(seed.begin(), seed.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Block& block : design.blocks) {
      int inside = 0;
      for (int p : block) inside += y.count(p) ? 1 : 0;
      if (inside >= 2 && inside < static_cast<int>(block.size())) {
        for (int p : block) y.insert(p);
        changed = true;
      }
    }
  }
  return std::vector<int>(y.begin(), y.end());
}

}  // namespace

TEST_CASE("closure agrees with the rescan oracle on PG_3(2), all triples") {
  IncidenceDesign design = build_projective_space(3, 2).design();
  PairIndex index(design.v, design.blocks);
  FlatCloser closer(index, design.blocks);
  for (int a = 0; a < design.v; ++a)
    for (int b = a + 1; b < design.v; ++b)
      for (int c = b + 1; c < design.v; ++c)
        CHECK(closer.close({a, b, c}) == closure_by_rescan(design, {a, b, c}));
}

TEST_CASE("closure agrees with the rescan oracle on constructed designs") {
  for (int v : {30, 90, 94}) {
    CAPTURE(v);
    IncidenceDesign design = construct_bounded_pbd(v).design;
    PairIndex index(design.v, design.blocks);
    FlatCloser closer(index, design.blocks);
    SplitMix64 g(static_cast<std::uint64_t>(v));
    for (int trial = 0; trial < 80; ++trial) {
      std::vector<int> seed = sample_subset(g, design.v, 3);
      CHECK(closer.close(seed) == closure_by_rescan(design, seed));
    }
  }
}

TEST_CASE("flat_spectrum witnesses attain the reported maximum") {
  for (int v : {15, 21, 40, 87}) {
    CAPTURE(v);
    IncidenceDesign design = construct_bounded_pbd(v).design;
    PairIndex index(design.v, design.blocks);
    FlatCloser closer(index, design.blocks);

    FlatScanResult exact = flat_spectrum(design, 3, FlatScanMode::Exhaustive());
    REQUIRE(exact.witness.size() == 3);
    CHECK(closer.close_size(exact.witness) == exact.max_size);

    FlatScanResult sampled =
        flat_spectrum(design, 3, FlatScanMode::Sample(500, 3));
    REQUIRE(sampled.witness.size() == 3);
    CHECK(closer.close_size(sampled.witness) == sampled.max_size);
    CHECK(sampled.max_size <= exact.max_size);
  }
}
