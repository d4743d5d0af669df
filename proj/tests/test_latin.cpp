#include <doctest.h>

#include <numeric>
#include <set>

#include "flatpbd/catalog.hpp"
#include "flatpbd/construct.hpp"
#include "flatpbd/errors.hpp"
#include "flatpbd/geometry.hpp"
#include "flatpbd/latin.hpp"
#include "flatpbd/rng.hpp"

using namespace flatpbd;

namespace {

// The restriction of the grid to Y x Y must be a latin square on exactly
// the symbol set Y.
bool is_latin_subsquare(const LatinSquare& sq, const std::vector<int>& y) {
  std::set<int> symbols(y.begin(), y.end());
  for (int r : y) {
    std::set<int> seen;
    for (int c : y) {
      int s = sq.grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (!symbols.count(s) || !seen.insert(s).second) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("glue_latin: one block reproduces the catalogued square") {
  IncidenceDesign one{3, {{0, 1, 2}}, {}};
  GluedSquare glued = glue_latin(one);
  CHECK(glued.square.grid == idempotent_square(3));
}

TEST_CASE("glue_latin: Fano plane gives an idempotent square of order 7") {
  IncidenceDesign fano = build_projective_space(2, 2).design();
  GluedSquare glued = glue_latin(fano);
  CHECK(is_latin(glued.square));
  CHECK(is_idempotent(glued.square));
  // Every line is a flat, hence a subsquare.
  for (const Block& line : fano.blocks) {
    CHECK(is_latin_subsquare(glued.square, line));
    int r = line[0], c = line[1];
    int s = glued.square.grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    CHECK(glued.locate_subsquare(r, c, s) == line);
  }
}

TEST_CASE("glue_latin: order 63 from the construction pipeline") {
  BuiltDesign built = construct_bounded_pbd(63);
  GluedSquare glued = glue_latin(built.design);
  CHECK(glued.square.n == 63);
  CHECK(is_latin(glued.square));
  CHECK(is_idempotent(glued.square));
}

TEST_CASE("glue_latin rejects blocks of size two") {
  IncidenceDesign with_pair{4, {{0, 1}, {0, 2, 3}, {1, 2}, {1, 3}}, {}};
  CHECK_THROWS_AS(glue_latin(with_pair), PreconditionError);
}

TEST_CASE("locate_subsquare: diagonal and sampled soundness") {
  BuiltDesign built = construct_bounded_pbd(88);
  GluedSquare glued = glue_latin(built.design);
  CHECK(glued.locate_subsquare(5, 5, 5) == std::vector<int>{5});

  SplitMix64 g(1);
  for (int trial = 0; trial < 200; ++trial) {
    int r = static_cast<int>(g.next() % 88);
    int c = static_cast<int>(g.next() % 88);
    int s = static_cast<int>(g.next() % 88);
    std::vector<int> y = glued.locate_subsquare(r, c, s);
    CHECK(static_cast<int>(y.size()) <= built.certificate.flat_bound);
    CHECK(is_latin_subsquare(glued.square, y));
    int cell = glued.square.grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    CHECK(std::binary_search(y.begin(), y.end(), cell));
  }
}

TEST_CASE("bicolored_cycles: order 3 and conservation") {
  GluedSquare small = glue_latin(IncidenceDesign{3, {{0, 1, 2}}, {}});
  for (int s = 0; s < 3; ++s)
    for (int t = s + 1; t < 3; ++t) {
      std::vector<int> cycles = bicolored_cycles(small.square, s, t);
      CHECK(std::accumulate(cycles.begin(), cycles.end(), 0) == 6);
    }
  CHECK_THROWS_AS(bicolored_cycles(small.square, 1, 1), PreconditionError);
}

TEST_CASE("bicolored_cycles: Fano glue stays within the flat bound") {
  GluedSquare glued = glue_latin(build_projective_space(2, 2).design());
  for (int s = 0; s < 7; ++s)
    for (int t = s + 1; t < 7; ++t) {
      std::vector<int> cycles = bicolored_cycles(glued.square, s, t);
      CHECK(std::accumulate(cycles.begin(), cycles.end(), 0) == 14);
      for (int len : cycles) {
        CHECK(len % 2 == 0);
        CHECK(len >= 4);
        CHECK(len <= 2 * (7 - 3));
      }
    }
}

TEST_CASE("max_cycle_scan: exhaustive on the order-21 glue") {
  BuiltDesign built = construct_bounded_pbd(21);
  GluedSquare glued = glue_latin(built.design);
  CycleScanResult scan = max_cycle_scan(glued.square, CycleScanMode::Exhaustive());
  CHECK(scan.scanned == 21 * 20 / 2);
  CHECK(scan.max_length <= 2 * (21 - 5));
  CHECK(scan.max_length >= 4);

  CycleScanResult sampled =
      max_cycle_scan(glued.square, CycleScanMode::Sample(100, 0));
  CHECK(sampled.max_length <= scan.max_length);
  CycleScanResult again =
      max_cycle_scan(glued.square, CycleScanMode::Sample(100, 0));
  CHECK(sampled.max_length == again.max_length);
  CHECK(sampled.witness == again.witness);
}

TEST_CASE("max_cycle_scan: exhaustive ceiling") {
  LatinSquare big;
  big.n = 301;
  CHECK_THROWS_AS(max_cycle_scan(big, CycleScanMode::Exhaustive()),
                  PreconditionError);
}
