#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "flatpbd/design.hpp"
#include "flatpbd/flats.hpp"

namespace flatpbd {

struct LatinSquare {
  int n = 0;
  std::vector<std::vector<int>> grid;  // grid[row][col] = symbol
};

bool is_latin(const LatinSquare& sq);
bool is_idempotent(const LatinSquare& sq);

// An idempotent square glued along the diagonal from a PBD: cell (i,j)
// holds the image of (i,j) under an idempotent square placed on the
// symbols of the unique block containing {i,j}. Keeps the source design
// (and its pair index) so subsquares can be located.
struct GluedSquare {
  LatinSquare square;
  IncidenceDesign source;
  std::shared_ptr<const PairIndex> pairs;  // of source

  // Flat generated by {row, col, symbol}; the restriction of the grid to
  // it is a latin subsquare on exactly that symbol set.
  std::vector<int> locate_subsquare(int row, int col, int symbol) const;
};

// Requires every block size to have a catalogued idempotent square
// (orders 3..5; a block of size 2 is rejected since no idempotent square
// of order 2 exists).
GluedSquare glue_latin(const IncidenceDesign& pbd);

// Cycle lengths (in edges, ascending) of the union of one-factors s and t
// in the K_{n,n} factorization induced by the square. Lengths are even
// and sum to 2n.
std::vector<int> bicolored_cycles(const LatinSquare& sq, int s, int t);

struct CycleScanMode {
  bool exhaustive = true;
  long long sample_count = 0;
  std::uint64_t seed = 0;

  static CycleScanMode Exhaustive() { return {true, 0, 0}; }
  static CycleScanMode Sample(long long count, std::uint64_t seed) {
    return {false, count, seed};
  }
};

struct CycleScanResult {
  int max_length = 0;
  std::pair<int, int> witness{-1, -1};
  long long scanned = 0;
};

// Maximum two-colored cycle length over symbol pairs: all C(n,2) of them
// (exhaustive; n <= 300) or seeded samples. Witness is the first pair in
// scan order attaining the maximum.
CycleScanResult max_cycle_scan(const LatinSquare& sq, const CycleScanMode& mode);

}  // namespace flatpbd
