#include "flatpbd/latin.hpp"

#include <algorithm>
#include <string>

#include "flatpbd/catalog.hpp"
#include "flatpbd/errors.hpp"
#include "flatpbd/rng.hpp"

namespace flatpbd {
namespace {

// col_of[r][sym] and row_of[c][sym] lookups for factor walks.
struct FactorTables {
  std::vector<std::vector<int>> col_of, row_of;

  explicit FactorTables(const LatinSquare& sq) {
    const std::size_t n = static_cast<std::size_t>(sq.n);
    col_of.assign(n, std::vector<int>(n, -1));
    row_of.assign(n, std::vector<int>(n, -1));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        int sym = sq.grid[r][c];
        col_of[r][static_cast<std::size_t>(sym)] = static_cast<int>(c);
        row_of[c][static_cast<std::size_t>(sym)] = static_cast<int>(r);
      }
  }

  // Cycle length (in edges) through row r0 in the union of factors s, t;
  // marks visited rows.
  int walk(int r0, int s, int t, std::vector<char>& visited) const {
    int r = r0, edges = 0;
    do {
      visited[static_cast<std::size_t>(r)] = 1;
      int c = col_of[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)];
      r = row_of[static_cast<std::size_t>(c)][static_cast<std::size_t>(t)];
      edges += 2;
    } while (r != r0);
    return edges;
  }
};

}  // namespace

bool is_latin(const LatinSquare& sq) {
  const std::size_t n = static_cast<std::size_t>(sq.n);
  if (sq.grid.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (sq.grid[i].size() != n) return false;
    std::vector<char> row(n, 0), col(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      int r = sq.grid[i][j], c = sq.grid[j][i];
      if (r < 0 || r >= sq.n || c < 0 || c >= sq.n) return false;
      if (row[static_cast<std::size_t>(r)] || col[static_cast<std::size_t>(c)])
        return false;
      row[static_cast<std::size_t>(r)] = col[static_cast<std::size_t>(c)] = 1;
    }
  }
  return true;
}

bool is_idempotent(const LatinSquare& sq) {
  for (int i = 0; i < sq.n; ++i)
    if (sq.grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] != i)
      return false;
  return true;
}

GluedSquare glue_latin(const IncidenceDesign& pbd) {
  GluedSquare out;
  out.source = pbd;
  out.square.n = pbd.v;
  out.square.grid.assign(static_cast<std::size_t>(pbd.v),
                         std::vector<int>(static_cast<std::size_t>(pbd.v), -1));
  for (int i = 0; i < pbd.v; ++i)
    out.square.grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = i;

  for (const Block& block : pbd.blocks) {
    if (block.size() == 2)
      throw PreconditionError(
          "glue_latin: block of size 2 (no idempotent square of order 2)");
    const auto& sub = idempotent_square(static_cast<int>(block.size()));
    for (std::size_t a = 0; a < block.size(); ++a)
      for (std::size_t b = 0; b < block.size(); ++b) {
        if (a == b) continue;
        out.square.grid[static_cast<std::size_t>(block[a])]
                       [static_cast<std::size_t>(block[b])] =
            block[static_cast<std::size_t>(sub[a][b])];
      }
  }
  // The pair index doubles as the uniqueness check: every off-diagonal
  // cell is written exactly once iff the source is pairwise balanced.
  out.pairs = std::make_shared<PairIndex>(pbd.v, pbd.blocks);
  for (int i = 0; i < pbd.v; ++i)
    for (int j = 0; j < pbd.v; ++j)
      if (out.square.grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] < 0)
        throw PreconditionError(
            "glue_latin: pair (" + std::to_string(i) + "," + std::to_string(j) +
            ") is not covered by the source design");
  return out;
}

std::vector<int> GluedSquare::locate_subsquare(int row, int col, int symbol) const {
  for (int x : {row, col, symbol})
    if (x < 0 || x >= square.n)
      throw PreconditionError("locate_subsquare: index out of range");
  FlatCloser closer(*pairs, source.blocks);
  return closer.close({row, col, symbol});
}

std::vector<int> bicolored_cycles(const LatinSquare& sq, int s, int t) {
  if (s == t) throw PreconditionError("bicolored_cycles: symbols must differ");
  for (int x : {s, t})
    if (x < 0 || x >= sq.n)
      throw PreconditionError("bicolored_cycles: symbol out of range");
  FactorTables tables(sq);
  std::vector<char> visited(static_cast<std::size_t>(sq.n), 0);
  std::vector<int> lengths;
  for (int r = 0; r < sq.n; ++r)
    if (!visited[static_cast<std::size_t>(r)])
      lengths.push_back(tables.walk(r, s, t, visited));
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

CycleScanResult max_cycle_scan(const LatinSquare& sq, const CycleScanMode& mode) {
  CycleScanResult result;
  if (sq.n < 2) return result;
  if (mode.exhaustive && sq.n > 300)
    throw PreconditionError(
        "max_cycle_scan: exhaustive mode supports n <= 300; use samples");
  FactorTables tables(sq);
  std::vector<char> visited(static_cast<std::size_t>(sq.n), 0);

  auto scan_pair = [&](int s, int t) {
    std::fill(visited.begin(), visited.end(), 0);
    for (int r = 0; r < sq.n; ++r) {
      if (visited[static_cast<std::size_t>(r)]) continue;
      int len = tables.walk(r, s, t, visited);
      if (len > result.max_length) {
        result.max_length = len;
        result.witness = {s, t};
      }
    }
    ++result.scanned;
  };

  if (mode.exhaustive) {
    for (int s = 0; s < sq.n; ++s)
      for (int t = s + 1; t < sq.n; ++t) scan_pair(s, t);
  } else {
    for (long long k = 0; k < mode.sample_count; ++k) {
      SplitMix64 g = sample_stream(mode.seed, static_cast<std::uint64_t>(k));
      std::vector<int> pair = sample_subset(g, sq.n, 2);
      scan_pair(pair[0], pair[1]);
    }
  }
  return result;
}

}  // namespace flatpbd
