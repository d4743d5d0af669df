#pragma once

#include <cstdint>
#include <vector>

#include "flatpbd/design.hpp"

namespace flatpbd {

// Unordered pair -> unique covering block. Built once per design and
// shared by all closure computations; a pair with no block (within-group
// pairs of a GDD) maps to -1. Building throws if some pair is covered
// twice, since closures are only meaningful on verified designs.
class PairIndex {
 public:
  PairIndex(int v, const std::vector<Block>& blocks);

  int v() const { return v_; }
  int block_at(int a, int b) const {
    return block_of_[static_cast<std::size_t>(a) * static_cast<std::size_t>(v_) +
                     static_cast<std::size_t>(b)] -
           1;
  }

 private:
  int v_;
  std::vector<std::int32_t> block_of_;  // id + 1; 0 = uncovered
};

// Reusable closure scratch. One per thread; closures themselves are pure
// reads of the design.
class FlatCloser {
 public:
  FlatCloser(const PairIndex& index, const std::vector<Block>& blocks);

  // Least point set containing `seed` such that any block meeting it in
  // two points is contained in it. Result is sorted.
  std::vector<int> close(const std::vector<int>& seed);
  // Same fixpoint, but only the size (no copy / sort).
  int close_size(const std::vector<int>& seed);

 private:
  void run(const std::vector<int>& seed);

  const PairIndex& index_;
  const std::vector<Block>& blocks_;
  std::vector<std::uint32_t> member_epoch_;
  std::vector<int> work_;
  std::uint32_t epoch_ = 0;
};

// Convenience one-shot wrapper.
std::vector<int> generated_flat(const IncidenceDesign& design,
                                const std::vector<int>& seed);

struct FlatScanMode {
  bool exhaustive = true;
  long long sample_count = 0;
  std::uint64_t seed = 0;

  static FlatScanMode Exhaustive() { return {true, 0, 0}; }
  static FlatScanMode Sample(long long count, std::uint64_t seed) {
    return {false, count, seed};
  }
};

struct FlatScanResult {
  int max_size = 0;
  std::vector<int> witness;  // first d-subset attaining max, scan order
  long long scanned = 0;
};

// Maximum |<S>| over d-subsets: all of them (exhaustive; requires
// C(v,d) <= ceiling) or `sample_count` seeded draws. Deterministic for a
// given seed regardless of thread count.
FlatScanResult flat_spectrum(const IncidenceDesign& design, int d,
                             const FlatScanMode& mode,
                             long long exhaustive_ceiling = 3000000);

// Largest d such that every d-set generates a proper flat. Exhaustive
// subset scans; intended for small designs only.
int dimension(const IncidenceDesign& design, int point_ceiling = 100);

}  // namespace flatpbd
