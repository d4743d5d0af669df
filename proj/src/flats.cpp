#include "flatpbd/flats.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "flatpbd/errors.hpp"
#include "flatpbd/rng.hpp"

namespace flatpbd {
namespace {

long long binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (long long i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (1LL << 60)) return 1LL << 60;  // saturate, callers only compare
  }
  return r;
}

// Lexicographically `rank`-th d-subset of [0, n).
std::vector<int> unrank_subset(long long rank, int n, int d) {
  std::vector<int> out(static_cast<std::size_t>(d));
  int x = 0;
  for (int i = 0; i < d; ++i) {
    while (true) {
      long long tail = binom(n - 1 - x, d - 1 - i);
      if (rank < tail) break;
      rank -= tail;
      ++x;
    }
    out[static_cast<std::size_t>(i)] = x++;
  }
  return out;
}

bool next_subset(std::vector<int>& s, int n) {
  int d = static_cast<int>(s.size());
  for (int i = d - 1; i >= 0; --i) {
    if (s[static_cast<std::size_t>(i)] < n - d + i) {
      ++s[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < d; ++j)
        s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

PairIndex::PairIndex(int v, const std::vector<Block>& blocks) : v_(v) {
  block_of_.assign(static_cast<std::size_t>(v) * static_cast<std::size_t>(v), 0);
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const Block& block = blocks[bi];
    for (std::size_t i = 0; i < block.size(); ++i) {
      for (std::size_t j = i + 1; j < block.size(); ++j) {
        int a = block[i], b = block[j];
        if (a < 0 || a >= v || b < 0 || b >= v)
          throw PreconditionError("PairIndex: point out of range");
        std::size_t ab = static_cast<std::size_t>(a) * static_cast<std::size_t>(v) +
                         static_cast<std::size_t>(b);
        std::size_t ba = static_cast<std::size_t>(b) * static_cast<std::size_t>(v) +
                         static_cast<std::size_t>(a);
        if (block_of_[ab] != 0)
          throw PreconditionError("PairIndex: pair (" + std::to_string(a) + "," +
                                  std::to_string(b) + ") covered twice");
        block_of_[ab] = block_of_[ba] = static_cast<std::int32_t>(bi + 1);
      }
    }
  }
}

FlatCloser::FlatCloser(const PairIndex& index, const std::vector<Block>& blocks)
    : index_(index), blocks_(blocks) {
  member_epoch_.assign(static_cast<std::size_t>(index.v()), 0);
}

void FlatCloser::run(const std::vector<int>& seed) {
  ++epoch_;
  if (epoch_ == 0) {  // wrapped; reset stamps
    std::fill(member_epoch_.begin(), member_epoch_.end(), 0);
    epoch_ = 1;
  }
  work_.clear();
  for (int p : seed) {
    if (p < 0 || p >= index_.v())
      throw PreconditionError("generated_flat: seed point out of range");
    if (member_epoch_[static_cast<std::size_t>(p)] != epoch_) {
      member_epoch_[static_cast<std::size_t>(p)] = epoch_;
      work_.push_back(p);
    }
  }
  // Every unordered pair of the growing set is consulted exactly once:
  // index j sweeps appended points, i runs over the prefix.
  for (std::size_t j = 1; j < work_.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      int b = index_.block_at(work_[i], work_[j]);
      if (b < 0) continue;
      for (int p : blocks_[static_cast<std::size_t>(b)]) {
        if (member_epoch_[static_cast<std::size_t>(p)] != epoch_) {
          member_epoch_[static_cast<std::size_t>(p)] = epoch_;
          work_.push_back(p);
        }
      }
    }
  }
}

std::vector<int> FlatCloser::close(const std::vector<int>& seed) {
  run(seed);
  std::vector<int> out = work_;
  std::sort(out.begin(), out.end());
  return out;
}

int FlatCloser::close_size(const std::vector<int>& seed) {
  run(seed);
  return static_cast<int>(work_.size());
}

std::vector<int> generated_flat(const IncidenceDesign& design,
                                const std::vector<int>& seed) {
  PairIndex index(design.v, design.blocks);
  FlatCloser closer(index, design.blocks);
  return closer.close(seed);
}

FlatScanResult flat_spectrum(const IncidenceDesign& design, int d,
                             const FlatScanMode& mode,
                             long long exhaustive_ceiling) {
  if (d < 2) throw PreconditionError("flat_spectrum: d must be >= 2");
  FlatScanResult result;
  const long long total = mode.exhaustive ? binom(design.v, d) : mode.sample_count;
  if (total <= 0) return result;
  if (mode.exhaustive && total > exhaustive_ceiling)
    throw PreconditionError(
        "flat_spectrum: C(v,d) = " + std::to_string(total) +
        " exceeds the exhaustive ceiling " + std::to_string(exhaustive_ceiling) +
        "; use sample mode");

  PairIndex index(design.v, design.blocks);

  unsigned hw = std::thread::hardware_concurrency();
  int workers = static_cast<int>(std::max(1u, std::min<unsigned>(hw, 8)));
  if (total < 1024) workers = 1;

  struct WorkerBest {
    int max_size = -1;
    long long first_rank = -1;
    std::vector<int> witness;
  };
  std::vector<WorkerBest> best(static_cast<std::size_t>(workers));

  auto run_range = [&](int w, long long lo, long long hi) {
    FlatCloser closer(index, design.blocks);
    WorkerBest& local = best[static_cast<std::size_t>(w)];
    std::vector<int> subset;
    if (mode.exhaustive && lo < hi) subset = unrank_subset(lo, design.v, d);
    for (long long r = lo; r < hi; ++r) {
      if (!mode.exhaustive) {
        SplitMix64 g = sample_stream(mode.seed, static_cast<std::uint64_t>(r));
        subset = sample_subset(g, design.v, d);
      }
      int size = closer.close_size(subset);
      if (size > local.max_size) {
        local.max_size = size;
        local.first_rank = r;
        local.witness = subset;
      }
      if (mode.exhaustive && r + 1 < hi) next_subset(subset, design.v);
    }
  };

  std::vector<std::thread> threads;
  long long chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    long long lo = std::min<long long>(total, w * chunk);
    long long hi = std::min<long long>(total, lo + chunk);
    threads.emplace_back(run_range, w, lo, hi);
  }
  for (auto& t : threads) t.join();

  // Deterministic merge: max size first, then earliest scan rank.
  WorkerBest merged;
  for (const WorkerBest& b : best) {
    if (b.max_size > merged.max_size ||
        (b.max_size == merged.max_size && b.max_size >= 0 &&
         b.first_rank < merged.first_rank))
      merged = b;
  }
  result.max_size = std::max(0, merged.max_size);
  result.witness = merged.witness;
  result.scanned = total;
  return result;
}

int dimension(const IncidenceDesign& design, int point_ceiling) {
  if (design.v > point_ceiling)
    throw PreconditionError("dimension: v = " + std::to_string(design.v) +
                            " exceeds the exhaustive ceiling " +
                            std::to_string(point_ceiling));
  if (design.v == 0) return 0;
  constexpr int kMaxDim = 8;
  for (int d = 1; d <= kMaxDim; ++d) {
    if (d >= design.v) return d - 1;
    if (d == 1) continue;  // singleton seeds close to themselves
    FlatScanResult scan =
        flat_spectrum(design, d, FlatScanMode::Exhaustive(), 1LL << 40);
    if (scan.max_size >= design.v) return d - 1;
  }
  throw PreconditionError("dimension: exceeds supported maximum of 8");
}

}  // namespace flatpbd
