#pragma once

#include <cstdint>
#include <vector>

namespace flatpbd {

// splitmix64. This is the project-wide sampling generator: every sampled
// number reported by the tools is reproducible from (seed, sample index)
// alone, on any platform.
//
//   state += 0x9E3779B97F4A7C15
//   z = state; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
//   z = (z ^ z>>27) * 0x94D049BB133111EB
//   return z ^ z>>31
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Substream for sample `index` of a run seeded with `seed`. Samples are
// independent streams so scans can be evaluated in any order (or in
// parallel) and still produce identical results.
inline SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed);
  std::uint64_t base = g.next();
  return SplitMix64(base ^ (index * 0xD1B54A32D192ED03ULL));
}

// d distinct values from [0, n), sorted ascending. Drawn by rejection:
// value = next() mod n, repeated until distinct.
std::vector<int> sample_subset(SplitMix64& g, int n, int d);

}  // namespace flatpbd
