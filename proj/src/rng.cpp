#include "flatpbd/rng.hpp"

#include <algorithm>

#include "flatpbd/errors.hpp"

namespace flatpbd {

std::vector<int> sample_subset(SplitMix64& g, int n, int d) {
  if (d < 0 || d > n) throw PreconditionError("sample_subset: d out of range");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(d));
  while (static_cast<int>(out.size()) < d) {
    int x = static_cast<int>(g.next() % static_cast<std::uint64_t>(n));
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace flatpbd
