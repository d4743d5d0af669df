#pragma once

#include <string>
#include <utility>
#include <vector>

#include "flatpbd/io.hpp"

namespace flatpbd {

// Records how a design was built and the flat bound it claims, with
// enough parameters for independent re-verification. Serialized into the
// design file's meta section.
struct Certificate {
  std::string route;  // catalog | geometry | truncate | inflate_odd |
                      // inflate_even | inflate_heavy | fallback_even_top
  int d = 0;
  int flat_bound = 0;
  Meta params;  // route-specific (t, w, n, plan, weights digest, ...)

  Meta to_meta(std::uint64_t seed) const;
};

}  // namespace flatpbd
