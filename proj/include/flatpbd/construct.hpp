#pragma once

#include "flatpbd/certificate.hpp"
#include "flatpbd/design.hpp"

namespace flatpbd {

inline constexpr const char* kGeneratorVersion = "1.0.0";

struct BuiltDesign {
  IncidenceDesign design;
  Certificate certificate;
};

// Weights {1,3} on PG_d(4), first t points tripled, size-3 groups closed
// by blocks: PBD([d]_4 + 2t, {3,4,5}) with three-point flats <= 63.
BuiltDesign inflate_odd(int d, int t);

// One point of PG_d(4) deleted; the punctured lines through it carry 0, 3
// or 4 tripled points summing to t (t not in {1,2,5}): even
// v = [d]_4 - 1 + 2t, flats <= 63.
BuiltDesign inflate_even(int d, int t);

// Weights {4,5} on PG_{d-1}(4), w in {2,4,10} points of weight 5:
// v = [d]_4 - 1 + w, flats <= 94. The exceptional family.
BuiltDesign inflate_heavy(int d, int w);

// Closes the even gap at v = 3[d]_4 - 1: one point deleted, two
// non-collinear-with-it points of weight 4, weight 3 elsewhere;
// flats <= 65.
BuiltDesign fallback_even_top(int d);

// Per-order dispatch: an explicit PBD(v, {3,4,5}) with certified flat
// bound for any v not in {2, 6, 8} (supported up to v = 1365). The output
// is verified before being returned.
BuiltDesign construct_bounded_pbd(int v);

}  // namespace flatpbd
