#include <doctest.h>

#include "flatpbd/construct.hpp"
#include "flatpbd/errors.hpp"
#include "flatpbd/flats.hpp"
#include "flatpbd/verify.hpp"

using namespace flatpbd;

namespace {

int sampled_max_flat(const IncidenceDesign& design, long long count = 2000) {
  return flat_spectrum(design, 3, FlatScanMode::Sample(count, 0)).max_size;
}

}  // namespace

TEST_CASE("inflate_odd: endpoints and interior") {
  BuiltDesign base = inflate_odd(2, 0);
  CHECK(base.design.v == 21);
  CHECK(verify_pbd(base.design, sizes({5})).passed);  // PG_2(4) itself

  BuiltDesign top = inflate_odd(2, 21);
  CHECK(top.design.v == 63);
  CHECK(verify_pbd(top.design, sizes({3, 4, 5})).passed);

  BuiltDesign mid = inflate_odd(3, 1);
  CHECK(mid.design.v == 87);
  CHECK(mid.design.v % 2 == 1);
  CHECK(verify_pbd(mid.design, sizes({3, 4, 5})).passed);
  CHECK(mid.certificate.flat_bound == 63);
  CHECK(sampled_max_flat(mid.design) <= 63);

  CHECK_THROWS_AS(inflate_odd(2, 22), OutOfRange);
}

TEST_CASE("inflate_even: endpoints, interior, and the unreachable counts") {
  BuiltDesign punctured = inflate_even(3, 0);
  CHECK(punctured.design.v == 84);
  CHECK(verify_pbd(punctured.design, sizes({4, 5})).passed);

  BuiltDesign three = inflate_even(3, 3);
  CHECK(three.design.v == 90);
  CHECK(verify_pbd(three.design, sizes({3, 4, 5})).passed);
  CHECK(sampled_max_flat(three.design) <= 63);

  BuiltDesign full = inflate_even(3, 84);
  CHECK(full.design.v == 252);  // 3*85 - 3, every point tripled
  CHECK(verify_pbd(full.design, sizes({3, 4, 5})).passed);

  for (int t : {1, 2, 5}) CHECK_THROWS_AS(inflate_even(3, t), OutOfRange);
  CHECK_THROWS_AS(inflate_even(3, 85), OutOfRange);
}

TEST_CASE("inflate_heavy: the exceptional family") {
  BuiltDesign w2 = inflate_heavy(2, 2);
  CHECK(w2.design.v == 22);
  CHECK(verify_pbd(w2.design, sizes({3, 4, 5})).passed);

  BuiltDesign w4 = inflate_heavy(3, 4);
  CHECK(w4.design.v == 88);
  CHECK(w4.certificate.flat_bound == 94);
  CHECK(verify_pbd(w4.design, sizes({3, 4, 5})).passed);
  CHECK(sampled_max_flat(w4.design) <= 94);

  CHECK_THROWS_AS(inflate_heavy(3, 3), OutOfRange);
  CHECK_THROWS_AS(inflate_heavy(2, 10), OutOfRange);  // only 5 master points
}

TEST_CASE("fallback_even_top: v = 3*[d]_4 - 1") {
  BuiltDesign d2 = fallback_even_top(2);
  CHECK(d2.design.v == 62);
  CHECK(verify_pbd(d2.design, sizes({3, 4, 5})).passed);
  CHECK(d2.certificate.flat_bound == 65);

  BuiltDesign d3 = fallback_even_top(3);
  CHECK(d3.design.v == 254);
  CHECK(verify_pbd(d3.design, sizes({3, 4, 5})).passed);
  CHECK(sampled_max_flat(d3.design) <= 65);
}

TEST_CASE("construct_bounded_pbd: dispatch routes and bounds") {
  struct Expected {
    int v;
    const char* route;
    int bound;
  };
  const Expected cases[] = {
      {1, "catalog", 1},          {22, "catalog", 22},
      {62, "catalog", 62},        {63, "geometry", 7},
      {64, "geometry", 16},       {65, "truncate", 21},
      {81, "geometry", 9},        {84, "truncate", 21},
      {85, "geometry", 21},       {86, "inflate_heavy", 94},
      {87, "inflate_odd", 63},    {88, "inflate_heavy", 94},
      {90, "inflate_even", 63},   {94, "inflate_heavy", 94},
      {100, "inflate_even", 63},  {121, "geometry", 13},
      {125, "inflate_odd", 63},   {127, "geometry", 7},
      {243, "geometry", 9},       {252, "inflate_even", 63},
      {253, "inflate_odd", 63},   {254, "fallback_even_top", 65},
      {255, "geometry", 7},       {256, "geometry", 16},
      {260, "truncate", 21},      {341, "geometry", 21},
      {342, "inflate_heavy", 94}, {343, "inflate_odd", 63},
      {344, "inflate_heavy", 94}, {346, "inflate_even", 63},
      {350, "inflate_heavy", 94}, {500, "inflate_even", 63},
  };
  for (const Expected& expected : cases) {
    CAPTURE(expected.v);
    BuiltDesign built = construct_bounded_pbd(expected.v);
    CHECK(built.design.v == expected.v);
    CHECK(built.certificate.route == expected.route);
    CHECK(built.certificate.flat_bound == expected.bound);
  }
}

TEST_CASE("construct_bounded_pbd: the missing orders") {
  for (int v : {2, 6, 8}) CHECK_THROWS_AS(construct_bounded_pbd(v), NoDesignExists);
  CHECK_THROWS_AS(construct_bounded_pbd(0), PreconditionError);
}

TEST_CASE("the heavy route fires exactly on v - [e]_4 in {1,3,9}") {
  for (int v = 63; v <= 500; ++v) {
    if (v == 2 || v == 6 || v == 8) continue;
    bool exceptional = false;
    for (long long e4 : {85LL, 341LL})
      exceptional |= (v - e4 == 1 || v - e4 == 3 || v - e4 == 9);
    BuiltDesign built = construct_bounded_pbd(v);
    CAPTURE(v);
    CHECK((built.certificate.route == "inflate_heavy") == exceptional);
  }
}

TEST_CASE("certificate meta round trip") {
  BuiltDesign built = construct_bounded_pbd(88);
  Meta meta = built.certificate.to_meta(0);
  CHECK(meta_lookup(meta, "route") == "inflate_heavy");
  CHECK(meta_lookup(meta, "flat_bound") == "94");
  CHECK(meta_lookup(meta, "w") == "4");
  CHECK(meta_lookup(meta, "generator_version") == kGeneratorVersion);
}
