#include <doctest.h>

#include "flatpbd/errors.hpp"
#include "flatpbd/field.hpp"
#include "flatpbd/geometry.hpp"
#include "flatpbd/verify.hpp"

using namespace flatpbd;

TEST_CASE("field tables: pinned values") {
  CHECK(make_field(2).add(1, 1) == 0);
  CHECK(make_field(4).mul(2, 2) == 3);  // w * w = w + 1
  CHECK(make_field(5).mul(3, 4) == 2);
  CHECK(make_field(8).mul(2, 4) == 3);  // x * x^2 = x^3 = x + 1
  CHECK_THROWS_AS(make_field(6), PreconditionError);
  CHECK_THROWS_AS(make_field(9), PreconditionError);
}

TEST_CASE("field tables: axioms, exhaustively for every supported order") {
  for (int q : {2, 3, 4, 5, 7, 8}) {
    const FieldTable& f = make_field(q);
    CHECK(q % f.characteristic() == 0);
    for (int a = 0; a < q; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (int b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        CHECK(f.sub(f.add(a, b), b) == a);
        for (int c = 0; c < q; ++c) {
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("projective spaces: pinned sizes and pair coverage") {
  struct Fixture {
    int d, q, points, lines, line_size;
  };
  const Fixture fixtures[] = {
      {2, 4, 21, 21, 5}, {3, 2, 15, 35, 3}, {1, 4, 5, 1, 5},
      {2, 2, 7, 7, 3},   {3, 4, 85, 357, 5},
  };
  for (const Fixture& fx : fixtures) {
    CAPTURE(fx.d);
    CAPTURE(fx.q);
    Geometry g = build_projective_space(fx.d, fx.q);
    CHECK(g.v() == fx.points);
    CHECK(static_cast<int>(g.lines.size()) == fx.lines);
    for (const Block& line : g.lines)
      CHECK(static_cast<int>(line.size()) == fx.line_size);
    CHECK(verify_pbd(g.design(), sizes({fx.line_size})).passed);
  }
}

TEST_CASE("affine spaces: pinned sizes and pair coverage") {
  Geometry ag23 = build_affine_space(2, 3);
  CHECK(ag23.v() == 9);
  CHECK(ag23.lines.size() == 12);
  CHECK(verify_pbd(ag23.design(), sizes({3})).passed);

  Geometry ag43 = build_affine_space(4, 3);
  CHECK(ag43.v() == 81);

  Geometry ag14 = build_affine_space(1, 4);
  CHECK(ag14.v() == 4);
  CHECK(ag14.lines.size() == 1);
}

TEST_CASE("line count identities for several (d,q)") {
  for (auto [d, q] : {std::pair{2, 3}, {3, 2}, {2, 5}, {3, 4}}) {
    Geometry pg = build_projective_space(d, q);
    long long n = projective_point_count(d, q);
    CHECK(static_cast<long long>(pg.lines.size()) == n * (n - 1) / (q * (q + 1)));
    Geometry ag = build_affine_space(d, q);
    long long m = ag.v();
    CHECK(static_cast<long long>(ag.lines.size()) == m * (m - 1) / (q * (q - 1)));
  }
}

TEST_CASE("builders are deterministic") {
  Geometry a = build_projective_space(2, 4);
  Geometry b = build_projective_space(2, 4);
  CHECK(a.coords == b.coords);
  CHECK(a.lines == b.lines);
}

TEST_CASE("geometry ceiling guards") {
  CHECK_THROWS_AS(build_projective_space(6, 4), PreconditionError);
  CHECK_THROWS_AS(build_affine_space(6, 4), PreconditionError);
}

TEST_CASE("spine/page decomposition: sizes") {
  for (int d : {2, 3, 4}) {
    CAPTURE(d);
    Geometry pg = build_projective_space(d, 4);
    SpinePageDecomposition decomp = spine_page_decomposition(pg);
    long long spine_size = d >= 2 ? projective_point_count(d - 2, 4) : 0;
    CHECK(static_cast<long long>(decomp.spine.size()) == spine_size);
    long long page_size = 1;
    for (int i = 0; i < d - 1; ++i) page_size *= 4;
    std::size_t total = decomp.spine.size();
    for (const auto& page : decomp.pages) {
      CHECK(static_cast<long long>(page.size()) == page_size);
      total += page.size();
    }
    CHECK(static_cast<int>(total) == pg.v());
  }
  CHECK_THROWS_AS(spine_page_decomposition(build_projective_space(1, 4)),
                  PreconditionError);
}

TEST_CASE("line classification trichotomy, exhaustive for d in {2,3,4}") {
  for (int d : {2, 3, 4}) {
    CAPTURE(d);
    Geometry pg = build_projective_space(d, 4);
    SpinePageDecomposition decomp = spine_page_decomposition(pg);
    long long count_a = 0, count_b = 0, count_c = 0;
    for (const Block& line : pg.lines) {
      switch (classify_line(line, decomp)) {
        case LineClass::A: ++count_a; break;
        case LineClass::B: ++count_b; break;
        case LineClass::C: ++count_c; break;
      }
    }
    CHECK(count_a + count_b + count_c == static_cast<long long>(pg.lines.size()));
    // A-lines: one affine plane's worth per page; C-lines: the rest.
    long long page_size = 1;
    for (int i = 0; i < d - 1; ++i) page_size *= 4;
    long long a_expected = d == 2 ? 5 : 5 * (page_size * (page_size - 1)) / 12;
    CHECK(count_a == a_expected);
    if (d == 2) CHECK(count_b == 0);  // the spine is a single point
    if (d == 3) CHECK(count_b == 1);  // the spine is a line
  }
}

TEST_CASE("classification examples") {
  Geometry pg2 = build_projective_space(2, 4);
  SpinePageDecomposition d2 = spine_page_decomposition(pg2);
  for (const Block& line : pg2.lines) {
    bool through_spine = false;
    for (int p : line) through_spine |= d2.region_of[static_cast<std::size_t>(p)] < 0;
    CHECK(classify_line(line, d2) == (through_spine ? LineClass::A : LineClass::C));
  }

  Geometry pg3 = build_projective_space(3, 4);
  SpinePageDecomposition d3 = spine_page_decomposition(pg3);
  int spine_lines = 0;
  for (const Block& line : pg3.lines) {
    bool inside = true, disjoint = true;
    for (int p : line) {
      if (d3.region_of[static_cast<std::size_t>(p)] < 0)
        disjoint = false;
      else
        inside = false;
    }
    if (inside) {
      CHECK(classify_line(line, d3) == LineClass::B);
      ++spine_lines;
    }
    if (disjoint) CHECK(classify_line(line, d3) == LineClass::C);
  }
  CHECK(spine_lines == 1);
}
