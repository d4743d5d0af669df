#include "flatpbd/construct.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "flatpbd/catalog.hpp"
#include "flatpbd/errors.hpp"
#include "flatpbd/flats.hpp"
#include "flatpbd/geometry.hpp"
#include "flatpbd/truncation.hpp"
#include "flatpbd/verify.hpp"

namespace flatpbd {
namespace {

long long p4(int d) { return projective_point_count(d, 4); }

// Catalog lookup with K keyed off the surviving block length: lines of
// size five take {3,4,5} ingredients, punctured (4-point) lines take the
// {3,4} family.
const GddTemplate& line_ingredient(const TypeMultiset& type) {
  static const SizeSet k5 = sizes({3, 4, 5});
  static const SizeSet k4 = sizes({3, 4});
  return get_ingredient(type, type.group_count() == 4 ? k4 : k5);
}

std::string weights_digest(const WeightAssignment& weights) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (int w : weights) {
    h ^= static_cast<std::uint64_t>(w);
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

IncidenceDesign expand_and_fill(const GroupedDesign& master,
                                const WeightAssignment& weights) {
  auto [gdd, expansion] = fundamental_construction(master, weights, line_ingredient);
  std::map<int, IncidenceDesign> fillers;
  for (const auto& group : gdd.groups) {
    int g = static_cast<int>(group.size());
    if (g > 1 && !fillers.count(g)) fillers[g] = small_pbd(g);
  }
  return fill_groups(gdd, fillers, false);
}

// Per-line tripled counts for inflate_even: greedy 4s with a 3-swap
// fix-up, total t, every count in {0,3,4}.
std::vector<int> even_line_counts(int t, int lines) {
  std::vector<int> counts;
  int fours = t / 4, rest = t % 4;
  if (rest == 3) {
    counts.assign(static_cast<std::size_t>(fours), 4);
    counts.push_back(3);
  } else if (rest == 2) {
    if (fours < 1) throw OutOfRange("inflate_even: t = " + std::to_string(t));
    counts.assign(static_cast<std::size_t>(fours - 1), 4);
    counts.insert(counts.end(), {3, 3});
  } else if (rest == 1) {
    if (fours < 2) throw OutOfRange("inflate_even: t = " + std::to_string(t));
    counts.assign(static_cast<std::size_t>(fours - 2), 4);
    counts.insert(counts.end(), {3, 3, 3});
  } else {
    counts.assign(static_cast<std::size_t>(fours), 4);
  }
  if (static_cast<int>(counts.size()) > lines)
    throw OutOfRange("inflate_even: t = " + std::to_string(t) +
                     " needs more punctured lines than exist");
  return counts;
}

}  // namespace

Meta Certificate::to_meta(std::uint64_t seed) const {
  Meta meta;
  meta.push_back(MetaEntry::str("route", route));
  meta.push_back(MetaEntry::num("d", d));
  for (const MetaEntry& e : params) meta.push_back(e);
  meta.push_back(MetaEntry::num("flat_bound", flat_bound));
  meta.push_back(MetaEntry::str("generator_version", kGeneratorVersion));
  meta.push_back(MetaEntry::num("seed", static_cast<long long>(seed)));
  return meta;
}

BuiltDesign inflate_odd(int d, int t) {
  if (d < 2 || d > 5) throw PreconditionError("inflate_odd: d out of range");
  if (t < 0 || t > p4(d))
    throw OutOfRange("inflate_odd: t must be in [0, [d]_4]");
  Geometry pg = build_projective_space(d, 4);
  GroupedDesign master = as_gdd(pg.design());
  WeightAssignment weights(static_cast<std::size_t>(master.v), 1);
  for (int p = 0; p < t; ++p) weights[static_cast<std::size_t>(p)] = 3;

  BuiltDesign out;
  out.design = expand_and_fill(master, weights);
  if (out.design.v != p4(d) + 2 * t)
    throw InternalError("inflate_odd: point count mismatch");
  out.certificate.route = "inflate_odd";
  out.certificate.d = d;
  out.certificate.flat_bound = 63;
  out.certificate.params.push_back(MetaEntry::num("t", t));
  out.certificate.params.push_back(
      MetaEntry::str("weights_digest", weights_digest(weights)));
  return out;
}

BuiltDesign inflate_even(int d, int t) {
  if (d < 2 || d > 5) throw PreconditionError("inflate_even: d out of range");
  if (t == 1 || t == 2 || t == 5)
    throw OutOfRange("inflate_even: t in {1,2,5} is unreachable with line "
                     "counts {0,3,4}");
  if (t < 0 || t > 4 * p4(d - 1))
    throw OutOfRange("inflate_even: t must be in [0, 4*[d-1]_4]");

  Geometry pg = build_projective_space(d, 4);
  std::vector<int> keep;
  for (int p = 1; p < pg.v(); ++p) keep.push_back(p);
  IncidenceDesign punctured = truncate(pg.design(), keep);
  GroupedDesign master = as_gdd(punctured);

  // The punctured lines through the deleted point: the 4-point blocks.
  // They partition the remaining points.
  std::vector<int> ell;
  for (std::size_t bi = 0; bi < master.blocks.size(); ++bi)
    if (master.blocks[bi].size() == 4) ell.push_back(static_cast<int>(bi));
  if (static_cast<long long>(ell.size()) != p4(d - 1))
    throw InternalError("inflate_even: wrong punctured line count");

  std::vector<int> counts = even_line_counts(t, static_cast<int>(ell.size()));
  WeightAssignment weights(static_cast<std::size_t>(master.v), 1);
  for (std::size_t li = 0; li < counts.size(); ++li) {
    const Block& line = master.blocks[static_cast<std::size_t>(ell[li])];
    int c = counts[li];
    if (c != 0 && c != 3 && c != 4)
      throw InternalError("inflate_even: line count outside {0,3,4}");
    for (int x = 0; x < c; ++x)
      weights[static_cast<std::size_t>(line[static_cast<std::size_t>(x)])] = 3;
  }

  BuiltDesign out;
  out.design = expand_and_fill(master, weights);
  if (out.design.v != p4(d) - 1 + 2 * t)
    throw InternalError("inflate_even: point count mismatch");
  out.certificate.route = "inflate_even";
  out.certificate.d = d;
  out.certificate.flat_bound = 63;
  out.certificate.params.push_back(MetaEntry::num("t", t));
  out.certificate.params.push_back(MetaEntry::num("deleted_point", 0));
  out.certificate.params.push_back(
      MetaEntry::str("weights_digest", weights_digest(weights)));
  return out;
}

BuiltDesign inflate_heavy(int d, int w) {
  if (d < 2 || d > 5) throw PreconditionError("inflate_heavy: d out of range");
  if (w != 2 && w != 4 && w != 10)
    throw OutOfRange("inflate_heavy: w must be 2, 4 or 10");
  if (w > p4(d - 1))
    throw OutOfRange("inflate_heavy: w exceeds the master point count");
  Geometry pg = build_projective_space(d - 1, 4);
  GroupedDesign master = as_gdd(pg.design());
  WeightAssignment weights(static_cast<std::size_t>(master.v), 4);
  for (int p = 0; p < w; ++p) weights[static_cast<std::size_t>(p)] = 5;

  BuiltDesign out;
  out.design = expand_and_fill(master, weights);
  if (out.design.v != 4 * p4(d - 1) + w)
    throw InternalError("inflate_heavy: point count mismatch");
  out.certificate.route = "inflate_heavy";
  out.certificate.d = d;
  out.certificate.flat_bound = 94;
  out.certificate.params.push_back(MetaEntry::num("w", w));
  out.certificate.params.push_back(
      MetaEntry::str("weights_digest", weights_digest(weights)));
  return out;
}

BuiltDesign fallback_even_top(int d) {
  if (d < 2 || d > 5)
    throw PreconditionError("fallback_even_top: d out of range");
  Geometry pg = build_projective_space(d, 4);
  PairIndex lines(pg.v(), pg.lines);

  // q1, q2 with the deleted point 0, q1, q2 not collinear.
  const int q1 = 1;
  const Block& through = pg.lines[static_cast<std::size_t>(lines.block_at(0, q1))];
  int q2 = -1;
  for (int p = 2; p < pg.v(); ++p)
    if (!std::binary_search(through.begin(), through.end(), p)) {
      q2 = p;
      break;
    }

  std::vector<int> keep;
  for (int p = 1; p < pg.v(); ++p) keep.push_back(p);
  GroupedDesign master = as_gdd(truncate(pg.design(), keep));
  WeightAssignment weights(static_cast<std::size_t>(master.v), 3);
  weights[static_cast<std::size_t>(q1 - 1)] = 4;
  weights[static_cast<std::size_t>(q2 - 1)] = 4;

  BuiltDesign out;
  out.design = expand_and_fill(master, weights);
  if (out.design.v != 3 * p4(d) - 1)
    throw InternalError("fallback_even_top: point count mismatch");
  out.certificate.route = "fallback_even_top";
  out.certificate.d = d;
  out.certificate.flat_bound = 65;
  out.certificate.params.push_back(MetaEntry::num("deleted_point", 0));
  out.certificate.params.push_back(MetaEntry::num("q1", q1));
  out.certificate.params.push_back(MetaEntry::num("q2", q2));
  out.certificate.params.push_back(
      MetaEntry::str("weights_digest", weights_digest(weights)));
  return out;
}

BuiltDesign construct_bounded_pbd(int v) {
  if (v == 2 || v == 6 || v == 8)
    throw NoDesignExists("no PBD(v,{3,4,5}) exists for v = " + std::to_string(v));
  if (v < 1) throw PreconditionError("construct_bounded_pbd: v must be >= 1");

  BuiltDesign out;
  bool built = false;

  // (1) Catalogued small orders. The whole design is a flat, so the
  // bound is v itself.
  if (v <= 62) {
    out.design = small_pbd(v);
    out.certificate.route = "catalog";
    out.certificate.d = 0;
    out.certificate.flat_bound = v;
    out.certificate.params.push_back(
        MetaEntry::str("provenance", small_pbd_provenance(v)));
    built = true;
  }

  // (2) Exact geometries.
  if (!built) {
    struct GeometryForm {
      bool projective;
      int q;
      int bound;
    };
    static const GeometryForm forms[] = {
        {true, 4, 21}, {false, 4, 16}, {true, 3, 13}, {false, 3, 9}, {true, 2, 7}};
    for (const GeometryForm& form : forms) {
      for (int d = 2; !built; ++d) {
        long long points = form.projective ? projective_point_count(d, form.q)
                                           : [&] {
                                               long long n = 1;
                                               for (int i = 0; i < d; ++i)
                                                 n *= form.q;
                                               return n;
                                             }();
        if (points > kGeometryCeiling) break;
        if (points != v) continue;
        Geometry g = form.projective ? build_projective_space(d, form.q)
                                     : build_affine_space(d, form.q);
        out.design = g.design();
        out.design.labels.clear();
        out.certificate.route = "geometry";
        out.certificate.d = d;
        out.certificate.flat_bound = form.bound;
        out.certificate.params.push_back(MetaEntry::str(
            "space", std::string(form.projective ? "PG(" : "AG(") +
                         std::to_string(d) + "," + std::to_string(form.q) + ")"));
        built = true;
      }
      if (built) break;
    }
  }

  // (3) Truncations of PG_d(4).
  if (!built) {
    for (int d = 3; d <= 5 && !built; ++d) {
      if (3 * p4(d - 1) <= v && v <= p4(d)) {
        TruncatedProjective result = truncate_projective(
            default_reachability_table(), d, static_cast<int>(p4(d) - v));
        out.design = std::move(result.design);
        out.certificate = std::move(result.certificate);
        built = true;
      }
    }
  }

  // (4) Odd orders by {1,3}-inflation.
  if (!built && v % 2 == 1) {
    for (int d = 2; d <= 5 && !built; ++d) {
      if (p4(d) < v && v < 3 * p4(d)) {
        out = inflate_odd(d, static_cast<int>((v - p4(d)) / 2));
        built = true;
      }
    }
  }

  // (5) Even orders by the punctured {1,3}-inflation.
  if (!built && v % 2 == 0) {
    for (int d = 3; d <= 5 && !built; ++d) {
      if (v < p4(d) - 1) continue;
      long long t = (v - (p4(d) - 1)) / 2;
      if (t > 4 * p4(d - 1) || t == 1 || t == 2 || t == 5) continue;
      out = inflate_even(d, static_cast<int>(t));
      built = true;
    }
  }

  // (6) The exceptional family v = [e]_4 + {1,3,9}.
  if (!built) {
    for (int e = 3; e <= 5 && !built; ++e) {
      long long delta = v - p4(e);
      if (delta == 1 || delta == 3 || delta == 9) {
        out = inflate_heavy(e, static_cast<int>(delta + 1));
        built = true;
      }
    }
  }

  // (7) The even top v = 3[e]_4 - 1.
  if (!built) {
    for (int e = 3; e <= 5 && !built; ++e) {
      if (v == 3 * p4(e) - 1) {
        out = fallback_even_top(e);
        built = true;
      }
    }
  }

  if (!built)
    throw PreconditionError("construct_bounded_pbd: v = " + std::to_string(v) +
                            " is outside the supported range");

  VerificationReport report = verify_pbd(out.design, sizes({3, 4, 5}));
  if (!report.passed)
    throw InternalError("construct_bounded_pbd(" + std::to_string(v) +
                        ") failed self-verification: " + report.summary());
  return out;
}

}  // namespace flatpbd
