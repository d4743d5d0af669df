#include "flatpbd/truncation.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "flatpbd/compose.hpp"
#include "flatpbd/errors.hpp"
#include "flatpbd/geometry.hpp"
#include "flatpbd/verify.hpp"

namespace flatpbd {
namespace {

long long pow4(int d) {
  long long r = 1;
  for (int i = 0; i < d; ++i) r *= 4;
  return r;
}

// [i]_4 with [kNoFlat]_4 = 0 (nothing removed from the witness hyperplane).
long long flat_size(int flat_dim) {
  return flat_dim == kNoFlat ? 0 : projective_point_count(flat_dim, 4);
}

using Pt = std::vector<int>;

// Normalized points of PG_d(4) with x0 = 0 and x_j = 0 for j > i+1: the
// canonical flat F_i. F_{kNoFlat} is empty; F_{d-1} is all of {x0 = 0}.
std::vector<Pt> canonical_flat(int d, int flat_dim) {
  std::vector<Pt> out;
  if (flat_dim == kNoFlat) return out;
  if (flat_dim == 0) {
    Pt p(static_cast<std::size_t>(d + 1), 0);
    p[1] = 1;
    out.push_back(std::move(p));
    return out;
  }
  Geometry inner = build_projective_space(flat_dim, 4);  // coords x1..x_{i+1}
  for (const Pt& c : inner.coords) {
    Pt p(static_cast<std::size_t>(d + 1), 0);
    for (std::size_t j = 0; j < c.size(); ++j) p[j + 1] = c[j];
    out.push_back(std::move(p));
  }
  return out;
}

// Page [x0 : x1] = [1 : lambda]: points (1, lambda, *, ..., *).
std::vector<Pt> page_points(int d, int lambda) {
  std::vector<Pt> out;
  Pt p(static_cast<std::size_t>(d + 1), 0);
  p[0] = 1;
  p[1] = lambda;
  std::size_t free_from = 2;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == p.size()) {
      out.push_back(p);
      return;
    }
    for (int x = 0; x < 4; ++x) {
      p[pos] = x;
      self(self, pos + 1);
    }
    p[pos] = 0;
  };
  rec(rec, free_from);
  return out;
}

// Page [x0 : x1] = [0 : 1]: points (0, 1, *, ..., *).
std::vector<Pt> page01_points(int d) {
  std::vector<Pt> out;
  Pt p(static_cast<std::size_t>(d + 1), 0);
  p[1] = 1;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == p.size()) {
      out.push_back(p);
      return;
    }
    for (int x = 0; x < 4; ++x) {
      p[pos] = x;
      self(self, pos + 1);
    }
    p[pos] = 0;
  };
  rec(rec, 2);
  return out;
}

Pt embed_left(const Pt& c) {  // child -> page [1:0] side: (c0, 0, c1, ...)
  Pt p;
  p.reserve(c.size() + 1);
  p.push_back(c[0]);
  p.push_back(0);
  p.insert(p.end(), c.begin() + 1, c.end());
  return p;
}

Pt embed_right(const Pt& c) {  // child -> page [0:1] side: (0, c0, c1, ...)
  Pt p;
  p.reserve(c.size() + 1);
  p.push_back(0);
  p.insert(p.end(), c.begin(), c.end());
  return p;
}

// Collineation moving the glued output's witness hyperplane {x0 = x1}
// back to the canonical {x0 = 0} with its removed flat in canonical
// position: y0 = x0 + x1; y_1..y_{i+1} = x_2..x_{i+2}; y_{i+2} = x1.
Pt normalize_glue(const Pt& x, int flat_dim, const FieldTable& f) {
  Pt y(x.size());
  y[0] = f.add(x[0], x[1]);
  if (flat_dim == kNoFlat) {
    for (std::size_t j = 1; j < x.size(); ++j) y[j] = x[j];
  } else {
    const std::size_t i2 = static_cast<std::size_t>(flat_dim) + 2;
    for (std::size_t j = 1; j <= static_cast<std::size_t>(flat_dim) + 1; ++j)
      y[j] = x[j + 1];
    y[i2] = x[1];
    for (std::size_t j = i2 + 1; j < x.size(); ++j) y[j] = x[j];
  }
  normalize_projective(y, f);
  return y;
}

}  // namespace

int ReachabilityTable::id_at(int d, int flat_dim, long long s) const {
  if (d < 1 || d > d_max_ || flat_dim < kNoFlat || flat_dim > d - 1 || s < 0 ||
      s > bound_)
    return -1;
  return sets_[static_cast<std::size_t>(d)][static_cast<std::size_t>(flat_dim + 1)]
              [static_cast<std::size_t>(s)];
}

int& ReachabilityTable::slot(int d, int flat_dim, long long s) {
  return sets_[static_cast<std::size_t>(d)][static_cast<std::size_t>(flat_dim + 1)]
              [static_cast<std::size_t>(s)];
}

void ReachabilityTable::add(int d, int flat_dim, long long s, TruncationPlan plan) {
  if (s > bound_) return;
  int& where = slot(d, flat_dim, s);
  if (where >= 0) return;  // first derivation wins
  plan.d = d;
  plan.flat_dim = flat_dim;
  plan.s = s;
  where = static_cast<int>(arena_.size());
  arena_.push_back(plan);
}

ReachabilityTable ReachabilityTable::build(int d_max, long long bound) {
  if (d_max < 1 || d_max > 5)
    throw PreconditionError("reachable_sets: d_max must be in [1,5]");
  ReachabilityTable t;
  t.d_max_ = d_max;
  t.bound_ = bound >= 0 ? bound : projective_point_count(d_max - 1, 4) + 1;
  t.sets_.resize(static_cast<std::size_t>(d_max) + 1);
  for (int d = 1; d <= d_max; ++d)
    t.sets_[static_cast<std::size_t>(d)].assign(
        static_cast<std::size_t>(d + 1),
        std::vector<int>(static_cast<std::size_t>(t.bound_) + 1, -1));

  // d = 1: legal removal patterns on a 5-point line. With the witness
  // point removed (flat_dim 0) the removable extras are {0,1,3,4}; with
  // it kept (kNoFlat) they are {0,1,2,4}.
  for (long long s : {0, 1, 3, 4})
    t.add(1, 0, s, TruncationPlan{PlanKind::kLineBase, 1, 0, s, static_cast<int>(s)});
  for (long long s : {0, 1, 2, 4})
    t.add(1, kNoFlat, s,
          TruncationPlan{PlanKind::kLineBase, 1, kNoFlat, s, static_cast<int>(s)});

  for (int d = 2; d <= d_max; ++d) {
    for (int i = kNoFlat; i <= d - 1; ++i) {
      t.add(d, i, 0, TruncationPlan{PlanKind::kZeroBase, d, i, 0});
      if (pow4(d) <= t.bound_)
        t.add(d, i, pow4(d), TruncationPlan{PlanKind::kAffineBase, d, i, pow4(d)});
      if (i <= d - 2) {
        // Glue two legally truncated hyperplanes along the spine; the
        // shared flat (if any) is counted once.
        std::vector<long long> have = t.values(d - 1, i);
        for (std::size_t a = 0; a < have.size(); ++a) {
          for (std::size_t b = a; b < have.size(); ++b) {
            long long sum = have[a] + have[b];
            if (sum > t.bound_) break;
            TruncationPlan plan{PlanKind::kGlueShared, d, i, sum};
            plan.left = t.id_at(d - 1, i, have[a]);
            plan.right = t.id_at(d - 1, i, have[b]);
            t.add(d, i, sum, plan);
          }
        }
      }
      if (i == d - 1) {
        // Child removes its whole witness hyperplane (our spine); one or
        // four entire pages go with it.
        for (long long sc : t.values(d - 1, d - 2)) {
          for (int emptied : {1, 4}) {
            long long s = sc + (emptied - 1) * pow4(d - 1);
            if (s > t.bound_) continue;
            TruncationPlan plan{PlanKind::kGlueSpine, d, i, s, emptied};
            plan.left = t.id_at(d - 1, d - 2, sc);
            t.add(d, i, s, plan);
          }
        }
      }
    }
  }
  return t;
}

int ReachabilityTable::plan_for(int d, int flat_dim, long long s) const {
  return id_at(d, flat_dim, s);
}

std::vector<long long> ReachabilityTable::values(int d, int flat_dim) const {
  std::vector<long long> out;
  for (long long s = 0; s <= bound_; ++s)
    if (id_at(d, flat_dim, s) >= 0) out.push_back(s);
  return out;
}

std::string ReachabilityTable::plan_to_string(int id) const {
  const TruncationPlan& p = plan(id);
  std::string i = p.flat_dim == kNoFlat ? "none" : std::to_string(p.flat_dim);
  switch (p.kind) {
    case PlanKind::kLineBase:
      return "line(i=" + i + ",s=" + std::to_string(p.s) + ")";
    case PlanKind::kZeroBase:
      return "flat(i=" + i + ")";
    case PlanKind::kAffineBase:
      return "affine(i=" + i + ")";
    case PlanKind::kGlueShared:
      return "glue(i=" + i + "," + plan_to_string(p.left) + "," +
             plan_to_string(p.right) + ")";
    case PlanKind::kGlueSpine:
      return "spine(pages=" + std::to_string(p.detail) + "," +
             plan_to_string(p.left) + ")";
  }
  throw InternalError("plan_to_string: bad kind");
}

const ReachabilityTable& default_reachability_table() {
  static std::once_flag once;
  static ReachabilityTable* table = nullptr;
  std::call_once(once, [] { table = new ReachabilityTable(ReachabilityTable::build(5)); });
  return *table;
}

int plan_truncation(const ReachabilityTable& table, int d, int n) {
  if (d < 2 || d > table.d_max())
    throw PreconditionError("plan_truncation: d out of range");
  long long top = projective_point_count(d - 1, 4) + 1;
  if (n < 1 || n > top)
    throw OutOfRange("plan_truncation: n = " + std::to_string(n) +
                     " outside the proven range [1," + std::to_string(top) + "]");
  for (int i = kNoFlat; i <= d - 1; ++i) {
    long long s = n - flat_size(i);
    if (s < 0) continue;
    int id = table.plan_for(d, i, s);
    if (id >= 0) return id;
  }
  throw OutOfRange("plan_truncation: no plan for d = " + std::to_string(d) +
                   ", n = " + std::to_string(n));
}

std::vector<Pt> realize_plan(const ReachabilityTable& table, int plan_id) {
  const TruncationPlan& p = table.plan(plan_id);
  const FieldTable& f = make_field(4);
  std::vector<Pt> out;

  switch (p.kind) {
    case PlanKind::kLineBase: {
      // PG_1(4) points in canonical order: (0,1) then (1,x).
      if (p.flat_dim == 0) out.push_back(Pt{0, 1});
      for (int x = 0; x < p.detail; ++x) out.push_back(Pt{1, x});
      break;
    }
    case PlanKind::kZeroBase:
      out = canonical_flat(p.d, p.flat_dim);
      break;
    case PlanKind::kAffineBase: {
      out = canonical_flat(p.d, p.flat_dim);
      for (int lambda = 0; lambda < 4; ++lambda) {
        std::vector<Pt> page = page_points(p.d, lambda);
        out.insert(out.end(), page.begin(), page.end());
      }
      break;
    }
    case PlanKind::kGlueShared: {
      std::set<Pt> merged;
      for (const Pt& c : realize_plan(table, p.left)) merged.insert(embed_left(c));
      for (const Pt& c : realize_plan(table, p.right)) merged.insert(embed_right(c));
      for (const Pt& x : merged) out.push_back(normalize_glue(x, p.flat_dim, f));
      break;
    }
    case PlanKind::kGlueSpine: {
      for (const Pt& c : realize_plan(table, p.left)) out.push_back(embed_left(c));
      std::vector<Pt> page = page01_points(p.d);
      out.insert(out.end(), page.begin(), page.end());
      if (p.detail == 4) {
        for (int lambda = 1; lambda < 4; ++lambda) {  // pages [1:1],[1:w],[1:w+1]
          std::vector<Pt> more = page_points(p.d, lambda);
          out.insert(out.end(), more.begin(), more.end());
        }
      }
      break;
    }
  }

  const long long expected = p.s + flat_size(p.flat_dim);
  std::set<Pt> dedup(out.begin(), out.end());
  if (static_cast<long long>(dedup.size()) != expected)
    throw InternalError("realize_plan: count mismatch, got " +
                        std::to_string(dedup.size()) + " expected " +
                        std::to_string(expected));
  return std::vector<Pt>(dedup.begin(), dedup.end());
}

TruncatedProjective truncate_projective(const ReachabilityTable& table, int d,
                                        int n) {
  Geometry pg = build_projective_space(d, 4);
  std::vector<int> deleted;
  std::string plan_text = "identity";
  if (n != 0) {
    int plan_id = plan_truncation(table, d, n);
    plan_text = table.plan_to_string(plan_id);
    for (const Pt& c : realize_plan(table, plan_id)) {
      int idx = pg.index_of(c);
      if (idx < 0) throw InternalError("truncate_projective: unknown point");
      deleted.push_back(idx);
    }
    if (static_cast<int>(deleted.size()) != n)
      throw InternalError("truncate_projective: plan count mismatch");
  }

  std::vector<char> drop(static_cast<std::size_t>(pg.v()), 0);
  for (int p : deleted) drop[static_cast<std::size_t>(p)] = 1;
  std::vector<int> keep;
  for (int p = 0; p < pg.v(); ++p)
    if (!drop[static_cast<std::size_t>(p)]) keep.push_back(p);

  TruncatedProjective out;
  out.design = truncate(pg.design(), keep);

  // Legality: with the deleted blocks restricted, no line may keep
  // exactly two points.
  VerificationReport report = verify_pbd(out.design, sizes({3, 4, 5}));
  if (!report.passed)
    throw InternalError("truncate_projective(d=" + std::to_string(d) + ", n=" +
                        std::to_string(n) + ") is not a {3,4,5}-PBD: " +
                        report.summary());
  if (report.block_size_histogram.count(2))
    throw InternalError("truncate_projective: a 2-point line survived");

  out.certificate.route = "truncate";
  out.certificate.d = d;
  out.certificate.flat_bound = 21;
  out.certificate.params.push_back(MetaEntry::num("n", n));
  out.certificate.params.push_back(MetaEntry::str("plan", plan_text));
  return out;
}

}  // namespace flatpbd
