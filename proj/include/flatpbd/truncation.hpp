#pragma once

#include <string>
#include <vector>

#include "flatpbd/certificate.hpp"
#include "flatpbd/design.hpp"

namespace flatpbd {

// Witness-carrying reachability of legal truncation counts of PG_d(4).
//
// S(d,i) holds the counts removable beyond a PG_i(4) deleted from one
// witness hyperplane (i = kNoFlat means the witness hyperplane is
// untouched); T(d,i) = S(d,i) + [i]_4. Every member carries the plan that
// realizes it as concrete coordinates:
//
//   kLineBase   d = 1 base cases on a single 5-point line
//   kZeroBase   remove just the witness flat
//   kAffineBase remove the complement of the witness hyperplane plus the flat
//   kGlueShared glue two child truncations on two pages, sharing the flat
//   kGlueSpine  child removes its whole witness hyperplane (the spine);
//               one or four entire pages are removed with it
//
// Realized plans keep the invariant: removed set intersected with the
// hyperplane {x0 = 0} is exactly the canonical flat F_i = {x0 = 0,
// x_j = 0 for j > i+1}, which is what lets plans compose.
constexpr int kNoFlat = -1;

enum class PlanKind { kLineBase, kZeroBase, kAffineBase, kGlueShared, kGlueSpine };

struct TruncationPlan {
  PlanKind kind = PlanKind::kZeroBase;
  int d = 0;
  int flat_dim = kNoFlat;  // the i of S(d,i)
  long long s = 0;         // S-value realized by this node
  int detail = 0;          // kLineBase: removals; kGlueSpine: emptied pages (1|4)
  int left = -1;           // child plan ids
  int right = -1;
};

class ReachabilityTable {
 public:
  // Closure of the base facts under the gluing recursions, for all
  // dimensions up to d_max and S-values up to `bound` (default
  // [d_max - 1]_4 + 1, the largest count the planner needs).
  static ReachabilityTable build(int d_max, long long bound = -1);

  int d_max() const { return d_max_; }
  long long bound() const { return bound_; }

  // Plan id for s in S(d, flat_dim), or -1.
  int plan_for(int d, int flat_dim, long long s) const;
  // All reachable S(d, flat_dim) values, ascending.
  std::vector<long long> values(int d, int flat_dim) const;
  const TruncationPlan& plan(int id) const { return arena_[static_cast<std::size_t>(id)]; }
  std::string plan_to_string(int id) const;

 private:
  int id_at(int d, int flat_dim, long long s) const;
  int& slot(int d, int flat_dim, long long s);
  void add(int d, int flat_dim, long long s, TruncationPlan plan);

  int d_max_ = 0;
  long long bound_ = 0;
  std::vector<TruncationPlan> arena_;
  // indexed [d][flat_dim + 1][s] -> plan id or -1
  std::vector<std::vector<std::vector<int>>> sets_;
};

// Shared table for d <= 5 (every order the dispatcher supports).
const ReachabilityTable& default_reachability_table();

// Plan realizing a legal truncation of PG_d(4) by exactly n points.
// Throws OutOfRange outside n in [1, [d-1]_4 + 1].
int plan_truncation(const ReachabilityTable& table, int d, int n);

// Explicit coordinates (normalized homogeneous vectors) to delete from
// PG_d(4). |result| = [flat_dim]_4 + s of the plan.
std::vector<std::vector<int>> realize_plan(const ReachabilityTable& table,
                                           int plan_id);

struct TruncatedProjective {
  IncidenceDesign design;
  Certificate certificate;
};

// PBD([d]_4 - n, {3,4,5}) from a legal truncation of PG_d(4); verifies
// that no 2-point line survives and that pair coverage is exact.
TruncatedProjective truncate_projective(const ReachabilityTable& table, int d,
                                        int n);

}  // namespace flatpbd
