#include "flatpbd/search.hpp"

#include <algorithm>
#include <numeric>

#include "flatpbd/errors.hpp"
#include "flatpbd/rng.hpp"
#include "flatpbd/verify.hpp"

namespace flatpbd {
namespace {

// Sizes actually usable for this type: a block meets each group at most
// once, so its size is bounded by the group count.
SizeSet usable_sizes(const TypeMultiset& type, const SizeSet& k) {
  SizeSet s;
  for (int x : k)
    if (x >= 2 && x <= type.group_count()) s.push_back(x);
  return s;
}

bool coin_reachable(long long target, const std::vector<long long>& coins) {
  if (target == 0) return true;
  if (coins.empty()) return false;
  std::vector<char> reach(static_cast<std::size_t>(target) + 1, 0);
  reach[0] = 1;
  for (long long t = 1; t <= target; ++t)
    for (long long c : coins)
      if (c <= t && reach[static_cast<std::size_t>(t - c)]) {
        reach[static_cast<std::size_t>(t)] = 1;
        break;
      }
  return reach[static_cast<std::size_t>(target)] != 0;
}

// Dancing-links exact cover. Columns are cross pairs; rows are candidate
// blocks. Column choice is smallest remaining size with leftmost
// tie-break, rows are tried in insertion order, so runs are reproducible.
class ExactCover {
 public:
  ExactCover(int columns) : column_count_(columns) {
    // node 0..columns-1: column headers; node `columns`: root
    int n = columns + 1;
    left_.resize(static_cast<std::size_t>(n));
    right_.resize(static_cast<std::size_t>(n));
    up_.resize(static_cast<std::size_t>(n));
    down_.resize(static_cast<std::size_t>(n));
    col_.resize(static_cast<std::size_t>(n));
    row_.resize(static_cast<std::size_t>(n), -1);
    size_.assign(static_cast<std::size_t>(columns), 0);
    for (int i = 0; i <= columns; ++i) {
      left_[static_cast<std::size_t>(i)] = (i + columns) % (columns + 1);
      right_[static_cast<std::size_t>(i)] = (i + 1) % (columns + 1);
      up_[static_cast<std::size_t>(i)] = i;
      down_[static_cast<std::size_t>(i)] = i;
      col_[static_cast<std::size_t>(i)] = i;
    }
  }

  void add_row(int row_id, const std::vector<int>& columns) {
    int first = -1;
    for (int c : columns) {
      int node = static_cast<int>(left_.size());
      left_.push_back(node);
      right_.push_back(node);
      up_.push_back(up_[static_cast<std::size_t>(c)]);
      down_.push_back(c);
      col_.push_back(c);
      row_.push_back(row_id);
      down_[static_cast<std::size_t>(up_[static_cast<std::size_t>(c)])] = node;
      up_[static_cast<std::size_t>(c)] = node;
      ++size_[static_cast<std::size_t>(c)];
      if (first < 0) {
        first = node;
      } else {
        left_[static_cast<std::size_t>(node)] = left_[static_cast<std::size_t>(first)];
        right_[static_cast<std::size_t>(node)] = first;
        right_[static_cast<std::size_t>(left_[static_cast<std::size_t>(first)])] = node;
        left_[static_cast<std::size_t>(first)] = node;
      }
    }
  }

  // Returns true when a full cover was found; solution rows in
  // `solution`. `nodes` counts row placements tried.
  bool solve(long long budget, long long& nodes, std::vector<int>& solution,
             bool& budget_hit) {
    int root = column_count_;
    if (right_[static_cast<std::size_t>(root)] == root) return true;
    int c = pick_column();
    if (size_[static_cast<std::size_t>(c)] == 0) return false;
    cover(c);
    for (int r = down_[static_cast<std::size_t>(c)]; r != c;
         r = down_[static_cast<std::size_t>(r)]) {
      if (++nodes > budget) {
        budget_hit = true;
        uncover(c);
        return false;
      }
      solution.push_back(row_[static_cast<std::size_t>(r)]);
      for (int j = right_[static_cast<std::size_t>(r)]; j != r;
           j = right_[static_cast<std::size_t>(j)])
        cover(col_[static_cast<std::size_t>(j)]);
      if (solve(budget, nodes, solution, budget_hit)) return true;
      for (int j = left_[static_cast<std::size_t>(r)]; j != r;
           j = left_[static_cast<std::size_t>(j)])
        uncover(col_[static_cast<std::size_t>(j)]);
      solution.pop_back();
      if (budget_hit) break;
    }
    uncover(c);
    return false;
  }

 private:
  int pick_column() const {
    int root = column_count_;
    int best = -1, best_size = -1;
    for (int c = right_[static_cast<std::size_t>(root)]; c != root;
         c = right_[static_cast<std::size_t>(c)]) {
      if (best < 0 || size_[static_cast<std::size_t>(c)] < best_size) {
        best = c;
        best_size = size_[static_cast<std::size_t>(c)];
        if (best_size == 0) break;
      }
    }
    return best;
  }

  void cover(int c) {
    left_[static_cast<std::size_t>(right_[static_cast<std::size_t>(c)])] =
        left_[static_cast<std::size_t>(c)];
    right_[static_cast<std::size_t>(left_[static_cast<std::size_t>(c)])] =
        right_[static_cast<std::size_t>(c)];
    for (int i = down_[static_cast<std::size_t>(c)]; i != c;
         i = down_[static_cast<std::size_t>(i)]) {
      for (int j = right_[static_cast<std::size_t>(i)]; j != i;
           j = right_[static_cast<std::size_t>(j)]) {
        up_[static_cast<std::size_t>(down_[static_cast<std::size_t>(j)])] =
            up_[static_cast<std::size_t>(j)];
        down_[static_cast<std::size_t>(up_[static_cast<std::size_t>(j)])] =
            down_[static_cast<std::size_t>(j)];
        --size_[static_cast<std::size_t>(col_[static_cast<std::size_t>(j)])];
      }
    }
  }

  void uncover(int c) {
    for (int i = up_[static_cast<std::size_t>(c)]; i != c;
         i = up_[static_cast<std::size_t>(i)]) {
      for (int j = left_[static_cast<std::size_t>(i)]; j != i;
           j = left_[static_cast<std::size_t>(j)]) {
        ++size_[static_cast<std::size_t>(col_[static_cast<std::size_t>(j)])];
        up_[static_cast<std::size_t>(down_[static_cast<std::size_t>(j)])] = j;
        down_[static_cast<std::size_t>(up_[static_cast<std::size_t>(j)])] = j;
      }
    }
    left_[static_cast<std::size_t>(right_[static_cast<std::size_t>(c)])] = c;
    right_[static_cast<std::size_t>(left_[static_cast<std::size_t>(c)])] = c;
  }

  int column_count_;
  std::vector<int> left_, right_, up_, down_, col_, row_;
  std::vector<int> size_;
};

void enumerate_blocks(const std::vector<int>& owner, const SizeSet& sizes,
                      std::vector<Block>& out) {
  const int v = static_cast<int>(owner.size());
  const int max_size = sizes.empty() ? 0 : sizes.back();
  Block current;
  std::vector<char> group_used(owner.size() + 1, 0);
  auto rec = [&](auto&& self, int next) -> void {
    if (std::binary_search(sizes.begin(), sizes.end(),
                           static_cast<int>(current.size())))
      out.push_back(current);
    if (static_cast<int>(current.size()) == max_size) return;
    for (int p = next; p < v; ++p) {
      int g = owner[static_cast<std::size_t>(p)];
      if (group_used[static_cast<std::size_t>(g)]) continue;
      group_used[static_cast<std::size_t>(g)] = 1;
      current.push_back(p);
      self(self, p + 1);
      current.pop_back();
      group_used[static_cast<std::size_t>(g)] = 0;
    }
  };
  rec(rec, 0);
}

}  // namespace

GroupedDesign canonical_group_layout(const TypeMultiset& type) {
  GroupedDesign g;
  g.v = type.total_points();
  int next = 0;
  for (int size : type.sizes_descending()) {
    std::vector<int> group(static_cast<std::size_t>(size));
    std::iota(group.begin(), group.end(), next);
    next += size;
    g.groups.push_back(std::move(group));
  }
  return g;
}

std::string infeasibility_reason(const TypeMultiset& type, const SizeSet& k) {
  const GroupedDesign layout = canonical_group_layout(type);
  const std::vector<int> owner = layout.group_of_points();
  long long cross_pairs = 0;
  for (int a = 0; a < layout.v; ++a)
    for (int b = a + 1; b < layout.v; ++b)
      if (owner[static_cast<std::size_t>(a)] != owner[static_cast<std::size_t>(b)])
        ++cross_pairs;

  const SizeSet sizes = usable_sizes(type, k);
  if (cross_pairs > 0 && sizes.empty())
    return "cross pairs exist but no usable block size (block size is capped "
           "by the group count)";

  std::vector<long long> pair_coins;
  for (int s : sizes) pair_coins.push_back(static_cast<long long>(s) * (s - 1) / 2);
  if (!coin_reachable(cross_pairs, pair_coins))
    return std::to_string(cross_pairs) +
           " cross pairs is not a sum of per-block pair counts {" +
           [&] {
             std::string t;
             for (long long c : pair_coins) {
               if (!t.empty()) t += ',';
               t += std::to_string(c);
             }
             return t;
           }() +
           "}";

  std::vector<long long> degree_coins;
  for (int s : sizes) degree_coins.push_back(s - 1);
  for (const auto& group : layout.groups) {
    long long degree = layout.v - static_cast<long long>(group.size());
    if (!coin_reachable(degree, degree_coins))
      return "point degree " + std::to_string(degree) +
             " is not a sum of (block size - 1) values";
  }
  return "";
}

SearchOutcome search_design(const SearchSpec& spec) {
  SearchOutcome outcome;
  if (spec.node_budget <= 0) throw PreconditionError("search_design: budget <= 0");

  std::string reason = infeasibility_reason(spec.type, spec.k);
  if (!reason.empty()) {
    outcome.status = SearchStatus::kNotFoundProven;
    outcome.note = reason;
    return outcome;
  }

  GroupedDesign layout = canonical_group_layout(spec.type);
  const std::vector<int> owner = layout.group_of_points();
  const SizeSet sizes = usable_sizes(spec.type, spec.k);

  // Column ids for cross pairs, lexicographic.
  std::vector<int> pair_col(
      static_cast<std::size_t>(layout.v) * static_cast<std::size_t>(layout.v), -1);
  int columns = 0;
  for (int a = 0; a < layout.v; ++a)
    for (int b = a + 1; b < layout.v; ++b)
      if (owner[static_cast<std::size_t>(a)] != owner[static_cast<std::size_t>(b)])
        pair_col[static_cast<std::size_t>(a) * static_cast<std::size_t>(layout.v) +
                 static_cast<std::size_t>(b)] = columns++;

  std::vector<Block> candidates;
  enumerate_blocks(owner, sizes, candidates);
  if (spec.seed != 0) {
    SplitMix64 g(spec.seed);
    for (std::size_t i = candidates.size(); i > 1; --i)
      std::swap(candidates[i - 1],
                candidates[static_cast<std::size_t>(g.next() % i)]);
  }

  ExactCover cover(columns);
  for (std::size_t r = 0; r < candidates.size(); ++r) {
    std::vector<int> cols;
    const Block& block = candidates[r];
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = i + 1; j < block.size(); ++j)
        cols.push_back(
            pair_col[static_cast<std::size_t>(block[i]) *
                         static_cast<std::size_t>(layout.v) +
                     static_cast<std::size_t>(block[j])]);
    cover.add_row(static_cast<int>(r), cols);
  }

  std::vector<int> solution;
  bool budget_hit = false;
  bool found = cover.solve(spec.node_budget, outcome.nodes, solution, budget_hit);
  if (!found) {
    outcome.status = budget_hit ? SearchStatus::kBudgetExhausted
                                : SearchStatus::kNotFoundProven;
    outcome.note = budget_hit ? "node budget exhausted"
                              : "search space exhausted without a design";
    return outcome;
  }

  for (int r : solution) layout.blocks.push_back(candidates[static_cast<std::size_t>(r)]);
  std::sort(layout.blocks.begin(), layout.blocks.end());

  VerificationReport report = verify_gdd(layout, spec.k);
  if (!report.passed)
    throw InternalError("search_design: solution failed verification: " +
                        report.summary());
  outcome.status = SearchStatus::kFound;
  outcome.design = GddTemplate{spec.type, spec.k, std::move(layout), "search"};
  return outcome;
}

}  // namespace flatpbd
