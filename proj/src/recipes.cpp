#include "flatpbd/recipes.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "flatpbd/errors.hpp"
#include "flatpbd/verify.hpp"

namespace flatpbd {
namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool field_supported(int n) {
  return n == 2 || n == 3 || n == 4 || n == 5 || n == 7 || n == 8;
}

}  // namespace

GroupedDesign transversal_design(int k, int n) {
  if (k < 2) throw PreconditionError("transversal_design: k must be >= 2");
  GroupedDesign td;
  td.v = k * n;
  for (int g = 0; g < k; ++g) {
    std::vector<int> group(static_cast<std::size_t>(n));
    std::iota(group.begin(), group.end(), g * n);
    td.groups.push_back(std::move(group));
  }
  auto id = [&](int g, int x) { return g * n + x; };

  if (field_supported(n) && k <= n + 1) {
    // Block (a,b): one point per slope g at a + g*b, plus (infinity, b)
    // when all n + 1 groups are used.
    const FieldTable& f = make_field(n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        Block block;
        for (int g = 0; g < std::min(k, n); ++g)
          block.push_back(id(g, f.add(a, f.mul(g, b))));
        if (k == n + 1) block.push_back(id(n, b));
        canonicalize_block(block);
        td.blocks.push_back(std::move(block));
      }
    }
  } else if (is_prime(n) && k <= n) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        Block block;
        for (int g = 0; g < k; ++g) block.push_back(id(g, (a + g * b) % n));
        canonicalize_block(block);
        td.blocks.push_back(std::move(block));
      }
    }
  } else {
    throw PreconditionError("transversal_design: no construction for TD(" +
                            std::to_string(k) + "," + std::to_string(n) + ")");
  }
  std::sort(td.blocks.begin(), td.blocks.end());
  return td;
}

GroupedDesign truncate_group(const GroupedDesign& gdd, int gi, int size) {
  const auto& group = gdd.groups[static_cast<std::size_t>(gi)];
  if (size > static_cast<int>(group.size()))
    throw PreconditionError("truncate_group: size exceeds group");
  std::vector<char> drop(static_cast<std::size_t>(gdd.v), 0);
  for (std::size_t i = static_cast<std::size_t>(size); i < group.size(); ++i)
    drop[static_cast<std::size_t>(group[i])] = 1;
  std::vector<int> keep;
  for (int p = 0; p < gdd.v; ++p)
    if (!drop[static_cast<std::size_t>(p)]) keep.push_back(p);
  return truncate(gdd, keep);
}

GddTemplate canonicalize_template(const GroupedDesign& gdd, const SizeSet& k,
                                  const std::string& provenance) {
  std::vector<std::vector<int>> groups = gdd.groups;
  for (auto& g : groups) std::sort(g.begin(), g.end());
  std::stable_sort(groups.begin(), groups.end(),
                   [](const std::vector<int>& a, const std::vector<int>& b) {
                     if (a.size() != b.size()) return a.size() > b.size();
                     return a < b;
                   });
  std::vector<int> relabel(static_cast<std::size_t>(gdd.v), -1);
  GroupedDesign out;
  out.v = gdd.v;
  int next = 0;
  for (const auto& g : groups) {
    std::vector<int> ng;
    for (int p : g) {
      relabel[static_cast<std::size_t>(p)] = next;
      ng.push_back(next++);
    }
    out.groups.push_back(std::move(ng));
  }
  for (const Block& b : gdd.blocks) {
    Block nb;
    for (int p : b) nb.push_back(relabel[static_cast<std::size_t>(p)]);
    canonicalize_block(nb);
    out.blocks.push_back(std::move(nb));
  }
  std::sort(out.blocks.begin(), out.blocks.end());

  GddTemplate tpl{out.type(), k, std::move(out), provenance};
  VerificationReport report = verify_gdd(tpl.gdd, k);
  if (!report.passed)
    throw InternalError("catalog recipe '" + provenance +
                        "' failed verification: " + report.summary());
  return tpl;
}

std::vector<std::vector<int>> affine_parallel_classes(const Geometry& ag) {
  if (ag.projective || ag.d != 2)
    throw PreconditionError("affine_parallel_classes: requires AG_2(q)");
  const FieldTable& f = make_field(ag.q);
  std::map<std::vector<int>, std::vector<int>> classes;
  for (std::size_t li = 0; li < ag.lines.size(); ++li) {
    const auto& a = ag.coords[static_cast<std::size_t>(ag.lines[li][0])];
    const auto& b = ag.coords[static_cast<std::size_t>(ag.lines[li][1])];
    std::vector<int> dir{f.sub(b[0], a[0]), f.sub(b[1], a[1])};
    normalize_projective(dir, f);
    classes[dir].push_back(static_cast<int>(li));
  }
  std::vector<std::vector<int>> out;
  for (auto& [dir, lines] : classes) out.push_back(std::move(lines));
  return out;
}

IncidenceDesign extend_affine_plane(const Geometry& ag, int s) {
  auto classes = affine_parallel_classes(ag);
  if (s < 1 || s == 2 || s > static_cast<int>(classes.size()))
    throw PreconditionError("extend_affine_plane: bad class count");
  IncidenceDesign out;
  out.v = ag.v() + s;
  out.blocks = ag.lines;
  for (int c = 0; c < s; ++c)
    for (int li : classes[static_cast<std::size_t>(c)])
      out.blocks[static_cast<std::size_t>(li)].push_back(ag.v() + c);
  if (s >= 3) {
    Block fresh(static_cast<std::size_t>(s));
    std::iota(fresh.begin(), fresh.end(), ag.v());
    out.blocks.push_back(std::move(fresh));
  }
  for (Block& b : out.blocks) canonicalize_block(b);
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

}  // namespace flatpbd
