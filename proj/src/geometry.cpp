#include "flatpbd/geometry.hpp"

#include <algorithm>
#include <string>

#include "flatpbd/errors.hpp"

namespace flatpbd {
namespace {

std::string coords_to_label(const std::vector<int>& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s + ")";
}

// All length-n tuples over [0, q) in lexicographic order, filtered.
template <typename Keep>
std::vector<std::vector<int>> enumerate_tuples(int n, int q, Keep keep) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(static_cast<std::size_t>(n), 0);
  while (true) {
    if (keep(t)) out.push_back(t);
    int i = n - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == q - 1)
      t[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++t[static_cast<std::size_t>(i)];
  }
  return out;
}

// Emits each line once: only for the pair of its two smallest point ids.
template <typename LineOf>
std::vector<Block> collect_lines(int v, LineOf line_of) {
  std::vector<Block> lines;
  for (int i = 0; i < v; ++i) {
    for (int j = i + 1; j < v; ++j) {
      Block line = line_of(i, j);
      std::sort(line.begin(), line.end());
      if (line[0] == i && line[1] == j) lines.push_back(std::move(line));
    }
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

}  // namespace

long long projective_point_count(int d, long long q) {
  long long n = 0, pw = 1;
  for (int i = 0; i <= d; ++i) {
    n += pw;
    pw *= q;
  }
  return n;
}

void normalize_projective(std::vector<int>& point, const FieldTable& f) {
  for (int x : point) {
    if (x == 0) continue;
    if (x != 1) {
      int s = f.inv(x);
      for (int& c : point) c = f.mul(s, c);
    }
    return;
  }
  throw PreconditionError("normalize_projective: zero vector");
}

int Geometry::index_of(const std::vector<int>& point) const {
  auto it = index_.find(point);
  return it == index_.end() ? -1 : it->second;
}

IncidenceDesign Geometry::design() const {
  IncidenceDesign out;
  out.v = v();
  out.blocks = lines;
  out.labels.reserve(coords.size());
  for (const auto& c : coords) out.labels.push_back(coords_to_label(c));
  return out;
}

Geometry build_projective_space(int d, int q, long long ceiling) {
  if (d < 1) throw PreconditionError("build_projective_space: d must be >= 1");
  const FieldTable& f = make_field(q);
  long long v = projective_point_count(d, q);
  if (v > ceiling)
    throw PreconditionError("build_projective_space: [d]_q = " +
                            std::to_string(v) + " exceeds ceiling " +
                            std::to_string(ceiling));

  Geometry g;
  g.projective = true;
  g.d = d;
  g.q = q;
  g.coords = enumerate_tuples(d + 1, q, [](const std::vector<int>& t) {
    for (int x : t) {
      if (x == 1) return true;   // first nonzero is 1: normalized
      if (x != 0) return false;
    }
    return false;  // zero vector
  });
  for (std::size_t i = 0; i < g.coords.size(); ++i)
    g.index_[g.coords[i]] = static_cast<int>(i);

  // The line through p and r consists of r and p + t*r for t in F_q.
  auto line_of = [&](int i, int j) {
    const auto& p = g.coords[static_cast<std::size_t>(i)];
    const auto& r = g.coords[static_cast<std::size_t>(j)];
    Block line{j};
    std::vector<int> s(p.size());
    for (int t = 0; t < q; ++t) {
      for (std::size_t c = 0; c < p.size(); ++c)
        s[c] = f.add(p[c], f.mul(t, r[c]));
      normalize_projective(s, f);
      line.push_back(g.index_of(s));
    }
    return line;
  };
  g.lines = collect_lines(g.v(), line_of);
  return g;
}

Geometry build_affine_space(int d, int q, long long ceiling) {
  if (d < 1) throw PreconditionError("build_affine_space: d must be >= 1");
  const FieldTable& f = make_field(q);
  long long v = 1;
  for (int i = 0; i < d; ++i) v *= q;
  if (v > ceiling)
    throw PreconditionError("build_affine_space: q^d = " + std::to_string(v) +
                            " exceeds ceiling " + std::to_string(ceiling));

  Geometry g;
  g.projective = false;
  g.d = d;
  g.q = q;
  g.coords = enumerate_tuples(d, q, [](const std::vector<int>&) { return true; });
  for (std::size_t i = 0; i < g.coords.size(); ++i)
    g.index_[g.coords[i]] = static_cast<int>(i);

  // The line through x and y is {x + t*(y - x) : t in F_q}.
  auto line_of = [&](int i, int j) {
    const auto& x = g.coords[static_cast<std::size_t>(i)];
    const auto& y = g.coords[static_cast<std::size_t>(j)];
    Block line;
    std::vector<int> s(x.size());
    for (int t = 0; t < q; ++t) {
      for (std::size_t c = 0; c < x.size(); ++c)
        s[c] = f.add(x[c], f.mul(t, f.sub(y[c], x[c])));
      line.push_back(g.index_of(s));
    }
    return line;
  };
  g.lines = collect_lines(g.v(), line_of);
  return g;
}

SpinePageDecomposition spine_page_decomposition(const Geometry& pg) {
  if (!pg.projective || pg.q != 4)
    throw PreconditionError("spine_page_decomposition: requires PG_d(4)");
  if (pg.d < 2)
    throw PreconditionError("spine_page_decomposition: requires d >= 2");
  const FieldTable& f = make_field(4);

  // Page label = normalized [x0 : x1]; lexicographic order of the pairs.
  const std::vector<std::vector<int>> page_labels = {
      {0, 1}, {1, 0}, {1, 1}, {1, 2}, {1, 3}};
  auto page_of = [&](const std::vector<int>& c) -> int {
    std::vector<int> head{c[0], c[1]};
    if (head[0] == 0 && head[1] == 0) return -1;
    normalize_projective(head, f);
    for (std::size_t i = 0; i < page_labels.size(); ++i)
      if (head == page_labels[i]) return static_cast<int>(i);
    throw InternalError("spine_page_decomposition: unreachable page label");
  };

  SpinePageDecomposition out;
  out.region_of.resize(pg.coords.size());
  for (std::size_t i = 0; i < pg.coords.size(); ++i) {
    int r = page_of(pg.coords[i]);
    out.region_of[i] = r;
    if (r < 0)
      out.spine.push_back(static_cast<int>(i));
    else
      out.pages[static_cast<std::size_t>(r)].push_back(static_cast<int>(i));
  }
  return out;
}

LineClass classify_line(const Block& line, const SpinePageDecomposition& decomp) {
  int spine_count = 0;
  std::array<int, 5> page_count{};
  for (int p : line) {
    int r = decomp.region_of[static_cast<std::size_t>(p)];
    if (r < 0)
      ++spine_count;
    else
      ++page_count[static_cast<std::size_t>(r)];
  }
  if (spine_count == static_cast<int>(line.size())) return LineClass::B;
  if (spine_count == 1)
    for (int c : page_count)
      if (c == static_cast<int>(line.size()) - 1) return LineClass::A;
  if (spine_count == 0) {
    bool all_once = true;
    for (int c : page_count) all_once = all_once && c == 1;
    if (all_once) return LineClass::C;
  }
  throw InternalError("classify_line: line fits no class (not a PG_d(4) line?)");
}

}  // namespace flatpbd
