#pragma once

#include <array>
#include <map>
#include <vector>

#include "flatpbd/design.hpp"
#include "flatpbd/field.hpp"

namespace flatpbd {

// Default ceiling on geometry sizes: [5]_4 = 1365 points, the largest
// space any supported construction consults.
constexpr long long kGeometryCeiling = 1365;

// A concrete PG_d(q) or AG_d(q): labelled points in canonical
// (lexicographic) coordinate order and all lines as blocks. Immutable
// after construction.
struct Geometry {
  bool projective = true;
  int d = 0;
  int q = 0;
  std::vector<std::vector<int>> coords;  // one coordinate vector per point
  std::vector<Block> lines;

  int v() const { return static_cast<int>(coords.size()); }
  int index_of(const std::vector<int>& point) const;  // -1 if absent

  IncidenceDesign design() const;  // points + lines (+ labels)

 private:
  friend Geometry build_projective_space(int, int, long long);
  friend Geometry build_affine_space(int, int, long long);
  std::map<std::vector<int>, int> index_;
};

// PG_d(q): normalized homogeneous coordinates (first nonzero entry 1),
// [d]_q points, lines of size q+1.
Geometry build_projective_space(int d, int q,
                                long long ceiling = kGeometryCeiling);

// AG_d(q): q^d coordinate tuples, lines of size q.
Geometry build_affine_space(int d, int q, long long ceiling = kGeometryCeiling);

// [d]_q = 1 + q + ... + q^d.
long long projective_point_count(int d, long long q);

// Normalizes a nonzero homogeneous coordinate vector in place so its
// first nonzero entry is 1.
void normalize_projective(std::vector<int>& point, const FieldTable& f);

// The canonical spine {x0 = x1 = 0} of PG_d(4) and its five pages,
// indexed by the normalized value of [x0 : x1] in lexicographic order:
// [0:1], [1:0], [1:1], [1:w], [1:w+1].
struct SpinePageDecomposition {
  std::vector<int> spine;
  std::array<std::vector<int>, 5> pages;
  std::vector<int> region_of;  // -1 = spine, else page index
};

SpinePageDecomposition spine_page_decomposition(const Geometry& pg);

enum class LineClass { A, B, C };

// Trichotomy of PG_d(4) lines against the spine/page structure:
// A = four points in one page plus one spine point, B = inside the spine,
// C = one point in every page. Anything else is a structural bug.
LineClass classify_line(const Block& line, const SpinePageDecomposition& decomp);

}  // namespace flatpbd
