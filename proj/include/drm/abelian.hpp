#pragma once

#include "drm/intops.hpp"

#include <functional>
#include <vector>

// Smith-normal-form presentations of finite abelian groups.
//
// Two construction paths:
//  - from_enumeration: the group is handed over as an enumerated set with a
//    multiplication callback; generators are picked greedily, a triangular
//    relation matrix is built, and SNF yields the invariant factors plus a
//    discrete log for every element.
//  - from_relations: the group is given by named generators and a full set
//    of relation rows; SNF yields invariant factors and a projection from
//    exponent vectors over the original generators to canonical coordinates.

namespace drm {

using Vec = std::vector<i64>;
using Mat = std::vector<Vec>;

struct SmithResult {
  Mat U, V, Vinv; // U * M * V = D
  Vec diag;       // full diagonal, d_1 | d_2 | ... (including 1s)
};

// M is m x k with m >= k and full column rank over Q.
SmithResult smith_normal_form(Mat M);

// Group written additively: element = coordinate vector mod orders[i].
struct AbelianGroup {
  Vec orders; // nontrivial invariant factors, d_1 | d_2 | ...

  i64 order() const {
    i64 n = 1;
    for (i64 d : orders) n *= d;
    return n;
  }
  Vec zero() const { return Vec(orders.size(), 0); }
  Vec reduce(Vec v) const;
  Vec add(const Vec& a, const Vec& b) const;
  Vec neg(const Vec& a) const;
  Vec scale(const Vec& a, i64 k) const;
  bool is_zero(const Vec& a) const;
  i64 index_of(const Vec& a) const;  // mixed radix, first coordinate most significant
  Vec element_at(i64 idx) const;
  i64 element_order(const Vec& a) const;
};

// Result of capturing an enumerated group of n elements (indices 0..n-1).
struct EnumeratedGroup {
  AbelianGroup group;
  std::vector<Vec> dlog;          // per element index, canonical coordinates
  std::vector<int> generators;    // element index realizing each canonical generator
  std::vector<int> elem_by_coords; // group index -> element index
  int element_of(const Vec& coords) const {
    return elem_by_coords[group.index_of(coords)];
  }
};

EnumeratedGroup capture_enumerated_group(int n, const std::function<int(int, int)>& mul, int identity);

// Group presented by ngens named generators and relation rows.
struct PresentedGroup {
  AbelianGroup group;
  int ngens = 0;
  Mat V, Vinv;         // from SNF of the relation matrix
  Vec full_diag;
  std::vector<int> kept; // indices of nontrivial invariant factors
  // canonical coords of the element with exponent vector `expo` over the
  // original generators
  Vec project(const Vec& expo) const;
  // expression of canonical generator j over the original generators
  Vec generator_expr(int j) const;
};

PresentedGroup present_group(int ngens, const Mat& relations);

} // namespace drm
