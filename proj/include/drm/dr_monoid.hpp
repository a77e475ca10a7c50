#pragma once

#include "drm/class_group.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

// The finite-level Deligne-Ribet monoid DR_{K,f}: the orbit space of
// (O_K/f) x Cl_f(K) under the diagonal unit action
//     u . (rho, s) = (u*rho, rec(u)^{-1} * s),
// with componentwise multiplication on canonical orbit representatives.
// The canonical representative of an orbit is its lexicographically least
// raw pair under (local-lift tuple of rho, exponent vector of s).

namespace drm {

struct DRElement {
  int level_id = -1; // identity of the owning level
  int idx = -1;      // index into the level's canonical element list
  bool operator==(const DRElement&) const = default;
};

struct IdempotentRecord {
  int idx = -1;
  std::vector<int> support; // factor indices with v_p(rho) = 0
  bool maximal = false;
  int missing_factor = -1; // for maximal idempotents: the omitted prime
};

class DRLevel {
 public:
  FieldData K;
  IdealHNF conductor;
  ResidueRing ring; // shares structure with ray.ring but owned here for clarity
  RayClassGroup ray;
  Caps caps;
  int level_id = 0;

  // canonical elements: (rho, s) pairs
  std::vector<std::pair<ResidueElement, Vec>> elems;
  std::unordered_map<i64, int> orbit_of; // raw key -> element index
  int identity_idx = -1;
  int e_empty_idx = -1;
  std::vector<int> unit_elems;  // DR^x, ascending
  std::vector<char> ik_member;  // I_K image flags
  std::vector<FieldElement> uniformizers; // per ring factor, exact valuation 1, unit at other factors

  i64 size() const { return (i64)elems.size(); }
  int nfactors() const { return (int)ring.factors.size(); }
  i64 raw_key(const ResidueElement& rho, const Vec& s) const;
  int canonical(const ResidueElement& rho, const Vec& s) const;

  int mul(int x, int y) const;
  int power(int x, i64 e) const;
  int omega(int x) const; // the idempotent of the cyclic subsemigroup <x>
  bool is_idempotent(int x) const { return mul(x, x) == x; }
  bool is_invertible(int x) const; // the rho component is a unit residue

  int e_S(const std::vector<int>& factor_subset) const;
  std::vector<int> classify_idempotent(int e) const; // S_e as factor indices
  std::vector<IdempotentRecord> all_idempotents() const;
  bool idempotent_leq(int e, int f) const; // e <= f iff e*f == e
  std::vector<IdempotentRecord> maximal_idempotents() const;

  int ideal_to_dr(const IdealHNF& a) const;
  bool in_ik(int x) const { return ik_member[x]; }
  i64 ik_size() const;
};

DRLevel build_dr(const FieldData& K, const IdealHNF& f, const Caps& caps = {});

// Push an element of the finer level (conductor divisible by the coarser
// one's) down the tower; a monoid homomorphism.
int transition(const DRLevel& fine, int x, const DRLevel& coarse);

} // namespace drm
