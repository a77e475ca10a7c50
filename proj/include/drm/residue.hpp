#pragma once

#include "drm/abelian.hpp"
#include "drm/field.hpp"

#include <unordered_map>
#include <vector>

// The finite ring O_K/f with CRT structure over the prime-power factors of
// the modulus, its unit group, and truncated valuations.
//
// A residue element is the vector of local residues, one per prime-power
// factor; each local residue is the lexicographically least lift (x, y)
// with 0 <= x < a, 0 <= y < c in the factor's HNF box.

namespace drm {

using ResidueElement = std::vector<FieldElement>;

struct LocalFactor {
  IdealHNF prime;
  int e = 1;
  i64 p = 0;            // rational prime below
  i64 residue_norm = 1; // N(prime)
  i64 size = 1;         // N(prime)^e
  IdealHNF modulus;     // prime^e
  std::vector<IdealHNF> prime_powers; // prime^0 .. prime^e
};

struct Caps {
  i64 ring_norm_cap = 10000;
  i64 orbit_cap = 100000;
  i64 prime_bound = 10000;
};

class ResidueRing {
 public:
  FieldData K;
  IdealHNF modulus;
  std::vector<LocalFactor> factors;
  i64 size = 1;

  ResidueElement one() const;
  ResidueElement zero() const;
  FieldElement reduce_local(int fi, const FieldElement& g) const;
  ResidueElement reduce_global(const FieldElement& g) const;
  ResidueElement mul(const ResidueElement& a, const ResidueElement& b) const;
  ResidueElement pow(const ResidueElement& a, i64 e) const;
  bool is_unit(const ResidueElement& a) const;
  // largest k <= e with the local residue in prime^k; e means ">= e"
  int truncated_valuation(const ResidueElement& a, int fi) const;
  i64 unit_count() const; // prod N(p)^(e-1) * (N(p)-1)
  ResidueElement inverse(const ResidueElement& u) const;

  // deterministic enumeration: index 0 .. size-1, mixed radix over factors,
  // lexicographic in each factor's (x, y) box
  i64 local_index(int fi, const FieldElement& r) const;
  FieldElement local_at(int fi, i64 idx) const;
  i64 index_of(const ResidueElement& a) const;
  ResidueElement element_at(i64 idx) const;
};

ResidueRing build_residue_ring(const FieldData& K, const IdealHNF& f, const Caps& caps = {});

// SNF capture of (O_K/f)^* with per-element discrete logs.
struct UnitGroup {
  std::vector<i64> unit_indices; // ring element indices of units, ascending
  std::unordered_map<i64, int> unit_pos;
  EnumeratedGroup eg;

  i64 order() const { return (i64)unit_indices.size(); }
  Vec dlog(const ResidueRing& R, const ResidueElement& u) const;
  ResidueElement from_coords(const ResidueRing& R, const Vec& coords) const;
  ResidueElement generator(const ResidueRing& R, int j) const;
};

UnitGroup build_unit_group(const ResidueRing& R);

// Subgroup U^(1) of a single local factor: the (N(p)-1)-th powers of the
// local units, as a sorted list of local residue indices. Cross-checked
// elsewhere against the kernel of reduction to O/p.
std::vector<i64> u1_subgroup(const ResidueRing& R, int fi);
std::vector<i64> reduction_kernel(const ResidueRing& R, int fi);

} // namespace drm
