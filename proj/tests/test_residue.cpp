#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "drm/class_group.hpp"
#include "drm/errors.hpp"
#include "drm/residue.hpp"

#include <algorithm>
#include <numeric>
#include <set>

using namespace drm;

namespace {

// Oracle: enumerate O_K/f directly as the HNF box of f and reduce elements
// by lattice membership, with no CRT involved.
struct BoxRing {
  FieldData K;
  IdealHNF f;
  std::vector<FieldElement> elems;

  explicit BoxRing(const FieldData& Kf, const IdealHNF& ff) : K(Kf), f(ff) {
    for (i64 y = 0; y < f.c; ++y)
      for (i64 x = 0; x < f.a; ++x) elems.push_back({x, y});
  }
  FieldElement reduce(const FieldElement& g) const { return fe_mod(g, f); }
  bool unit(const FieldElement& g) const {
    if (g.is_zero()) return false;
    return ideals_coprime(K, principal_ideal(K, g), f);
  }
};

ResidueElement lift_to_ring(const ResidueRing& R, const FieldElement& g) {
  return R.reduce_global(g);
}

} // namespace

TEST_CASE("ring size and factor structure") {
  for (i64 D : {1l, -3l, -4l, -7l, -15l, -23l}) {
    FieldData K = make_field(D);
    for (i64 N : {4l, 8l, 9l, 12l, 25l}) {
      IdealHNF f;
      try {
        f = conductor_of_norm(K, N);
      } catch (const std::exception&) {
        continue; // no ideal of this norm in this field
      }
      ResidueRing R = build_residue_ring(K, f);
      CHECK(R.size == ideal_norm(f));
      i64 prod = 1;
      for (const LocalFactor& F : R.factors) {
        CHECK(F.size == ideal_norm(F.modulus));
        CHECK(F.modulus == ideal_pow(K, F.prime, F.e));
        prod *= F.size;
      }
      CHECK(prod == R.size);
    }
  }
}

TEST_CASE("CRT reduction agrees with the direct box ring") {
  for (i64 D : {-4l, -15l, -23l}) {
    FieldData K = make_field(D);
    // 3 is inert in Q(i), so use a 2*5 norm there
    IdealHNF f = conductor_of_norm(K, D == -4 ? 20 : 12);
    ResidueRing R = build_residue_ring(K, f);
    BoxRing B(K, f);
    // two elements have equal CRT reduction iff their difference is in f
    for (size_t i = 0; i < B.elems.size(); ++i)
      for (size_t j = 0; j < B.elems.size(); ++j) {
        bool crt_eq = R.reduce_global(B.elems[i]) == R.reduce_global(B.elems[j]);
        bool box_eq = ideal_contains(f, fe_sub(B.elems[i], B.elems[j]));
        CHECK(crt_eq == box_eq);
      }
  }
}

TEST_CASE("ring multiplication matches global multiplication then reduction") {
  FieldData K = make_field(-7);
  IdealHNF f = conductor_of_norm(K, 16);
  ResidueRing R = build_residue_ring(K, f);
  BoxRing B(K, f);
  for (size_t i = 0; i < B.elems.size(); i += 3)
    for (size_t j = 0; j < B.elems.size(); j += 3) {
      ResidueElement prod = R.mul(lift_to_ring(R, B.elems[i]), lift_to_ring(R, B.elems[j]));
      CHECK(prod == R.reduce_global(fe_mul(K, B.elems[i], B.elems[j])));
    }
}

TEST_CASE("element_at / index_of is a bijection on the whole ring") {
  FieldData K = make_field(-4);
  ResidueRing R = build_residue_ring(K, conductor_of_norm(K, 25));
  std::set<ResidueElement> seen;
  for (i64 i = 0; i < R.size; ++i) {
    ResidueElement a = R.element_at(i);
    CHECK(R.index_of(a) == i);
    CHECK(seen.insert(a).second);
  }
}

TEST_CASE("unit detection against the coprimality oracle") {
  for (i64 D : {1l, -3l, -8l, -20l}) {
    FieldData K = make_field(D);
    i64 N = D == -3 ? 9 : 12;
    IdealHNF f;
    try {
      f = conductor_of_norm(K, N);
    } catch (const std::exception&) {
      f = conductor_of_norm(K, 16);
    }
    ResidueRing R = build_residue_ring(K, f);
    BoxRing B(K, f);
    i64 units = 0;
    for (const FieldElement& g : B.elems) {
      bool oracle = B.unit(g);
      CHECK(R.is_unit(R.reduce_global(g)) == oracle);
      if (oracle) ++units;
    }
    CHECK(units == R.unit_count());
  }
}

TEST_CASE("inverse really inverts") {
  FieldData K = make_field(-11);
  ResidueRing R = build_residue_ring(K, conductor_of_norm(K, 27));
  for (i64 i = 0; i < R.size; ++i) {
    ResidueElement a = R.element_at(i);
    if (!R.is_unit(a)) continue;
    CHECK(R.mul(a, R.inverse(a)) == R.one());
  }
}

TEST_CASE("truncated valuation against ideal membership") {
  FieldData K = make_field(-7);
  IdealHNF f = conductor_of_norm(K, 8); // norm 8, two factors above 2
  ResidueRing R = build_residue_ring(K, f);
  BoxRing B(K, f);
  for (const FieldElement& g : B.elems) {
    ResidueElement a = R.reduce_global(g);
    for (int fi = 0; fi < (int)R.factors.size(); ++fi) {
      const LocalFactor& F = R.factors[fi];
      int v = R.truncated_valuation(a, fi);
      CHECK(v >= 0);
      CHECK(v <= F.e);
      CHECK(ideal_contains(F.prime_powers[v], g));
      if (v < F.e) CHECK_FALSE(ideal_contains(F.prime_powers[v + 1], g));
    }
  }
}

TEST_CASE("unit group order and homomorphism of dlog") {
  for (i64 D : {1l, -4l, -23l}) {
    FieldData K = make_field(D);
    i64 N = D == 1 ? 45 : 18;
    IdealHNF f;
    try {
      f = conductor_of_norm(K, N);
    } catch (const std::exception&) {
      f = conductor_of_norm(K, 16);
    }
    ResidueRing R = build_residue_ring(K, f);
    UnitGroup U = build_unit_group(R);
    CHECK(U.order() == R.unit_count());
    CHECK(U.eg.group.order() == U.order());
    // dlog homomorphism on sampled unit pairs
    for (size_t i = 0; i < U.unit_indices.size(); i += 2)
      for (size_t j = 0; j < U.unit_indices.size(); j += 3) {
        ResidueElement a = R.element_at(U.unit_indices[i]);
        ResidueElement b = R.element_at(U.unit_indices[j]);
        Vec sum = U.eg.group.add(U.dlog(R, a), U.dlog(R, b));
        CHECK(sum == U.dlog(R, R.mul(a, b)));
      }
    // from_coords inverts dlog
    for (size_t i = 0; i < U.unit_indices.size(); i += 5) {
      ResidueElement a = R.element_at(U.unit_indices[i]);
      CHECK(U.from_coords(R, U.dlog(R, a)) == a);
    }
  }
}

TEST_CASE("unit group of (Z/45)^* has invariants 2,12") {
  FieldData Q = make_field(1);
  ResidueRing R = build_residue_ring(Q, conductor_of_norm(Q, 45));
  UnitGroup U = build_unit_group(R);
  CHECK(U.eg.group.orders == Vec{2, 12});
}

TEST_CASE("u1 subgroup equals the reduction kernel") {
  std::vector<std::pair<i64, i64>> cases = {{1, 8}, {1, 27}, {-4, 8}, {-7, 8}, {-3, 9}};
  for (auto [D, N] : cases) {
    FieldData K = make_field(D);
    IdealHNF f = conductor_of_norm(K, N);
    ResidueRing R = build_residue_ring(K, f);
    for (int fi = 0; fi < (int)R.factors.size(); ++fi) {
      std::vector<i64> u1 = u1_subgroup(R, fi);
      std::vector<i64> ker = reduction_kernel(R, fi);
      CHECK(u1 == ker);
      const LocalFactor& F = R.factors[fi];
      // |U^(1)| = N(p)^(e-1)
      i64 expect = 1;
      for (int k = 1; k < F.e; ++k) expect *= F.residue_norm;
      CHECK((i64)u1.size() == expect);
    }
  }
}

TEST_CASE("ring norm cap raises a structured error") {
  FieldData Q = make_field(1);
  Caps caps;
  caps.ring_norm_cap = 100;
  CHECK_THROWS_AS(build_residue_ring(Q, conductor_of_norm(Q, 1024), caps), CapExceeded);
}
