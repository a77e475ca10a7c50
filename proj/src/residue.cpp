#include "drm/residue.hpp"

#include "drm/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace drm {

ResidueElement ResidueRing::one() const {
  ResidueElement r(factors.size());
  for (size_t i = 0; i < factors.size(); ++i) r[i] = reduce_local((int)i, fe_one());
  return r;
}

ResidueElement ResidueRing::zero() const {
  return ResidueElement(factors.size(), FieldElement{0, 0});
}

FieldElement ResidueRing::reduce_local(int fi, const FieldElement& g) const {
  const IdealHNF& m = factors[fi].modulus;
  i64 yr = mod_floor(g.y, m.c);
  i64 k = (g.y - yr) / m.c;
  i64 xr = mod_floor(g.x - k * m.b, m.a);
  return {xr, yr};
}

ResidueElement ResidueRing::reduce_global(const FieldElement& g) const {
  ResidueElement r(factors.size());
  for (size_t i = 0; i < factors.size(); ++i) r[i] = reduce_local((int)i, g);
  return r;
}

ResidueElement ResidueRing::mul(const ResidueElement& a, const ResidueElement& b) const {
  ResidueElement r(factors.size());
  for (size_t i = 0; i < factors.size(); ++i)
    r[i] = reduce_local((int)i, fe_mul(K, a[i], b[i]));
  return r;
}

ResidueElement ResidueRing::pow(const ResidueElement& a, i64 e) const {
  ResidueElement r = one();
  ResidueElement b = a;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

bool ResidueRing::is_unit(const ResidueElement& a) const {
  for (size_t i = 0; i < factors.size(); ++i)
    if (ideal_contains(factors[i].prime, a[i])) return false;
  return true;
}

int ResidueRing::truncated_valuation(const ResidueElement& a, int fi) const {
  const LocalFactor& F = factors[fi];
  int v = 0;
  while (v < F.e && ideal_contains(F.prime_powers[v + 1], a[fi])) ++v;
  return v;
}

i64 ResidueRing::unit_count() const {
  i64 n = 1;
  for (const auto& F : factors) {
    i64 q = F.residue_norm;
    i64 loc = q - 1;
    for (int i = 1; i < F.e; ++i) loc *= q;
    n *= loc;
  }
  return n;
}

ResidueElement ResidueRing::inverse(const ResidueElement& u) const {
  if (!is_unit(u)) throw std::invalid_argument("inverse: not a unit");
  i64 expo = 1;
  for (const auto& F : factors) {
    i64 q = F.residue_norm;
    i64 loc = q - 1;
    for (int i = 1; i < F.e; ++i) loc *= q;
    expo = expo / gcd_ll(expo, loc) * loc;
  }
  return pow(u, expo - 1);
}

i64 ResidueRing::local_index(int fi, const FieldElement& r) const {
  const IdealHNF& m = factors[fi].modulus;
  return r.x * m.c + r.y;
}

FieldElement ResidueRing::local_at(int fi, i64 idx) const {
  const IdealHNF& m = factors[fi].modulus;
  return {idx / m.c, idx % m.c};
}

i64 ResidueRing::index_of(const ResidueElement& a) const {
  i64 idx = 0;
  for (size_t i = 0; i < factors.size(); ++i)
    idx = idx * factors[i].size + local_index((int)i, a[i]);
  return idx;
}

ResidueElement ResidueRing::element_at(i64 idx) const {
  ResidueElement a(factors.size());
  for (size_t i = factors.size(); i-- > 0;) {
    a[i] = local_at((int)i, idx % factors[i].size);
    idx /= factors[i].size;
  }
  return a;
}

ResidueRing build_residue_ring(const FieldData& K, const IdealHNF& f, const Caps& caps) {
  if (ideal_norm(f) > caps.ring_norm_cap)
    throw CapExceeded("build_residue_ring: N(f) = " + std::to_string(ideal_norm(f)) +
                      " exceeds cap " + std::to_string(caps.ring_norm_cap));
  ResidueRing R;
  R.K = K;
  R.modulus = f;
  for (const PrimePower& pp : ideal_factor(K, f)) {
    LocalFactor F;
    F.prime = pp.prime;
    F.e = pp.e;
    F.p = pp.p;
    F.residue_norm = pp.residue_norm;
    F.prime_powers.push_back(ideal_one());
    IdealHNF pw = ideal_one();
    for (int i = 0; i < pp.e; ++i) {
      pw = ideal_mul(K, pw, pp.prime);
      F.prime_powers.push_back(pw);
    }
    F.modulus = pw;
    F.size = ideal_norm(pw);
    R.size *= F.size;
    R.factors.push_back(std::move(F));
  }
  if (R.size != ideal_norm(f)) throw std::logic_error("build_residue_ring: CRT size mismatch");
  return R;
}

Vec UnitGroup::dlog(const ResidueRing& R, const ResidueElement& u) const {
  auto it = unit_pos.find(R.index_of(u));
  if (it == unit_pos.end()) throw std::invalid_argument("UnitGroup::dlog: not a unit");
  return eg.dlog[it->second];
}

ResidueElement UnitGroup::from_coords(const ResidueRing& R, const Vec& coords) const {
  return R.element_at(unit_indices[eg.element_of(coords)]);
}

ResidueElement UnitGroup::generator(const ResidueRing& R, int j) const {
  return R.element_at(unit_indices[eg.generators[j]]);
}

UnitGroup build_unit_group(const ResidueRing& R) {
  UnitGroup U;
  for (i64 i = 0; i < R.size; ++i)
    if (R.is_unit(R.element_at(i))) U.unit_indices.push_back(i);
  for (size_t p = 0; p < U.unit_indices.size(); ++p) U.unit_pos[U.unit_indices[p]] = (int)p;
  if ((i64)U.unit_indices.size() != R.unit_count())
    throw std::logic_error("build_unit_group: unit count formula mismatch");
  auto mul = [&R, &U](int a, int b) {
    ResidueElement r = R.mul(R.element_at(U.unit_indices[a]), R.element_at(U.unit_indices[b]));
    return U.unit_pos.at(R.index_of(r));
  };
  int id = U.unit_pos.at(R.index_of(R.one()));
  U.eg = capture_enumerated_group((int)U.unit_indices.size(), mul, id);
  return U;
}

std::vector<i64> u1_subgroup(const ResidueRing& R, int fi) {
  const LocalFactor& F = R.factors[fi];
  std::vector<i64> out;
  for (i64 i = 0; i < F.size; ++i) {
    FieldElement r = R.local_at(fi, i);
    if (ideal_contains(F.prime, r)) continue;
    // local (N(p)-1)-th power
    FieldElement acc = fe_one();
    FieldElement b = r;
    i64 e = F.residue_norm - 1;
    while (e > 0) {
      if (e & 1) acc = R.reduce_local(fi, fe_mul(R.K, acc, b));
      b = R.reduce_local(fi, fe_mul(R.K, b, b));
      e >>= 1;
    }
    out.push_back(R.local_index(fi, acc));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<i64> reduction_kernel(const ResidueRing& R, int fi) {
  const LocalFactor& F = R.factors[fi];
  std::vector<i64> out;
  for (i64 i = 0; i < F.size; ++i) {
    FieldElement r = R.local_at(fi, i);
    if (ideal_contains(F.prime, r)) continue;
    if (ideal_contains(F.prime, fe_sub(r, fe_one()))) out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace drm
