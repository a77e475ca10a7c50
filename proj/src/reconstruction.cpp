#include "drm/reconstruction.hpp"

#include "drm/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace drm {

bool in_ohat(const DRLevel& L, int x) {
  return L.mul(x, L.e_empty_idx) == L.e_empty_idx;
}

bool in_op(const DRLevel& L, int x, int fi) {
  if (fi < 0 || fi >= L.nfactors()) throw std::invalid_argument("in_op: bad factor index");
  if (!in_ohat(L, x)) return false;
  for (int q = 0; q < L.nfactors(); ++q) {
    if (q == fi) continue;
    int eq = L.e_S({q});
    if (L.mul(x, eq) != eq) return false;
  }
  return true;
}

bool in_op_units(const DRLevel& L, int x, int fi) {
  return in_op(L, x, fi) && L.omega(x) == L.identity_idx;
}

int local_zero(const DRLevel& L, int fi) {
  std::vector<int> S;
  for (int q = 0; q < L.nfactors(); ++q)
    if (q != fi) S.push_back(q);
  return L.e_S(S);
}

bool in_op_star(const DRLevel& L, int x, int fi) {
  return in_op(L, x, fi) && x != local_zero(L, fi);
}

LocalEmbeddingView local_view(const DRLevel& L, int fi) {
  LocalEmbeddingView V;
  V.factor = fi;
  V.prime = L.ring.factors[fi].prime;
  V.zero = local_zero(L, fi);
  for (int x = 0; x < (int)L.size(); ++x) {
    if (!in_op(L, x, fi)) continue;
    V.op.push_back(x);
    if (x != V.zero) V.op_star.push_back(x);
    if (L.omega(x) == L.identity_idx) V.op_units.push_back(x);
  }
  // the embedded image: orbits of raw pairs (rho, 0) with rho = 1 at every
  // other factor
  {
    std::vector<char> seen(L.size(), 0);
    for (i64 ri = 0; ri < L.ring.size; ++ri) {
      ResidueElement rho = L.ring.element_at(ri);
      bool off_one = true;
      for (int fj = 0; fj < L.nfactors(); ++fj)
        if (fj != fi && !(rho[fj] == L.ring.one()[fj])) off_one = false;
      if (off_one) seen[L.canonical(rho, L.ray.G().zero())] = 1;
    }
    for (int x = 0; x < (int)L.size(); ++x)
      if (seen[x]) V.embedded.push_back(x);
  }
  for (int x : V.embedded)
    if (!std::binary_search(V.op.begin(), V.op.end(), x))
      throw std::logic_error("local_view: embedded element fails the equation test");
  std::vector<int> absorbing;
  for (int z : V.embedded) {
    bool abs = true;
    for (int y : V.embedded)
      if (L.mul(y, z) != z) {
        abs = false;
        break;
      }
    if (abs) absorbing.push_back(z);
  }
  if (absorbing.size() != 1 || absorbing[0] != V.zero)
    throw std::logic_error("local_view: absorbing element of the embedded image is not unique");
  return V;
}

int SigmaResult::sigma() const {
  if (candidates.size() != 1)
    throw std::logic_error("SigmaResult::sigma: candidate count " +
                           std::to_string(candidates.size()));
  return candidates[0];
}

SigmaResult sigma_of(const DRLevel& L, int x, int fi) {
  if (!in_op_star(L, x, fi)) throw std::invalid_argument("sigma_of: x not in the O_p^* image");
  SigmaResult R;
  R.x = x;
  R.factor = fi;
  for (int s : L.unit_elems)
    if (L.in_ik(L.mul(x, s))) R.candidates.push_back(s);
  return R;
}

bool ReciprocityReport::kernel_everywhere() const {
  for (const LevelVerdict& v : verdicts)
    if (!v.error.empty() || !v.kernel) return false;
  return true;
}

ReciprocityReport reciprocity_image(const FinIdele& v,
                                    const std::vector<const RayClassGroup*>& levels) {
  ReciprocityReport rep;
  for (const RayClassGroup* G : levels) {
    LevelVerdict verdict;
    verdict.conductor_norm = ideal_norm(G->modulus);
    try {
      verdict.cls = G->idele_class(v);
      verdict.kernel = G->G().is_zero(verdict.cls);
    } catch (const std::exception& e) {
      verdict.error = e.what();
    }
    rep.verdicts.push_back(std::move(verdict));
  }
  return rep;
}

RecoverResult recover_global(const FieldData& K,
                             const std::vector<std::pair<FieldElement, FieldElement>>& box,
                             const std::vector<const RayClassGroup*>& levels) {
  if (levels.empty()) throw std::invalid_argument("recover_global: no levels");
  RecoverResult out;
  for (const auto& [num, den] : box) {
    bool ok = true;
    for (const RayClassGroup* G : levels) {
      FinIdele v = principal_finidele(K, *G, num, den);
      if (!G->G().is_zero(G->idele_class(v))) {
        ok = false;
        break;
      }
    }
    (ok ? out.accepted : out.rejected).push_back({num, den});
  }
  // contrast: the same elements concentrated at a single modulus prime of
  // the finest level are no longer principal ideles
  const RayClassGroup* fine = levels.back();
  for (const auto& [num, den] : box) {
    for (const LocalFactor& F : fine->ring.factors) {
      IdeleComp c;
      c.prime = F.prime;
      c.has_elem = true;
      c.num = num;
      c.den = den;
      FinIdele v;
      v.comps.push_back(c);
      ++out.contrast_total;
      if (!reciprocity_image(v, levels).kernel_everywhere()) ++out.contrast_rejected;
    }
  }
  return out;
}

bool local_ring_intersection(const FieldData& K, const FieldElement& num, const FieldElement& den,
                             const IdealHNF& P) {
  if (num.is_zero() || den.is_zero())
    throw std::invalid_argument("local_ring_intersection: zero element");
  i64 vn = ideal_valuation(K, principal_ideal(K, num), P);
  i64 vd = ideal_valuation(K, principal_ideal(K, den), P);
  return vn - vd >= 0;
}

bool verify_u1_identity(const FieldData& K, const IdealHNF& P, int e, const Caps& caps) {
  ResidueRing R = build_residue_ring(K, ideal_pow(K, P, e), caps);
  if (R.factors.size() != 1) throw std::invalid_argument("verify_u1_identity: not a prime power");
  std::vector<i64> powers = u1_subgroup(R, 0);
  std::vector<i64> kernel = reduction_kernel(R, 0);
  if (powers != kernel) return false;
  // the kernel is exactly the congruence class 1 + P within the units
  const LocalFactor& F = R.factors[0];
  for (i64 i = 0; i < F.size; ++i) {
    FieldElement r = R.local_at(0, i);
    bool in_kernel = std::binary_search(kernel.begin(), kernel.end(), i);
    bool congruent = !ideal_contains(F.prime, r) && ideal_contains(F.prime, fe_sub(r, fe_one()));
    if (in_kernel != congruent) return false;
  }
  return true;
}

LevelInvariants level_invariants(const DRLevel& L) {
  LevelInvariants inv;
  inv.conductor_norm = ideal_norm(L.conductor);
  inv.elem_count = L.size();
  std::vector<IdempotentRecord> idem = L.all_idempotents();
  inv.idempotent_count = (i64)idem.size();
  for (const IdempotentRecord& rec : idem) {
    if (!rec.maximal) continue;
    ++inv.maximal_idempotent_count;
    const LocalFactor& F = L.ring.factors[rec.missing_factor];
    inv.np_spectrum.push_back(F.residue_norm);
    i64 uo = F.residue_norm - 1;
    for (int i = 1; i < F.e; ++i) uo *= F.residue_norm;
    inv.local_unit_orders.push_back(uo);
  }
  std::sort(inv.np_spectrum.begin(), inv.np_spectrum.end());
  std::sort(inv.local_unit_orders.begin(), inv.local_unit_orders.end());
  for (i64 d : L.ray.G().orders)
    if (d > 1) inv.unit_snf.push_back(d);
  inv.ik_size = L.ik_size();
  return inv;
}

ComparisonReport compare_fields(const std::vector<const DRLevel*>& tower1,
                                const std::vector<const DRLevel*>& tower2) {
  if (tower1.size() != tower2.size())
    throw std::invalid_argument("compare_fields: tower lengths differ");
  ComparisonReport rep;
  for (size_t i = 0; i < tower1.size(); ++i) {
    LevelInvariants a = level_invariants(*tower1[i]);
    LevelInvariants b = level_invariants(*tower2[i]);
    if (a.conductor_norm != b.conductor_norm)
      throw std::invalid_argument("compare_fields: conductor norms do not match");
    auto diff = [&](const std::string& what) {
      rep.distinguished = true;
      rep.differences.push_back("norm " + std::to_string(a.conductor_norm) + ": " + what);
    };
    if (a.elem_count != b.elem_count) diff("element count");
    if (a.idempotent_count != b.idempotent_count) diff("idempotent count");
    if (a.maximal_idempotent_count != b.maximal_idempotent_count)
      diff("maximal idempotent count");
    if (a.unit_snf != b.unit_snf) diff("unit group type");
    if (a.np_spectrum != b.np_spectrum) diff("residue norm spectrum");
    if (a.local_unit_orders != b.local_unit_orders) diff("local unit orders");
    if (a.ik_size != b.ik_size) diff("ideal image size");
    rep.levels.push_back({std::move(a), std::move(b)});
  }
  return rep;
}

} // namespace drm
