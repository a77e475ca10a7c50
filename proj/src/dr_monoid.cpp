#include "drm/dr_monoid.hpp"

#include "drm/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace drm {

i64 DRLevel::raw_key(const ResidueElement& rho, const Vec& s) const {
  return ring.index_of(rho) * ray.order() + ray.G().index_of(s);
}

int DRLevel::canonical(const ResidueElement& rho, const Vec& s) const {
  auto it = orbit_of.find(raw_key(rho, s));
  if (it == orbit_of.end()) throw std::logic_error("DRLevel::canonical: unknown raw pair");
  return it->second;
}

int DRLevel::mul(int x, int y) const {
  return canonical(ring.mul(elems[x].first, elems[y].first),
                   ray.G().add(elems[x].second, elems[y].second));
}

int DRLevel::power(int x, i64 e) const {
  if (e < 0) throw std::invalid_argument("DRLevel::power: negative exponent");
  int r = identity_idx;
  int b = x;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

int DRLevel::omega(int x) const {
  // powers x, x^2, ... are eventually periodic; the cycle holds a unique
  // idempotent
  std::unordered_map<int, int> pos;
  std::vector<int> powers;
  int cur = x;
  while (!pos.count(cur)) {
    pos[cur] = (int)powers.size();
    powers.push_back(cur);
    cur = mul(cur, x);
  }
  for (size_t i = pos[cur]; i < powers.size(); ++i)
    if (is_idempotent(powers[i])) return powers[i];
  throw std::logic_error("DRLevel::omega: no idempotent in the power cycle");
}

bool DRLevel::is_invertible(int x) const {
  return ring.is_unit(elems[x].first);
}

int DRLevel::e_S(const std::vector<int>& factor_subset) const {
  ResidueElement rho = ring.zero();
  for (int fi : factor_subset) rho[fi] = ring.reduce_local(fi, fe_one());
  return canonical(rho, ray.G().zero());
}

std::vector<int> DRLevel::classify_idempotent(int e) const {
  std::vector<int> S;
  for (int fi = 0; fi < nfactors(); ++fi)
    if (ring.truncated_valuation(elems[e].first, fi) == 0) S.push_back(fi);
  return S;
}

std::vector<IdempotentRecord> DRLevel::all_idempotents() const {
  std::vector<IdempotentRecord> out;
  for (int x = 0; x < (int)elems.size(); ++x) {
    if (!is_idempotent(x)) continue;
    IdempotentRecord rec;
    rec.idx = x;
    rec.support = classify_idempotent(x);
    if ((int)rec.support.size() == nfactors() - 1) {
      rec.maximal = true;
      for (int fi = 0; fi < nfactors(); ++fi)
        if (std::find(rec.support.begin(), rec.support.end(), fi) == rec.support.end())
          rec.missing_factor = fi;
    }
    out.push_back(rec);
  }
  return out;
}

bool DRLevel::idempotent_leq(int e, int f) const {
  return mul(e, f) == e;
}

std::vector<IdempotentRecord> DRLevel::maximal_idempotents() const {
  std::vector<IdempotentRecord> out;
  for (const IdempotentRecord& rec : all_idempotents())
    if (rec.maximal) out.push_back(rec);
  return out;
}

int DRLevel::ideal_to_dr(const IdealHNF& a) const {
  std::vector<i64> m(nfactors(), 0);
  Vec s = ray.G().zero();
  for (const PrimePower& pp : ideal_factor(K, a)) {
    int fi = -1;
    for (int i = 0; i < nfactors(); ++i)
      if (ring.factors[i].prime == pp.prime) fi = i;
    if (fi >= 0)
      m[fi] = pp.e;
    else
      s = ray.G().add(s, ray.G().scale(ray.prime_class(pp.prime), pp.e));
  }
  // rho = product of uniformizer powers, reduced factor by factor so the
  // intermediate global product never grows past 64 bits
  ResidueElement rho = ring.one();
  for (int fi = 0; fi < nfactors(); ++fi)
    rho = ring.mul(rho, ring.pow(ring.reduce_global(uniformizers[fi]), m[fi]));
  // s = class of a * (prod pi_i^{m_i})^{-1}, a fractional ideal coprime to
  // the conductor; v_q(pi^m) = m * v_q(pi) for the off-modulus primes
  for (int fi = 0; fi < nfactors(); ++fi) {
    if (m[fi] == 0) continue;
    for (const PrimePower& pp : ideal_factor(K, principal_ideal(K, uniformizers[fi]))) {
      bool on_modulus = false;
      for (int i = 0; i < nfactors(); ++i)
        if (ring.factors[i].prime == pp.prime) on_modulus = true;
      if (!on_modulus)
        s = ray.G().add(s, ray.G().scale(ray.prime_class(pp.prime), -(i64)pp.e * m[fi]));
    }
  }
  return canonical(rho, s);
}

i64 DRLevel::ik_size() const {
  i64 n = 0;
  for (char c : ik_member) n += c;
  return n;
}

DRLevel build_dr(const FieldData& K, const IdealHNF& f, const Caps& caps) {
  static int next_id = 0;
  DRLevel L;
  L.K = K;
  L.conductor = f;
  L.caps = caps;
  L.level_id = next_id++;
  L.ray = build_ray_class_group(K, f, caps);
  L.ring = L.ray.ring;

  i64 h = L.ray.order();
  i64 raw_total = L.ring.size * h;
  if (raw_total > caps.orbit_cap)
    throw CapExceeded("build_dr: " + std::to_string(raw_total) + " raw pairs exceed cap " +
                      std::to_string(caps.orbit_cap));

  struct UnitAction {
    ResidueElement u;
    Vec rec_u;
  };
  std::vector<UnitAction> acts;
  for (i64 ui : L.ray.units.unit_indices) {
    ResidueElement u = L.ring.element_at(ui);
    acts.push_back({u, L.ray.rec(u)});
  }

  // ascending raw-key scan: the first unseen pair of each orbit is its
  // lexicographically least member
  L.orbit_of.reserve((size_t)raw_total);
  for (i64 key = 0; key < raw_total; ++key) {
    if (L.orbit_of.count(key)) continue;
    ResidueElement rho = L.ring.element_at(key / h);
    Vec s = L.ray.G().element_at(key % h);
    int idx = (int)L.elems.size();
    L.elems.push_back({rho, s});
    for (const UnitAction& A : acts) {
      ResidueElement r2 = L.ring.mul(A.u, rho);
      Vec s2 = L.ray.G().add(s, L.ray.G().neg(A.rec_u));
      L.orbit_of.emplace(L.raw_key(r2, s2), idx);
    }
  }

  L.identity_idx = L.canonical(L.ring.one(), L.ray.G().zero());
  L.e_empty_idx = L.canonical(L.ring.zero(), L.ray.G().zero());

  for (int fi = 0; fi < L.nfactors(); ++fi) {
    const LocalFactor& F = L.ring.factors[fi];
    const IdealHNF& P = F.prime;
    FieldElement tau{0, 0};
    bool found = false;
    for (FieldElement cand : {FieldElement{P.a, 0}, FieldElement{P.b, P.c},
                              FieldElement{P.a + P.b, P.c}}) {
      if (ideal_valuation(K, principal_ideal(K, cand), P) == 1) {
        tau = cand;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("build_dr: no basis element of valuation one");
    IdealHNF Pe1 = ideal_mul(K, F.modulus, P);
    FieldElement pi = fe_mod(tau, Pe1);
    IdealHNF M = Pe1;
    for (int j = 0; j < L.nfactors(); ++j) {
      if (j == fi) continue;
      pi = crt_pair(K, pi, M, fe_one(), L.ring.factors[j].modulus);
      M = ideal_mul(K, M, L.ring.factors[j].modulus);
    }
    L.uniformizers.push_back(pi);
  }

  for (int x = 0; x < (int)L.elems.size(); ++x)
    if (L.is_invertible(x)) L.unit_elems.push_back(x);

  // image of the integral ideals: the submonoid generated by the invertible
  // elements (1, s) together with the images of the conductor primes
  std::vector<int> gens;
  for (i64 si = 0; si < h; ++si)
    gens.push_back(L.canonical(L.ring.one(), L.ray.G().element_at(si)));
  for (int fi = 0; fi < L.nfactors(); ++fi)
    gens.push_back(L.ideal_to_dr(L.ring.factors[fi].prime));
  L.ik_member.assign(L.elems.size(), 0);
  std::vector<int> queue{L.identity_idx};
  L.ik_member[L.identity_idx] = 1;
  while (!queue.empty()) {
    int x = queue.back();
    queue.pop_back();
    for (int g : gens) {
      int y = L.mul(x, g);
      if (!L.ik_member[y]) {
        L.ik_member[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return L;
}

int transition(const DRLevel& fine, int x, const DRLevel& coarse) {
  if (!ideal_divides(fine.K, coarse.conductor, fine.conductor))
    throw std::invalid_argument("transition: coarse conductor does not divide the fine one");
  const auto& [rho, s] = fine.elems[x];
  ResidueElement rho2(coarse.nfactors());
  for (int j = 0; j < coarse.nfactors(); ++j) {
    const LocalFactor& Fc = coarse.ring.factors[j];
    int fi = -1;
    for (int i = 0; i < fine.nfactors(); ++i)
      if (fine.ring.factors[i].prime == Fc.prime) fi = i;
    if (fi < 0) throw std::logic_error("transition: missing prime factor");
    rho2[j] = fe_mod(rho[fi], Fc.modulus);
  }
  Vec s2 = coarse.ray.ideal_class(fine.ray.representative(s));
  return coarse.canonical(rho2, s2);
}

} // namespace drm
