#include "drm/class_group.hpp"

#include "drm/errors.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace drm {

QuadForm principal_form(i64 D) {
  if (mod_floor(D, 4) == 0) return {1, 0, -D / 4};
  return {1, 1, (1 - D) / 4};
}

QuadForm reduce_form(i64 D, QuadForm f) {
  while (true) {
    // normalize b into (-a, a]
    i64 b = f.a - mod_floor(f.a - f.b, 2 * f.a);
    i64 c = (b * b - D) / (4 * f.a);
    f = {f.a, b, c};
    if (f.a > f.c) {
      f = {f.c, -f.b, f.a};
      continue;
    }
    break;
  }
  if (f.a == f.c && f.b < 0) f.b = -f.b;
  return f;
}

std::vector<QuadForm> reduced_forms(i64 D) {
  std::vector<QuadForm> out;
  for (i64 a = 1; 3 * a * a <= -D; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      if (mod_floor(b, 2) != mod_floor(D, 2)) continue;
      i64 num = b * b - D;
      if (num % (4 * a) != 0) continue;
      i64 c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (gcd_ll(gcd_ll(a, b), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

QuadForm form_of_ideal(const FieldData& K, const IdealHNF& A) {
  if (K.rational()) throw std::invalid_argument("form_of_ideal: rational field");
  i64 D = K.disc, n = K.omega_norm();
  // primitive part: divide out the content c
  i64 a = A.a / A.c, b = A.b / A.c;
  // oriented basis convention: middle coefficient -(2b + D) makes the
  // form <-> ideal maps mutually inverse
  QuadForm f{a, -(2 * b + D), (b * b + D * b + n) / a};
  return reduce_form(D, f);
}

IdealHNF ideal_of_form(const FieldData& K, const QuadForm& f) {
  // Z*a + Z*((-b + sqrt(D))/2) = Z*a + Z*((-b - D)/2 + omega)
  return ideal_from_generators(K, {{f.a, 0}, {(-f.b - K.disc) / 2, 1}});
}

int ClassGroup::form_index(const QuadForm& f) const {
  auto it = std::lower_bound(forms.begin(), forms.end(), f);
  if (it == forms.end() || !(*it == f)) throw std::logic_error("form_index: not a reduced form");
  return (int)(it - forms.begin());
}

Vec ClassGroup::dlog_form(const QuadForm& f) const {
  return eg.dlog[form_index(f)];
}

Vec ClassGroup::dlog_ideal(const IdealHNF& A) const {
  if (K.rational()) return eg.group.zero();
  return dlog_form(form_of_ideal(K, A));
}

QuadForm ClassGroup::generator_form(int j) const {
  return forms[eg.generators[j]];
}

ClassGroup build_class_group(const FieldData& K) {
  ClassGroup C;
  C.K = K;
  if (K.rational()) {
    C.eg = capture_enumerated_group(1, [](int, int) { return 0; }, 0);
    return C;
  }
  C.forms = reduced_forms(K.disc);
  auto mul = [&C, &K](int i, int j) {
    IdealHNF prod = ideal_mul(K, ideal_of_form(K, C.forms[i]), ideal_of_form(K, C.forms[j]));
    return C.form_index(form_of_ideal(K, prod));
  };
  int id = (int)(std::lower_bound(C.forms.begin(), C.forms.end(), reduce_form(K.disc, principal_form(K.disc))) -
                 C.forms.begin());
  C.eg = capture_enumerated_group((int)C.forms.size(), mul, id);
  return C;
}

FieldElement mu_generator(const FieldData& K) {
  if (K.unit_order == 2) return {-1, 0};
  return {2, 1}; // omega + 2: equals i for D=-4, zeta_6 for D=-3
}

FieldElement fe_mod(const FieldElement& g, const IdealHNF& I) {
  i64 yr = mod_floor(g.y, I.c);
  i64 k = (g.y - yr) / I.c;
  i64 xr = mod_floor(g.x - k * I.b, I.a);
  return {xr, yr};
}

FieldElement crt_pair(const FieldData& K, const FieldElement& r1, const IdealHNF& I1,
                      const FieldElement& r2, const IdealHNF& I2) {
  // find xi in I1 with xi == r2 - r1 (mod I2); then r1 + xi works.
  // unknowns (s, t, k1, k2): s*v1 + t*v2 - k1*(A,0) - k2*(B,C) = w
  FieldElement w = fe_sub(r2, r1);
  Mat Mt = {
      {I1.a, 0},
      {I1.b, I1.c},
      {-I2.a, 0},
      {-I2.b, -I2.c},
  }; // transpose of the 2x4 system matrix
  SmithResult S = smith_normal_form(Mt);
  // M z = w  with M = Vinv^T D^T U^T (indices per derivation): zeta_i = (V^T w)_i / d_i
  Vec vw(2);
  for (int i = 0; i < 2; ++i) vw[i] = S.V[0][i] * w.x + S.V[1][i] * w.y;
  Vec zeta(4, 0);
  for (int i = 0; i < 2; ++i) {
    if (S.diag[i] == 0 || vw[i] % S.diag[i] != 0)
      throw std::logic_error("crt_pair: moduli not coprime");
    zeta[i] = vw[i] / S.diag[i];
  }
  Vec z(4, 0);
  for (int j = 0; j < 4; ++j) z[j] = S.U[0][j] * zeta[0] + S.U[1][j] * zeta[1];
  FieldElement xi = {z[0] * I1.a + z[1] * I1.b, z[1] * I1.c};
  IdealHNF I12 = ideal_mul(K, I1, I2);
  return fe_mod(fe_add(r1, xi), I12);
}

i64 RayClassGroup::mu_image_order() const {
  if (K.rational()) return 1;
  if (r == 0) return 1;
  ResidueElement z = ring.reduce_global(mu_generator(K));
  return units.eg.group.element_order(units.dlog(ring, z));
}

Vec RayClassGroup::rec(const ResidueElement& u) const {
  Vec expo = units.dlog(ring, u);
  expo.resize(r + s, 0);
  return pres.project(expo);
}

Vec RayClassGroup::prime_class(const IdealHNF& P) const {
  auto it = prime_cache.find(P);
  if (it != prime_cache.end()) return it->second;
  if (!ideals_coprime(K, P, modulus))
    throw std::invalid_argument("prime_class: prime divides the modulus");
  Vec b = cl.dlog_ideal(P);
  IdealHNF q = P;
  std::vector<i64> n(s, 0);
  for (int j = 0; j < s; ++j) {
    n[j] = mod_floor(-b[j], class_gen_orders[j]);
    q = ideal_mul(K, q, ideal_pow(K, class_gens[j], n[j]));
  }
  auto gamma = principal_generator(K, q);
  if (!gamma) throw std::logic_error("prime_class: expected principal ideal");
  Vec expo = units.dlog(ring, ring.reduce_global(*gamma));
  expo.resize(r + s, 0);
  for (int j = 0; j < s; ++j) expo[r + j] = -n[j];
  Vec cls = pres.project(expo);
  prime_cache[P] = cls;
  return cls;
}

Vec RayClassGroup::ideal_class(const IdealHNF& a) const {
  if (!ideals_coprime(K, a, modulus))
    throw std::invalid_argument("ideal_class: ideal not coprime to the modulus");
  Vec res = G().zero();
  for (const PrimePower& pp : ideal_factor(K, a))
    res = G().add(res, G().scale(prime_class(pp.prime), pp.e));
  return res;
}

Vec RayClassGroup::idele_class(const FinIdele& v, i64 lambda_salt) const {
  // fractional components: evaluate numerators and denominators separately
  bool frac = false;
  for (const auto& c : v.comps)
    if (c.has_elem && !(c.den == fe_one())) frac = true;
  if (frac) {
    FinIdele vnum, vden;
    for (const auto& c : v.comps) {
      IdeleComp cn = c;
      if (c.has_elem) {
        cn.den = fe_one();
        IdeleComp cd = c;
        cd.num = c.den;
        cd.den = fe_one();
        vden.comps.push_back(cd);
      }
      vnum.comps.push_back(cn);
    }
    return G().add(idele_class(vnum, lambda_salt), G().neg(idele_class(vden, lambda_salt)));
  }

  size_t nf = ring.factors.size();
  std::vector<FieldElement> target(nf, fe_one());
  std::vector<char> target_set(nf, 0);
  std::map<IdealHNF, i64> vals; // valuations of v at primes off the modulus
  for (const auto& c : v.comps) {
    int fi = -1;
    for (size_t i = 0; i < nf; ++i)
      if (ring.factors[i].prime == c.prime) fi = (int)i;
    if (fi >= 0) {
      if (!c.has_elem)
        throw std::invalid_argument("idele_class: unit data required at primes dividing the modulus");
      if (target_set[fi]) throw std::invalid_argument("idele_class: duplicate component");
      if (c.num.is_zero()) throw std::invalid_argument("idele_class: zero component");
      target[fi] = c.num;
      target_set[fi] = 1;
    } else {
      i64 val = c.has_elem ? ideal_valuation(K, principal_ideal(K, c.num), c.prime) : c.val;
      vals[c.prime] += val;
    }
  }

  // approximant lambda == target mod p^(a+e) at every p | f
  FieldElement lam = fe_one();
  IdealHNF Mi = ideal_one();
  for (size_t fi = 0; fi < nf; ++fi) {
    const LocalFactor& F = ring.factors[fi];
    i64 a = ideal_valuation(K, principal_ideal(K, target[fi]), F.prime);
    IdealHNF Ifi = ideal_pow(K, F.prime, a + F.e);
    lam = crt_pair(K, lam, Mi, fe_mod(target[fi], Ifi), Ifi);
    Mi = ideal_mul(K, Mi, Ifi);
  }
  if (lambda_salt != 0 && !Mi.is_one()) {
    i64 s1 = lambda_salt % 5, s2 = (lambda_salt / 5) % 5;
    if (K.rational())
      lam = fe_add(lam, {(s1 + s2) * Mi.a, 0});
    else
      lam = fe_add(lam, {s1 * Mi.a + s2 * Mi.b, s2 * Mi.c});
  }
  if (K.rational()) {
    while (lam.x <= 0) lam.x += Mi.a;
  }
  if (lam.is_zero()) lam = fe_add(lam, {Mi.a, 0});

  for (const PrimePower& pp : ideal_factor(K, principal_ideal(K, lam))) {
    bool on_modulus = false;
    for (size_t i = 0; i < nf; ++i)
      if (ring.factors[i].prime == pp.prime) on_modulus = true;
    if (on_modulus) continue;
    vals[pp.prime] -= pp.e;
  }
  Vec res = G().zero();
  for (const auto& [P, e] : vals)
    if (e != 0) res = G().add(res, G().scale(prime_class(P), e));
  return res;
}

IdealHNF RayClassGroup::representative(const Vec& cls) const {
  return reps[G().index_of(cls)];
}

RayClassGroup build_ray_class_group(const FieldData& K, const IdealHNF& f, const Caps& caps) {
  RayClassGroup R;
  R.K = K;
  R.modulus = f;
  R.real_place = K.rational();
  R.caps = caps;
  R.ring = build_residue_ring(K, f, caps);
  R.units = build_unit_group(R.ring);
  R.cl = build_class_group(K);
  R.r = (int)R.units.eg.group.orders.size();
  R.s = (int)R.cl.eg.group.orders.size();

  // lifts of the class-group generators, coprime to f
  for (int j = 0; j < R.s; ++j) {
    R.class_gen_orders.push_back(R.cl.eg.group.orders[j]);
    Vec want(R.s, 0);
    want[j] = 1;
    bool found = false;
    for (i64 B = 16; B <= 4096 && !found; B *= 2) {
      for (const IdealHNF& t : ideals_up_to(K, B)) {
        if (t.is_one() || !ideals_coprime(K, t, f)) continue;
        if (R.cl.dlog_ideal(t) == want) {
          R.class_gens.push_back(t);
          found = true;
          break;
        }
      }
    }
    if (!found) throw CapExceeded("build_ray_class_group: no coprime class-generator lift found");
  }

  Mat rel;
  for (int i = 0; i < R.r; ++i) {
    Vec row(R.r + R.s, 0);
    row[i] = R.units.eg.group.orders[i];
    rel.push_back(row);
  }
  if (!K.rational() && R.r > 0) {
    Vec row = R.units.dlog(R.ring, R.ring.reduce_global(mu_generator(K)));
    row.resize(R.r + R.s, 0);
    rel.push_back(row);
  }
  for (int j = 0; j < R.s; ++j) {
    IdealHNF tc = ideal_pow(K, R.class_gens[j], R.class_gen_orders[j]);
    auto gamma = principal_generator(K, tc);
    if (!gamma) throw std::logic_error("build_ray_class_group: t^c not principal");
    Vec row(R.r + R.s, 0);
    if (R.r > 0) {
      Vec d = R.units.dlog(R.ring, R.ring.reduce_global(*gamma));
      for (int i = 0; i < R.r; ++i) row[i] = -d[i];
    }
    row[R.r + j] = R.class_gen_orders[j];
    rel.push_back(row);
  }
  R.pres = present_group(R.r + R.s, rel);

  // least-norm lexicographic representatives per ray class
  i64 order = R.order();
  R.reps.assign(order, IdealHNF{0, 0, 0});
  i64 filled = 0;
  for (i64 B = 16; B <= 65536 && filled < order; B *= 2) {
    filled = 0;
    for (auto& rep : R.reps) rep = {0, 0, 0};
    for (const IdealHNF& a : ideals_up_to(K, B)) {
      if (!ideals_coprime(K, a, f)) continue;
      i64 idx = R.G().index_of(R.ideal_class(a));
      if (R.reps[idx].a == 0) {
        R.reps[idx] = a;
        if (++filled == order) break;
      }
    }
  }
  if (filled < order) throw CapExceeded("build_ray_class_group: representative search bound exceeded");
  return R;
}

FinIdele principal_finidele(const FieldData& K, const RayClassGroup& G, const FieldElement& num,
                            const FieldElement& den) {
  if (num.is_zero() || den.is_zero())
    throw std::invalid_argument("principal_finidele: zero element");
  std::vector<IdealHNF> supp;
  for (const auto& pp : ideal_factor(K, principal_ideal(K, num))) supp.push_back(pp.prime);
  if (!(den == fe_one()))
    for (const auto& pp : ideal_factor(K, principal_ideal(K, den))) supp.push_back(pp.prime);
  for (const auto& F : G.ring.factors) supp.push_back(F.prime);
  std::sort(supp.begin(), supp.end());
  supp.erase(std::unique(supp.begin(), supp.end()), supp.end());
  FinIdele v;
  for (const IdealHNF& P : supp) {
    IdeleComp c;
    c.prime = P;
    c.has_elem = true;
    c.num = num;
    c.den = den;
    v.comps.push_back(c);
  }
  return v;
}

IdealHNF conductor_of_norm(const FieldData& K, i64 N) {
  for (const IdealHNF& a : ideals_up_to(K, N))
    if (ideal_norm(a) == N) return a;
  throw std::invalid_argument("conductor_of_norm: no ideal of norm " + std::to_string(N));
}

} // namespace drm
