#pragma once

#include "drm/abelian.hpp"
#include "drm/field.hpp"
#include "drm/residue.hpp"

#include <map>
#include <optional>
#include <vector>

// Class group Cl(K) via reduced binary quadratic forms, the ray class group
// Cl_f(K) via presentation + SNF, ideal classes, and idele-to-ray-class
// evaluation. For K = Q the modulus always includes the real place, so
// Cl_{f,inf}(Q) = (Z/f)^*.

namespace drm {

struct QuadForm {
  i64 a = 1, b = 0, c = 0;
  bool operator==(const QuadForm&) const = default;
  auto operator<=>(const QuadForm&) const = default;
};

QuadForm reduce_form(i64 D, QuadForm f);
std::vector<QuadForm> reduced_forms(i64 D); // sorted
QuadForm principal_form(i64 D);
QuadForm form_of_ideal(const FieldData& K, const IdealHNF& A); // reduced
IdealHNF ideal_of_form(const FieldData& K, const QuadForm& f);

struct ClassGroup {
  FieldData K;
  std::vector<QuadForm> forms; // sorted reduced forms; element ids
  EnumeratedGroup eg;

  i64 order() const { return K.rational() ? 1 : (i64)forms.size(); }
  int form_index(const QuadForm& f) const;
  Vec dlog_form(const QuadForm& f) const;
  Vec dlog_ideal(const IdealHNF& A) const;
  // reduced form realizing canonical generator j
  QuadForm generator_form(int j) const;
};

ClassGroup build_class_group(const FieldData& K);

// Finitely supported idele: explicit components at finitely many primes,
// implicit 1 elsewhere. A component is either a valuation-only entry (legal
// off the modulus) or a fraction num/den of O_K elements read in K_p.
struct IdeleComp {
  IdealHNF prime;
  bool has_elem = false;
  i64 val = 0;
  FieldElement num{1, 0}, den{1, 0};
};

struct FinIdele {
  std::vector<IdeleComp> comps;
};

struct RayClassGroup {
  FieldData K;
  IdealHNF modulus;
  bool real_place = false; // included for K = Q
  ResidueRing ring;
  UnitGroup units;
  ClassGroup cl;
  PresentedGroup pres; // over r unit-group generators + s class-group lifts
  int r = 0, s = 0;
  std::vector<IdealHNF> class_gens;  // lifts t_j of Cl(K) generators, coprime to f
  std::vector<i64> class_gen_orders; // c_j
  std::vector<IdealHNF> reps;        // per group index: least-norm coprime representative
  mutable std::map<IdealHNF, Vec> prime_cache;
  Caps caps;

  const AbelianGroup& G() const { return pres.group; }
  i64 order() const { return pres.group.order(); }
  i64 mu_image_order() const; // |image of mu_K in (O/f)^*|

  Vec rec(const ResidueElement& u) const;
  Vec prime_class(const IdealHNF& P) const;
  Vec ideal_class(const IdealHNF& a) const; // requires gcd(a, f) = 1
  // Standard approximation algorithm; lambda_salt perturbs the choice of
  // approximant (the result must not depend on it).
  Vec idele_class(const FinIdele& v, i64 lambda_salt = 0) const;
  IdealHNF representative(const Vec& cls) const;
};

RayClassGroup build_ray_class_group(const FieldData& K, const IdealHNF& f, const Caps& caps = {});

// Idele of the global element num/den: components at every prime dividing
// (num), (den) or the level's modulus.
FinIdele principal_finidele(const FieldData& K, const RayClassGroup& G, const FieldElement& num,
                            const FieldElement& den = fe_one());

// mu_K generator: -1, i, or zeta_6 depending on w.
FieldElement mu_generator(const FieldData& K);

// Reduce a field element modulo an arbitrary ideal (canonical box lift).
FieldElement fe_mod(const FieldElement& g, const IdealHNF& I);

// CRT: the unique class mod I1*I2 matching r1 mod I1 and r2 mod I2.
FieldElement crt_pair(const FieldData& K, const FieldElement& r1, const IdealHNF& I1,
                      const FieldElement& r2, const IdealHNF& I2);

// Lexicographically least conductor of the given norm.
IdealHNF conductor_of_norm(const FieldData& K, i64 N);

} // namespace drm
