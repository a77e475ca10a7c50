#include "drm/verify.hpp"

#include "drm/errors.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace drm {

bool SuiteReport::pass() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

std::vector<std::string> suite_names() {
  return {"idempotents", "omega", "local", "sigma", "reciprocity", "u1", "transitions", "all"};
}

namespace {

struct UnitAction {
  ResidueElement u;
  Vec rec_u;
};

std::vector<UnitAction> unit_actions(const DRLevel& L) {
  std::vector<UnitAction> acts;
  for (i64 ui : L.ray.units.unit_indices) {
    ResidueElement u = L.ring.element_at(ui);
    acts.push_back({u, L.ray.rec(u)});
  }
  return acts;
}

bool oracle_in_ohat(const DRLevel& L, const std::vector<UnitAction>& acts, int x) {
  const Vec& s = L.elems[x].second;
  for (const UnitAction& A : acts)
    if (s == A.rec_u) return true;
  return false;
}

// coordinate form of the equation x * e_{q} = e_{q}: a unit witness u with
// (u * rho)_q = 1 and rec(u) = s, found by scanning the unit residues
bool eq_witness(const DRLevel& L, const std::vector<UnitAction>& acts, int x, int q) {
  const auto& [rho, s] = L.elems[x];
  for (const UnitAction& A : acts) {
    if (!(A.rec_u == s)) continue;
    if (L.ring.mul(A.u, rho)[q] == L.ring.reduce_local(q, fe_one())) return true;
  }
  return false;
}

bool oracle_in_op(const DRLevel& L, const std::vector<UnitAction>& acts, int x, int fi) {
  if (!oracle_in_ohat(L, acts, x)) return false;
  for (int q = 0; q < L.nfactors(); ++q)
    if (q != fi && !eq_witness(L, acts, x, q)) return false;
  return true;
}

// representative (rho~, 0) of x with rho~ = 1 at every factor other than fi
bool op_representative(const DRLevel& L, const std::vector<UnitAction>& acts, int x, int fi,
                       ResidueElement* out) {
  const auto& [rho, s] = L.elems[x];
  for (const UnitAction& A : acts) {
    if (s != A.rec_u) continue;
    ResidueElement r = L.ring.mul(A.u, rho);
    bool off_one = true;
    for (int q = 0; q < L.nfactors(); ++q)
      if (q != fi && !(r[q] == L.ring.reduce_local(q, fe_one()))) off_one = false;
    if (off_one) {
      if (out) *out = r;
      return true;
    }
  }
  return false;
}

std::string elem_str(const DRLevel& L, int x) {
  const auto& [rho, s] = L.elems[x];
  std::ostringstream os;
  os << "[(";
  for (size_t i = 0; i < rho.size(); ++i)
    os << (i ? "," : "") << fe_str(rho[i]);
  os << "),(";
  for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << ")]";
  return os.str();
}

struct Checker {
  std::vector<CheckResult>& out;
  void record(const std::string& name, bool pass, const std::string& witness = "") {
    out.push_back({name, pass, pass ? "" : witness});
  }
};

void suite_idempotents(const std::vector<DRLevel>& levels, Checker& ck) {
  for (const DRLevel& L : levels) {
    std::string tag = "n" + std::to_string(ideal_norm(L.conductor)) + ".";
    int k = L.nfactors();
    std::vector<IdempotentRecord> idem = L.all_idempotents();
    ck.record(tag + "idempotent_count", (i64)idem.size() == (1LL << k),
              "found " + std::to_string(idem.size()));
    bool normal = true, maximal_ok = true;
    std::string w;
    int max_count = 0;
    for (const IdempotentRecord& r : idem) {
      if (L.e_S(r.support) != r.idx) {
        normal = false;
        w = elem_str(L, r.idx);
      }
      if (r.maximal) {
        ++max_count;
        if (L.ring.factors[r.missing_factor].prime ==
            IdealHNF{0, 0, 0})
          maximal_ok = false;
      }
    }
    ck.record(tag + "idempotent_normal_form", normal, w);
    ck.record(tag + "maximal_count", max_count == k,
              "found " + std::to_string(max_count) + " expected " + std::to_string(k));
    // labels of maximal idempotents = conductor prime factorization
    std::vector<IdealHNF> labels, primes;
    for (const IdempotentRecord& r : idem)
      if (r.maximal) labels.push_back(L.ring.factors[r.missing_factor].prime);
    for (const PrimePower& pp : ideal_factor(L.K, L.conductor)) primes.push_back(pp.prime);
    std::sort(labels.begin(), labels.end());
    std::sort(primes.begin(), primes.end());
    ck.record(tag + "maximal_labels", labels == primes, "label mismatch");
    (void)maximal_ok;
    bool product = true, poset = true;
    for (int a = 0; a < (1 << k) && (product || poset); ++a) {
      std::vector<int> S;
      for (int i = 0; i < k; ++i)
        if (a >> i & 1) S.push_back(i);
      for (int b = 0; b < (1 << k); ++b) {
        std::vector<int> T, I;
        for (int i = 0; i < k; ++i) {
          if (b >> i & 1) T.push_back(i);
          if ((a & b) >> i & 1) I.push_back(i);
        }
        if (L.mul(L.e_S(S), L.e_S(T)) != L.e_S(I)) product = false;
        bool subset = (a & b) == a;
        if (L.idempotent_leq(L.e_S(S), L.e_S(T)) != subset) poset = false;
      }
    }
    ck.record(tag + "product_law", product, "e_S * e_T != e_{S cap T}");
    ck.record(tag + "leq_poset", poset, "leq does not match subset order");
  }
}

void suite_omega(const std::vector<DRLevel>& levels, Checker& ck, std::mt19937_64& rng) {
  for (const DRLevel& L : levels) {
    std::string tag = "n" + std::to_string(ideal_norm(L.conductor)) + ".";
    i64 n = L.size();
    bool idempotent_valued = true, invert_ok = true;
    std::string w1, w2;
    std::vector<int> sample;
    if (n <= 10000)
      for (int x = 0; x < n; ++x) sample.push_back(x);
    else
      for (int i = 0; i < 2000; ++i) sample.push_back((int)(rng() % n));
    for (int x : sample) {
      int ox = L.omega(x);
      if (!L.is_idempotent(ox) || L.omega(ox) != ox) {
        idempotent_valued = false;
        w1 = elem_str(L, x);
      }
    }
    ck.record(tag + "omega_idempotent", idempotent_valued, w1);
    if (n <= 10000) {
      for (int x = 0; x < n; ++x) {
        bool by_omega = L.omega(x) == L.identity_idx;
        bool by_scan = false;
        for (int y = 0; y < n && !by_scan; ++y)
          if (L.mul(x, y) == L.identity_idx && L.mul(y, x) == L.identity_idx) by_scan = true;
        bool listed =
            std::binary_search(L.unit_elems.begin(), L.unit_elems.end(), x);
        if (by_omega != by_scan || by_scan != L.is_invertible(x) || listed != by_scan) {
          invert_ok = false;
          w2 = elem_str(L, x);
          break;
        }
      }
      ck.record(tag + "invertibility_criterion", invert_ok, w2);
    }
    ck.record(tag + "units_iso_ray_class",
              (i64)L.unit_elems.size() == L.ray.order(),
              std::to_string(L.unit_elems.size()) + " units vs |Cl_f| = " +
                  std::to_string(L.ray.order()));
  }
}

void suite_local(const std::vector<DRLevel>& levels, Checker& ck) {
  for (const DRLevel& L : levels) {
    std::string tag = "n" + std::to_string(ideal_norm(L.conductor)) + ".";
    std::vector<UnitAction> acts = unit_actions(L);
    bool ohat_ok = true, op_ok = true, chain_ok = true, star_ok = true, units_ok = true;
    std::string w;
    for (int x = 0; x < (int)L.size(); ++x) {
      bool oh = in_ohat(L, x);
      if (oh != oracle_in_ohat(L, acts, x)) {
        ohat_ok = false;
        w = elem_str(L, x);
      }
      for (int fi = 0; fi < L.nfactors(); ++fi) {
        bool op = in_op(L, x, fi);
        bool op_oracle = oracle_in_op(L, acts, x, fi);
        if (op != op_oracle) {
          op_ok = false;
          w = elem_str(L, x);
        }
        // every element with an explicit O_p representative passes the
        // equation test; the converse can fail at a single level
        if (op_representative(L, acts, x, fi, nullptr) && !op) {
          op_ok = false;
          w = elem_str(L, x) + " embedded but rejected";
        }
        bool units = in_op_units(L, x, fi);
        bool star = in_op_star(L, x, fi);
        if ((star && !op) || (op && !oh)) chain_ok = false;
        if (units && !star) chain_ok = false;
        int tv = L.ring.truncated_valuation(L.elems[x].first, fi);
        if (star != (op_oracle && x != local_zero(L, fi))) {
          star_ok = false;
          w = elem_str(L, x);
        }
        if (units != (op_oracle && tv == 0)) {
          units_ok = false;
          w = elem_str(L, x);
        }
      }
    }
    ck.record(tag + "in_ohat_equals_oracle", ohat_ok, w);
    ck.record(tag + "in_op_equals_oracle", op_ok, w);
    ck.record(tag + "membership_chain", chain_ok, w);
    ck.record(tag + "star_coordinate_oracle", star_ok, w);
    ck.record(tag + "units_coordinate_oracle", units_ok, w);
    bool zero_ok = true;
    std::string wz;
    for (int fi = 0; fi < L.nfactors(); ++fi) {
      try {
        LocalEmbeddingView V = local_view(L, fi);
        std::vector<int> S;
        for (int q = 0; q < L.nfactors(); ++q)
          if (q != fi) S.push_back(q);
        if (V.zero != L.e_S(S)) {
          zero_ok = false;
          wz = "zero is not e_{supp minus p} at factor " + std::to_string(fi);
        }
      } catch (const std::exception& e) {
        zero_ok = false;
        wz = e.what();
      }
    }
    ck.record(tag + "local_zero_unique_absorbing", zero_ok, wz);
  }
}

void suite_sigma(const std::vector<DRLevel>& levels, Checker& ck) {
  for (const DRLevel& L : levels) {
    std::string tag = "n" + std::to_string(ideal_norm(L.conductor)) + ".";
    std::vector<UnitAction> acts = unit_actions(L);
    bool formula_ok = true, law_ok = true, unique_ok = true;
    std::string wf, wl, wu;
    i64 nunits = (i64)L.unit_elems.size();
    for (int fi = 0; fi < L.nfactors(); ++fi) {
      for (int x = 0; x < (int)L.size(); ++x) {
        if (!in_op_star(L, x, fi)) continue;
        // the sigma correspondence is about actual local elements, so only
        // elements with an explicit O_p representative are in scope; the
        // equation test may accept more at a single level
        ResidueElement rep;
        if (!op_representative(L, acts, x, fi, &rep)) continue;
        SigmaResult res = sigma_of(L, x, fi);
        if ((i64)res.candidates.size() != nunits) {
          law_ok = false;
          wl = elem_str(L, x) + " count " + std::to_string(res.candidates.size());
        }
        if (res.candidates.size() != 1) {
          unique_ok = false;
          wu = "falsification: " + elem_str(L, x) + " at factor " + std::to_string(fi) +
               " has " + std::to_string(res.candidates.size()) +
               " candidates (= |DR^x|); uniqueness holds only in the profinite limit";
        }
        FinIdele w;
        IdeleComp c;
        c.prime = L.ring.factors[fi].prime;
        c.has_elem = true;
        c.num = rep[fi];
        w.comps.push_back(c);
        int sigma_f = L.canonical(L.ring.one(), L.ray.idele_class(w));
        int v = L.ring.truncated_valuation(L.elems[x].first, fi);
        bool in_cand = std::find(res.candidates.begin(), res.candidates.end(), sigma_f) !=
                       res.candidates.end();
        bool target_ok =
            L.mul(x, sigma_f) == L.ideal_to_dr(ideal_pow(L.K, L.ring.factors[fi].prime, v));
        if (!in_cand || !target_ok) {
          formula_ok = false;
          wf = elem_str(L, x) + (in_cand ? " product mismatch" : " formula sigma missing");
        }
      }
    }
    ck.record(tag + "sigma_formula_oracle", formula_ok, wf);
    ck.record(tag + "sigma_count_equals_units", law_ok, wl);
    ck.record(tag + "sigma_uniqueness", unique_ok, wu);
  }
}

std::vector<std::pair<FieldElement, FieldElement>> kernel_box(const FieldData& K, i64 norm_cap) {
  std::vector<std::pair<FieldElement, FieldElement>> box;
  if (K.rational()) {
    for (i64 n = 1; n <= norm_cap && n <= 30; ++n) box.push_back({{n, 0}, fe_one()});
  } else {
    for (i64 x = -5; x <= 5; ++x)
      for (i64 y = -5; y <= 5; ++y) {
        FieldElement g{x, y};
        if (g.is_zero()) continue;
        if (fe_norm(K, g) <= norm_cap) box.push_back({g, fe_one()});
      }
  }
  return box;
}

void suite_reciprocity(const FieldData& K, const std::vector<DRLevel>& levels, Checker& ck) {
  std::vector<const RayClassGroup*> rays;
  for (const DRLevel& L : levels) rays.push_back(&L.ray);
  std::vector<std::pair<FieldElement, FieldElement>> box = kernel_box(K, 30);
  RecoverResult rec = recover_global(K, box, rays);
  std::string w;
  for (const auto& [n, d] : rec.rejected) w += fe_str(n) + " ";
  ck.record("principal_kernel", rec.rejected.empty(), "rejected global elements: " + w);
  bool any_nontrivial = false;
  for (const DRLevel& L : levels)
    if (L.ray.order() > 1) any_nontrivial = true;
  // With trivial ray class groups at every level the kernel is everything,
  // so rejection is impossible and the check is vacuous.
  ck.record("contrast_rejection", !any_nontrivial || rec.contrast_rejected > 0,
            "no single-prime idele was rejected");
  bool salt_ok = true;
  std::string ws;
  for (const DRLevel& L : levels) {
    for (size_t i = 0; i < box.size() && i < 8; ++i) {
      FinIdele v = principal_finidele(K, L.ray, box[i].first, box[i].second);
      Vec c0 = L.ray.idele_class(v, 0);
      for (i64 salt : {1, 7, 13})
        if (L.ray.idele_class(v, salt) != c0) {
          salt_ok = false;
          ws = fe_str(box[i].first) + " at norm " + std::to_string(ideal_norm(L.conductor));
        }
    }
  }
  ck.record("approximant_independence", salt_ok, ws);
  // trivial at a finer level implies trivial at a coarser one
  bool mono_ok = true;
  std::string wm;
  for (const DRLevel& fine : levels) {
    for (const DRLevel& coarse : levels) {
      if (&fine == &coarse || !ideal_divides(K, coarse.conductor, fine.conductor)) continue;
      for (const LocalFactor& F : fine.ring.factors) {
        for (const auto& [n, d] : box) {
          if (!fe_norm(K, n) || ideal_contains(F.prime, n)) continue;
          FinIdele v;
          IdeleComp c;
          c.prime = F.prime;
          c.has_elem = true;
          c.num = n;
          v.comps.push_back(c);
          bool fine_triv, coarse_triv;
          try {
            fine_triv = fine.ray.G().is_zero(fine.ray.idele_class(v));
            coarse_triv = coarse.ray.G().is_zero(coarse.ray.idele_class(v));
          } catch (const std::exception&) {
            continue;
          }
          if (fine_triv && !coarse_triv) {
            mono_ok = false;
            wm = fe_str(n) + " trivial at " + std::to_string(ideal_norm(fine.conductor)) +
                 " but not at " + std::to_string(ideal_norm(coarse.conductor));
          }
        }
      }
    }
  }
  ck.record("kernel_monotone_under_refinement", mono_ok, wm);
}

void suite_u1(const FieldData& K, Checker& ck, i64 norm_cap, const Caps& caps) {
  bool ok = true;
  std::string w;
  i64 checked = 0;
  for (i64 p = 2; p * p <= norm_cap * norm_cap && p <= norm_cap; ++p) {
    if (!is_prime_ll(p)) continue;
    for (const IdealHNF& P : primes_above(K, p)) {
      i64 q = ideal_norm(P);
      for (int e = 1;; ++e) {
        i64 npow = 1;
        bool over = false;
        for (int i = 0; i < e; ++i) {
          npow *= q;
          if (npow > norm_cap) {
            over = true;
            break;
          }
        }
        if (over) break;
        ++checked;
        if (!verify_u1_identity(K, P, e, caps)) {
          ok = false;
          w = "p=" + std::to_string(p) + " e=" + std::to_string(e);
        }
      }
    }
  }
  ck.record("u1_identity", ok && checked > 0,
            checked ? w : "no prime powers under the bound");
}

void suite_transitions(const FieldData& K, const std::vector<DRLevel>& levels, Checker& ck,
                       std::mt19937_64& rng) {
  bool any_pair = false;
  bool hom_ok = true, omega_ok = true, es_ok = true, ideal_ok = true, id_ok = true;
  std::string wh, wo, we, wi;
  for (const DRLevel& fine : levels) {
    for (const DRLevel& coarse : levels) {
      if (&fine == &coarse || !ideal_divides(K, coarse.conductor, fine.conductor)) continue;
      any_pair = true;
      if (transition(fine, fine.identity_idx, coarse) != coarse.identity_idx) id_ok = false;
      i64 n = fine.size();
      int pairs = (int)std::min<i64>(400, n * n);
      for (int t = 0; t < pairs; ++t) {
        int x = (int)(rng() % n), y = (int)(rng() % n);
        int lhs = transition(fine, fine.mul(x, y), coarse);
        int rhs = coarse.mul(transition(fine, x, coarse), transition(fine, y, coarse));
        if (lhs != rhs) {
          hom_ok = false;
          wh = elem_str(fine, x) + " * " + elem_str(fine, y);
        }
        if (transition(fine, fine.omega(x), coarse) != coarse.omega(transition(fine, x, coarse))) {
          omega_ok = false;
          wo = elem_str(fine, x);
        }
      }
      for (int a = 0; a < (1 << fine.nfactors()); ++a) {
        std::vector<int> S;
        for (int i = 0; i < fine.nfactors(); ++i)
          if (a >> i & 1) S.push_back(i);
        std::vector<int> Sc;
        for (int j = 0; j < coarse.nfactors(); ++j)
          for (int i : S)
            if (coarse.ring.factors[j].prime == fine.ring.factors[i].prime) Sc.push_back(j);
        if (transition(fine, fine.e_S(S), coarse) != coarse.e_S(Sc)) {
          es_ok = false;
          we = "subset mask " + std::to_string(a);
        }
      }
      for (const IdealHNF& a : ideals_up_to(K, 20)) {
        if (a.is_one()) continue;
        if (transition(fine, fine.ideal_to_dr(a), coarse) != coarse.ideal_to_dr(a)) {
          ideal_ok = false;
          wi = ideal_str(a);
        }
      }
    }
  }
  ck.record("tower_has_divisible_pair", any_pair, "no divisible conductor pair in the list");
  ck.record("transition_identity", id_ok, "identity not preserved");
  ck.record("transition_hom", hom_ok, wh);
  ck.record("transition_omega", omega_ok, wo);
  ck.record("transition_e_S", es_ok, we);
  ck.record("transition_ideal_image", ideal_ok, wi);
}

} // namespace

SuiteReport run_suite(const std::string& suite, const FieldData& K,
                      const std::vector<IdealHNF>& conductors, uint64_t seed, const Caps& caps) {
  std::vector<std::string> names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw std::invalid_argument("run_suite: unknown suite '" + suite + "'");
  SuiteReport rep;
  rep.suite = suite;
  rep.field = K.rational() ? "Q" : std::to_string(K.disc);
  std::mt19937_64 rng(seed);
  std::vector<DRLevel> levels;
  for (const IdealHNF& f : conductors) {
    rep.conductor_norms.push_back(ideal_norm(f));
    if (suite != "u1") levels.push_back(build_dr(K, f, caps));
  }
  Checker ck{rep.checks};
  bool all = suite == "all";
  if (all || suite == "idempotents") suite_idempotents(levels, ck);
  if (all || suite == "omega") suite_omega(levels, ck, rng);
  if (all || suite == "local") suite_local(levels, ck);
  if (all || suite == "sigma") suite_sigma(levels, ck);
  if (all || suite == "reciprocity") suite_reciprocity(K, levels, ck);
  if (all || suite == "u1") suite_u1(K, ck, 2000, caps);
  if (all || suite == "transitions") suite_transitions(K, levels, ck, rng);
  return rep;
}

} // namespace drm
