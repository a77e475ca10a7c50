#include "drm/field.hpp"

#include "drm/errors.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <stdexcept>

namespace drm {

bool is_fundamental_discriminant(i64 disc) {
  if (disc >= 0) return false;
  auto squarefree = [](i64 m) {
    m = std::abs(m);
    for (i64 d = 2; d * d <= m; ++d)
      if (m % (d * d) == 0) return false;
    return true;
  };
  i64 r = mod_floor(disc, 4);
  if (r == 1) return squarefree(disc);
  if (r == 0) {
    i64 m = disc / 4;
    i64 mr = mod_floor(m, 4);
    return (mr == 2 || mr == 3) && squarefree(m);
  }
  return false;
}

FieldData make_field(i64 disc) {
  FieldData K;
  if (disc == 1) {
    K.kind = FieldKind::Rational;
    K.disc = 1;
    K.unit_order = 2;
    return K;
  }
  if (!is_fundamental_discriminant(disc))
    throw std::invalid_argument("make_field: " + std::to_string(disc) +
                                " is not a negative fundamental discriminant (or the Q sentinel 1)");
  K.kind = FieldKind::ImaginaryQuadratic;
  K.disc = disc;
  K.unit_order = (disc == -3) ? 6 : (disc == -4) ? 4 : 2;
  return K;
}

FieldElement fe_one() { return {1, 0}; }

FieldElement fe_add(const FieldElement& a, const FieldElement& b) { return {a.x + b.x, a.y + b.y}; }
FieldElement fe_sub(const FieldElement& a, const FieldElement& b) { return {a.x - b.x, a.y - b.y}; }
FieldElement fe_neg(const FieldElement& a) { return {-a.x, -a.y}; }

FieldElement fe_mul(const FieldData& K, const FieldElement& a, const FieldElement& b) {
  // omega^2 = t*omega - n
  i64 t = K.omega_trace(), n = K.omega_norm();
  i128 x = (i128)a.x * b.x - (i128)n * a.y * b.y;
  i128 y = (i128)a.x * b.y + (i128)a.y * b.x + (i128)t * a.y * b.y;
  constexpr i128 lim = (i128)1 << 62;
  if (x >= lim || x <= -lim || y >= lim || y <= -lim)
    throw CapExceeded("fe_mul: coordinate overflow");
  return {(i64)x, (i64)y};
}

FieldElement fe_conj(const FieldData& K, const FieldElement& a) {
  // conj(omega) = t - omega
  return {a.x + K.omega_trace() * a.y, -a.y};
}

FieldElement fe_pow(const FieldData& K, FieldElement a, i64 e) {
  if (e < 0) throw std::invalid_argument("fe_pow: negative exponent");
  FieldElement r = fe_one();
  while (e > 0) {
    if (e & 1) r = fe_mul(K, r, a);
    a = fe_mul(K, a, a);
    e >>= 1;
  }
  return r;
}

i64 fe_norm(const FieldData& K, const FieldElement& a) {
  if (K.rational()) {
    if (a.y != 0) throw std::invalid_argument("fe_norm: rational element with omega part");
    return std::abs(a.x);
  }
  i128 n = (i128)a.x * a.x + (i128)K.omega_trace() * a.x * a.y + (i128)K.omega_norm() * a.y * a.y;
  constexpr i128 lim = (i128)1 << 62;
  if (n >= lim) throw CapExceeded("fe_norm: overflow");
  return (i64)n;
}

std::string fe_str(const FieldElement& a) {
  return "(" + std::to_string(a.x) + " + " + std::to_string(a.y) + "*w)";
}

IdealHNF ideal_one() { return {1, 0, 1}; }

namespace {

// HNF of the lattice spanned by the given (x, y) vectors in basis (1, omega).
// The span must be O_K-stable and of full rank (rank 1 for Q).
IdealHNF hnf_from_vectors(const FieldData& K, std::vector<std::pair<i64, i64>> vecs) {
  if (K.rational()) {
    i64 a = 0;
    for (auto& [x, y] : vecs) {
      if (y != 0) throw std::invalid_argument("hnf: rational vector with omega part");
      a = gcd_ll(a, x);
    }
    if (a == 0) throw std::invalid_argument("hnf: zero module");
    return {a, 0, 1};
  }
  // The final a divides a*c, which divides the determinant of every pair of
  // independent generator vectors. Reducing the Bezout accumulator modulo
  // the gcd M of those determinants keeps the triangularization bounded.
  i128 M128 = 0;
  for (size_t i = 0; i < vecs.size(); ++i)
    for (size_t j = i + 1; j < vecs.size(); ++j) {
      i128 d = (i128)vecs[i].first * vecs[j].second - (i128)vecs[j].first * vecs[i].second;
      if (d < 0) d = -d;
      while (d != 0) {
        i128 t = M128 % d;
        M128 = d;
        d = t;
      }
    }
  if (M128 == 0 || M128 > (i128)INT64_MAX)
    throw std::invalid_argument("hnf: module not of full rank or too large");
  i64 M = (i64)M128;
  i64 b0 = 0, c = 0;
  for (auto& [x, y] : vecs) {
    if (y == 0) continue;
    i64 u, v;
    i64 g = ext_gcd(c, y, u, v);
    b0 = (i64)((((i128)u * b0 + (i128)v * x) % M + M) % M);
    c = g;
  }
  if (c == 0) throw std::invalid_argument("hnf: module not of full rank");
  i64 a = M;
  for (auto& [x, y] : vecs) {
    i64 q = y / c; // exact: c | y
    i128 r = ((i128)x - (i128)q * b0) % M;
    a = gcd_ll(a, (i64)(r < 0 ? -r : r));
  }
  if (a == 0) throw std::invalid_argument("hnf: module not of full rank");
  i64 b = mod_floor(b0, a);
  if (a % c != 0 || b % c != 0)
    throw std::logic_error("hnf: span is not an O_K-module");
  return {a, b, c};
}

std::vector<std::pair<i64, i64>> ideal_basis(const IdealHNF& A) {
  return {{A.a, 0}, {A.b, A.c}};
}

} // namespace

IdealHNF ideal_from_generators(const FieldData& K, const std::vector<FieldElement>& gens) {
  std::vector<std::pair<i64, i64>> vecs;
  for (const auto& g : gens) {
    vecs.push_back({g.x, g.y});
    if (!K.rational()) {
      FieldElement gw = fe_mul(K, g, {0, 1});
      vecs.push_back({gw.x, gw.y});
    }
  }
  return hnf_from_vectors(K, vecs);
}

IdealHNF ideal_from_int(const FieldData& K, i64 n) {
  if (n == 0) throw std::invalid_argument("ideal_from_int: zero ideal");
  n = std::abs(n);
  if (K.rational()) return {n, 0, 1};
  return {n, 0, n};
}

IdealHNF principal_ideal(const FieldData& K, const FieldElement& g) {
  if (g.is_zero()) throw std::invalid_argument("principal_ideal: zero element");
  return ideal_from_generators(K, {g});
}

IdealHNF ideal_mul(const FieldData& K, const IdealHNF& A, const IdealHNF& B) {
  if (K.rational()) return {A.a * B.a, 0, 1};
  std::vector<std::pair<i64, i64>> vecs;
  for (auto [x1, y1] : ideal_basis(A))
    for (auto [x2, y2] : ideal_basis(B)) {
      FieldElement p = fe_mul(K, {x1, y1}, {x2, y2});
      vecs.push_back({p.x, p.y});
    }
  return hnf_from_vectors(K, vecs);
}

IdealHNF ideal_pow(const FieldData& K, const IdealHNF& A, i64 e) {
  if (e < 0) throw std::invalid_argument("ideal_pow: negative exponent");
  IdealHNF r = ideal_one();
  for (i64 i = 0; i < e; ++i) r = ideal_mul(K, r, A);
  return r;
}

IdealHNF ideal_conj(const FieldData& K, const IdealHNF& A) {
  if (K.rational()) return A;
  // conj(b + c*omega) = (b + c*t) - c*omega
  return hnf_from_vectors(K, {{A.a, 0}, {A.b + A.c * K.omega_trace(), -A.c}});
}

IdealHNF ideal_sum(const FieldData& K, const IdealHNF& A, const IdealHNF& B) {
  std::vector<std::pair<i64, i64>> vecs = ideal_basis(A);
  for (auto v : ideal_basis(B)) vecs.push_back(v);
  if (K.rational()) {
    return {gcd_ll(A.a, B.a), 0, 1};
  }
  return hnf_from_vectors(K, vecs);
}

i64 ideal_norm(const IdealHNF& A) { return A.a * A.c; }

bool ideal_contains(const IdealHNF& A, const FieldElement& g) {
  if (g.y % A.c != 0) return false;
  i64 q = g.y / A.c;
  return (g.x - q * A.b) % A.a == 0;
}

bool ideal_divides(const FieldData& K, const IdealHNF& A, const IdealHNF& B) {
  (void)K;
  return ideal_contains(A, {B.a, 0}) && ideal_contains(A, {B.b, B.c});
}

bool ideals_coprime(const FieldData& K, const IdealHNF& A, const IdealHNF& B) {
  return ideal_sum(K, A, B).is_one();
}

SplittingType splitting_type(const FieldData& K, i64 p) {
  if (p < 2 || !is_prime_ll(p)) throw std::invalid_argument("splitting_type: p must be prime");
  if (K.rational()) return SplittingType::Split; // degree-1 place, by convention
  int k = kronecker(K.disc, p);
  if (k == 1) return SplittingType::Split;
  if (k == -1) return SplittingType::Inert;
  return SplittingType::Ramified;
}

namespace {

// Roots of x^2 - t*x + n mod p (the minimal polynomial of omega).
std::vector<i64> omega_roots_mod(const FieldData& K, i64 p) {
  i64 t = K.omega_trace(), n = K.omega_norm();
  if (p < 1000) {
    std::vector<i64> roots;
    for (i64 r = 0; r < p; ++r)
      if (mod_floor(r * r - t * r + n, p) == 0) roots.push_back(r);
    return roots;
  }
  // (2r - t)^2 = t^2 - 4n = D mod p
  auto s = sqrt_mod(mod_floor(K.disc, p), p);
  if (!s) return {};
  i64 inv2 = *invmod(2, p);
  i64 r1 = mulmod(mod_floor(t + *s, p), inv2, p);
  i64 r2 = mulmod(mod_floor(t - *s, p), inv2, p);
  if (r1 == r2) return {r1};
  return {std::min(r1, r2), std::max(r1, r2)};
}

} // namespace

std::vector<IdealHNF> primes_above(const FieldData& K, i64 p) {
  if (p < 2 || !is_prime_ll(p)) throw std::invalid_argument("primes_above: p must be prime");
  if (K.rational()) return {IdealHNF{p, 0, 1}};
  SplittingType st = splitting_type(K, p);
  if (st == SplittingType::Inert) return {ideal_from_int(K, p)};
  auto roots = omega_roots_mod(K, p);
  std::vector<IdealHNF> out;
  for (i64 r : roots)
    out.push_back(ideal_from_generators(K, {{p, 0}, {-r, 1}}));
  std::sort(out.begin(), out.end());
  if (st == SplittingType::Ramified && out.size() == 2 && out[0] == out[1]) out.pop_back();
  return out;
}

int ideal_valuation(const FieldData& K, const IdealHNF& A, const IdealHNF& P) {
  int v = 0;
  IdealHNF Pk = P;
  while (ideal_divides(K, Pk, A)) {
    ++v;
    Pk = ideal_mul(K, Pk, P);
    if (v > 64) throw std::logic_error("ideal_valuation: runaway");
  }
  return v;
}

std::vector<PrimePower> ideal_factor(const FieldData& K, const IdealHNF& A) {
  std::vector<PrimePower> out;
  i64 N = ideal_norm(A);
  if (N == 1) return out;
  for (auto [p, ignored] : factor_ll(N)) {
    (void)ignored;
    for (const IdealHNF& P : primes_above(K, p)) {
      int v = ideal_valuation(K, A, P);
      if (v > 0) out.push_back({P, v, p, ideal_norm(P)});
    }
  }
  // sanity: norms must reassemble
  i64 prod = 1;
  for (const auto& pp : out)
    for (int i = 0; i < pp.e; ++i) prod *= pp.residue_norm;
  if (prod != N) throw std::logic_error("ideal_factor: norm mismatch");
  return out;
}

std::optional<FieldElement> principal_generator(const FieldData& K, const IdealHNF& A) {
  if (K.rational()) return FieldElement{A.a, 0};
  i64 N = ideal_norm(A);
  i64 absD = -K.disc;
  i64 t = K.omega_trace();
  // 4*N(x + y*omega) = (2x + t*y)^2 + |D|*y^2
  i64 ymax = isqrt_ll(4 * N / absD);
  for (i64 y = -ymax; y <= ymax; ++y) {
    i64 m = 4 * N - absD * y * y;
    if (m < 0) continue;
    i64 s = isqrt_ll(m);
    if (s * s != m) continue;
    for (i64 sg : {s, -s}) {
      i64 num = sg - t * y;
      if (num % 2 != 0) continue;
      FieldElement cand{num / 2, y};
      if (cand.is_zero()) continue;
      if (fe_norm(K, cand) == N && principal_ideal(K, cand) == A) return cand;
      if (sg == -s || s == 0) break;
    }
  }
  return std::nullopt;
}

std::vector<IdealHNF> ideals_up_to(const FieldData& K, i64 bound) {
  std::vector<std::pair<IdealHNF, i64>> primes; // (prime ideal, norm)
  for (i64 p : primes_up_to(bound)) {
    for (const IdealHNF& P : primes_above(K, p)) {
      i64 n = ideal_norm(P);
      if (n <= bound) primes.push_back({P, n});
    }
  }
  std::vector<std::pair<i64, IdealHNF>> out;
  // DFS over products of distinct prime powers
  std::function<void(size_t, IdealHNF, i64)> rec = [&](size_t i, IdealHNF cur, i64 n) {
    out.push_back({n, cur});
    for (size_t j = i; j < primes.size(); ++j) {
      IdealHNF next = cur;
      i64 nn = n;
      while (true) {
        if (nn > bound / primes[j].second) break;
        nn *= primes[j].second;
        next = ideal_mul(K, next, primes[j].first);
        rec(j + 1, next, nn);
      }
    }
  };
  rec(0, ideal_one(), 1);
  std::sort(out.begin(), out.end());
  std::vector<IdealHNF> res;
  for (auto& [n, I] : out) res.push_back(I);
  return res;
}

std::string ideal_str(const IdealHNF& A) {
  return "[[" + std::to_string(A.a) + "," + std::to_string(A.b) + "],[0," + std::to_string(A.c) + "]]";
}

} // namespace drm
