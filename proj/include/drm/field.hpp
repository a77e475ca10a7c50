#pragma once

#include "drm/intops.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

// Exact arithmetic for K = Q or K = Q(sqrt(-d)): integers of K in the basis
// (1, omega) with omega = (D + sqrt(D))/2, ideals in 2x2 upper-triangular
// Hermite normal form, prime splitting, norms, principality.
//
// Q is handled as a degenerate field (disc = 1 sentinel): elements have
// y = 0, ideals are [[n,0],[0,1]].

namespace drm {

enum class FieldKind { Rational, ImaginaryQuadratic };
enum class SplittingType { Split, Inert, Ramified };

struct FieldData {
  FieldKind kind = FieldKind::Rational;
  i64 disc = 1;      // fundamental discriminant; 1 is the Q sentinel
  int unit_order = 2; // |mu_K|

  bool rational() const { return kind == FieldKind::Rational; }
  // omega satisfies omega^2 = t*omega - n
  i64 omega_trace() const { return disc; }
  i64 omega_norm() const { return (disc * disc - disc) / 4; }
};

// D = 1 builds Q; otherwise D must be a negative fundamental discriminant.
FieldData make_field(i64 disc);
bool is_fundamental_discriminant(i64 disc);

struct FieldElement {
  i64 x = 0, y = 0; // x + y*omega
  bool operator==(const FieldElement&) const = default;
  auto operator<=>(const FieldElement&) const = default;
  bool is_zero() const { return x == 0 && y == 0; }
};

FieldElement fe_one();
FieldElement fe_add(const FieldElement& a, const FieldElement& b);
FieldElement fe_sub(const FieldElement& a, const FieldElement& b);
FieldElement fe_neg(const FieldElement& a);
FieldElement fe_mul(const FieldData& K, const FieldElement& a, const FieldElement& b);
FieldElement fe_conj(const FieldData& K, const FieldElement& a);
FieldElement fe_pow(const FieldData& K, FieldElement a, i64 e);
// N(x + y*omega) = x^2 + t*x*y + n*y^2 (for Q: |x|)
i64 fe_norm(const FieldData& K, const FieldElement& a);
std::string fe_str(const FieldElement& a);

// Integral ideal as the lattice Z*a + Z*(b + c*omega); invariants
// a, c > 0, 0 <= b < a, c | a, c | b. For Q always b = 0, c = 1.
struct IdealHNF {
  i64 a = 1, b = 0, c = 1;
  bool operator==(const IdealHNF&) const = default;
  auto operator<=>(const IdealHNF&) const = default;
  i64 norm() const { return a * c; }
  bool is_one() const { return a == 1 && b == 0 && c == 1; }
};

struct PrimePower {
  IdealHNF prime;
  int e = 1;
  i64 p = 0;            // rational prime below
  i64 residue_norm = 0; // N(prime)
};

IdealHNF ideal_one();
IdealHNF ideal_from_int(const FieldData& K, i64 n); // (n), n != 0
IdealHNF ideal_from_generators(const FieldData& K, const std::vector<FieldElement>& gens);
IdealHNF principal_ideal(const FieldData& K, const FieldElement& g);
IdealHNF ideal_mul(const FieldData& K, const IdealHNF& A, const IdealHNF& B);
IdealHNF ideal_pow(const FieldData& K, const IdealHNF& A, i64 e);
IdealHNF ideal_conj(const FieldData& K, const IdealHNF& A);
IdealHNF ideal_sum(const FieldData& K, const IdealHNF& A, const IdealHNF& B); // gcd
i64 ideal_norm(const IdealHNF& A);
bool ideal_contains(const IdealHNF& A, const FieldElement& g);
bool ideal_divides(const FieldData& K, const IdealHNF& A, const IdealHNF& B); // A | B
bool ideals_coprime(const FieldData& K, const IdealHNF& A, const IdealHNF& B);

SplittingType splitting_type(const FieldData& K, i64 p);
std::vector<IdealHNF> primes_above(const FieldData& K, i64 p);

int ideal_valuation(const FieldData& K, const IdealHNF& A, const IdealHNF& P);
// Factors A into prime powers; rational primes of N(A) must stay below
// prime_bound unless they pass a primality certificate.
std::vector<PrimePower> ideal_factor(const FieldData& K, const IdealHNF& A);

// Exhaustive search over the norm ball; nullopt means non-principal.
// For Q the returned generator is positive.
std::optional<FieldElement> principal_generator(const FieldData& K, const IdealHNF& A);

// All integral ideals of norm <= bound, sorted by (norm, HNF).
std::vector<IdealHNF> ideals_up_to(const FieldData& K, i64 bound);

std::string ideal_str(const IdealHNF& A);

} // namespace drm
