#pragma once

#include <cstdint>
#include <optional>
#include <vector>

// Small exact-integer helpers: 64-bit modular arithmetic, primality,
// square roots mod p, factorization by trial division + Miller-Rabin.

namespace drm {

using i64 = long long;
using i128 = __int128;

i64 gcd_ll(i64 a, i64 b);
// g = gcd(a,b) with g = x*a + y*b
i64 ext_gcd(i64 a, i64 b, i64& x, i64& y);
i64 mod_floor(i64 a, i64 m); // representative in [0, m)
i64 mulmod(i64 a, i64 b, i64 m);
i64 powmod(i64 a, i64 e, i64 m);
std::optional<i64> invmod(i64 a, i64 m);

i64 isqrt_ll(i64 n);
bool is_prime_ll(i64 n); // deterministic Miller-Rabin for 64-bit

// Kronecker symbol (a|n), n > 0
int kronecker(i64 a, i64 n);

// Square root of a mod odd prime p (Tonelli-Shanks); nullopt if non-residue.
std::optional<i64> sqrt_mod(i64 a, i64 p);

// Prime factorization of n > 0 into (prime, exponent) pairs, ascending.
// Throws drm::CapExceeded if a cofactor cannot be certified prime.
std::vector<std::pair<i64, int>> factor_ll(i64 n);

// Primes up to n inclusive.
std::vector<i64> primes_up_to(i64 n);

} // namespace drm
