#include "drm/intops.hpp"

#include "drm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace drm {

i64 gcd_ll(i64 a, i64 b) {
  a = std::abs(a);
  b = std::abs(b);
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  if (b == 0) {
    x = (a >= 0) ? 1 : -1;
    y = 0;
    return std::abs(a);
  }
  i64 x1, y1;
  i64 g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

i64 mod_floor(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 mulmod(i64 a, i64 b, i64 m) {
  return (i64)((i128)a * b % m);
}

i64 powmod(i64 a, i64 e, i64 m) {
  if (m == 1) return 0;
  a = mod_floor(a, m);
  i64 r = 1;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::optional<i64> invmod(i64 a, i64 m) {
  i64 x, y;
  i64 g = ext_gcd(mod_floor(a, m), m, x, y);
  if (g != 1) return std::nullopt;
  return mod_floor(x, m);
}

i64 isqrt_ll(i64 n) {
  if (n < 0) return -1;
  i64 r = (i64)std::sqrt((double)n);
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_prime_ll(i64 n) {
  if (n < 2) return false;
  for (i64 p : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL, 17LL, 19LL, 23LL, 29LL, 31LL, 37LL}) {
    if (n % p == 0) return n == p;
  }
  i64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic witness set for n < 2^64
  for (i64 a : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL, 17LL, 19LL, 23LL, 29LL, 31LL, 37LL}) {
    i64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int kronecker(i64 a, i64 n) {
  if (n <= 0) throw std::invalid_argument("kronecker: n must be positive");
  if (gcd_ll(a, n) != 1 && n % 2 == 0 && a % 2 == 0) return 0;
  int result = 1;
  // handle factor 2 of n
  while (n % 2 == 0) {
    n /= 2;
    if (a % 2 == 0) return 0;
    i64 am8 = mod_floor(a, 8);
    if (am8 == 3 || am8 == 5) result = -result;
  }
  a = mod_floor(a, n);
  // Jacobi symbol for odd n
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

std::optional<i64> sqrt_mod(i64 a, i64 p) {
  a = mod_floor(a, p);
  if (p == 2) return a;
  if (a == 0) return 0;
  if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  // Tonelli-Shanks
  i64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  i64 z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  i64 m = s;
  i64 c = powmod(z, q, p);
  i64 t = powmod(a, q, p);
  i64 r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    i64 t2 = t;
    i64 i = 0;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, p);
      ++i;
    }
    i64 b = powmod(c, 1LL << (m - i - 1), p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

std::vector<std::pair<i64, int>> factor_ll(i64 n) {
  if (n <= 0) throw std::invalid_argument("factor_ll: n must be positive");
  std::vector<std::pair<i64, int>> out;
  for (i64 p = 2; p * p <= n && p <= 1000000; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.push_back({p, e});
    }
  }
  if (n > 1) {
    if (!is_prime_ll(n))
      throw CapExceeded("factor_ll: cofactor " + std::to_string(n) + " exceeds trial-division bound and is composite");
    out.push_back({n, 1});
  }
  return out;
}

std::vector<i64> primes_up_to(i64 n) {
  std::vector<bool> sieve(std::max<i64>(n + 1, 2), true);
  sieve[0] = sieve[1] = false;
  for (i64 i = 2; i * i <= n; ++i)
    if (sieve[i])
      for (i64 j = i * i; j <= n; j += i) sieve[j] = false;
  std::vector<i64> out;
  for (i64 i = 2; i <= n; ++i)
    if (sieve[i]) out.push_back(i);
  return out;
}

} // namespace drm
