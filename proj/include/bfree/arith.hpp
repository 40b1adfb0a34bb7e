#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>
#include <boost/multiprecision/cpp_int.hpp>
#include "errors.hpp"

namespace bfree {

using i64 = long long;
using u64 = unsigned long long;
using u32 = unsigned int;
using u128 = unsigned __int128;
using i128 = __int128;
using big_int = boost::multiprecision::cpp_int;
using big_rat = boost::multiprecision::cpp_rational;

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// deterministic Miller-Rabin; the 12-prime base set is exact for all 64-bit inputs
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

inline u64 isqrt_u64(u64 n) {
  if (n == 0) return 0;
  u64 r = (u64)std::sqrt((double)n);
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

inline u64 ceil_sqrt_u64(u64 n) {
  u64 r = isqrt_u64(n);
  return r * r == n ? r : r + 1;
}

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw precondition_error("integer overflow in multiplication");
  return r;
}

inline i64 lcm_checked(i64 a, i64 b) {
  i64 g = std::gcd(a, b);
  return checked_mul(a / g, b);
}

// mod with result in [0, m)
inline i64 floor_mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 egcd(i64 a, i64 b, i64& x, i64& y) {
  if (b == 0) { x = 1; y = 0; return a; }
  i64 x1, y1;
  i64 g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// x ≡ r_i (mod m_i), moduli pairwise coprime; smallest non-negative solution
inline std::pair<big_int, big_int> crt(const std::vector<std::pair<big_int, big_int>>& congruences) {
  big_int r = 0, m = 1;
  for (auto& [ri, mi] : congruences) {
    if (gcd(m, mi) != 1) throw precondition_error("crt: moduli not pairwise coprime");
    // solve r + m*k ≡ ri (mod mi)
    big_int delta = ((ri - r) % mi + mi) % mi;
    big_int m_mod = m % mi, k = 0, inv = 0;
    // modular inverse of m mod mi via extended euclid on big ints
    {
      big_int a = m_mod, b = mi, x0 = 1, x1 = 0;
      while (b != 0) {
        big_int qq = a / b;
        big_int t = a - qq * b; a = b; b = t;
        t = x0 - qq * x1; x0 = x1; x1 = t;
      }
      inv = ((x0 % mi) + mi) % mi;
    }
    k = (delta * inv) % mi;
    r += m * k;
    m *= mi;
  }
  return {r % m, m};
}

inline std::vector<i64> simple_sieve(i64 limit) {
  std::vector<i64> primes;
  if (limit < 2) return primes;
  std::vector<bool> comp((size_t)limit + 1, false);
  for (i64 p = 2; p <= limit; ++p) {
    if (comp[(size_t)p]) continue;
    primes.push_back(p);
    for (i64 m = p * p; m <= limit; m += p) comp[(size_t)m] = true;
  }
  return primes;
}

inline big_int primorial(i64 n) {
  if (n < 2) throw precondition_error("primorial requires N >= 2");
  big_int r = 1;
  for (i64 p : simple_sieve(n)) r *= p;
  return r;
}

inline i64 sigma0(i64 n) {
  i64 cnt = 0;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d == 0) cnt += (d * d == n) ? 1 : 2;
  }
  return cnt;
}

inline big_int ceil_div_big(const big_int& a, const big_int& b) {
  // b > 0
  big_int q = a / b, r = a % b;
  return (r > 0) ? q + 1 : q;
}

inline big_int ceil_rat(const big_rat& r) {
  return ceil_div_big(numerator(r), denominator(r));
}

// double conversion robust against num/den individually overflowing double range
inline double rat_to_double(const big_rat& r) {
  big_int n = numerator(r), d = denominator(r);
  if (n == 0) return 0.0;
  bool neg = n < 0;
  if (neg) n = -n;
  long bn = (long)msb(n), bd = (long)msb(d);
  int sn = bn > 62 ? (int)(bn - 62) : 0;
  int sd = bd > 62 ? (int)(bd - 62) : 0;
  double nn = (n >> sn).convert_to<double>();
  double dd = (d >> sd).convert_to<double>();
  double v = std::ldexp(nn / dd, sn - sd);
  return neg ? -v : v;
}

// exact binary rational of a finite double
inline big_rat rat_from_double(double x) { return big_rat(x); }

// exact primality: MR for 64-bit, else trial division with an explicit scan bound
inline bool is_prime_exact(const big_int& v, i64 trial_bound = 10000000) {
  if (v < 2) return false;
  if (v <= big_int(~0ull)) return is_prime_u64(v.convert_to<u64>());
  big_int root = sqrt(v);
  i64 lim = root > trial_bound ? trial_bound : root.convert_to<i64>();
  if (v % 2 == 0) return false;
  for (i64 p = 3; p <= lim; p += 2) {
    if (v % p == 0) return false;
  }
  // a found factor settles compositeness above; primality needs the full root
  if (root > trial_bound)
    throw budget_exceeded("primality: value too large for exact trial division bound");
  return true;
}

} // namespace bfree
