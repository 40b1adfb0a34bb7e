#pragma once
#include <cstdint>
#include <vector>
#include "arith.hpp"

namespace bfree {

constexpr i64 kSegmentSize = 1 << 20;

// packed bit window over [lo, hi]; bit i <-> position lo + i
struct bit_window {
  i64 lo = 0, hi = -1;
  std::vector<u64> words;
  i64 size() const { return hi < lo ? 0 : hi - lo + 1; }
  bool get(i64 pos) const {
    u64 i = (u64)(pos - lo);
    return (words[i >> 6] >> (i & 63)) & 1;
  }
  void set(i64 pos, bool v) {
    u64 i = (u64)(pos - lo);
    if (v) words[i >> 6] |= 1ull << (i & 63);
    else words[i >> 6] &= ~(1ull << (i & 63));
  }
  i64 popcount() const {
    i64 c = 0;
    for (u64 w : words) c += __builtin_popcountll(w);
    return c;
  }
};

inline bit_window make_bit_window(i64 lo, i64 hi, bool fill = false) {
  bit_window w;
  w.lo = lo;
  w.hi = hi;
  i64 n = w.size();
  w.words.assign((size_t)((n + 63) / 64), fill ? ~0ull : 0ull);
  if (fill && n % 64) w.words.back() = (~0ull) >> (64 - n % 64);
  return w;
}

// primality indicator over [lo, hi], segmented Eratosthenes
inline bit_window prime_window(i64 lo, i64 hi) {
  if (lo < 0) throw precondition_error("prime_window: lo must be >= 0");
  bit_window out = make_bit_window(lo, hi, true);
  if (out.size() == 0) return out;
  for (i64 p = lo; p <= hi && p < 2; ++p) out.set(p, false);
  std::vector<i64> base = simple_sieve((i64)isqrt_u64((u64)std::max<i64>(hi, 0)));
  for (i64 s = std::max<i64>(lo, 2); s <= hi; s += kSegmentSize) {
    i64 e = std::min(hi, s + kSegmentSize - 1);
    for (i64 p : base) {
      i64 start = std::max(p * p, ((s + p - 1) / p) * p);
      for (i64 m = start; m <= e; m += p) out.set(m, false);
    }
  }
  return out;
}

// Ω (prime divisors with multiplicity) over [lo, hi], segmented
inline std::vector<uint8_t> omega_window(i64 lo, i64 hi) {
  if (lo < 1) throw precondition_error("omega_window: lo must be >= 1");
  if (hi < lo) return {};
  std::vector<uint8_t> om((size_t)(hi - lo + 1), 0);
  std::vector<i64> base = simple_sieve((i64)isqrt_u64((u64)hi));
  std::vector<u64> rem;
  for (i64 s = lo; s <= hi; s += kSegmentSize) {
    i64 e = std::min(hi, s + kSegmentSize - 1);
    rem.resize((size_t)(e - s + 1));
    for (i64 v = s; v <= e; ++v) rem[(size_t)(v - s)] = (u64)v;
    for (i64 p : base) {
      for (i64 m = ((s + p - 1) / p) * p; m <= e; m += p) {
        u64& r = rem[(size_t)(m - s)];
        uint8_t& o = om[(size_t)(m - lo)];
        while (r % (u64)p == 0) { r /= (u64)p; ++o; }
      }
    }
    for (i64 v = s; v <= e; ++v) {
      if (rem[(size_t)(v - s)] > 1) ++om[(size_t)(v - lo)];
    }
  }
  return om;
}

struct totient_table {
  std::vector<i64> phi;         // phi[i], i <= n
  std::vector<char> squarefree; // mu^2
};

inline totient_table sieve_totients(i64 n) {
  totient_table t;
  t.phi.resize((size_t)n + 1);
  t.squarefree.assign((size_t)n + 1, 1);
  for (i64 i = 0; i <= n; ++i) t.phi[(size_t)i] = i;
  for (i64 p = 2; p <= n; ++p) {
    if (t.phi[(size_t)p] != p) continue; // p composite
    for (i64 m = p; m <= n; m += p) t.phi[(size_t)m] -= t.phi[(size_t)m] / p;
    if (p <= n / p) {
      for (i64 m = p * p; m <= n; m += p * p) t.squarefree[(size_t)m] = 0;
    }
  }
  return t;
}

// distinct prime factors by trial division
inline std::vector<i64> prime_factors(i64 n) {
  std::vector<i64> fs;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      fs.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

// all prime factors with multiplicity, ascending
inline std::vector<i64> factorization(i64 n) {
  std::vector<i64> fs;
  for (i64 p = 2; p * p <= n; ++p) {
    while (n % p == 0) { fs.push_back(p); n /= p; }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

} // namespace bfree
