#pragma once
#include <array>
#include <cmath>
#include <optional>
#include "admissibility.hpp"
#include "sieve.hpp"

namespace bfree {

struct census_result {
  int n = 0;
  i64 count = 0;
  // distinct blocks ascending; each ceil(n/64) words, bit j of word j/64 <-> offset j+1
  std::vector<std::vector<u64>> blocks;
};

// distinct length-n subwords with start positions in [from_pos, w.hi - n + 1];
// exact sort-based dedup, no hashing
inline census_result census(const indicator_window& w, int n, i64 from_pos, bool want_blocks = true) {
  if (n < 1) throw precondition_error("census requires n >= 1");
  if (from_pos < w.lo) throw precondition_error("census: from_pos below window");
  i64 last_start = w.hi - n + 1;
  if (last_start < from_pos) throw window_too_short("window shorter than block length");
  census_result res;
  res.n = n;
  i64 positions = last_start - from_pos + 1;
  if (n <= 64) {
    std::vector<u64> vals;
    vals.reserve((size_t)positions);
    u64 cur = 0;
    for (i64 j = 0; j < n; ++j)
      if (w.get(from_pos + j)) cur |= 1ull << j;
    vals.push_back(cur);
    u64 top = 1ull << (n - 1);
    for (i64 s = from_pos + 1; s <= last_start; ++s) {
      cur >>= 1;
      if (w.get(s + n - 1)) cur |= top;
      vals.push_back(cur);
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    res.count = (i64)vals.size();
    if (want_blocks) {
      res.blocks.reserve(vals.size());
      for (u64 v : vals) res.blocks.push_back({v});
    }
    return res;
  }
  // wide blocks: flat buffer + index sort, numeric order = high word first
  size_t k = (size_t)((n + 63) / 64);
  if ((u64)positions * k > 40000000ull)
    throw precondition_error("census: window too large for this block width");
  std::vector<u64> flat((size_t)positions * k);
  std::vector<u64> cur(k, 0);
  for (i64 j = 0; j < n; ++j)
    if (w.get(from_pos + j)) cur[(size_t)j >> 6] |= 1ull << (j & 63);
  auto emit = [&](i64 idx) { std::copy(cur.begin(), cur.end(), flat.begin() + (size_t)idx * k); };
  emit(0);
  for (i64 s = from_pos + 1; s <= last_start; ++s) {
    for (size_t wi = 0; wi + 1 < k; ++wi) cur[wi] = (cur[wi] >> 1) | (cur[wi + 1] << 63);
    cur[k - 1] >>= 1;
    i64 j = n - 1;
    if (w.get(s + j)) cur[(size_t)j >> 6] |= 1ull << (j & 63);
    else cur[(size_t)j >> 6] &= ~(1ull << (j & 63));
    emit(s - from_pos);
  }
  std::vector<i64> idx((size_t)positions);
  for (i64 i = 0; i < positions; ++i) idx[(size_t)i] = i;
  auto less = [&](i64 a, i64 b) {
    const u64* pa = &flat[(size_t)a * k];
    const u64* pb = &flat[(size_t)b * k];
    for (size_t wi = k; wi-- > 0;) {
      if (pa[wi] != pb[wi]) return pa[wi] < pb[wi];
    }
    return false;
  };
  auto equal = [&](i64 a, i64 b) {
    const u64* pa = &flat[(size_t)a * k];
    const u64* pb = &flat[(size_t)b * k];
    for (size_t wi = 0; wi < k; ++wi)
      if (pa[wi] != pb[wi]) return false;
    return true;
  };
  std::sort(idx.begin(), idx.end(), less);
  idx.erase(std::unique(idx.begin(), idx.end(), equal), idx.end());
  res.count = (i64)idx.size();
  if (want_blocks) {
    for (i64 i : idx) {
      const u64* p = &flat[(size_t)i * k];
      res.blocks.emplace_back(p, p + k);
    }
  }
  return res;
}

inline census_result census(const indicator_window& w, int n, bool want_blocks = true) {
  return census(w, n, w.lo, want_blocks);
}

// positions of ones inside a packed block, 1-based
inline finite_config block_support(const std::vector<u64>& words, int n) {
  finite_config out;
  for (int j = 0; j < n; ++j)
    if ((words[(size_t)j >> 6] >> (j & 63)) & 1) out.push_back(j + 1);
  return out;
}

namespace detail {
struct adm_dfs {
  std::vector<i64> bs;
  std::vector<u32> cover, full;
  i64 n = 0;
  i64 count = 0;
  std::vector<u64>* out = nullptr;
  u64 cur = 0;

  void go(i64 pos) {
    if (pos > n) {
      ++count;
      if (out) out->push_back(cur);
      return;
    }
    go(pos + 1); // bit 0
    std::array<std::pair<size_t, u32>, 32> undo;
    size_t nundo = 0;
    bool dead = false;
    for (size_t i = 0; i < bs.size(); ++i) {
      u32 bit = 1u << (pos % bs[i]);
      if (!(cover[i] & bit)) {
        cover[i] |= bit;
        undo[nundo++] = {i, bit};
        if (cover[i] == full[i]) { dead = true; break; } // residues mod bs[i] all covered
      }
    }
    if (!dead) {
      cur |= 1ull << (pos - 1);
      go(pos + 1);
      cur &= ~(1ull << (pos - 1));
    }
    for (size_t j = 0; j < nundo; ++j) cover[undo[j].first] &= ~undo[j].second;
  }
};
} // namespace detail

// exact count of admissible blocks of length n via pruned DFS over supports
inline i64 count_admissible_blocks(const bset_spec& s, i64 n, std::vector<u64>* blocks = nullptr) {
  if (n < 1) throw precondition_error("count_admissible_blocks requires n >= 1");
  if (n > 26) throw exact_count_infeasible("exact admissible-block count limited to n <= 26");
  detail::adm_dfs d;
  d.bs = members_in(s, 1, n);
  d.n = n;
  d.out = blocks;
  if (d.bs.empty() && !blocks) return 1ll << n;
  d.cover.assign(d.bs.size(), 0);
  d.full.resize(d.bs.size());
  for (size_t i = 0; i < d.bs.size(); ++i)
    d.full[i] = (d.bs[i] == 32) ? ~0u : ((1u << d.bs[i]) - 1);
  d.go(1);
  if (blocks) std::sort(blocks->begin(), blocks->end());
  return d.count;
}

inline std::vector<u64> list_admissible_blocks(const bset_spec& s, i64 n) {
  std::vector<u64> out;
  count_admissible_blocks(s, n, &out);
  return out;
}

// 2^{|B ∩ (n, 2n]|}
inline u64 lower_bound_en(const bset_spec& s, i64 n) {
  if (n < 1) throw precondition_error("lower_bound_en requires n >= 1");
  size_t e = members_in(s, n, 2 * n).size();
  if (e > 62) throw precondition_error("lower bound exponent exceeds 64-bit range");
  return 1ull << e;
}

// ceil(sqrt(n)) + (prod of primes <= sqrt(n)) · 2^ceil((n + R²)/σ(R)), R = max(1, floor(sqrt(n)/log n))
inline big_int prime_upper_bound(i64 n) {
  if (n < 9) throw precondition_error("prime_upper_bound requires n >= 9");
  i64 R = std::max<i64>(1, (i64)(std::sqrt((double)n) / std::log((double)n)));
  big_rat sig = sigma_R(R);
  big_int K = ceil_rat(big_rat(n + R * R) / sig);
  big_int pow2 = pow(big_int(2), K.convert_to<unsigned>());
  return big_int(ceil_sqrt_u64((u64)n)) + primorial((i64)isqrt_u64((u64)n)) * pow2;
}

// n + (en/L)^L with L = ceil(23 n loglog n / log n + 4 sqrt(n)/log n); the power-form
// envelope needs L <= n (binomial-sum domain), otherwise the trivial 2^n term applies
inline big_int semiprime_upper_bound(i64 n) {
  if (n < 16) throw precondition_error("semiprime_upper_bound requires n >= 16");
  double ln = std::log((double)n);
  double L_real = 23.0 * n * std::log(ln) / ln + 4.0 * std::sqrt((double)n) / ln;
  i64 L = (i64)std::ceil(L_real);
  big_int term;
  if (L >= n) {
    term = pow(big_int(2), (unsigned)n);
  } else {
    big_rat e_up(2718281828459046ll, 1000000000000000ll); // >= e
    big_rat base = e_up * n / L;
    big_rat p = 1;
    for (i64 i = 0; i < L; ++i) p *= base;
    term = ceil_rat(p);
  }
  return big_int(n) + term;
}

inline i64 semiprime_upper_bound_L(i64 n) {
  double ln = std::log((double)n);
  return (i64)std::ceil(23.0 * n * std::log(ln) / ln + 4.0 * std::sqrt((double)n) / ln);
}

// smallest n* >= 1 with primes ∩ (n*+N, n*+2N] = n* + A, scanning up to scan_limit
inline std::optional<i64> pattern_witness_primes(const finite_config& a_raw, i64 N, i64 scan_limit) {
  if (N < 1) throw precondition_error("pattern witness requires N >= 1");
  finite_config a = normalize_config(a_raw);
  for (i64 x : a) {
    if (x <= N || x > 2 * N)
      throw precondition_error("pattern positions must lie in (N, 2N]");
    if (!is_prime_u64((u64)x))
      throw precondition_error("pattern positions must be prime");
  }
  if (!is_admissible(a, bset_primes()).admissible)
    throw not_admissible("pattern not prime-admissible");
  std::vector<char> in_a((size_t)N, 0);
  for (i64 x : a) in_a[(size_t)(x - N - 1)] = 1;
  bit_window primes = prime_window(N + 2, scan_limit + 2 * N);
  for (i64 cand = 1; cand <= scan_limit; ++cand) {
    bool ok = true;
    for (i64 i = N + 1; i <= 2 * N; ++i) {
      if (primes.get(cand + i) != (bool)in_a[(size_t)(i - N - 1)]) { ok = false; break; }
    }
    if (!ok) continue;
    // independent recheck by trial division
    for (i64 i = N + 1; i <= 2 * N; ++i) {
      i64 v = cand + i;
      bool p = v >= 2;
      for (i64 d = 2; d * d <= v; ++d)
        if (v % d == 0) { p = false; break; }
      if (p != (bool)in_a[(size_t)(i - N - 1)])
        throw verification_failure("sieve/trial-division disagreement in pattern witness");
    }
    return cand;
  }
  return std::nullopt;
}

} // namespace bfree
