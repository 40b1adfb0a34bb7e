#pragma once
#include <cmath>
#include <string>
#include <vector>
#include "arith.hpp"
#include "bset.hpp"
#include "factor.hpp"

namespace bfree {

struct indicator_window : bit_window {
  std::string source;
};

// characteristic window of the B-free numbers: bit(n) = 1 iff no member divides n
inline indicator_window eta_window(const bset_spec& s, i64 lo, i64 hi) {
  if (lo < 1) throw precondition_error("eta_window: lo must be >= 1");
  indicator_window out;
  out.source = "eta " + describe(s);
  switch (s.kind) {
    case bset_kind::primes: {
      // every n >= 2 has a prime divisor <= n, so the free set is exactly {1}
      static_cast<bit_window&>(out) = make_bit_window(lo, hi, false);
      if (lo <= 1 && 1 <= hi) out.set(1, true);
      return out;
    }
    case bset_kind::pk: {
      static_cast<bit_window&>(out) = make_bit_window(lo, hi, false);
      std::vector<uint8_t> om = omega_window(lo, hi);
      for (i64 v = lo; v <= hi; ++v)
        if (om[(size_t)(v - lo)] < s.k) out.set(v, true);
      return out;
    }
    case bset_kind::prime_squares: {
      // squarefree indicator
      static_cast<bit_window&>(out) = make_bit_window(lo, hi, true);
      for (i64 p = 2; p * p <= hi; ++p) {
        if (!is_prime_u64((u64)p)) continue;
        i64 pp = p * p;
        for (i64 m = ((lo + pp - 1) / pp) * pp; m <= hi; m += pp) out.set(m, false);
      }
      return out;
    }
    default: {
      static_cast<bit_window&>(out) = make_bit_window(lo, hi, true);
      for (i64 b : members_in(s, 0, hi)) {
        for (i64 m = std::max(b, ((lo + b - 1) / b) * b); m <= hi; m += b) out.set(m, false);
      }
      return out;
    }
  }
}

// characteristic window of B itself (membership indicator)
inline indicator_window set_window(const bset_spec& s, i64 lo, i64 hi) {
  if (lo < 1) throw precondition_error("set_window: lo must be >= 1");
  indicator_window out;
  out.source = "set " + describe(s);
  switch (s.kind) {
    case bset_kind::primes:
      static_cast<bit_window&>(out) = prime_window(lo, hi);
      return out;
    case bset_kind::pk: {
      static_cast<bit_window&>(out) = make_bit_window(lo, hi, false);
      std::vector<uint8_t> om = omega_window(lo, hi);
      for (i64 v = lo; v <= hi; ++v)
        if (om[(size_t)(v - lo)] == s.k) out.set(v, true);
      return out;
    }
    default: {
      static_cast<bit_window&>(out) = make_bit_window(lo, hi, false);
      for (i64 b : members_in(s, lo - 1, hi)) out.set(b, true);
      return out;
    }
  }
}

// window of the two-sided symmetrization over [-n, n]: y(k) = eta(|k|), y(0) = 0
inline indicator_window symmetrized_eta(const bset_spec& s, i64 n) {
  if (n < 1) throw precondition_error("symmetrized_eta: n must be >= 1");
  indicator_window pos = eta_window(s, 1, n);
  indicator_window out;
  out.source = "sym " + pos.source;
  static_cast<bit_window&>(out) = make_bit_window(-n, n, false);
  for (i64 v = 1; v <= n; ++v) {
    if (pos.get(v)) { out.set(v, true); out.set(-v, true); }
  }
  return out;
}

// exact density of the free set of an explicit member list.
// strategy: pairwise coprime -> product formula; small lcm -> count one period;
// few members -> inclusion-exclusion; otherwise the period is genuinely too large.
inline big_rat natural_density_exact(const std::vector<i64>& members_raw) {
  std::vector<i64> ms = members_raw;
  for (i64 m : ms)
    if (m < 2) throw invalid_member("member < 2: " + std::to_string(m));
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  if (ms.empty()) return big_rat(1);

  bool coprime = true;
  {
    std::map<i64, int> seen;
    for (i64 m : ms)
      for (i64 p : prime_factors(m))
        if (++seen[p] > 1) { coprime = false; break; }
  }
  if (coprime) {
    big_rat d = 1;
    for (i64 m : ms) d *= big_rat(m - 1, m);
    return d;
  }

  big_int period = 1;
  for (i64 m : ms) period = lcm(period, big_int(m));
  if (period <= 20000000) {
    i64 per = period.convert_to<i64>();
    std::vector<char> hit((size_t)per, 0);
    for (i64 m : ms)
      for (i64 v = m; v <= per; v += m) hit[(size_t)(v % per)] = 1; // v == per lands on 0
    i64 free_cnt = 0;
    for (char c : hit) free_cnt += !c;
    return big_rat(free_cnt, per);
  }

  if (ms.size() <= 20) {
    // inclusion-exclusion over nonempty subsets
    big_rat mult = 0;
    size_t n = ms.size();
    std::vector<big_int> lcms(1u << n);
    lcms[0] = 1;
    for (u64 mask = 1; mask < (1ull << n); ++mask) {
      int low = __builtin_ctzll(mask);
      lcms[mask] = lcm(lcms[mask & (mask - 1)], big_int(ms[(size_t)low]));
      int bits = __builtin_popcountll(mask);
      big_rat term(1, lcms[mask]);
      mult += (bits % 2 == 1) ? term : -term;
    }
    return 1 - mult;
  }
  throw period_too_large("density: lcm too large and too many members for inclusion-exclusion");
}

struct density_report {
  std::vector<i64> cutoffs;
  std::vector<big_rat> densities;   // density of the free set of B ∩ [1, cutoff]
  double limit_estimate = 0.0;
};

inline density_report log_density_profile(const bset_spec& s, const std::vector<i64>& cutoffs) {
  density_report r;
  for (size_t i = 0; i < cutoffs.size(); ++i) {
    if (i > 0 && cutoffs[i] <= cutoffs[i - 1])
      throw precondition_error("cutoffs must be strictly increasing");
  }
  r.cutoffs = cutoffs;
  for (i64 m : cutoffs) {
    if (m < 2) throw precondition_error("cutoff must be >= 2");
    r.densities.push_back(natural_density_exact(members_in(s, 0, m)));
  }
  r.limit_estimate = r.densities.empty() ? 1.0 : rat_to_double(r.densities.back());
  return r;
}

// ∏_{p < x} (1 - 1/p), strict inequality; long double accumulation keeps the
// relative error around π(x)·2^-63, far below the 1e-12 contract for x <= 1e4
inline double mertens_product(i64 x) {
  if (x < 3) throw precondition_error("mertens_product requires x >= 3");
  long double prod = 1.0L;
  for (i64 p : simple_sieve(x - 1)) prod *= (1.0L - 1.0L / (long double)p);
  return (double)prod;
}

inline i64 count_pk(i64 k, i64 lo, i64 hi) {
  if (k < 1) throw precondition_error("count_pk requires k >= 1");
  std::vector<uint8_t> om = omega_window(lo, hi);
  i64 c = 0;
  for (uint8_t o : om) c += (o == k);
  return c;
}

// first-order Landau form x (log log x)^(k-1) / ((k-1)! log x)
inline double landau_estimate(i64 k, i64 x) {
  if (k < 1 || x < 3) throw precondition_error("landau_estimate requires k >= 1, x >= 3");
  double fact = 1;
  for (i64 i = 2; i < k; ++i) fact *= (double)i;
  return (double)x * std::pow(std::log(std::log((double)x)), (double)(k - 1)) / (fact * std::log((double)x));
}

// for each n: max_m |B ∩ [m, m+n]| / n over m >= 1, m+n <= limit
inline std::vector<double> banach_density_profile(const bset_spec& s,
                                                  const std::vector<i64>& lengths, i64 limit) {
  indicator_window w = set_window(s, 1, limit);
  std::vector<int> pref((size_t)limit + 1, 0);
  for (i64 v = 1; v <= limit; ++v) pref[(size_t)v] = pref[(size_t)v - 1] + (w.get(v) ? 1 : 0);
  std::vector<double> out;
  for (i64 n : lengths) {
    if (n < 1 || n >= limit) throw precondition_error("banach profile: bad length");
    i64 best = 0;
    for (i64 m = 1; m + n <= limit; ++m)
      best = std::max<i64>(best, pref[(size_t)(m + n)] - pref[(size_t)(m - 1)]);
    out.push_back((double)best / (double)n);
  }
  return out;
}

// Σ_{q <= R} μ²(q)/φ(q), exact
inline big_rat sigma_R(i64 R) {
  if (R < 1) throw precondition_error("sigma_R requires R >= 1");
  totient_table t = sieve_totients(R);
  // common denominator lcm(1..R) = ∏ p^floor(log_p R)
  big_int D = 1;
  for (i64 p : simple_sieve(R)) {
    i64 pk = p;
    while (pk <= R / p) pk *= p;
    D *= pk;
  }
  big_int num = 0;
  for (i64 q = 1; q <= R; ++q) {
    if (t.squarefree[(size_t)q]) num += D / t.phi[(size_t)q];
  }
  return big_rat(num, D);
}

} // namespace bfree
