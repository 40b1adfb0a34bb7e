#pragma once
#include <array>
#include <numeric>
#include "admissibility.hpp"
#include "sieve.hpp"

namespace bfree {

inline bool is_transitive(const bset_spec& s, i64 horizon) { return is_coprime(s, horizon); }

// shift n solving r1_j + n ≡ r2_j (mod b_j) over the given coprime members,
// where r_i,j is the smallest missing residue of A_i mod b_j; post-verified
inline i64 crt_merge_shift(const finite_config& a1_raw, const finite_config& a2_raw,
                           const std::vector<i64>& members_raw) {
  finite_config a1 = normalize_config(a1_raw), a2 = normalize_config(a2_raw);
  std::vector<i64> ms = members_raw;
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  for (i64 m : ms)
    if (m < 2) throw invalid_member("member < 2: " + std::to_string(m));
  for (size_t i = 0; i < ms.size(); ++i)
    for (size_t j = i + 1; j < ms.size(); ++j)
      if (std::gcd(ms[i], ms[j]) != 1)
        throw not_coprime("members " + std::to_string(ms[i]) + "," + std::to_string(ms[j]) +
                          " share a factor");
  bset_spec s = bset_explicit(ms);
  admissibility_verdict v1 = is_admissible(a1, s), v2 = is_admissible(a2, s);
  if (!v1.admissible || !v2.admissible)
    throw not_admissible("input configuration not admissible");

  std::vector<std::pair<big_int, big_int>> congruences;
  for (i64 b : ms) {
    i64 r1 = *smallest_missing_residue(a1.begin(), a1.end(), b);
    i64 r2 = *smallest_missing_residue(a2.begin(), a2.end(), b);
    congruences.push_back({big_int(floor_mod(r2 - r1, b)), big_int(b)});
  }
  auto [n_big, mod] = crt(congruences);
  i64 n = n_big.convert_to<i64>();

  finite_config merged = a2;
  for (i64 x : a1) merged.push_back(x + n);
  if (!is_admissible(merged, s).admissible)
    throw verification_failure("merge shift failed post-verification");
  return n;
}

struct obstruction_witness {
  i64 a = 0, b = 0, lcm_ab = 0;
  std::vector<std::pair<i64, i64>> T;      // (r, t) with gcd(r,t) free of C \ {a}
  i64 sigma_T = 0;
  std::vector<std::array<i64, 3>> q_map;   // (r, t, q_rt), q_rt = gcd(r,t) · p_rt
  std::vector<i64> C0;
  i64 q = 0;
  i64 n = 0;                               // max q_rt
  finite_config A1, A2;
  std::vector<i64> members;                // enumerated C within the horizon
};

namespace detail {
inline void clear_congruence(bit_window& w, i64 mod, i64 residue) {
  for (i64 v = w.lo + floor_mod(residue - w.lo, mod); v <= w.hi; v += mod) w.set(v, false);
}
} // namespace detail

// non-transitivity witness per the non-coprime construction: a minimal pair (b, a)
// with gcd > 1, grid T over lcm(a,b), Dirichlet primes above |T|·Σ_T, an avoidance
// shift q, and the two admissible windows A1, A2 whose merges always collide
inline obstruction_witness build_obstruction(const bset_spec& spec, i64 horizon,
                                             i64 prime_budget_per_pair = 10000000) {
  obstruction_witness w;
  w.members = members_in(spec, 1, horizon);
  for (i64 b : w.members) {
    for (i64 a : w.members) {
      if (a != b && std::gcd(a, b) > 1) {
        w.b = b;
        w.a = a;
        break;
      }
    }
    if (w.b) break;
  }
  if (!w.b) throw not_applicable("member set is coprime within horizon");
  w.lcm_ab = lcm_checked(w.a, w.b);

  std::vector<i64> rest;
  for (i64 c : w.members)
    if (c != w.a) rest.push_back(c);

  for (i64 r = 1; r <= w.lcm_ab; ++r) {
    for (i64 t = 0; t < r; ++t) {
      i64 g = std::gcd(r, t); // gcd(r, 0) = r
      bool free = true;
      for (i64 c : rest) {
        if (c <= g && g % c == 0) { free = false; break; }
      }
      if (free) {
        w.T.push_back({r, t});
        w.sigma_T += sigma0(g);
      }
    }
  }
  i64 threshold = checked_mul((i64)w.T.size(), w.sigma_T);

  for (auto [r, t] : w.T) {
    i64 g = std::gcd(r, t);
    i64 rp = r / g, tp = t / g;
    i64 cand = threshold + 1 + floor_mod(tp - (threshold + 1), rp);
    i64 steps = 0;
    while (true) {
      if (++steps > prime_budget_per_pair)
        throw budget_exceeded("dirichlet prime scan exhausted for pair (" + std::to_string(r) +
                              "," + std::to_string(t) + ")");
      if (is_prime_u64((u64)cand) && w.a % cand != 0) break;
      cand += rp;
    }
    w.q_map.push_back({r, t, checked_mul(g, cand)});
  }

  for (i64 c : rest) {
    for (auto& [r, t, qrt] : w.q_map) {
      if (qrt % c == 0) { w.C0.push_back(c); break; }
    }
  }

  // avoidance shift: q with (C0·Z + q) disjoint from all q_rt, scanning 0,1,-1,2,-2,...
  auto disjoint = [&](i64 qq) {
    for (i64 c : w.C0)
      for (auto& [r, t, qrt] : w.q_map)
        if ((qrt - qq) % c == 0) return false;
    return true;
  };
  for (i64 k = 0;; ++k) {
    if (disjoint(k)) { w.q = k; break; }
    if (k > 0 && disjoint(-k)) { w.q = -k; break; }
  }

  for (auto& [r, t, qrt] : w.q_map) w.n = std::max(w.n, qrt);

  bit_window in1 = make_bit_window(-w.n, w.n, true);
  bit_window in2 = make_bit_window(-w.n, w.n, true);
  std::vector<char> in_c0;
  for (i64 c : w.members)
    in_c0.push_back(std::binary_search(w.C0.begin(), w.C0.end(), c) ? 1 : 0);
  for (size_t i = 0; i < w.members.size(); ++i) {
    i64 c = w.members[i];
    if (in_c0[i]) {
      detail::clear_congruence(in1, c, w.q);
      detail::clear_congruence(in2, c, w.q);
    } else {
      detail::clear_congruence(in1, c, 0);
      if (c != w.a) detail::clear_congruence(in2, c, 0);
    }
  }
  detail::clear_congruence(in2, w.a, 1);
  for (i64 v = -w.n; v <= w.n; ++v) {
    if (in1.get(v)) w.A1.push_back(v);
    if (in2.get(v)) w.A2.push_back(v);
  }

  // invariant re-verification; a failure here is a construction defect
  if (std::gcd(w.a, w.b) <= 1) throw verification_failure("witness pair not non-coprime");
  for (auto& [r, t, qrt] : w.q_map) {
    i64 g = std::gcd(r, t);
    if (qrt % g != 0 || !is_prime_u64((u64)(qrt / g)) || qrt / g <= threshold ||
        w.a % (qrt / g) == 0 || floor_mod(qrt, r) != t)
      throw verification_failure("q_map entry violates its defining conditions");
  }
  if (!disjoint(w.q)) throw verification_failure("avoidance shift not disjoint");
  bset_spec cs = bset_explicit(w.members);
  if (!is_admissible(w.A1, cs).admissible || !is_admissible(w.A2, cs).admissible)
    throw verification_failure("witness windows not admissible");
  return w;
}

// true iff A1 ∪ (A2+m) fails admissibility for every m in [m_lo, m_hi];
// trace additionally pins the nearest-multiple selection |kb - m| <= b
inline bool verify_no_merge(const obstruction_witness& w, const bset_spec& spec, i64 m_lo,
                            i64 m_hi, bool trace = false) {
  if (w.A1.empty() && w.A2.empty()) return false;
  std::vector<i64> ms = w.members.empty() ? members_in(spec, 1, 10000) : w.members;
  std::vector<std::vector<char>> cov1, cov2;
  for (i64 c : ms) {
    std::vector<char> c1((size_t)c, 0), c2((size_t)c, 0);
    for (i64 x : w.A1) c1[(size_t)floor_mod(x, c)] = 1;
    for (i64 x : w.A2) c2[(size_t)floor_mod(x, c)] = 1;
    cov1.push_back(std::move(c1));
    cov2.push_back(std::move(c2));
  }
  for (i64 m = m_lo; m <= m_hi; ++m) {
    if (trace) {
      i64 k = (i64)std::llround((double)m / (double)w.b);
      if (std::abs(k * w.b - m) > w.b)
        throw verification_failure("progression selection violated |kb-m| <= b");
    }
    bool blocked = false;
    for (size_t i = 0; i < ms.size() && !blocked; ++i) {
      i64 c = ms[i];
      bool full = true;
      for (i64 r = 0; r < c; ++r) {
        if (!cov1[i][(size_t)r] && !cov2[i][(size_t)floor_mod(r - m, c)]) { full = false; break; }
      }
      blocked = full; // full coverage mod c certifies non-admissibility
    }
    if (!blocked) return false;
  }
  return true;
}

} // namespace bfree
