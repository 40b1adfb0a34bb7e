#pragma once
#include <map>
#include <optional>
#include <string>
#include "complexity.hpp"
#include "sieve.hpp"

namespace bfree {

// density bound used by the layered construction; either ceil(sqrt) or a
// user table validated for positivity (ratio rho(n)/n need not be monotone:
// every use re-checks rho(d)/d against an exact density at the point of use)
struct rho_fn {
  bool builtin_sqrt = true;
  std::vector<i64> table; // table[i] = rho(i+1)
};

inline rho_fn rho_sqrt() { return rho_fn{}; }

inline rho_fn rho_table(std::vector<i64> values) {
  rho_fn r;
  r.builtin_sqrt = false;
  for (i64 v : values)
    if (v < 1) throw precondition_error("rho values must be positive");
  r.table = std::move(values);
  return r;
}

inline i64 rho_eval(const rho_fn& r, i64 n) {
  if (n < 1) throw precondition_error("rho argument must be >= 1");
  if (r.builtin_sqrt) return (i64)ceil_sqrt_u64((u64)n);
  if ((size_t)n > r.table.size())
    throw insufficient_rho_table("rho table ends at " + std::to_string(r.table.size()) +
                                 ", needed " + std::to_string(n));
  return r.table[(size_t)n - 1];
}

struct construction_level {
  i64 level = 0;
  i64 N = 0;
  std::optional<i64> M; // absent at level 0
  std::vector<i64> B;   // primes accumulated so far
};

struct level_report {
  i64 level = 0;
  std::map<std::string, bool> checks;
  std::vector<std::string> notes;
};

struct behrend_result {
  double epsilon = 0;
  std::vector<construction_level> levels;
  std::vector<level_report> reports;
  bool all_checks_pass = false;
};

inline level_report check_level(const behrend_result& res, const rho_fn& rho, i64 level);

namespace detail {

inline big_rat euler_factor_product(const std::vector<i64>& primes) {
  big_rat d(1);
  for (i64 p : primes) d *= big_rat(p - 1, p);
  return d;
}

inline bool subword_present(const bit_window& w, u64 mask, i64 len, i64 lo, i64 hi) {
  if (hi - lo + 1 < len) return false;
  u64 cur = 0, full = (len == 64) ? ~0ull : ((1ull << len) - 1);
  for (i64 pos = lo; pos <= hi; ++pos) {
    cur = ((cur << 1) | (w.get(pos) ? 1u : 0u)) & full;
    if (pos - lo + 1 >= len && cur == mask) return true;
  }
  return false;
}

// every admissible block must occur as a factor of the prefix; blocks are
// bit-reversed relative to census packing (mask built most-recent-low here)
inline bool all_blocks_present(const std::vector<i64>& members, i64 len, i64 prefix_hi) {
  bset_spec s = bset_explicit(members);
  std::vector<u64> blocks;
  count_admissible_blocks(s, len, &blocks);
  indicator_window eta = eta_window(s, 1, prefix_hi);
  for (u64 packed : blocks) {
    // census packs offset j at bit j; the scanner builds oldest-high masks
    u64 mask = 0;
    for (i64 j = 0; j < len; ++j)
      if ((packed >> j) & 1) mask |= 1ull << (len - 1 - j);
    if (!subword_present(eta, mask, len, 1, prefix_hi)) return false;
  }
  return true;
}

} // namespace detail

// layered prime construction: starting from B0 = {2}, N0 = 2, alternately pick
//   M_{l+1} = N_l + j·lcm(B_l), minimal j >= 1 with
//     rho(M-N)/(M-N) <= d(F_{B_l})  and  every admissible (l+1)-block of B_l
//     occurring inside eta_{B_l}[1, M],
//   then append >= l+2 consecutive primes > M_{l+1} until their Euler product
//   drops to epsilon; N_{l+1} is the last prime appended.
inline behrend_result build_levels(const rho_fn& rho, double epsilon, i64 level_count,
                                   i64 scan_budget = 1000000) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw precondition_error("epsilon must be in (0,1)");
  if (level_count < 0) throw precondition_error("level count must be >= 0");
  big_rat eps = rat_from_double(epsilon);

  behrend_result out;
  out.epsilon = epsilon;
  construction_level base;
  base.level = 0;
  base.N = 2;
  base.B = {2};
  out.levels.push_back(base);

  for (i64 l = 0; l < level_count; ++l) {
    const construction_level& cur = out.levels.back();
    big_rat density = detail::euler_factor_product(cur.B);
    big_int lcm_big = 1;
    for (i64 p : cur.B) lcm_big *= p;
    if (lcm_big > big_int(1000000000000ll))
      throw budget_exceeded("level lcm too large to scan for the next window");
    i64 lcm_b = lcm_big.convert_to<i64>();

    std::optional<i64> m_next;
    for (i64 j = 1; j <= scan_budget; ++j) {
      i64 cand = cur.N + j * lcm_b;
      i64 delta = cand - cur.N;
      if (big_rat(rho_eval(rho, delta), delta) > density) continue;
      if (!detail::all_blocks_present(cur.B, l + 1, cand)) continue;
      m_next = cand;
      break;
    }
    if (!m_next) throw budget_exceeded("window scan exhausted at level " + std::to_string(l + 1));

    construction_level nxt;
    nxt.level = l + 1;
    nxt.M = *m_next;
    nxt.B = cur.B;
    big_rat tail(1);
    i64 appended = 0, p = *m_next, scanned = 0;
    while (appended < l + 2 || tail > eps) {
      do {
        if (++scanned > scan_budget) throw budget_exceeded("tail prime scan exhausted");
        ++p;
      } while (!is_prime_u64((u64)p));
      nxt.B.push_back(p);
      tail *= big_rat(p - 1, p);
      ++appended;
    }
    nxt.N = p;
    out.levels.push_back(nxt);
  }

  for (const auto& lv : out.levels) out.reports.push_back(check_level(out, rho, lv.level));
  out.all_checks_pass = true;
  for (const auto& r : out.reports)
    for (const auto& [k, ok] : r.checks)
      if (!ok) out.all_checks_pass = false;
  return out;
}

// audits one level against the full invariant list; checks are exact
// (rational densities, bit-for-bit prefixes, complete-period counts)
inline level_report check_level(const behrend_result& res, const rho_fn& rho, i64 level) {
  if (level < 0 || (size_t)level >= res.levels.size())
    throw precondition_error("no such level");
  const construction_level& lv = res.levels[(size_t)level];
  level_report rep;
  rep.level = level;
  big_rat eps = rat_from_double(res.epsilon);

  rep.checks["i_floor"] = lv.N >= level + 1;

  bool all_prime = true;
  for (i64 p : lv.B)
    if (p > lv.N || !is_prime_u64((u64)p)) all_prime = false;
  rep.checks["ii_primes_below_n"] = all_prime;

  i64 large = 0;
  for (i64 p : lv.B)
    if (p > level + 1) ++large;
  rep.checks["iii_enough_large"] = large >= level + 1;

  big_rat density = detail::euler_factor_product(lv.B);
  big_rat eps_pow(1);
  for (i64 i = 0; i < level; ++i) eps_pow *= eps;
  rep.checks["iv_density_drop"] = density <= eps_pow;

  if (level >= 1) {
    const construction_level& prev = res.levels[(size_t)level - 1];
    std::vector<i64> restricted;
    for (i64 p : lv.B)
      if (p <= prev.N) restricted.push_back(p);
    rep.checks["v_prefix_agrees"] = restricted == prev.B;

    std::vector<i64> below_m;
    for (i64 p : lv.B)
      if (p <= *lv.M) below_m.push_back(p);
    rep.checks["aux_window_gap"] = below_m == prev.B;

    rep.checks["vii_window_order"] = prev.N < *lv.M && *lv.M < lv.N;

    indicator_window mine = eta_window(bset_explicit(lv.B), 1, prev.N);
    indicator_window theirs = eta_window(bset_explicit(prev.B), 1, prev.N);
    bool agree = true;
    for (i64 v = 1; v <= prev.N; ++v)
      if (mine.get(v) != theirs.get(v)) agree = false;
    rep.checks["fin_eta_stable"] = agree;

    // free points inside (N_{l-1}, M_l] must meet the density exactly
    // (the gap is a whole number of periods) and dominate rho
    indicator_window prev_eta = eta_window(bset_explicit(prev.B), prev.N + 1, *lv.M);
    i64 count = (i64)prev_eta.popcount();
    i64 delta = *lv.M - prev.N;
    big_rat prev_density = detail::euler_factor_product(prev.B);
    rep.checks["floor_density_exact"] = big_rat(count) == big_rat(delta) * prev_density;
    rep.checks["floor_rho_bound"] = rho_eval(rho, delta) <= count;

    if (level <= 12)
      rep.checks["vi_blocks_occur"] = detail::all_blocks_present(lv.B, level, lv.N);
    else
      rep.notes.push_back("vi skipped: block length too large to enumerate");
  } else {
    rep.notes.push_back("v, vi, vii, aux, fin, floor: vacuous at level 0");
  }

  if ((size_t)level + 1 < res.levels.size()) {
    const construction_level& nxt = res.levels[(size_t)level + 1];
    i64 delta = *nxt.M - lv.N;
    i64 lcm_b = 1;
    for (i64 p : lv.B) lcm_b = lcm_checked(lcm_b, p);
    rep.checks["viii_next_window"] =
        delta % lcm_b == 0 && big_rat(rho_eval(rho, delta), delta) <= density;
  } else {
    rep.notes.push_back("viii: vacuous at final level (no next window)");
  }
  return rep;
}

// block positions for one admissible block via CRT against coprime members:
// small members pin a missed class, members beyond the window length are
// surjected onto the zero positions
struct block_occurrence {
  u64 packed = 0;       // census packing: bit j <-> offset j+1
  big_int position = 0; // the block equals eta[position+1 .. position+len]
};

inline std::vector<block_occurrence> admissible_blocks_appear(const std::vector<i64>& members_raw,
                                                              i64 len) {
  std::vector<i64> members = members_raw;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (i64 m : members)
    if (m < 2) throw invalid_member("member < 2");
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = i + 1; j < members.size(); ++j)
      if (std::gcd(members[i], members[j]) != 1)
        throw hypothesis_unmet("members not pairwise coprime");
  i64 big_count = 0;
  for (i64 m : members)
    if (m > len) ++big_count;
  if (big_count < len)
    throw hypothesis_unmet("need at least len members exceeding the block length");

  bset_spec s = bset_explicit(members);
  std::vector<u64> blocks;
  count_admissible_blocks(s, len, &blocks);

  std::vector<block_occurrence> out;
  for (u64 packed : blocks) {
    std::vector<i64> support = block_support({packed}, len);
    std::vector<i64> zeros;
    {
      std::vector<char> in_support((size_t)len + 1, 0);
      for (i64 j : support) in_support[(size_t)j] = 1;
      for (i64 j = 1; j <= len; ++j)
        if (!in_support[(size_t)j]) zeros.push_back(j);
    }
    std::vector<std::pair<big_int, big_int>> congruences;
    size_t big_idx = 0;
    for (i64 c : members) {
      i64 r;
      if (c <= len) {
        r = *smallest_missing_residue(support.begin(), support.end(), c);
      } else if (!zeros.empty()) {
        r = zeros[big_idx % zeros.size()];
        ++big_idx;
      } else {
        r = 0; // all-ones block: park the member on the class of 0
      }
      congruences.push_back({big_int(floor_mod(-r, c)), big_int(c)});
    }
    auto [n0, mod] = crt(congruences);
    big_int n = (n0 == 0) ? mod : n0;

    for (i64 j = 1; j <= len; ++j) {
      bool free = true;
      for (i64 c : members)
        if ((n + j) % c == 0) { free = false; break; }
      bool expected = (packed >> (j - 1)) & 1;
      if (free != expected)
        throw verification_failure("block does not occur at the computed position");
    }
    out.push_back({packed, n});
  }
  return out;
}

} // namespace bfree
