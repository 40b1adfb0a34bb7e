#pragma once
#include <map>
#include <optional>
#include "bset.hpp"

namespace bfree {

// finite configuration of integers, kept sorted and distinct
using finite_config = std::vector<i64>;

inline finite_config normalize_config(finite_config a) {
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

struct admissibility_verdict {
  bool admissible = false;
  std::optional<i64> failing_modulus;   // smallest failing member, iff not admissible
  std::map<i64, i64> missing_residue;   // member -> smallest missing residue, iff admissible
};

// smallest residue class mod b not hit by the range, or nullopt if all are hit;
// bitmask fast path for b <= 64
template <class It>
inline std::optional<i64> smallest_missing_residue(It begin, It end, i64 b) {
  if (b <= 64) {
    u64 full = (b == 64) ? ~0ull : ((1ull << b) - 1);
    u64 mask = 0;
    for (It it = begin; it != end; ++it) {
      mask |= 1ull << floor_mod(*it, b);
      if (mask == full) return std::nullopt;
    }
    for (i64 r = 0; r < b; ++r)
      if (!((mask >> r) & 1)) return r;
    return std::nullopt;
  }
  std::vector<char> seen((size_t)b, 0);
  i64 hit = 0;
  for (It it = begin; it != end; ++it) {
    i64 r = floor_mod(*it, b);
    if (!seen[(size_t)r]) {
      seen[(size_t)r] = 1;
      if (++hit == b) return std::nullopt;
    }
  }
  for (i64 r = 0; r < b; ++r)
    if (!seen[(size_t)r]) return r;
  return std::nullopt;
}

// a configuration is admissible iff it misses a residue class modulo every member;
// only members b <= |A| can have full coverage, so the enumeration stops there
inline admissibility_verdict is_admissible(const finite_config& a_raw, const bset_spec& s) {
  finite_config a = normalize_config(a_raw);
  admissibility_verdict v;
  for (i64 b : members_in(s, 1, (i64)a.size())) {
    std::optional<i64> miss = smallest_missing_residue(a.begin(), a.end(), b);
    if (!miss) {
      v.admissible = false;
      v.failing_modulus = b;
      v.missing_residue.clear();
      return v;
    }
    v.missing_residue[b] = *miss;
  }
  v.admissible = true;
  return v;
}

inline std::vector<i64> missing_residues(const finite_config& a, i64 b) {
  if (b < 2) throw precondition_error("missing_residues requires b >= 2");
  std::vector<char> seen((size_t)b, 0);
  for (i64 x : a) seen[(size_t)floor_mod(x, b)] = 1;
  std::vector<i64> out;
  for (i64 r = 0; r < b; ++r)
    if (!seen[(size_t)r]) out.push_back(r);
  return out;
}

// how_many values m = min(A) + x·lcm(members <= |A|+1), x = 1,2,...; every returned
// candidate keeps A ∪ {m} admissible (the step preserves all residues of min(A))
inline std::vector<i64> extend_admissible(const finite_config& a_raw, const bset_spec& s,
                                          i64 how_many = 1) {
  if (how_many < 1) throw precondition_error("extend_admissible: how_many >= 1");
  finite_config a = normalize_config(a_raw);
  std::vector<i64> out;
  if (a.empty()) {
    for (i64 i = 0; i < how_many; ++i) out.push_back(i);
    return out;
  }
  admissibility_verdict v = is_admissible(a, s);
  if (!v.admissible)
    throw not_admissible("configuration fails admissibility at modulus " +
                         std::to_string(*v.failing_modulus));
  big_int lcm_b = 1;
  for (i64 b : members_in(s, 1, (i64)a.size() + 1)) lcm_b = lcm(lcm_b, big_int(b));
  if (lcm_b > 1000000000000ll) throw period_too_large("extension step lcm too large");
  i64 step = lcm_b.convert_to<i64>();
  i64 base = a.front();
  for (i64 x = 1; (i64)out.size() < how_many; ++x) {
    if (x > 2000000)
      throw verification_failure("extension scan exhausted without enough verified values");
    i64 m = base + checked_mul(x, step);
    if (std::binary_search(a.begin(), a.end(), m)) continue;
    finite_config ext = a;
    ext.insert(std::lower_bound(ext.begin(), ext.end(), m), m);
    if (!is_admissible(ext, s).admissible)
      throw verification_failure("extension candidate failed admissibility recheck");
    out.push_back(m);
  }
  return out;
}

// instance check that prime-admissibility implies spec-admissibility
inline bool check_p_implies_b(const finite_config& a, const bset_spec& s) {
  if (!is_admissible(a, bset_primes()).admissible) return true;
  return is_admissible(a, s).admissible;
}

} // namespace bfree
