#pragma once
#include <map>
#include <memory>
#include <string>
#include <vector>
#include "arith.hpp"
#include "factor.hpp"

namespace bfree {

// descriptor of a set B of moduli (all members >= 2); possibly infinite (primes, pk, ...)
enum class bset_kind { explicit_members, primes, pk, prime_squares, truncate, product };

struct bset_spec {
  bset_kind kind = bset_kind::explicit_members;
  std::vector<i64> members;          // explicit_members
  i64 k = 0;                         // pk: Omega(n) == k
  i64 max = 0;                       // truncate: inner ∩ [1, max]
  i64 horizon = 0;                   // product: inner members <= horizon are multiplied
  std::shared_ptr<bset_spec> inner;  // truncate / product
};

inline bset_spec bset_explicit(std::vector<i64> members) {
  for (i64 m : members)
    if (m < 2) throw invalid_member("explicit member < 2: " + std::to_string(m));
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  bset_spec s;
  s.kind = bset_kind::explicit_members;
  s.members = std::move(members);
  return s;
}

inline bset_spec bset_primes() {
  bset_spec s;
  s.kind = bset_kind::primes;
  return s;
}

inline bset_spec bset_pk(i64 k) {
  if (k < 1) throw precondition_error("pk requires k >= 1");
  bset_spec s;
  s.kind = bset_kind::pk;
  s.k = k;
  return s;
}

inline bset_spec bset_prime_squares() {
  bset_spec s;
  s.kind = bset_kind::prime_squares;
  return s;
}

inline bset_spec bset_truncate(bset_spec inner, i64 max) {
  if (max < 2) throw precondition_error("truncate requires max >= 2");
  bset_spec s;
  s.kind = bset_kind::truncate;
  s.max = max;
  s.inner = std::make_shared<bset_spec>(std::move(inner));
  return s;
}

inline bset_spec bset_product(bset_spec inner, i64 horizon) {
  if (horizon < 2) throw precondition_error("product requires horizon >= 2");
  bset_spec s;
  s.kind = bset_kind::product;
  s.horizon = horizon;
  s.inner = std::make_shared<bset_spec>(std::move(inner));
  return s;
}

// drop members that are multiples of smaller members; input validated (>= 2)
inline std::vector<i64> primitive_basis(std::vector<i64> members) {
  for (i64 m : members)
    if (m < 2) throw invalid_member("member < 2: " + std::to_string(m));
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<i64> keep;
  for (i64 m : members) {
    bool divisible = false;
    for (i64 d : keep) {
      if (m % d == 0) { divisible = true; break; }
    }
    if (!divisible) keep.push_back(m);
  }
  return keep;
}

// pairwise products of distinct members, sorted, deduplicated
inline std::vector<i64> product_set(const std::vector<i64>& members) {
  for (i64 m : members)
    if (m < 2) throw invalid_member("member < 2: " + std::to_string(m));
  std::vector<i64> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<i64> out;
  for (size_t i = 0; i < sorted.size(); ++i)
    for (size_t j = i + 1; j < sorted.size(); ++j)
      out.push_back(checked_mul(sorted[i], sorted[j]));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// B ∩ (lo, hi], ascending
inline std::vector<i64> members_in(const bset_spec& s, i64 lo, i64 hi) {
  std::vector<i64> out;
  if (hi <= lo) return out;
  switch (s.kind) {
    case bset_kind::explicit_members: {
      for (i64 m : s.members)
        if (m > lo && m <= hi) out.push_back(m);
      return out;
    }
    case bset_kind::primes: {
      bit_window w = prime_window(std::max<i64>(lo + 1, 2), hi);
      for (i64 v = w.lo; v <= w.hi; ++v)
        if (w.get(v)) out.push_back(v);
      return out;
    }
    case bset_kind::pk: {
      i64 from = std::max<i64>(lo + 1, 1);
      std::vector<uint8_t> om = omega_window(from, hi);
      for (i64 v = from; v <= hi; ++v)
        if (om[(size_t)(v - from)] == s.k) out.push_back(v);
      return out;
    }
    case bset_kind::prime_squares: {
      for (i64 p = 2; p * p <= hi; ++p) {
        if (p * p > lo && is_prime_u64((u64)p)) out.push_back(p * p);
      }
      return out;
    }
    case bset_kind::truncate:
      return members_in(*s.inner, lo, std::min(hi, s.max));
    case bset_kind::product: {
      std::vector<i64> base = members_in(*s.inner, 0, s.horizon);
      for (size_t i = 0; i < base.size(); ++i) {
        for (size_t j = i + 1; j < base.size(); ++j) {
          i64 v = checked_mul(base[i], base[j]);
          if (v > lo && v <= hi) out.push_back(v);
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
  }
  return out;
}

// whether B is pairwise coprime; infinite kinds answered structurally,
// finite enumerations via a prime-multiplicity count (a shared prime factor
// between two members is exactly a prime hit twice)
inline bool is_coprime(const bset_spec& s, i64 horizon) {
  switch (s.kind) {
    case bset_kind::primes:
    case bset_kind::prime_squares:
      return true;
    case bset_kind::pk: {
      if (s.k == 1) return true;
      // 2^k and 3·2^(k-1) are both in pk and share the factor 2
      i64 a = 1, b = 3;
      for (i64 i = 0; i < s.k; ++i) a = checked_mul(a, 2);
      for (i64 i = 0; i < s.k - 1; ++i) b = checked_mul(b, 2);
      if (std::max(a, b) <= horizon) return false;
      break; // horizon too small to see the structural pair; enumerate
    }
    case bset_kind::truncate:
      return is_coprime(*s.inner, std::min(horizon, s.max));
    case bset_kind::product: {
      // three inner members give two products sharing an inner factor
      std::vector<i64> base = members_in(*s.inner, 0, s.horizon);
      return base.size() < 3;
    }
    default:
      break;
  }
  std::vector<i64> ms = members_in(s, 0, horizon);
  std::map<i64, int> seen;
  for (i64 m : ms) {
    for (i64 p : prime_factors(m)) {
      if (++seen[p] > 1) return false;
    }
  }
  return true;
}

inline std::string describe(const bset_spec& s) {
  switch (s.kind) {
    case bset_kind::explicit_members: {
      std::string out = "{";
      for (size_t i = 0; i < s.members.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s.members[i]);
      }
      return out + "}";
    }
    case bset_kind::primes: return "primes";
    case bset_kind::pk: return "pk(" + std::to_string(s.k) + ")";
    case bset_kind::prime_squares: return "prime_squares";
    case bset_kind::truncate:
      return "truncate(" + describe(*s.inner) + "," + std::to_string(s.max) + ")";
    case bset_kind::product:
      return "product(" + describe(*s.inner) + "," + std::to_string(s.horizon) + ")";
  }
  return "?";
}

} // namespace bfree
