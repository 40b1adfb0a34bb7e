#pragma once
#include <optional>
#include <random>
#include <set>
#include <string>
#include "admissibility.hpp"
#include "factor.hpp"

namespace bfree {

// linear polynomial a + b·x with b >= 1
template <class Int>
struct lin_poly {
  Int a{};
  Int b{};
  friend bool operator==(const lin_poly& x, const lin_poly& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator<(const lin_poly& x, const lin_poly& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  }
};

using poly64 = lin_poly<i64>;
using poly_big = lin_poly<big_int>;

template <class Int>
inline Int poly_eval(const lin_poly<Int>& p, const Int& y) {
  return p.a + p.b * y;
}

inline std::string poly_to_string(const poly64& p) {
  std::string s;
  if (p.a != 0) s += std::to_string(p.a) + "+";
  if (p.b == 1)
    s += "x";
  else
    s += std::to_string(p.b) + "*x";
  return s;
}

template <class Int>
struct dickson_verdict {
  bool ok = false;
  std::optional<i64> failing_prime;              // smallest prime with no valid y
  std::vector<std::pair<i64, i64>> witnesses;    // (p, smallest y with product nonzero mod p)
};

namespace detail {

inline i64 abs_gcd(i64 a, i64 b) { return std::gcd(a < 0 ? -a : a, b); }
inline big_int abs_gcd(const big_int& a, const big_int& b) {
  return boost::multiprecision::gcd(a < 0 ? big_int(-a) : a, b);
}

inline i64 mod_small(i64 v, i64 p) { return floor_mod(v, p); }
inline i64 mod_small(const big_int& v, i64 p) {
  return floor_mod((v % p).convert_to<i64>(), p);
}

inline i64 fit_i64(i64 v) { return v; }
inline i64 fit_i64(const big_int& v) {
  if (v > big_int(std::numeric_limits<i64>::max()))
    throw budget_exceeded("coefficient gcd too large to factor");
  return v.convert_to<i64>();
}

} // namespace detail

// a finite family passes iff for every prime p some y has all values nonzero
// mod p; only p <= k and prime factors of the gcd(|a_i|, b_i) can fail, since
// any other prime kills at most one residue per polynomial
template <class Int>
inline dickson_verdict<Int> satisfies_dickson(const std::vector<lin_poly<Int>>& fam) {
  dickson_verdict<Int> v;
  for (const auto& f : fam)
    if (f.b < 1) throw precondition_error("leading coefficient must be >= 1");
  i64 k = (i64)fam.size();
  std::set<i64> candidates;
  for (i64 p : simple_sieve(std::max<i64>(k, 2)))
    if (p <= k) candidates.insert(p);
  for (const auto& f : fam) {
    i64 g = detail::fit_i64(detail::abs_gcd(f.a, f.b));
    for (i64 p : factorization(g)) candidates.insert(p);
  }
  for (i64 p : candidates) {
    i64 good = -1;
    for (i64 y = 0; y < p && good < 0; ++y) {
      bool nonzero = true;
      for (const auto& f : fam) {
        if ((detail::mod_small(f.a, p) + detail::mod_small(f.b, p) * y) % p == 0) {
          nonzero = false;
          break;
        }
      }
      if (nonzero) good = y;
    }
    if (good < 0) {
      v.failing_prime = p;
      return v;
    }
    v.witnesses.push_back({p, good});
  }
  v.ok = true;
  return v;
}

inline std::vector<poly64> config_family(const finite_config& a) {
  std::vector<poly64> fam;
  for (i64 x : a) fam.push_back({-x, 1});
  return fam;
}

// the family {x - a : a in A} passes iff A is prime-admissible
inline bool dickson_equals_admissible(const finite_config& a_raw) {
  finite_config a = normalize_config(a_raw);
  if (a.size() > 20) throw precondition_error("configuration too large for the cross-check");
  bool d = satisfies_dickson(config_family(a)).ok;
  bool adm = is_admissible(a, bset_primes()).admissible;
  return d == adm;
}

// seeded random-instance run of the equivalence; returns the counterexample count
inline i64 dickson_equals_admissible_suite(i64 trials, u64 seed = 20240811) {
  std::mt19937_64 rng(seed);
  i64 bad = 0;
  for (i64 t = 0; t < trials; ++t) {
    finite_config a;
    i64 sz = (i64)(rng() % 11);
    for (i64 i = 0; i < sz; ++i) a.push_back((i64)(rng() % 81) - 40);
    if (!dickson_equals_admissible(a)) ++bad;
  }
  return bad;
}

// hypotheses of the guarded-extension step: coprime coefficients per
// polynomial and, for p <= k, fewer than p leading coefficients outside pZ
template <class Int>
inline bool lemma_condition(const std::vector<lin_poly<Int>>& fam) {
  i64 k = (i64)fam.size();
  for (const auto& f : fam) {
    if (f.b < 1) throw precondition_error("leading coefficient must be >= 1");
    if (detail::abs_gcd(f.a, f.b) != Int(1)) return false;
  }
  for (i64 p : simple_sieve(std::max<i64>(k, 2))) {
    if (p > k) break;
    i64 outside = 0;
    for (const auto& f : fam)
      if (detail::mod_small(f.b, p) != 0) ++outside;
    if (outside >= p) return false;
  }
  return true;
}

struct ap_prime {
  i64 z = 0;
  i64 p = 0;
};

// smallest z >= 1 with c + d·z a prime above `floor` dividing no family value;
// requires gcd(c,d)=1 and that c+dx divides no family member as a polynomial
inline ap_prime find_prime_in_ap(i64 c, i64 d, const std::vector<poly64>& fam, i64 floor_,
                                 i64 budget = 10000000) {
  if (d < 1) throw precondition_error("modulus must be >= 1");
  if (detail::abs_gcd(c, d) != 1) throw not_coprime("offset and modulus share a factor");
  for (const auto& f : fam)
    if (f.b * c - f.a * d == 0)
      throw divisible_polynomial("family member is proportional to the progression");
  for (i64 z = 1; z <= budget; ++z) {
    i64 v = c + d * z;
    if (v <= floor_ || v < 2 || !is_prime_u64((u64)v)) continue;
    bool clean = true;
    for (const auto& f : fam) {
      if (floor_mod(f.a + f.b * z, v) == 0) { clean = false; break; }
    }
    if (clean) return {z, v};
  }
  throw budget_exceeded("no usable prime found in the progression");
}

// polynomials x - c' that, added to fam, keep it passing while forcing
// fam ∪ Ψ ∪ {g} to fail; empty result means fam ∪ {g} already fails
inline std::vector<poly64> guard_family(const std::vector<poly64>& fam, const poly64& g, i64 lo,
                                        i64 budget = 10000000) {
  if (!satisfies_dickson(fam).ok) throw precondition_error("base family must pass");
  for (const auto& f : fam)
    if (f == g) throw precondition_error("polynomial already in the family");
  std::vector<poly64> with_g = fam;
  with_g.push_back(g);
  if (!satisfies_dickson(with_g).ok) return {};

  i64 k = (i64)fam.size();
  i64 floor_ = std::max<i64>(g.b, k + 1);
  for (const auto& f : fam) floor_ = std::max(floor_, f.b);
  ap_prime zp = find_prime_in_ap(g.a, g.b, fam, floor_, budget);
  i64 p = zp.p;

  std::vector<i64> classes; // residues avoiding every root mod p
  for (i64 r = 0; r < p; ++r) {
    bool root = floor_mod(g.a + g.b * r, p) == 0;
    for (const auto& f : fam)
      if (floor_mod(f.a + f.b * r, p) == 0) root = true;
    if (!root) classes.push_back(r);
  }
  if (classes.empty() || (i64)classes.size() >= p)
    throw verification_failure("root-free class count out of range");

  std::vector<std::pair<i64, i64>> avoid; // (q, y_q) per prime q <= k+p, q != p
  for (i64 q : simple_sieve(k + p)) {
    if (q == p) continue;
    i64 yq = -1;
    for (i64 y = 0; y < q && yq < 0; ++y) {
      bool nonzero = floor_mod(g.a + g.b * y, q) != 0;
      for (const auto& f : fam)
        if (floor_mod(f.a + f.b * y, q) == 0) nonzero = false;
      if (nonzero) yq = y;
    }
    if (yq < 0) throw verification_failure("no admissible class at a small prime");
    avoid.push_back({q, yq});
  }

  std::vector<poly64> psi;
  for (i64 r : classes) {
    i64 cand = lo + floor_mod(r - lo, p);
    i64 steps = 0;
    while (true) {
      if (++steps > budget) throw budget_exceeded("guard point scan exhausted");
      bool clean = true;
      for (auto [q, yq] : avoid)
        if (floor_mod(cand, q) == yq) { clean = false; break; }
      if (clean) break;
      cand += p;
    }
    psi.push_back({-cand, 1});
  }

  std::vector<poly64> guarded = fam;
  guarded.insert(guarded.end(), psi.begin(), psi.end());
  if (!satisfies_dickson(guarded).ok)
    throw verification_failure("guarded family fails unexpectedly");
  guarded.push_back(g);
  if (satisfies_dickson(guarded).ok)
    throw verification_failure("guard does not exclude the target polynomial");
  return psi;
}

// grows fam with guard points > n so that every polynomial of gamma is
// excluded; added polynomials are monic with distinct roots above n
inline std::vector<poly64> maximal_family(const std::vector<poly64>& fam,
                                          const std::vector<poly64>& gamma, i64 n,
                                          i64 budget = 10000000) {
  if (!satisfies_dickson(fam).ok) throw precondition_error("base family must pass");
  for (const auto& g : gamma)
    for (const auto& f : fam)
      if (f == g) throw precondition_error("target polynomial already in the family");
  i64 lo = n + 1;
  for (const auto& f : fam)
    if (f.b == 1) lo = std::max(lo, -f.a + 1);
  for (const auto& g : gamma)
    if (g.b == 1) lo = std::max(lo, -g.a + 1);

  std::vector<poly64> grown = fam;
  for (const auto& g : gamma) {
    std::vector<poly64> psi = guard_family(grown, g, lo, budget);
    for (const auto& f : psi) {
      grown.push_back(f);
      if (f.b == 1) lo = std::max(lo, -f.a + 1);
    }
  }
  for (const auto& g : gamma) {
    std::vector<poly64> with_g = grown;
    with_g.push_back(g);
    if (satisfies_dickson(with_g).ok)
      throw verification_failure("a target polynomial is still admissible");
  }
  return grown;
}

// extends an admissible A ⊆ [m+1, n] by points > n so that no integer of
// [m+1, n] \ A can be added back without breaking admissibility
inline finite_config saturate_admissible(const finite_config& a_raw, i64 m, i64 n,
                                         i64 budget = 10000000) {
  finite_config a = normalize_config(a_raw);
  if (m < 0 || n <= m) throw precondition_error("need 0 <= m < n");
  for (i64 x : a)
    if (x <= m || x > n) throw precondition_error("configuration must lie in (m, n]");
  if (!is_admissible(a, bset_primes()).admissible)
    throw not_admissible("configuration is not prime-admissible");

  std::vector<poly64> phi = config_family(a);
  std::vector<poly64> gamma;
  {
    std::vector<char> in_a((size_t)n + 1, 0);
    for (i64 x : a) in_a[(size_t)x] = 1;
    for (i64 i = m + 1; i <= n; ++i)
      if (!in_a[(size_t)i]) gamma.push_back({-i, 1});
  }
  std::vector<poly64> grown = maximal_family(phi, gamma, n, budget);

  finite_config added;
  for (size_t i = phi.size(); i < grown.size(); ++i) added.push_back(-grown[i].a);
  std::sort(added.begin(), added.end());

  finite_config whole = a;
  whole.insert(whole.end(), added.begin(), added.end());
  whole = normalize_config(whole);
  if (!is_admissible(whole, bset_primes()).admissible)
    throw verification_failure("saturated configuration lost admissibility");
  for (const auto& g : gamma) {
    finite_config blocked = whole;
    blocked.push_back(-g.a);
    if (is_admissible(blocked, bset_primes()).admissible)
      throw verification_failure("a gap integer can still be added");
  }
  return added;
}

// Ω with multiplicity for big values: strip primes up to the trial bound,
// then the cofactor must be 1 or a provable prime
inline i64 omega_exact(big_int v, i64 trial_bound = 10000000) {
  if (v < 1) throw precondition_error("omega needs a positive integer");
  if (v == 1) return 0;
  i64 count = 0;
  if (v <= big_int(std::numeric_limits<u64>::max())) {
    u64 m = v.convert_to<u64>();
    for (u64 p = 2; p * p <= m && p <= (u64)trial_bound; ++p)
      while (m % p == 0) { m /= p; ++count; }
    if (m > 1) {
      if (!is_prime_u64(m)) throw budget_exceeded("cofactor too large to factor");
      ++count;
    }
    return count;
  }
  for (i64 p = 2; p <= trial_bound; p = (p == 2 ? 3 : p + 2)) {
    while (v % p == 0) { v /= p; ++count; }
    if (v == 1) return count;
  }
  if (v == 1) return count;
  if (is_prime_exact(v, trial_bound)) return count + 1;
  throw budget_exceeded("cofactor too large to factor");
}

struct pattern_witness {
  big_int n = 0;                  // window start: the pattern sits at n+1 .. n+len
  i64 y = 0;                      // CRT parameter actually used
  std::vector<poly_big> phi;      // must be prime at y
  std::vector<poly_big> gamma;    // must be composite at y
};

// window position n with [n+1, n+N] meeting the (k+1)-fold numbers exactly in
// n+A: every q in [1,N] contributes m_q·h_q(y) at position n+q, where m_q
// collects min(k, Ω(q)) smallest prime factors and h_q = q/m_q + (Q_N^k/m_q)x
inline std::optional<pattern_witness> pk_pattern_witness(const finite_config& a_raw, i64 k, i64 n_len,
                                                         i64 y_budget = 100000) {
  if (k < 1) throw precondition_error("need k >= 1");
  if (n_len < 2) throw precondition_error("need window length >= 2");
  finite_config a = normalize_config(a_raw);
  for (i64 x : a) {
    if (x < 1 || x > n_len) throw precondition_error("pattern offsets must lie in [1, N]");
    if (omega_exact(big_int(x)) != k)
      throw precondition_error(std::to_string(x) + " does not have exactly " + std::to_string(k) +
                               " prime factors");
  }

  big_int q_n = primorial(n_len);
  big_int qk = 1;
  for (i64 i = 0; i < k; ++i) qk *= q_n;

  pattern_witness w;
  std::vector<char> in_a((size_t)n_len + 1, 0);
  for (i64 x : a) in_a[(size_t)x] = 1;
  std::vector<big_int> m_of((size_t)n_len + 1, 1);
  for (i64 q = 1; q <= n_len; ++q) {
    auto fs = factorization(q); // flat, multiplicity, ascending
    i64 omega_q = (i64)fs.size();
    big_int m = 1;
    for (size_t i = 0; i < fs.size() && (i64)i < k; ++i) m *= fs[i];
    m_of[(size_t)q] = m;
    poly_big h{big_int(q) / m, qk / m};
    if (omega_q < k || in_a[(size_t)q])
      w.phi.push_back(h);
    else
      w.gamma.push_back(h);
  }
  if (!satisfies_dickson(w.phi).ok)
    throw verification_failure("prime-side family unexpectedly fails");
  for (const auto& f : w.phi)
    for (const auto& g : w.gamma)
      if (f == g) throw verification_failure("prime and composite sides overlap");

  for (i64 y = 1; y <= y_budget; ++y) {
    bool ok = true;
    for (const auto& f : w.phi)
      if (!is_prime_exact(poly_eval(f, big_int(y)))) { ok = false; break; }
    if (ok)
      for (const auto& g : w.gamma)
        if (is_prime_exact(poly_eval(g, big_int(y)))) { ok = false; break; }
    if (!ok) continue;

    w.y = y;
    w.n = qk * y;
    for (i64 j = 1; j <= n_len; ++j) {
      bool hit = omega_exact(w.n + j) == k + 1;
      if (hit != (bool)in_a[(size_t)j])
        throw verification_failure("window contents disagree with the pattern");
    }
    return w;
  }
  return std::nullopt;
}

// window start n with the two-factor numbers in [n+M+1, n+N] exactly n+A;
// needs sqrt(N) <= M < N, N-M < sqrt(N), and floor(sqrt(N)) composite
inline std::optional<pattern_witness> semiprime_window_witness(const finite_config& a_raw, i64 m,
                                                               i64 n_len, i64 y_budget = 100000) {
  if (m < 2 || n_len <= m) throw precondition_error("need 2 <= M < N");
  if (n_len < 4) throw precondition_error("need N >= 4");
  if (m * m < n_len) throw precondition_error("need sqrt(N) <= M");
  if ((n_len - m) * (n_len - m) >= n_len) throw precondition_error("need N - M < sqrt(N)");
  i64 root = (i64)isqrt_u64((u64)n_len);
  if (is_prime_u64((u64)root))
    throw precondition_error("floor(sqrt(N)) must be composite");
  finite_config a = normalize_config(a_raw);
  for (i64 x : a) {
    if (x <= m || x > n_len) throw precondition_error("offsets must lie in (M, N]");
    if ((i64)omega_exact(big_int(x)) != 2)
      throw precondition_error(std::to_string(x) + " is not a two-factor number");
  }

  big_int q = primorial(root);
  big_int q2 = q * q;

  pattern_witness w;
  std::vector<char> in_a((size_t)n_len + 1, 0);
  for (i64 x : a) in_a[(size_t)x] = 1;
  std::vector<big_int> m_of((size_t)n_len + 1, 1);
  for (i64 v = m + 1; v <= n_len; ++v) {
    bool v_prime = is_prime_u64((u64)v);
    big_int mv = 1;
    if (!v_prime) mv = prime_factors(v).front();
    m_of[(size_t)v] = mv;
    poly_big h{big_int(v) / mv, q2 / mv};
    if (v_prime || in_a[(size_t)v])
      w.phi.push_back(h);
    else
      w.gamma.push_back(h);
  }
  if (!lemma_condition(w.phi))
    throw verification_failure("prime-side family misses the coefficient conditions");
  if (!satisfies_dickson(w.phi).ok)
    throw verification_failure("prime-side family unexpectedly fails");

  for (i64 y = 1; y <= y_budget; ++y) {
    bool ok = true;
    for (const auto& f : w.phi)
      if (!is_prime_exact(poly_eval(f, big_int(y)))) { ok = false; break; }
    if (ok)
      for (const auto& g : w.gamma)
        if (is_prime_exact(poly_eval(g, big_int(y)))) { ok = false; break; }
    if (!ok) continue;

    w.y = y;
    w.n = q2 * y;
    for (i64 j = m + 1; j <= n_len; ++j) {
      bool hit = omega_exact(w.n + j) == 2;
      if (hit != (bool)in_a[(size_t)j])
        throw verification_failure("window contents disagree with the pattern");
    }
    return w;
  }
  return std::nullopt;
}

} // namespace bfree
