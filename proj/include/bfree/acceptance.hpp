#pragma once
#include <chrono>
#include <cstdio>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "serialize.hpp"

namespace bfree {

// one row of the self-check suite; `detail` is deterministic, timings are not
struct criterion_result {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0; // 0 = unbounded
};

namespace detail {

inline std::string fmt(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

// per-criterion stream from one user-facing seed (splitmix finalizer)
inline u64 mix_seed(u64 s, u64 salt) {
  u64 z = s + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::string rat_str(const big_rat& r) {
  std::ostringstream ss;
  ss << r;
  return ss.str();
}

// definition-level admissibility: some residue class mod every member stays empty
inline bool admissible_by_definition(u64 mask, i64 n, const std::vector<i64>& members) {
  for (i64 b : members) {
    u64 cov = 0;
    for (i64 j = 1; j <= n; ++j)
      if ((mask >> (j - 1)) & 1) cov |= 1ull << (j % b);
    u64 full = (b >= 64) ? ~0ull : ((1ull << b) - 1);
    if (cov == full) return false;
  }
  return true;
}

// shared 10^7 sieves, built on first use
struct sieve_cache {
  static constexpr i64 limit = 10000000;
  std::optional<indicator_window> primes;
  std::vector<uint8_t> omega;

  const indicator_window& prime_indicator() {
    if (!primes) {
      indicator_window w;
      w.source = "primes";
      static_cast<bit_window&>(w) = prime_window(1, limit);
      primes = std::move(w);
    }
    return *primes;
  }
  const std::vector<uint8_t>& omega_values() {
    if (omega.empty()) omega = omega_window(1, limit);
    return omega;
  }
};

} // namespace detail

inline std::vector<criterion_result> run_acceptance_suite(std::ostream* log = nullptr,
                                                           u64 seed = 20240811) {
  using detail::fmt;
  using detail::rat_str;
  std::vector<criterion_result> out;
  detail::sieve_cache cache;

  auto run = [&](int id, const std::string& name, double budget, auto&& body) {
    criterion_result r;
    r.id = id;
    r.name = name;
    r.budget_seconds = budget;
    auto t0 = std::chrono::steady_clock::now();
    try {
      body(r);
    } catch (const std::exception& ex) {
      r.pass = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget > 0 && r.seconds > budget) {
      r.pass = false;
      r.detail += " [exceeded " + fmt(budget, 0) + "s budget]";
    }
    if (log) {
      *log << (r.pass ? "[PASS] " : "[FAIL] ") << (id < 10 ? " " : "") << id << " " << name
           << " (" << fmt(r.seconds, 2) << "s) " << r.detail << "\n";
      log->flush();
    }
    out.push_back(r);
  };

  run(1, "exact_densities", 1.0, [&](criterion_result& r) {
    big_rat d1 = natural_density_exact({2, 3});
    big_rat d2 = natural_density_exact({6, 10, 15});
    r.pass = d1 == big_rat(1, 3) && d2 == big_rat(11, 15);
    r.detail = "d({2,3}) = " + rat_str(d1) + ", d({6,10,15}) = " + rat_str(d2);
  });

  run(2, "density_profile_trend", 10.0, [&](criterion_result& r) {
    std::vector<i64> cutoffs;
    for (i64 c = 2; c < 10000; c *= 2) cutoffs.push_back(c);
    cutoffs.push_back(10000);
    density_report rep = log_density_profile(bset_primes(), cutoffs);
    bool decreasing = true;
    for (size_t i = 1; i < rep.densities.size(); ++i)
      if (!(rep.densities[i] < rep.densities[i - 1])) decreasing = false;
    big_rat last = rep.densities.back();
    bool small_enough = last < big_rat(1, 20);
    r.pass = decreasing && small_enough;
    r.detail = std::string("strictly decreasing: ") + (decreasing ? "yes" : "NO") +
               "; density at cutoff 10000 = " + fmt(rat_to_double(last), 12) +
               " (required < 0.05" + (small_enough ? ")" : " -- NOT met)");
  });

  run(3, "mertens_at_1e6", 10.0, [&](criterion_result& r) {
    double v = mertens_product(1000000) * std::log(1e6);
    r.pass = v >= 0.55 && v <= 0.575;
    r.detail = "product * log = " + fmt(v, 12) + ", window [0.55, 0.575]";
  });

  run(4, "sieve_sum_exceeds_log", 30.0, [&](criterion_result& r) {
    // running sum over the common denominator lcm(1..R); the comparison
    // sum/D > log R is done as num·2^40 > D·ceil(2^40 log R + 1), a strict
    // sufficient test immune to rounding (the true margin stays above 0.5)
    const i64 R_max = 10000;
    totient_table t = sieve_totients(R_max);
    big_int D = 1, num = 0;
    i64 holds = 0, first_fail = 0;
    for (i64 R = 1; R <= R_max; ++R) {
      if (R >= 2 && prime_factors(R).size() == 1) {
        i64 p = prime_factors(R)[0];
        D *= p;
        num *= p;
      }
      if (t.squarefree[(size_t)R]) num += D / t.phi[(size_t)R];
      if (R < 2) continue;
      u64 scaled_log = (u64)std::ceil(std::log((double)R) * 1099511627776.0) + 1;
      if ((num << 40) > D * big_int(scaled_log)) ++holds;
      else if (!first_fail) first_fail = R;
    }
    bool matches_direct = big_rat(num, D) == sigma_R(R_max);
    r.pass = holds == R_max - 1 && matches_direct;
    r.detail = "sigma(R) > log R for " + std::to_string(holds) + "/9999 values of R" +
               (first_fail ? " (first failure at R = " + std::to_string(first_fail) + ")" : "") +
               "; running sum equals sigma_R(10000) exactly: " + (matches_direct ? "yes" : "NO") +
               "; sigma(10000) = " + fmt(rat_to_double(big_rat(num, D)), 6);
  });

  run(5, "block_count_oracle", 300.0, [&](criterion_result& r) {
    std::vector<bset_spec> specs = {bset_explicit({2}), bset_explicit({2, 3}), bset_primes(),
                                    bset_pk(2), bset_explicit({4, 6})};
    i64 mismatches = 0, checked = 0;
    for (const auto& s : specs) {
      for (i64 n = 1; n <= 16; ++n) {
        std::vector<i64> ms = members_in(s, 1, n);
        i64 naive = 0;
        for (u64 mask = 0; mask < (1ull << n); ++mask)
          naive += detail::admissible_by_definition(mask, n, ms);
        if (naive != count_admissible_blocks(s, n)) ++mismatches;
        ++checked;
      }
    }
    r.pass = mismatches == 0;
    r.detail = std::to_string(checked) + " (set, n) pairs vs the 2^n enumeration, " +
               std::to_string(mismatches) + " mismatches";
  });

  run(6, "block_count_lower_bound", 300.0, [&](criterion_result& r) {
    i64 failures = 0;
    i64 last_lb = 0, last_count = 0;
    for (i64 n = 1; n <= 20; ++n) {
      i64 primes_between = 0;
      for (i64 v = n + 1; v <= 2 * n; ++v) primes_between += is_prime_u64((u64)v);
      u64 lb = lower_bound_en(bset_primes(), n);
      if (lb != (1ull << primes_between)) ++failures; // cross-check the exponent
      i64 cnt = count_admissible_blocks(bset_primes(), n);
      if ((i64)lb > cnt) ++failures;
      last_lb = (i64)lb;
      last_count = cnt;
    }
    r.pass = failures == 0;
    r.detail = "2^|primes in (n,2n]| <= admissible block count for n <= 20; at n = 20: " +
               std::to_string(last_lb) + " <= " + std::to_string(last_count);
  });

  run(7, "prime_block_bound", 300.0, [&](criterion_result& r) {
    const indicator_window& w = cache.prime_indicator();
    i64 violations = 0, count_at_40 = 0;
    for (int n = 9; n <= 40; ++n) {
      i64 cnt = census(w, n, false).count;
      if (big_int(cnt) > prime_upper_bound(n)) ++violations;
      if (n == 40) count_at_40 = cnt;
    }
    r.pass = violations == 0;
    r.detail = "census counts within the sieve bound for 9 <= n <= 40 (census(40) = " +
               std::to_string(count_at_40) + "), " + std::to_string(violations) + " violations";
  });

  run(8, "admissible_support", 300.0, [&](criterion_result& r) {
    const indicator_window& w = cache.prime_indicator();
    i64 violations = 0, blocks_seen = 0;
    for (int n = 1; n <= 30; ++n) {
      census_result c = census(w, n, i64{n + 2}); // block start > n + 1
      for (const auto& words : c.blocks) {
        ++blocks_seen;
        if (!is_admissible(block_support(words, n), bset_primes()).admissible) ++violations;
      }
    }
    r.pass = violations == 0;
    r.detail = std::to_string(blocks_seen) + " distinct blocks at offsets > n for n <= 30, " +
               std::to_string(violations) + " with inadmissible support";
  });

  run(9, "semiprime_block_bound", 600.0, [&](criterion_result& r) {
    const std::vector<uint8_t>& om = cache.omega_values();
    indicator_window w;
    w.source = "omega = 2";
    static_cast<bit_window&>(w) = make_bit_window(1, detail::sieve_cache::limit, false);
    for (i64 v = 1; v <= detail::sieve_cache::limit; ++v)
      if (om[(size_t)(v - 1)] == 2) w.set(v, true);

    i64 violations = 0;
    for (int n = 16; n <= 40; ++n) {
      i64 cnt = census(w, n, false).count;
      if (big_int(cnt) > semiprime_upper_bound(n)) ++violations;
    }

    // interval counts against the 23·Y·loglog(Y)/log(Y) envelope, Y in [3, 10^6]
    std::vector<u32> pref((size_t)detail::sieve_cache::limit + 1, 0);
    for (i64 v = 1; v <= detail::sieve_cache::limit; ++v)
      pref[(size_t)v] = pref[(size_t)v - 1] + (w.get(v) ? 1 : 0);
    std::mt19937_64 rng(detail::mix_seed(seed, 9));
    i64 window_fails = 0;
    double worst = 0;
    for (int t = 0; t < 1000; ++t) {
      double u = (double)(rng() >> 11) * 0x1.0p-53;
      i64 Y = (i64)std::floor(std::exp(std::log(3.0) + u * (std::log(1e6) - std::log(3.0))));
      Y = std::min<i64>(std::max<i64>(Y, 3), 1000000);
      i64 span = detail::sieve_cache::limit - 2 * Y + 1;
      i64 X = Y + (i64)(rng() % (u64)span);
      i64 cnt = (i64)pref[(size_t)(X + Y)] - (i64)pref[(size_t)X];
      double bound = 23.0 * (double)Y * std::log(std::log((double)Y)) / std::log((double)Y);
      if ((double)cnt > bound) ++window_fails;
      worst = std::max(worst, (double)cnt / bound);
    }
    r.pass = violations == 0 && window_fails == 0;
    r.detail = "census bound violations: " + std::to_string(violations) +
               "; 1000 random intervals, envelope violations: " + std::to_string(window_fails) +
               " (worst count/bound = " + fmt(worst, 4) + ")";
  });

  run(10, "landau_sanity", 120.0, [&](criterion_result& r) {
    i64 cnt = count_pk(2, 1, 10000000);
    double est = landau_estimate(2, 10000000);
    double rel = std::abs((double)cnt - est) / (double)cnt;
    r.pass = rel <= 0.15;
    r.detail = "count = " + std::to_string(cnt) + ", first-order estimate = " + fmt(est, 1) +
               ", relative error = " + fmt(rel, 4) + " (allowed 0.15)";
  });

  run(11, "transitivity_dichotomy", 600.0, [&](criterion_result& r) {
    std::mt19937_64 rng(detail::mix_seed(seed, 11));
    auto rnd = [&](i64 m) { return (i64)(rng() % (u64)m); };

    i64 disagreements = 0;
    for (int t = 0; t < 50; ++t) {
      std::vector<i64> ms;
      i64 sz = 1 + rnd(5);
      for (i64 i = 0; i < sz; ++i) ms.push_back(2 + rnd(98));
      bset_spec s = bset_explicit(ms);
      if (is_transitive(s, 10000) != is_coprime(s, 10000)) ++disagreements;
    }

    i64 merge_fails = 0;
    for (int t = 0; t < 1000; ++t) {
      std::vector<i64> ms;
      while (ms.size() < 3) {
        i64 cand = 2 + rnd(40);
        bool ok = true;
        for (i64 m : ms)
          if (std::gcd(m, cand) != 1) ok = false;
        if (ok) ms.push_back(cand);
      }
      auto random_admissible = [&]() {
        bset_spec s = bset_explicit(ms);
        for (int tries = 0; tries < 50; ++tries) {
          finite_config a;
          i64 sz = rnd(4);
          for (i64 i = 0; i < sz; ++i) a.push_back(rnd(26));
          a = normalize_config(a);
          if (is_admissible(a, s).admissible) return a;
        }
        return finite_config{};
      };
      finite_config a1 = random_admissible(), a2 = random_admissible();
      i64 m = crt_merge_shift(a1, a2, ms);
      finite_config merged = a2;
      for (i64 x : a1) merged.push_back(x + m);
      if (!is_admissible(merged, bset_explicit(ms)).admissible) ++merge_fails;
    }

    obstruction_witness w46 = build_obstruction(bset_explicit({4, 6}), 10000);
    bool w46_ok = w46.a == 6 && w46.b == 4 && w46.q == 0 && w46.n == 83171 &&
                  (i64)w46.T.size() == 72 && w46.sigma_T == 105 &&
                  verify_no_merge(w46, bset_explicit({4, 6}), -10000, 10000);
    obstruction_witness w615 = build_obstruction(bset_explicit({6, 10, 15}), 10000);
    bool w615_ok = w615.a == 10 && w615.b == 6 && w615.q == 0 && w615.n == 8834647 &&
                   (i64)w615.T.size() == 448 && w615.sigma_T == 680 &&
                   verify_no_merge(w615, bset_explicit({6, 10, 15}), -10000, 10000);

    r.pass = disagreements == 0 && merge_fails == 0 && w46_ok && w615_ok;
    r.detail = "coprime dichotomy disagreements: " + std::to_string(disagreements) +
               "/50; merge re-verification failures: " + std::to_string(merge_fails) +
               "/1000; {4,6} witness (n = " + std::to_string(w46.n) + "): " +
               (w46_ok ? "no merge in [-1e4, 1e4]" : "FAILED") + "; {6,10,15} witness (n = " +
               std::to_string(w615.n) + "): " + (w615_ok ? "no merge in [-1e4, 1e4]" : "FAILED");
  });

  run(12, "layered_construction", 600.0, [&](criterion_result& r) {
    behrend_result res = build_levels(rho_sqrt(), 0.9, 2);
    bool shape = res.levels.size() == 3 && res.levels[0].N == 2 && res.levels[1].N == 11 &&
                 res.levels[2].N == 293 && res.levels[1].M == 6 && res.levels[2].M == 165 &&
                 res.levels[2].B.size() == 27;
    std::string failing;
    for (const auto& rep : res.reports)
      for (const auto& [key, ok] : rep.checks)
        if (!ok) failing += " level" + std::to_string(rep.level) + ":" + key;
    r.pass = shape && res.all_checks_pass;
    r.detail = std::string("levels N = 2, 11, 293; M = 6, 165; |B_2| = 27: ") +
               (shape ? "as expected" : "UNEXPECTED") + "; every level condition" +
               (res.all_checks_pass ? " holds (incl. exact floor-density equality)"
                                    : " -- failing:" + failing);
  });

  run(13, "dickson_suite", 300.0, [&](criterion_result& r) {
    poly64 x{0, 1};
    bool twin_ok = satisfies_dickson<i64>({x, {2, 1}}).ok;
    auto consec = satisfies_dickson<i64>({x, {1, 1}});
    bool consec_fails = !consec.ok && consec.failing_prime == 2;

    i64 equiv_fails = dickson_equals_admissible_suite(1000);

    std::mt19937_64 rng(detail::mix_seed(seed, 13));
    auto rnd = [&](i64 m) { return (i64)(rng() % (u64)m); };
    i64 implication_fails = 0, lemma_true = 0;
    for (int t = 0; t < 1000; ++t) {
      std::vector<poly64> fam;
      i64 sz = 1 + rnd(4);
      for (i64 i = 0; i < sz; ++i) fam.push_back({rnd(61) - 30, 1 + rnd(30)});
      if (!lemma_condition(fam)) continue;
      ++lemma_true;
      if (!satisfies_dickson(fam).ok) ++implication_fails;
    }

    // guarded growth examples; each call post-verifies its own conclusions
    std::vector<poly64> psi = guard_family({x}, {2, 1}, 5);
    std::vector<poly64> grown = maximal_family({x, {2, 1}}, {{4, 1}, {6, 1}}, 10);
    finite_config added = saturate_admissible({11, 13}, 10, 20);
    bool growth_ok = !psi.empty() && grown.size() > 2 && !added.empty();

    r.pass = twin_ok && consec_fails && equiv_fails == 0 && implication_fails == 0 && growth_ok;
    r.detail = std::string("{x, x+2} passes / {x, x+1} fails at 2: ") +
               (twin_ok && consec_fails ? "yes" : "NO") + "; config-equivalence mismatches: " +
               std::to_string(equiv_fails) + "/1000; condition->family implication failures: " +
               std::to_string(implication_fails) + "/" + std::to_string(lemma_true) +
               " applicable; guard/maximal/saturate post-verified: " + (growth_ok ? "yes" : "NO");
  });

  run(14, "witness_reverification", 0.0, [&](criterion_result& r) {
    auto omega_naive = [](i64 v) {
      i64 c = 0;
      for (i64 p = 2; p * p <= v; ++p)
        while (v % p == 0) { v /= p; ++c; }
      return v > 1 ? c + 1 : c;
    };
    auto prime_naive = [](i64 v) {
      if (v < 2) return false;
      for (i64 d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
      return true;
    };

    bool pk_ok = false;
    if (auto w = pk_pattern_witness({2, 3, 5}, 1, 6)) {
      pk_ok = w->n == 540;
      for (i64 q = 1; q <= 6; ++q) {
        bool inside = q == 2 || q == 3 || q == 5;
        if ((omega_naive(540 + q) == 2) != inside) pk_ok = false;
      }
    }

    bool sp_ok = false;
    if (auto w = semiprime_window_witness({94, 95}, 91, 100)) {
      sp_ok = w->n == 1014300;
      for (i64 q = 92; q <= 100; ++q) {
        bool inside = q == 94 || q == 95;
        if ((omega_naive(1014300 + q) == 2) != inside) sp_ok = false;
      }
    }

    auto check_prime_pattern = [&](finite_config a, i64 N, i64 expect) {
      auto n = pattern_witness_primes(a, N, 1000);
      if (!n || *n != expect) return false;
      for (i64 i = N + 1; i <= 2 * N; ++i) {
        bool inside = std::find(a.begin(), a.end(), i) != a.end();
        if (prime_naive(*n + i) != inside) return false;
      }
      return true;
    };
    bool pw_ok = check_prime_pattern({5}, 3, 2) && check_prime_pattern({}, 3, 4) &&
                 check_prime_pattern({11, 13}, 10, 126);

    // exhausted scans surface as "not found", never as a nonexistence claim
    bool not_found_reported = pattern_witness_primes({11, 13}, 10, 50) == std::nullopt &&
                              pk_pattern_witness({2, 3, 5}, 1, 6, 5) == std::nullopt;

    r.pass = pk_ok && sp_ok && pw_ok && not_found_reported;
    r.detail = std::string("pk window at 540: ") + (pk_ok ? "re-verified" : "FAILED") +
               "; semiprime window at 1014300: " + (sp_ok ? "re-verified" : "FAILED") +
               "; prime patterns at 2, 4, 126: " + (pw_ok ? "re-verified" : "FAILED") +
               "; truncated scans reported as not-found: " + (not_found_reported ? "yes" : "NO");
  });

  return out;
}

inline json acceptance_to_json(const std::vector<criterion_result>& rs) {
  json arr = json::array();
  for (const auto& r : rs) {
    json e;
    e["id"] = r.id;
    e["name"] = r.name;
    e["pass"] = r.pass;
    e["detail"] = r.detail;
    arr.push_back(e);
  }
  json j;
  j["schema_version"] = schema_version;
  j["criteria"] = arr;
  return j;
}

} // namespace bfree
