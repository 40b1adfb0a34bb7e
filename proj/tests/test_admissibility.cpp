#include <catch2/catch_amalgamated.hpp>
#include <bfree/admissibility.hpp>

#include <random>

using namespace bfree;

namespace {
// independent admissibility check: explicit residue tally per member
bool admissible_naive(const finite_config& a, const std::vector<i64>& members) {
  for (i64 b : members) {
    std::vector<char> hit((size_t)b, 0);
    i64 distinct = 0;
    for (i64 x : a) {
      i64 r = ((x % b) + b) % b;
      if (!hit[(size_t)r]) { hit[(size_t)r] = 1; ++distinct; }
    }
    if (distinct == b) return false;
  }
  return true;
}
} // namespace

TEST_CASE("smallest missing residue", "[admissibility]") {
  finite_config a = {0, 1, 3};
  REQUIRE(smallest_missing_residue(a.begin(), a.end(), 4) == 2);
  REQUIRE(smallest_missing_residue(a.begin(), a.end(), 2) == std::nullopt);
  finite_config b = {5};
  REQUIRE(smallest_missing_residue(b.begin(), b.end(), 3) == 0);
  finite_config empty;
  REQUIRE(smallest_missing_residue(empty.begin(), empty.end(), 7) == 0);
  finite_config wide = {0, 1, 2};
  REQUIRE(smallest_missing_residue(wide.begin(), wide.end(), 100) == 3);
  REQUIRE(smallest_missing_residue(a.begin(), a.end(), 64) == 2);
}

TEST_CASE("admissibility elementary verdicts", "[admissibility]") {
  // {2,3} covers both classes mod 2
  auto v = is_admissible({2, 3}, bset_primes());
  REQUIRE_FALSE(v.admissible);
  REQUIRE(v.failing_modulus == 2);

  // {0,2} misses 1 mod 2 and 1 mod 3... 2 is the only prime <= 2
  auto v2 = is_admissible({0, 2}, bset_primes());
  REQUIRE(v2.admissible);
  REQUIRE(v2.missing_residue.at(2) == 1);

  // classic prime quadruple pattern
  auto v3 = is_admissible({11, 13, 17, 19}, bset_primes());
  REQUIRE(v3.admissible);

  // empty configuration is vacuously admissible
  REQUIRE(is_admissible({}, bset_primes()).admissible);

  // duplicates collapse before the size cutoff is applied
  REQUIRE(is_admissible({5, 5, 5}, bset_primes()).admissible);
}

TEST_CASE("admissibility against composite member sets", "[admissibility]") {
  // {0,1,2,3} covers everything mod 4 but {0,1,3} misses 2
  REQUIRE_FALSE(is_admissible({0, 1, 2, 3}, bset_explicit({4, 6})).admissible);
  REQUIRE(is_admissible({0, 1, 3}, bset_explicit({4, 6})).admissible);

  // member above |A| cannot fail
  REQUIRE(is_admissible({0, 1}, bset_explicit({4})).admissible);
}

TEST_CASE("missing residues listing", "[admissibility]") {
  REQUIRE(missing_residues({1, 5, 7, 11}, 6) == std::vector<i64>{0, 2, 3, 4});
  REQUIRE(missing_residues({0, 1}, 2).empty());
  REQUIRE_THROWS_AS(missing_residues({0}, 1), precondition_error);
}

TEST_CASE("extension yields verified admissible points", "[admissibility]") {
  // empty configuration extends from 0
  REQUIRE(extend_admissible({}, bset_primes(), 1) == std::vector<i64>{0});
  REQUIRE(extend_admissible({}, bset_primes(), 3) == std::vector<i64>{0, 1, 2});

  // step is lcm of members <= |A|+1 = 3, so 6 here
  REQUIRE(extend_admissible({0, 2}, bset_explicit({2, 3}), 2) == std::vector<i64>{6, 12});

  REQUIRE_THROWS_AS(extend_admissible({0, 1}, bset_explicit({2}), 1), not_admissible);
  REQUIRE_THROWS_AS(extend_admissible({0}, bset_primes(), 0), precondition_error);

  // each extension step keeps the union admissible for many rounds
  finite_config cur = {0};
  for (int round = 0; round < 8; ++round) {
    std::vector<i64> nxt = extend_admissible(cur, bset_primes(), 1);
    REQUIRE(nxt.size() == 1);
    cur.push_back(nxt[0]);
    cur = normalize_config(cur);
    REQUIRE(is_admissible(cur, bset_primes()).admissible);
  }
  REQUIRE(cur.size() == 9);
}

TEST_CASE("verdicts agree with the naive tally on random configurations", "[admissibility]") {
  std::mt19937_64 rng(20240811);
  std::vector<std::vector<i64>> member_sets = {{2}, {2, 3}, {2, 3, 5, 7}, {4, 6}, {3, 5, 9}};
  for (int trial = 0; trial < 400; ++trial) {
    const auto& ms = member_sets[(size_t)(rng() % member_sets.size())];
    finite_config a;
    i64 sz = (i64)(rng() % 9);
    for (i64 i = 0; i < sz; ++i) a.push_back((i64)(rng() % 30) - 5);
    a = normalize_config(a);
    std::vector<i64> active;
    for (i64 b : ms)
      if (b <= (i64)a.size()) active.push_back(b);
    bool expect = admissible_naive(a, active);
    REQUIRE(is_admissible(a, bset_explicit(ms)).admissible == expect);
  }
}

TEST_CASE("prime admissibility transfers to prime-power style sets", "[admissibility]") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    finite_config a;
    i64 sz = (i64)(rng() % 7);
    for (i64 i = 0; i < sz; ++i) a.push_back((i64)(rng() % 40));
    REQUIRE(check_p_implies_b(a, bset_prime_squares()));
    REQUIRE(check_p_implies_b(a, bset_pk(2)));
  }
}
