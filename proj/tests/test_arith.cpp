#include <catch2/catch_amalgamated.hpp>
#include <bfree/arith.hpp>

using namespace bfree;

namespace {
bool is_prime_naive(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}
} // namespace

TEST_CASE("miller-rabin agrees with trial division", "[arith]") {
  for (u64 n = 0; n <= 20000; ++n) REQUIRE(is_prime_u64(n) == is_prime_naive(n));
}

TEST_CASE("miller-rabin on 64-bit edge values", "[arith]") {
  REQUIRE(is_prime_u64(18446744073709551557ull)); // largest prime < 2^64
  REQUIRE(is_prime_u64((1ull << 61) - 1));        // mersenne
  REQUIRE_FALSE(is_prime_u64((1ull << 62) + 1));
  REQUIRE_FALSE(is_prime_u64(3825123056546413051ull)); // strong pseudoprime to bases 2..23
  REQUIRE(is_prime_u64(2));
  REQUIRE_FALSE(is_prime_u64(1));
  REQUIRE_FALSE(is_prime_u64(0));
}

TEST_CASE("integer square roots", "[arith]") {
  for (u64 n = 0; n <= 5000; ++n) {
    u64 r = isqrt_u64(n);
    REQUIRE(r * r <= n);
    REQUIRE((r + 1) * (r + 1) > n);
  }
  REQUIRE(isqrt_u64(~0ull) == 4294967295ull);
  REQUIRE(ceil_sqrt_u64(9) == 3);
  REQUIRE(ceil_sqrt_u64(10) == 4);
  REQUIRE(ceil_sqrt_u64(0) == 0);
}

TEST_CASE("floor_mod and lcm", "[arith]") {
  REQUIRE(floor_mod(-7, 3) == 2);
  REQUIRE(floor_mod(7, 3) == 1);
  REQUIRE(floor_mod(-6, 3) == 0);
  REQUIRE(lcm_checked(4, 6) == 12);
  REQUIRE_THROWS_AS(checked_mul(1ll << 62, 4), precondition_error);
}

TEST_CASE("crt solves pairwise-coprime systems", "[arith]") {
  auto [r, m] = crt({{big_int(1), big_int(2)}, {big_int(2), big_int(3)}});
  REQUIRE(r == 5);
  REQUIRE(m == 6);
  auto [r2, m2] = crt({{big_int(2), big_int(3)}, {big_int(3), big_int(5)}, {big_int(2), big_int(7)}});
  REQUIRE(m2 == 105);
  REQUIRE(r2 % 3 == 2);
  REQUIRE(r2 % 5 == 3);
  REQUIRE(r2 % 7 == 2);
  REQUIRE_THROWS_AS(crt({{big_int(0), big_int(4)}, {big_int(1), big_int(6)}}), precondition_error);
}

TEST_CASE("primorial", "[arith]") {
  REQUIRE(primorial(2) == 2);
  REQUIRE(primorial(4) == 6);
  REQUIRE(primorial(10) == 210);
  REQUIRE(primorial(30) == big_int("6469693230"));
  REQUIRE_THROWS_AS(primorial(1), precondition_error);
}

TEST_CASE("divisor count", "[arith]") {
  REQUIRE(sigma0(1) == 1);
  REQUIRE(sigma0(12) == 6);
  REQUIRE(sigma0(16) == 5);
  REQUIRE(sigma0(97) == 2);
}

TEST_CASE("rational/double round trips", "[arith]") {
  REQUIRE(rat_to_double(big_rat(1, 2)) == 0.5);
  REQUIRE(rat_to_double(big_rat(1, 3)) == Catch::Approx(1.0 / 3).epsilon(1e-15));
  big_int huge = pow(big_int(10), 400);
  REQUIRE(rat_to_double(big_rat(huge, 3 * huge)) == Catch::Approx(1.0 / 3).epsilon(1e-15));
  REQUIRE(rat_from_double(0.5) == big_rat(1, 2));
  REQUIRE(rat_to_double(rat_from_double(0.9)) == 0.9);
  REQUIRE(rat_to_double(big_rat(0)) == 0.0);
  REQUIRE(rat_to_double(big_rat(-3, 4)) == -0.75);
}

TEST_CASE("ceil helpers", "[arith]") {
  REQUIRE(ceil_div_big(7, 2) == 4);
  REQUIRE(ceil_div_big(6, 2) == 3);
  REQUIRE(ceil_div_big(-7, 2) == -3);
  REQUIRE(ceil_rat(big_rat(5, 2)) == 3);
  REQUIRE(ceil_rat(big_rat(4, 2)) == 2);
  REQUIRE(ceil_rat(big_rat(104, 2)) == 52);
}

TEST_CASE("exact primality beyond 64 bits", "[arith]") {
  REQUIRE(is_prime_exact(big_int(97)));
  REQUIRE_FALSE(is_prime_exact(big_int(1)));
  REQUIRE(is_prime_exact(big_int("18446744073709551557")));
  big_int big_even = pow(big_int(2), 70);
  REQUIRE_FALSE(is_prime_exact(big_even));
  big_int mult3 = pow(big_int(3), 50);
  REQUIRE_FALSE(is_prime_exact(mult3));
  big_int too_big = pow(big_int(10), 30) + 57; // sqrt far above any trial bound
  REQUIRE_THROWS_AS(is_prime_exact(too_big), budget_exceeded);
}

TEST_CASE("simple sieve", "[arith]") {
  std::vector<i64> ps = simple_sieve(30);
  REQUIRE(ps == std::vector<i64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  REQUIRE(simple_sieve(1).empty());
  REQUIRE(simple_sieve(100).size() == 25);
}
