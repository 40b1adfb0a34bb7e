#include <catch2/catch_amalgamated.hpp>
#include <bfree/bset.hpp>

using namespace bfree;

TEST_CASE("primitive basis drops multiples", "[bset]") {
  REQUIRE(primitive_basis({2, 4, 3}) == std::vector<i64>{2, 3});
  REQUIRE(primitive_basis({2, 3, 4, 9}) == std::vector<i64>{2, 3});
  REQUIRE(primitive_basis({5}) == std::vector<i64>{5});
  REQUIRE(primitive_basis({}) == std::vector<i64>{});
  REQUIRE(primitive_basis({6, 10, 15}) == std::vector<i64>{6, 10, 15});
  REQUIRE_THROWS_AS(primitive_basis({1, 2}), invalid_member);
  REQUIRE_THROWS_AS(primitive_basis({0}), invalid_member);
}

TEST_CASE("explicit spec validates and normalizes", "[bset]") {
  bset_spec s = bset_explicit({6, 2, 2, 4});
  REQUIRE(s.members == std::vector<i64>{2, 4, 6});
  REQUIRE_THROWS_AS(bset_explicit({1}), invalid_member);
}

TEST_CASE("members_in half-open window", "[bset]") {
  REQUIRE(members_in(bset_pk(2), 10, 20) == std::vector<i64>{14, 15});
  REQUIRE(members_in(bset_primes(), 0, 10) == std::vector<i64>{2, 3, 5, 7});
  REQUIRE(members_in(bset_primes(), 7, 11) == std::vector<i64>{11});
  REQUIRE(members_in(bset_prime_squares(), 0, 30) == std::vector<i64>{4, 9, 25});
  REQUIRE(members_in(bset_explicit({2, 3, 50}), 2, 50) == std::vector<i64>{3, 50});
  REQUIRE(members_in(bset_truncate(bset_primes(), 5), 0, 100) == std::vector<i64>{2, 3, 5});
  REQUIRE(members_in(bset_pk(3), 0, 30) == std::vector<i64>{8, 12, 18, 20, 27, 28, 30});
  REQUIRE(members_in(bset_primes(), 10, 10).empty());
}

TEST_CASE("product sets", "[bset]") {
  REQUIRE(product_set({2, 3, 5}) == std::vector<i64>{6, 10, 15});
  REQUIRE(product_set({2, 3, 5, 7}) == std::vector<i64>{6, 10, 14, 15, 21, 35});
  REQUIRE(product_set({4, 6}) == std::vector<i64>{24});
  REQUIRE(product_set({7}).empty());
  REQUIRE_THROWS_AS(product_set({1, 2}), invalid_member);

  bset_spec prod = bset_product(bset_explicit({2, 3, 5}), 10);
  REQUIRE(members_in(prod, 0, 20) == std::vector<i64>{6, 10, 15});
  REQUIRE(members_in(prod, 6, 20) == std::vector<i64>{10, 15});
}

TEST_CASE("coprime product of m members has m(m-1)/2 products", "[bset]") {
  std::vector<i64> ps = {2, 3, 5, 7, 11, 13, 17};
  for (size_t m = 2; m <= ps.size(); ++m) {
    std::vector<i64> cut(ps.begin(), ps.begin() + m);
    REQUIRE(product_set(cut).size() == m * (m - 1) / 2);
  }
}

TEST_CASE("is_coprime structural answers", "[bset]") {
  REQUIRE(is_coprime(bset_primes(), 1000000));
  REQUIRE(is_coprime(bset_prime_squares(), 1000000));
  REQUIRE(is_coprime(bset_pk(1), 1000000));
  REQUIRE_FALSE(is_coprime(bset_pk(2), 100));
  REQUIRE_FALSE(is_coprime(bset_pk(3), 100));
  // horizon too small to contain the structural pair {4,6}: only {4} visible
  REQUIRE(is_coprime(bset_pk(2), 5));
  REQUIRE(is_coprime(bset_explicit({2, 3, 5}), 100));
  REQUIRE_FALSE(is_coprime(bset_explicit({4, 6}), 100));
  REQUIRE_FALSE(is_coprime(bset_explicit({6, 10, 15}), 100));
  REQUIRE(is_coprime(bset_truncate(bset_primes(), 1000000), 1000000));
  REQUIRE_FALSE(is_coprime(bset_product(bset_primes(), 10), 1000));
  REQUIRE(is_coprime(bset_product(bset_explicit({4, 6}), 10), 1000)); // single member {24}
}

TEST_CASE("describe round trip sanity", "[bset]") {
  REQUIRE(describe(bset_explicit({4, 6})) == "{4,6}");
  REQUIRE(describe(bset_primes()) == "primes");
  REQUIRE(describe(bset_pk(2)) == "pk(2)");
  REQUIRE(describe(bset_truncate(bset_primes(), 100)) == "truncate(primes,100)");
}
