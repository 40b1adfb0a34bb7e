#include <catch2/catch_amalgamated.hpp>
#include <bfree/serialize.hpp>

#include <sstream>

using namespace bfree;

TEST_CASE("set specs round-trip through json", "[serialize]") {
  std::vector<bset_spec> specs = {
      bset_explicit({4, 6}),       bset_primes(),          bset_pk(2),
      bset_prime_squares(),        bset_truncate(bset_primes(), 100),
      bset_product(bset_pk(1), 30)};
  for (const auto& s : specs) {
    json j = bset_to_json(s);
    bset_spec back = bset_from_json(j);
    REQUIRE(bset_to_json(back) == j);
    REQUIRE(members_in(back, 1, 50) == members_in(s, 1, 50));
  }

  REQUIRE_THROWS_AS(bset_from_json(json::parse("{\"kind\":\"nope\"}")), precondition_error);
  REQUIRE_THROWS_AS(bset_from_json(json::parse("[1,2]")), precondition_error);
  // inline string form used by the command line
  bset_spec s = bset_from_json(json::parse("{\"kind\":\"explicit\",\"members\":[4,6]}"));
  REQUIRE(members_in(s, 1, 10) == std::vector<i64>{4, 6});
}

TEST_CASE("verdict json carries the failing modulus or the residue map", "[serialize]") {
  json bad = verdict_to_json(is_admissible({2, 3}, bset_primes()));
  REQUIRE(bad["admissible"] == false);
  REQUIRE(bad["failing_modulus"] == 2);
  REQUIRE_FALSE(bad.contains("missing_residue"));

  json good = verdict_to_json(is_admissible({0, 2}, bset_primes()));
  REQUIRE(good["admissible"] == true);
  REQUIRE(good["failing_modulus"].is_null());
  REQUIRE(good["missing_residue"]["2"] == 1);
  REQUIRE(good["schema_version"] == schema_version);
}

TEST_CASE("long integer lists truncate with an explicit marker", "[serialize]") {
  std::vector<i64> small = {1, 2, 3};
  REQUIRE(int_list(small).is_array());

  std::vector<i64> large((size_t)2500);
  for (size_t i = 0; i < large.size(); ++i) large[i] = (i64)i;
  json j = int_list(large);
  REQUIRE(j["truncated"] == true);
  REQUIRE(j["count"] == 2500);
  REQUIRE(j["head"].size() == json_list_cap);
}

TEST_CASE("obstruction witness serializes with sizes and truncated windows", "[serialize]") {
  obstruction_witness w = build_obstruction(bset_explicit({4, 6}), 100);
  json j = obstruction_to_json(w);
  REQUIRE(j["schema_version"] == schema_version);
  REQUIRE(j["a"] == 6);
  REQUIRE(j["b"] == 4);
  REQUIRE(j["n"] == 83171);
  REQUIRE(j["a1_size"] == w.A1.size());
  REQUIRE(j["a1"]["truncated"] == true);
  // identical builds serialize identically
  obstruction_witness w2 = build_obstruction(bset_explicit({4, 6}), 100);
  REQUIRE(obstruction_to_json(w2).dump() == j.dump());
}

TEST_CASE("construction levels serialize with reports", "[serialize]") {
  behrend_result r = build_levels(rho_sqrt(), 0.9, 1);
  json j = levels_to_json(r);
  REQUIRE(j["levels"].size() == 2);
  REQUIRE(j["levels"][0]["m"].is_null());
  REQUIRE(j["levels"][1]["m"] == 6);
  REQUIRE(j["levels"][1]["n"] == 11);
  REQUIRE(j["all_checks_pass"] == true);
  REQUIRE(j["reports"][1]["checks"]["floor_density_exact"] == true);
}

TEST_CASE("census blocks serialize as bit strings", "[serialize]") {
  indicator_window w = eta_window(bset_explicit({2}), 1, 12);
  json j = census_to_json(census(w, 3));
  REQUIRE(j["length"] == 3);
  REQUIRE(j["count"] == 2); // 101 and 010 are the only length-3 factors
  std::vector<std::string> blocks = j["blocks"].get<std::vector<std::string>>();
  REQUIRE(blocks == std::vector<std::string>{"010", "101"});
}

TEST_CASE("pattern witness serializes polynomials and big positions", "[serialize]") {
  auto w = pk_pattern_witness({2, 3, 5}, 1, 6);
  REQUIRE(w.has_value());
  json j = pattern_to_json(*w, "pk_pattern");
  REQUIRE(j["n"] == "540");
  REQUIRE(j["y"] == 18);
  std::vector<std::string> phi = j["phi"].get<std::vector<std::string>>();
  REQUIRE(std::find(phi.begin(), phi.end(), "1+30*x") != phi.end());
  REQUIRE(std::find(phi.begin(), phi.end(), "1+6*x") != phi.end());
}

TEST_CASE("csv preamble carries the schema version", "[serialize]") {
  std::ostringstream os;
  write_csv_preamble(os, "n,count");
  REQUIRE(os.str() == "# schema_version=1\nn,count\n");
}
