#pragma once
#include <json.hpp>

#include <fstream>
#include <ostream>
#include <string>

#include "behrend.hpp"
#include "bset.hpp"
#include "complexity.hpp"
#include "dickson.hpp"
#include "transitivity.hpp"

namespace bfree {

using json = nlohmann::ordered_json;
inline constexpr int schema_version = 1;

// arrays above this size are emitted as {count, head, truncated}
inline constexpr size_t json_list_cap = 1000;

inline json int_list(const std::vector<i64>& v) {
  if (v.size() <= json_list_cap) return json(v);
  json j;
  j["count"] = v.size();
  j["head"] = std::vector<i64>(v.begin(), v.begin() + json_list_cap);
  j["truncated"] = true;
  return j;
}

inline json bset_to_json(const bset_spec& s) {
  json j;
  switch (s.kind) {
    case bset_kind::explicit_members:
      j["kind"] = "explicit";
      j["members"] = s.members;
      break;
    case bset_kind::primes:
      j["kind"] = "primes";
      break;
    case bset_kind::pk:
      j["kind"] = "pk";
      j["k"] = s.k;
      break;
    case bset_kind::prime_squares:
      j["kind"] = "prime_squares";
      break;
    case bset_kind::truncate:
      j["kind"] = "truncate";
      j["max"] = s.max;
      j["inner"] = bset_to_json(*s.inner);
      break;
    case bset_kind::product:
      j["kind"] = "product";
      j["horizon"] = s.horizon;
      j["inner"] = bset_to_json(*s.inner);
      break;
  }
  return j;
}

inline bset_spec bset_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw precondition_error("set spec must be an object with a kind");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "explicit") return bset_explicit(j.at("members").get<std::vector<i64>>());
  if (kind == "primes") return bset_primes();
  if (kind == "pk") return bset_pk(j.at("k").get<i64>());
  if (kind == "prime_squares") return bset_prime_squares();
  if (kind == "truncate")
    return bset_truncate(bset_from_json(j.at("inner")), j.at("max").get<i64>());
  if (kind == "product")
    return bset_product(bset_from_json(j.at("inner")), j.at("horizon").get<i64>());
  throw precondition_error("unknown set kind: " + kind);
}

inline json verdict_to_json(const admissibility_verdict& v) {
  json j;
  j["schema_version"] = schema_version;
  j["admissible"] = v.admissible;
  if (v.failing_modulus)
    j["failing_modulus"] = *v.failing_modulus;
  else
    j["failing_modulus"] = nullptr;
  if (v.admissible) {
    json mr = json::object();
    for (auto& [b, r] : v.missing_residue) mr[std::to_string(b)] = r;
    j["missing_residue"] = mr;
  }
  return j;
}

inline json obstruction_to_json(const obstruction_witness& w) {
  json j;
  j["schema_version"] = schema_version;
  j["kind"] = "obstruction";
  j["a"] = w.a;
  j["b"] = w.b;
  j["lcm_ab"] = w.lcm_ab;
  j["pair_count"] = w.T.size();
  j["sigma_t"] = w.sigma_T;
  j["q"] = w.q;
  j["n"] = w.n;
  j["c0"] = w.C0;
  j["members"] = w.members;
  std::vector<i64> qs;
  for (auto& e : w.q_map) qs.push_back(e[2]);
  j["q_values"] = int_list(qs);
  j["a1_size"] = w.A1.size();
  j["a2_size"] = w.A2.size();
  j["a1"] = int_list(w.A1);
  j["a2"] = int_list(w.A2);
  return j;
}

inline std::string poly_to_string(const poly_big& p) {
  std::string s;
  if (p.a != 0) s += p.a.str() + "+";
  if (p.b == 1)
    s += "x";
  else
    s += p.b.str() + "*x";
  return s;
}

inline json pattern_to_json(const pattern_witness& w, const std::string& kind) {
  json j;
  j["schema_version"] = schema_version;
  j["kind"] = kind;
  j["n"] = w.n.str(); // may exceed 64 bits: decimal string
  j["y"] = w.y;
  std::vector<std::string> phi, gamma;
  for (auto& f : w.phi) phi.push_back(poly_to_string(f));
  for (auto& g : w.gamma) gamma.push_back(poly_to_string(g));
  j["phi"] = phi;
  j["gamma"] = gamma;
  return j;
}

inline json levels_to_json(const behrend_result& r) {
  json j;
  j["schema_version"] = schema_version;
  j["epsilon"] = r.epsilon;
  j["all_checks_pass"] = r.all_checks_pass;
  json levels = json::array();
  for (const auto& lv : r.levels) {
    json e;
    e["level"] = lv.level;
    e["n"] = lv.N;
    if (lv.M)
      e["m"] = *lv.M;
    else
      e["m"] = nullptr;
    e["b_size"] = lv.B.size();
    e["b"] = int_list(lv.B);
    levels.push_back(e);
  }
  j["levels"] = levels;
  json reports = json::array();
  for (const auto& rep : r.reports) {
    json e;
    e["level"] = rep.level;
    e["checks"] = rep.checks;
    e["notes"] = rep.notes;
    reports.push_back(e);
  }
  j["reports"] = reports;
  return j;
}

inline std::string block_to_string(u64 packed, i64 n) {
  std::string s;
  for (i64 j = 0; j < n; ++j) s += ((packed >> j) & 1) ? '1' : '0';
  return s;
}

inline json census_to_json(const census_result& c) {
  json j;
  j["schema_version"] = schema_version;
  j["length"] = c.n;
  j["count"] = c.count;
  if (!c.blocks.empty() && c.n <= 64) {
    std::vector<std::string> out;
    size_t cap = std::min(c.blocks.size(), json_list_cap);
    for (size_t i = 0; i < cap; ++i) out.push_back(block_to_string(c.blocks[i][0], c.n));
    j["blocks"] = out;
    j["blocks_truncated"] = c.blocks.size() > json_list_cap;
  }
  return j;
}

// CSV artifacts carry the version in a comment preamble
inline void write_csv_preamble(std::ostream& os, const std::string& columns) {
  os << "# schema_version=" << schema_version << "\n" << columns << "\n";
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw precondition_error("cannot open output file: " + path);
  out << j.dump(2) << "\n";
}

} // namespace bfree
