#include <CLI11.hpp>
#include <bfree/acceptance.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace bfree;

std::pair<i64, i64> parse_range(const std::string& s, const char* what) {
  size_t pos = s.find(':');
  try {
    if (pos == std::string::npos) throw std::invalid_argument("");
    size_t used = 0;
    i64 lo = std::stoll(s.substr(0, pos), &used);
    if (used != pos) throw std::invalid_argument("");
    std::string tail = s.substr(pos + 1);
    i64 hi = std::stoll(tail, &used);
    if (used != tail.size()) throw std::invalid_argument("");
    return {lo, hi};
  } catch (const std::exception&) {
    throw precondition_error(std::string(what) + " must be lo:hi with integer bounds");
  }
}

std::vector<i64> parse_int_list(const std::string& s) {
  std::vector<i64> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    size_t used = 0;
    i64 v = std::stoll(tok, &used);
    if (used != tok.size()) throw precondition_error("not an integer: " + tok);
    out.push_back(v);
  }
  return out;
}

// family grammar: comma-separated "x" | "x+c" | "x-c" | "a+b*x" | "b*x";
// plain constants are rejected
poly64 parse_poly(std::string tok) {
  tok.erase(std::remove(tok.begin(), tok.end(), ' '), tok.end());
  if (tok.empty()) throw precondition_error("empty polynomial");
  try {
    if (tok == "x") return {0, 1};
    if (tok.rfind("x+", 0) == 0 || tok.rfind("x-", 0) == 0) {
      size_t used = 0;
      std::string tail = tok.substr(1);
      i64 c = std::stoll(tail, &used);
      if (used != tail.size()) throw std::invalid_argument("");
      return {c, 1};
    }
    size_t star = tok.find("*x");
    if (star != std::string::npos && star + 2 == tok.size()) {
      std::string head = tok.substr(0, star); // "b" or "a+b" / "a-b"
      size_t sep = std::string::npos;
      for (size_t i = head.size(); i-- > 1;) {
        if (head[i] == '+' || head[i] == '-') { sep = i; break; }
      }
      i64 a = 0;
      std::string bs = head;
      if (sep != std::string::npos) {
        size_t used = 0;
        std::string as = head.substr(0, sep);
        a = std::stoll(as, &used);
        if (used != as.size()) throw std::invalid_argument("");
        bs = head.substr(head[sep] == '+' ? sep + 1 : sep); // keep '-' on the coefficient
      }
      size_t used = 0;
      i64 b = std::stoll(bs, &used);
      if (used != bs.size()) throw std::invalid_argument("");
      return {a, b};
    }
  } catch (const precondition_error&) {
    throw;
  } catch (const std::exception&) {
  }
  throw precondition_error("cannot parse polynomial '" + tok + "' (want x, x+c or a+b*x)");
}

std::vector<poly64> parse_family(const std::string& s) {
  std::vector<poly64> fam;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) fam.push_back(parse_poly(tok));
  if (fam.empty()) throw precondition_error("empty family");
  return fam;
}

bset_spec parse_bset(const std::string& s) {
  json j;
  try {
    j = json::parse(s);
  } catch (const std::exception& ex) {
    throw precondition_error(std::string("set spec is not valid json: ") + ex.what());
  }
  return bset_from_json(j);
}

void emit_json(const json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json_file(out_path, j);
}

struct csv_sink {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit csv_sink(const std::string& out_path) {
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) throw precondition_error("cannot open output file: " + out_path);
      os = &file;
    }
  }
};

indicator_window build_sequence(const std::string& seq, const bset_spec& s, i64 lo, i64 hi) {
  if (seq == "eta") return eta_window(s, lo, hi);
  if (seq == "members") return set_window(s, lo, hi);
  if (seq == "primes") return set_window(bset_primes(), lo, hi);
  if (seq == "semiprimes") return set_window(bset_pk(2), lo, hi);
  throw precondition_error("unknown --seq value: " + seq);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"b-free sequence toolkit: densities, block censuses, admissibility,\n"
               "transitivity witnesses, layered constructions and prime-pattern search"};
  app.require_subcommand(1);

  std::string bset_str = "{\"kind\":\"primes\"}";
  std::string out_path, window_str = "1:1000", n_range_str = "1:10";
  std::string seq = "eta", config_str, family_str, rho_str = "sqrt", wA;
  i64 lo = 1, hi = 100, horizon = 10000, verify_range = 0;
  i64 levels = 1, scan_budget = 1000000, budget = 100000;
  i64 wk = 1, wN = 0, wM = 0;
  double epsilon = 0.9;
  bool witness = false;
  unsigned long long seed = 20240811ull;
  int workers = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--bset", bset_str, "set spec as inline json")->capture_default_str();
    sub->add_option("--out", out_path, "output file (default stdout)");
  };

  CLI::App* c_sieve = app.add_subcommand("sieve", "emit an indicator window as csv");
  add_common(c_sieve);
  c_sieve->add_option("--lo", lo, "window start")->capture_default_str();
  c_sieve->add_option("--hi", hi, "window end")->capture_default_str();
  c_sieve->add_option("--seq", seq, "eta | members")->capture_default_str();

  CLI::App* c_cpx = app.add_subcommand("cpx", "block census with bound columns as csv");
  add_common(c_cpx);
  c_cpx->add_option("--seq", seq, "eta | members | primes | semiprimes")->capture_default_str();
  c_cpx->add_option("--window", window_str, "positions lo:hi")->capture_default_str();
  c_cpx->add_option("--n-range", n_range_str, "block lengths a:b")->capture_default_str();
  c_cpx->add_option("--workers", workers, "parallelism cap (output-independent)");

  CLI::App* c_adm = app.add_subcommand("admissible", "admissibility verdict for a configuration");
  add_common(c_adm);
  c_adm->add_option("--config", config_str, "comma-separated integers")->required();

  CLI::App* c_tra =
      app.add_subcommand("transitivity", "coprimality dichotomy and obstruction witness");
  add_common(c_tra);
  c_tra->add_flag("--witness", witness, "build the non-merge witness when not transitive");
  c_tra->add_option("--verify-range", verify_range, "check no shift in [-N, N] merges the windows");
  c_tra->add_option("--horizon", horizon, "member enumeration bound")->capture_default_str();

  CLI::App* c_beh = app.add_subcommand("behrend", "layered zero-density construction");
  c_beh->add_option("--out", out_path, "output file (default stdout)");
  c_beh->add_option("--rho", rho_str, "sqrt | comma-separated table")->capture_default_str();
  c_beh->add_option("--epsilon", epsilon, "density budget per level in (0,1)")->capture_default_str();
  c_beh->add_option("--levels", levels, "levels to build")->capture_default_str();
  c_beh->add_option("--scan-budget", scan_budget, "block-start scan bound")->capture_default_str();

  CLI::App* c_dic = app.add_subcommand("dickson", "linear-family viability and pattern witnesses");
  c_dic->require_subcommand(1);
  CLI::App* c_chk = c_dic->add_subcommand("check", "test a family of linear polynomials");
  c_chk->add_option("--family", family_str, "e.g. \"x,x+2\" or \"1+2*x,3+4*x\"")->required();
  c_chk->add_option("--out", out_path, "output file (default stdout)");
  CLI::App* c_wpk =
      c_dic->add_subcommand("witness-pk", "window where the (k+1)-fold numbers land exactly on A");
  c_wpk->add_option("--k", wk, "base multiplicity")->required();
  c_wpk->add_option("--N", wN, "window length")->required();
  c_wpk->add_option("--A", wA, "target positions, comma-separated");
  c_wpk->add_option("--budget", budget, "y-scan bound")->capture_default_str();
  c_wpk->add_option("--out", out_path, "output file (default stdout)");
  CLI::App* c_wsp = c_dic->add_subcommand("witness-semiprime",
                                          "window (n+M, n+N] whose semiprimes land exactly on A");
  c_wsp->add_option("--M", wM, "window offset")->required();
  c_wsp->add_option("--N", wN, "window end")->required();
  c_wsp->add_option("--A", wA, "target positions, comma-separated");
  c_wsp->add_option("--budget", budget, "y-scan bound")->capture_default_str();
  c_wsp->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* c_rep = app.add_subcommand("report", "run the full self-check suite");
  c_rep->add_option("--out", out_path, "output file (default stdout)");
  c_rep->add_option("--seed", seed, "seed for the randomized suites")->capture_default_str();
  c_rep->add_option("--workers", workers, "parallelism cap (output-independent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2; // usage errors map to 2, --help stays 0
  }

  try {
    if (c_sieve->parsed()) {
      bset_spec s = parse_bset(bset_str);
      indicator_window w = seq == "eta"      ? eta_window(s, lo, hi)
                           : seq == "members" ? set_window(s, lo, hi)
                                              : throw precondition_error("sieve --seq must be eta or members");
      csv_sink sink(out_path);
      write_csv_preamble(*sink.os, "position,value");
      for (i64 v = lo; v <= hi; ++v) *sink.os << v << "," << (w.get(v) ? 1 : 0) << "\n";
      return 0;
    }

    if (c_cpx->parsed()) {
      bset_spec s = parse_bset(bset_str);
      auto [wlo, whi] = parse_range(window_str, "--window");
      auto [na, nb] = parse_range(n_range_str, "--n-range");
      if (na < 1 || nb < na) throw precondition_error("--n-range must satisfy 1 <= a <= b");
      if (nb > whi - wlo + 1) throw precondition_error("--n-range exceeds the window length");
      indicator_window w = build_sequence(seq, s, wlo, whi);
      csv_sink sink(out_path);
      write_csv_preamble(*sink.os, "n,census,lower_bound,upper_bound");
      for (i64 n = na; n <= nb; ++n) {
        i64 cnt = census(w, (int)n, false).count;
        std::string lower, upper;
        if (seq == "eta" || seq == "members") lower = std::to_string(lower_bound_en(s, n));
        if (seq == "primes" && n >= 9) upper = prime_upper_bound(n).str();
        if (seq == "semiprimes" && n >= 16) upper = semiprime_upper_bound(n).str();
        *sink.os << n << "," << cnt << "," << lower << "," << upper << "\n";
      }
      return 0;
    }

    if (c_adm->parsed()) {
      bset_spec s = parse_bset(bset_str);
      finite_config a = parse_int_list(config_str);
      json j = verdict_to_json(is_admissible(a, s));
      j["config"] = normalize_config(a);
      j["bset"] = bset_to_json(s);
      emit_json(j, out_path);
      return 0;
    }

    if (c_tra->parsed()) {
      bset_spec s = parse_bset(bset_str);
      bool transitive = is_transitive(s, horizon);
      json j;
      j["schema_version"] = schema_version;
      j["bset"] = bset_to_json(s);
      j["coprime"] = is_coprime(s, horizon);
      j["transitive"] = transitive;
      if (!transitive && witness) {
        obstruction_witness w = build_obstruction(s, horizon);
        j["witness"] = obstruction_to_json(w);
        if (verify_range > 0) {
          if (!verify_no_merge(w, s, -verify_range, verify_range))
            throw verification_failure("a shift merged the two windows");
          j["no_merge_range"] = std::vector<i64>{-verify_range, verify_range};
          j["no_merge_verified"] = true;
        }
      }
      emit_json(j, out_path);
      return 0;
    }

    if (c_beh->parsed()) {
      rho_fn rho = rho_str == "sqrt" ? rho_sqrt() : rho_table(parse_int_list(rho_str));
      behrend_result res = build_levels(rho, epsilon, levels, scan_budget);
      emit_json(levels_to_json(res), out_path);
      if (!res.all_checks_pass) throw verification_failure("a level condition failed");
      return 0;
    }

    if (c_chk->parsed()) {
      std::vector<poly64> fam = parse_family(family_str);
      dickson_verdict<i64> v = satisfies_dickson(fam);
      json j;
      j["schema_version"] = schema_version;
      j["kind"] = "dickson_check";
      std::vector<std::string> strs;
      for (const auto& f : fam) strs.push_back(poly_to_string(f));
      j["family"] = strs;
      j["ok"] = v.ok;
      if (v.failing_prime)
        j["failing_prime"] = *v.failing_prime;
      else
        j["failing_prime"] = nullptr;
      json ws = json::object();
      for (auto& [p, y] : v.witnesses) ws[std::to_string(p)] = y;
      j["witnesses"] = ws;
      emit_json(j, out_path);
      return 0;
    }

    if (c_wpk->parsed() || c_wsp->parsed()) {
      finite_config a = parse_int_list(wA);
      std::optional<pattern_witness> w = c_wpk->parsed()
                                             ? pk_pattern_witness(a, wk, wN, budget)
                                             : semiprime_window_witness(a, wM, wN, budget);
      json j;
      if (w) {
        j = pattern_to_json(*w, c_wpk->parsed() ? "pk_pattern" : "semiprime_window");
        j["found"] = true;
      } else {
        // an exhausted scan is an outcome, not an error: nonexistence is never claimed
        j["schema_version"] = schema_version;
        j["kind"] = c_wpk->parsed() ? "pk_pattern" : "semiprime_window";
        j["found"] = false;
        j["scanned_up_to"] = budget;
      }
      emit_json(j, out_path);
      return 0;
    }

    if (c_rep->parsed()) {
      std::vector<criterion_result> rs = run_acceptance_suite(&std::cerr, (u64)seed);
      emit_json(acceptance_to_json(rs), out_path);
      for (const auto& r : rs)
        if (!r.pass) return 1;
      return 0;
    }

    return 2; // unreachable with require_subcommand(1)
  } catch (const budget_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const verification_failure& e) {
    std::cerr << "internal invariant failed: " << e.what() << "\n";
    return 4;
  } catch (const precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
