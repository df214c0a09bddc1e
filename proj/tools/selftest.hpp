#pragma once

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "cli.hpp"
#include "mord/testing/fixtures.hpp"
#include "mord/testing/superlattice_oracle.hpp"

namespace mord::cli {

// expected is a sub-document of actual: objects compare key by key,
// arrays entry by entry, everything else exactly.
inline bool matches(const json& expected, const json& actual) {
  if (expected.is_object()) {
    if (!actual.is_object()) return false;
    for (const auto& [k, v] : expected.items())
      if (!actual.contains(k) || !matches(v, actual[k])) return false;
    return true;
  }
  if (expected.is_array()) {
    if (!actual.is_array() || actual.size() != expected.size()) return false;
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (!matches(expected[i], actual[i])) return false;
    return true;
  }
  return expected == actual;
}

struct Fixture {
  std::string name, command;
  json input;
  fs::path base;
  Options options;
  int exit = 0;
  json expect;
};

inline Fixture load_fixture(const fs::path& p) {
  const json j = io::read_file(p);
  const std::string loc = p.string();
  Fixture f;
  const auto str = [&](const char* key) {
    const auto& v = io::field(j, key, loc);
    if (!v.is_string()) io::schema(loc + "#/" + key, "expected a string");
    return v.get<std::string>();
  };
  f.name = str("name");
  f.command = str("command");
  f.input = io::field(j, "input", loc);
  f.base = p.parent_path();
  if (f.input.is_string()) {
    const fs::path in = p.parent_path() / f.input.get<std::string>();
    f.input = io::read_file(in);
    f.base = in.parent_path();
  }
  if (j.contains("primes")) f.options.primes = j["primes"].get<std::string>();
  if (j.contains("exit")) f.exit = static_cast<int>(io::count(j["exit"], loc + "#/exit"));
  f.expect = j.contains("expect") ? j["expect"] : json::object();
  return f;
}

inline json oracle_sweep() {
  using namespace mord::testing;
  json failures = json::array();
  std::size_t cases = 0;
  for (long d = -50; d <= 50; ++d) {
    if (d == 0 || d == 1 || !squarefree(d)) continue;
    ++cases;
    const auto a = quadratic(d);
    const auto m = maximal_order(standard(a));
    const auto oracle = saturate_by_superlattices(*a, Matrix<Q>::identity(2));
    if (!(m.lattice() == Lattice<Z>::from_generators(oracle))) failures.push_back(std::to_string(d));
  }
  return json{{"cases", cases}, {"failures", failures}};
}

// Seeded random presentations over the upper triangular order: the lattice
// rank is twice the dimension of the tensor class, and the identity map
// passes the naturality check.
inline json property_run(std::uint64_t seed, std::size_t trials) {
  using namespace mord::testing;
  std::mt19937_64 rng(seed);
  UpperTriangularExample ex;
  const auto t = ex.tate();
  json failures = json::array();
  json dims = json::array();
  for (std::size_t k = 0; k < trials; ++k) {
    const auto m = random_presentation(ex.o, rng, k % 3, 1 + k % 2);
    const auto c = serre::tensor_isogeny_class(m, ex.type, ex.emb);
    const auto l = serre::tensor_lattice(m, t);
    dims.push_back(c.dimension());
    if (l.lattice.basis.rows() != 2 * c.dimension()) failures.push_back(json{{"trial", k}, {"check", "rank"}});
    if (!serre::check_naturality(m, m, identity_map(ex.o, m.s), t)) failures.push_back(json{{"trial", k}, {"check", "naturality"}});
  }
  return json{{"seed", std::to_string(seed)}, {"trials", trials}, {"dimensions", dims}, {"failures", failures}};
}

// Exit 0 when everything matches, 1 otherwise; a fixture that does not
// load yields an error document.
inline Result selftest(const fs::path& dir, std::uint64_t seed) {
  std::vector<fs::path> files;
  if (!fs::is_directory(dir)) return {1, error_json(error(errc::parse_error, "fixture directory not found", dir.string()))};
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  bool ok = true;
  json results = json::array();
  for (const auto& p : files) {
    Fixture f;
    try {
      f = load_fixture(p);
    } catch (const error& e) {
      return {1, error_json(e)};
    } catch (const json::exception& e) {
      return {1, error_json(error(errc::parse_error, e.what(), p.string()))};
    }
    const auto r = run_safely(f.command, f.input, f.base, f.options);
    const bool pass = r.exit == f.exit && matches(f.expect, r.doc);
    ok = ok && pass;
    json entry{{"name", f.name}, {"pass", pass}};
    if (!pass) entry["got"] = json{{"exit", r.exit}, {"output", r.doc}};
    results.push_back(entry);
  }
  const json sweep = oracle_sweep();
  const json props = property_run(seed, 40);
  ok = ok && sweep["failures"].empty() && props["failures"].empty();
  return {ok ? 0 : 1, json{{"passed", ok}, {"fixtures", results}, {"oracle_sweep", sweep}, {"properties", props}}};
}

}  // namespace mord::cli
