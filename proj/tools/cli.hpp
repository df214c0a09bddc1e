#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mord/io.hpp"
#include "mord/lattice.hpp"
#include "mord/order.hpp"
#include "mord/serre.hpp"

namespace mord::cli {

using io::json;
namespace fs = std::filesystem;

struct Options {
  std::string primes;
  std::string idempotents_file;
  std::uint64_t seed = 42;
  bool trust_semisimple = false;
};

struct Result {
  int exit = 0;
  json doc;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"center", "decompose", "maximal-order", "certify", "radical", "disc",
                                          "endo-order", "serre-class", "serre-lattice", "minimal-isogeny"};
  return c;
}

inline json error_json(const error& e) {
  return json{{"error", {{"code", std::string(code_name(e.code()))}, {"message", e.message()}, {"location", e.location()}}}};
}

namespace detail {

template <ground_ring_element E>
std::optional<std::vector<std::vector<Frac<E>>>> idempotents(const Options& opt, std::size_t dim) {
  if (opt.idempotents_file.empty()) return std::nullopt;
  const fs::path p = opt.idempotents_file;
  const json j = io::read_file(p);
  const auto& arr = j.is_object() ? io::field(j, "idempotents", p.string()) : j;
  if (!arr.is_array()) io::schema(p.string(), "expected an array of idempotents");
  std::vector<std::vector<Frac<E>>> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(io::parse_vector<E>(arr[i], io::join(p.string() + "#/idempotents", i), dim));
  return out;
}

template <ground_ring_element E>
json order_doc(const Order<E>& o) {
  json j = io::order_json(o);
  j["discriminant"] = io::format_ring(discriminant(o));
  return j;
}

template <ground_ring_element E>
Result certify_doc(const Order<E>& o, const std::vector<E>& extra) {
  const auto c = certify(o, extra);
  json certs = json::array();
  json failing = nullptr;
  for (const auto& [p, v] : c.per_prime) {
    certs.push_back(io::certificate_json(p, v));
    if (!v.verdict() && failing.is_null()) failing = io::format_ring(p);
  }
  json primes = json::array();
  for (const auto& p : c.candidate_primes) primes.push_back(io::format_ring(p));
  json out{{"verdict", c.verdict()}, {"candidate_primes", primes}, {"certificates", certs}};
  if (!failing.is_null()) out["failing_prime"] = failing;
  return {c.verdict() ? 0 : 2, out};
}

template <ground_ring_element E>
Result run_ground(const std::string& cmd, const json& doc, const fs::path& base, const Options& opt) {
  const auto extra = io::parse_primes<E>(opt.primes, "--primes");
  if (cmd == "center" || cmd == "decompose") {
    const json& aj = doc.contains("algebra") ? doc["algebra"] : doc;
    const auto alg = io::parse_algebra<E>(aj, doc.contains("algebra") ? "#/algebra" : "#", base);
    if (cmd == "center") {
      const auto z = center_basis(*alg);
      return {0, json{{"ground", io::ground_json<E>()}, {"dim", z.rows()}, {"basis", io::format_matrix<E>(z)}}};
    }
    auto es = idempotents<E>(opt, alg->dim());
    if (!es) es = central_idempotents(*alg, opt.seed);
    const auto d = decompose(*alg, *es);
    json idems = json::array(), factors = json::array();
    for (const auto& e : d.idempotents) idems.push_back(io::format_vector<E>(e));
    for (std::size_t i = 0; i < d.factors.size(); ++i)
      factors.push_back(json{{"algebra", io::algebra_json(*d.factors[i])}, {"embedding", io::format_matrix<E>(d.embeddings[i])}});
    return {0, json{{"idempotents", idems}, {"factors", factors}}};
  }
  if (cmd == "endo-order") {
    const auto delta = io::parse_order<E>(io::field(doc, "delta", "#"), "#/delta", base);
    const std::size_t r = io::count(io::field(doc, "r", "#"), "#/r");
    const auto m = io::parse_matrix<E>(io::field(doc, "module", "#"), "#/module", r * delta.algebra()->dim());
    Lattice<E> lat = [&] {
      try {
        return Lattice<E>::from_generators(m);
      } catch (const error& e) {
        fail(e.code(), e.message(), "#/module");
      }
    }();
    return {0, order_doc(endomorphism_order(delta, lat, r))};
  }
  const auto o = io::parse_order<E>(doc, "#", base);
  if (cmd == "disc") return {0, json{{"discriminant", io::format_ring(discriminant(o))}}};
  if (cmd == "certify") return certify_doc(o, extra);
  if (cmd == "maximal-order") {
    MaximalOrderOptions mo;
    mo.trust_semisimple = opt.trust_semisimple;
    mo.seed = opt.seed;
    const auto m = maximal_order(o, idempotents<E>(opt, o.algebra()->dim()), extra, mo);
    json j = order_doc(m);
    j["index"] = io::format_ring(lattice_index(o.lattice(), m.lattice()));
    return {0, j};
  }
  if (cmd == "radical") {
    const auto primes = extra.empty() ? candidate_primes(o, extra) : extra;
    json rads = json::array();
    for (const auto& p : primes)
      rads.push_back(json{{"prime", io::format_ring(p)}, {"basis", io::format_matrix<E>(radical_mod_p(o, p).lattice.basis())}});
    return {0, json{{"radicals", rads}}};
  }
  fail(errc::invalid_argument, "unknown command " + cmd);
}

inline const serre::IsogenyType type_field(const json& doc, const fs::path& base) {
  const auto& t = io::field(doc, "type", "#");
  if (t.is_string()) {
    const fs::path p = base / t.get<std::string>();
    return io::parse_isogeny_type(io::read_file(p), p.string(), p.parent_path());
  }
  return io::parse_isogeny_type(t, "#/type", base);
}

inline serre::ModulePresentation presentation_field(const json& doc, const fs::path& base, const std::string& key) {
  const auto& t = io::field(doc, key, "#");
  if (t.is_string()) {
    const fs::path p = base / t.get<std::string>();
    return io::parse_presentation(io::read_file(p), p.string(), p.parent_path());
  }
  return io::parse_presentation(t, "#/" + key, base);
}

inline Result run_serre(const std::string& cmd, const json& doc, const fs::path& base) {
  using Q = Frac<Integer>;
  if (cmd == "serre-class") {
    const auto m = presentation_field(doc, base, "presentation");
    const auto t = type_field(doc, base);
    std::optional<Matrix<Q>> emb;
    if (doc.contains("embedding")) emb = io::parse_matrix<Integer>(doc["embedding"], "#/embedding");
    const auto out = serre::tensor_isogeny_class(m, t, emb);
    return {0, io::isogeny_type_json(out)};
  }
  if (cmd == "serre-lattice") {
    const auto m = presentation_field(doc, base, "presentation");
    const auto t = io::parse_period_lattice(io::field(doc, "lattice", "#"), "#/lattice");
    const auto tl = serre::tensor_lattice(m, t);
    json j{{"lattice", io::period_lattice_json(tl.lattice)},
           {"rank", tl.lattice.basis.rows()},
           {"kernel_divisors", io::format_integers(tl.kernel_divisors)}};
    if (doc.contains("target") || doc.contains("map")) {
      const auto m2 = presentation_field(doc, base, "target");
      const auto phi = io::parse_module_map(io::field(doc, "map", "#"), "#/map", m.order.algebra()->dim());
      const auto g = serre::induced_lattice_map(m, m2, phi, t);
      j["induced_map"] = io::format_matrix<Integer>(to_field(g));
      j["natural"] = serre::check_naturality(m, m2, phi, t);
    }
    return {0, j};
  }
  if (cmd == "minimal-isogeny") {
    const auto o = io::parse_order<Integer>(io::field(doc, "order", "#"), "#/order", base);
    const auto o2 = io::parse_order<Integer>(io::field(doc, "order_prime", "#"), "#/order_prime", base);
    const auto t = type_field(doc, base);
    std::vector<serre::PeriodLattice> lats;
    if (doc.contains("lattices")) {
      const auto& l = doc["lattices"];
      if (!l.is_array()) io::schema("#/lattices", "expected an array");
      for (std::size_t i = 0; i < l.size(); ++i) lats.push_back(io::parse_period_lattice(l[i], io::join("#/lattices", i)));
    }
    const auto d = serre::minimal_isogeny(o, o2, t, lats);
    json per = json::array(), out_lats = json::array();
    for (const auto& k : d.per_prime) per.push_back(json{{"prime", k.prime.get_str()}, {"divisors", io::format_integers(k.divisors)}});
    for (const auto& l : d.lattices) out_lats.push_back(io::period_lattice_json(l));
    return {0, json{{"source", io::isogeny_type_json(d.source)},
                    {"target", io::isogeny_type_json(d.target)},
                    {"degree", d.degree.get_str()},
                    {"per_prime", per},
                    {"lattices", out_lats}}};
  }
  fail(errc::invalid_argument, "unknown command " + cmd);
}

}  // namespace detail

// One command on one parsed document. base resolves file references.
inline Result run(const std::string& cmd, const json& doc, const fs::path& base, const Options& opt) {
  if (cmd == "serre-class" || cmd == "serre-lattice" || cmd == "minimal-isogeny") return detail::run_serre(cmd, doc, base);
  bool known = false;
  for (const auto& c : commands()) known = known || c == cmd;
  if (!known) fail(errc::invalid_argument, "unknown command " + cmd);
  return io::with_ground(io::find_ground(doc, base), "#/ground", [&](auto tag) {
    using E = typename decltype(tag)::type;
    return detail::run_ground<E>(cmd, doc, base, opt);
  });
}

// Same, but errors become {"error": ...} with exit 1.
inline Result run_safely(const std::string& cmd, const json& doc, const fs::path& base, const Options& opt) {
  try {
    return run(cmd, doc, base, opt);
  } catch (const error& e) {
    return {1, error_json(e)};
  } catch (const json::exception& e) {
    return {1, error_json(error(errc::schema_error, e.what(), "#"))};
  } catch (const std::exception& e) {
    return {1, error_json(error(errc::internal_error, e.what()))};
  }
}

// Human-readable rendering of a result document.
inline void render_text(std::ostream& os, const json& j, const std::string& indent = "") {
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      os << indent << k << ":\n";
      render_text(os, v, indent + "  ");
    } else if (v.is_array() && !v.empty() && v[0].is_object()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        os << indent << k << "[" << i << "]:\n";
        render_text(os, v[i], indent + "  ");
      }
    } else if (v.is_string()) {
      os << indent << k << ": " << v.get<std::string>() << "\n";
    } else {
      os << indent << k << ": " << v.dump() << "\n";
    }
  }
}

}  // namespace mord::cli
