#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "mord/constructions.hpp"
#include "mord/order.hpp"
#include "mord/poly.hpp"
#include "mord/serre.hpp"

// JSON documents for algebras, orders, isogeny types, presentations and
// period lattices. Every number travels as a string: "n", "n/d", or for
// F_p(t) a polynomial "t^2+1" or "(num)/(den)".
namespace mord::io {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

template <class E>
inline constexpr bool is_poly_ground = ring_traits<E>::characteristic != 0;

inline std::string join(const std::string& loc, const std::string& key) { return loc + "/" + key; }
inline std::string join(const std::string& loc, std::size_t i) { return loc + "/" + std::to_string(i); }

[[noreturn]] inline void schema(const std::string& loc, const std::string& msg) { fail(errc::schema_error, msg, loc); }

inline const json& field(const json& j, const std::string& key, const std::string& loc) {
  if (!j.is_object()) schema(loc, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(loc, "missing field '" + key + "'");
  return *it;
}

inline std::size_t count(const json& j, const std::string& loc) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::size_t>(j.get<long long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) return std::stoul(s);
  }
  schema(loc, "expected a non-negative count");
}

inline json read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open " + path.string(), path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(errc::parse_error, e.what(), path.string() + ":byte " + std::to_string(e.byte));
  }
}

// ---- scalars ----------------------------------------------------------------

inline std::string strip_parens(std::string s) {
  while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    int depth = 0;
    bool outer = true;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')') --depth;
      if (depth == 0) {
        outer = false;
        break;
      }
    }
    if (!outer) break;
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

template <ground_ring_element E>
E parse_ring(const std::string& text, const std::string& loc) {
  try {
    return ring_traits<E>::parse(strip_parens(text));
  } catch (const error& e) {
    fail(errc::parse_error, e.message(), loc);
  }
}

template <ground_ring_element E>
Frac<E> parse_scalar(const json& j, const std::string& loc) {
  std::string s;
  if (j.is_string())
    s = j.get<std::string>();
  else if (j.is_number_integer())
    s = std::to_string(j.get<long long>());
  else
    schema(loc, "expected a number string");
  std::string t;
  for (char ch : s)
    if (ch != ' ') t.push_back(ch);
  int depth = 0;
  std::size_t slash = std::string::npos;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == '(') ++depth;
    if (t[i] == ')') --depth;
    if (t[i] == '/' && depth == 0) {
      if (slash != std::string::npos) fail(errc::parse_error, "two '/' in '" + s + "'", loc);
      slash = i;
    }
  }
  if (slash == std::string::npos) return Frac<E>(parse_ring<E>(t, loc));
  const E den = parse_ring<E>(t.substr(slash + 1), loc);
  if (ring_traits<E>::is_zero(den)) fail(errc::parse_error, "zero denominator in '" + s + "'", loc);
  return Frac<E>(parse_ring<E>(t.substr(0, slash), loc), den);
}

template <ground_ring_element E>
std::string format_ring(const E& x) {
  return ring_traits<E>::to_string(x);
}

template <ground_ring_element E>
std::string format_scalar(const Frac<E>& x) {
  if (x.is_integral()) return format_ring(x.num());
  if constexpr (is_poly_ground<E>)
    return "(" + format_ring(x.num()) + ")/(" + format_ring(x.den()) + ")";
  else
    return format_ring(x.num()) + "/" + format_ring(x.den());
}

template <ground_ring_element E>
std::vector<Frac<E>> parse_vector(const json& j, const std::string& loc, std::size_t expect = 0) {
  if (!j.is_array()) schema(loc, "expected an array");
  if (expect && j.size() != expect)
    schema(loc, "expected " + std::to_string(expect) + " entries, got " + std::to_string(j.size()));
  std::vector<Frac<E>> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_scalar<E>(j[i], join(loc, i)));
  return v;
}

template <ground_ring_element E>
Matrix<Frac<E>> parse_matrix(const json& j, const std::string& loc, std::size_t cols = 0) {
  if (!j.is_array()) schema(loc, "expected an array of rows");
  if (j.empty()) return Matrix<Frac<E>>(0, cols);
  if (!j[0].is_array()) schema(join(loc, 0), "expected a row");
  const std::size_t c = cols ? cols : j[0].size();
  Matrix<Frac<E>> m(0, c);
  for (std::size_t i = 0; i < j.size(); ++i) m.append_row(parse_vector<E>(j[i], join(loc, i), c));
  return m;
}

template <ground_ring_element E>
json format_vector(std::span<const Frac<E>> v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(format_scalar(x));
  return a;
}

template <ground_ring_element E>
json format_matrix(const Matrix<Frac<E>>& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(format_vector<E>(m.row(i)));
  return a;
}

inline json format_integers(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

// ---- ground rings -----------------------------------------------------------

template <ground_ring_element E>
json ground_json() {
  if constexpr (is_poly_ground<E>)
    return json{{"poly", {{"p", ring_traits<E>::characteristic}, {"var", "t"}}}};
  else
    return "Z";
}

// Calls f(std::type_identity<E>{}) for the ground ring named by g.
template <class F>
decltype(auto) with_ground(const json& g, const std::string& loc, F&& f) {
  if (g.is_string() && g.get<std::string>() == "Z") return f(std::type_identity<Integer>{});
  if (g.is_object() && g.contains("poly")) {
    const auto& p = g["poly"];
    const std::size_t ch = count(field(p, "p", join(loc, "poly")), join(join(loc, "poly"), "p"));
    if (p.contains("var") && p["var"] != "t") schema(join(join(loc, "poly"), "var"), "only the variable t is supported");
    switch (ch) {
      case 2: return f(std::type_identity<Poly<Fp<2>>>{});
      case 3: return f(std::type_identity<Poly<Fp<3>>>{});
      case 5: return f(std::type_identity<Poly<Fp<5>>>{});
      case 7: return f(std::type_identity<Poly<Fp<7>>>{});
      default: schema(join(join(loc, "poly"), "p"), "characteristic must be one of 2, 3, 5, 7");
    }
  }
  schema(loc, "ground ring must be \"Z\" or {\"poly\": {\"p\": p, \"var\": \"t\"}}");
}

// First "ground" field found in the document (breadth first), else "Z".
inline json find_ground(const json& doc, const fs::path& base) {
  std::vector<const json*> queue{&doc};
  std::vector<json> loaded;
  loaded.reserve(16);
  for (std::size_t i = 0; i < queue.size() && i < 256; ++i) {
    const json& j = *queue[i];
    if (j.is_object()) {
      if (j.contains("ground")) return j["ground"];
      for (const auto& [k, v] : j.items()) {
        if ((k == "algebra" || k == "order" || k == "delta" || k == "order_prime") && v.is_string() &&
            loaded.size() < loaded.capacity()) {
          const fs::path p = base / v.get<std::string>();
          if (fs::exists(p)) {
            loaded.push_back(read_file(p));
            queue.push_back(&loaded.back());
          }
          continue;
        }
        if (v.is_object() || v.is_array()) queue.push_back(&v);
      }
    } else if (j.is_array() && !j.empty() && (j[0].is_object())) {
      for (const auto& v : j) queue.push_back(&v);
    }
  }
  return "Z";
}

// ---- algebras ---------------------------------------------------------------

// Polynomial in x over K, e.g. "x^2+3", "x^2 - 1/2", "x^2+(t+1)x+t".
template <ground_ring_element E>
Poly<Frac<E>> parse_x_poly(const std::string& text, const std::string& loc) {
  using K = Frac<E>;
  std::string s;
  for (char ch : text)
    if (ch != ' ') s.push_back(ch);
  if (s.empty()) fail(errc::parse_error, "empty polynomial", loc);
  if (s[0] != '+' && s[0] != '-') s.insert(s.begin(), '+');
  std::vector<std::pair<int, std::string>> terms;
  int depth = 0;
  std::size_t start = 1;
  int sign = s[0] == '-' ? -1 : 1;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == '(') ++depth;
    if (i < s.size() && s[i] == ')') --depth;
    const bool split = i == s.size() || (depth == 0 && (s[i] == '+' || s[i] == '-') && s[i - 1] != '^' &&
                                         s[i - 1] != '/' && s[i - 1] != '(');
    if (!split) continue;
    if (i == start) fail(errc::parse_error, "empty term in '" + text + "'", loc);
    terms.emplace_back(sign, s.substr(start, i - start));
    if (i < s.size()) sign = s[i] == '-' ? -1 : 1;
    start = i + 1;
  }
  std::vector<K> coeffs;
  for (const auto& [sg, term] : terms) {
    std::size_t xpos = std::string::npos;
    int d = 0;
    for (std::size_t i = 0; i < term.size(); ++i) {
      if (term[i] == '(') ++d;
      if (term[i] == ')') --d;
      if (term[i] == 'x' && d == 0) {
        xpos = i;
        break;
      }
    }
    K c(1);
    std::size_t deg = 0;
    if (xpos == std::string::npos) {
      c = parse_scalar<E>(json(term), loc);
    } else {
      std::string cs = term.substr(0, xpos);
      if (!cs.empty() && cs.back() == '*') cs.pop_back();
      if (!cs.empty()) c = parse_scalar<E>(json(cs), loc);
      std::string rest = term.substr(xpos + 1);
      deg = 1;
      if (!rest.empty()) {
        if (rest[0] != '^' || rest.size() < 2 || rest.find_first_not_of("0123456789", 1) != std::string::npos)
          fail(errc::parse_error, "bad exponent in term '" + term + "'", loc);
        deg = std::stoul(rest.substr(1));
      }
    }
    if (coeffs.size() <= deg) coeffs.resize(deg + 1, K(0));
    coeffs[deg] += sg < 0 ? -c : c;
  }
  return Poly<K>(coeffs);
}

template <ground_ring_element E>
json algebra_json(const Algebra<E>& a) {
  json mul = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.dim(); ++j) row.push_back(format_vector<E>(a.basis_product(i, j)));
    mul.push_back(row);
  }
  json names = json::array();
  for (const auto& n : a.basis_names()) names.push_back(n);
  return json{{"ground", ground_json<E>()}, {"dim", a.dim()}, {"basis", names}, {"mul", mul}, {"one", format_vector<E>(a.one())}};
}

template <ground_ring_element E>
AlgebraPtr<E> parse_algebra(const json& j, const std::string& loc, const fs::path& base) {
  using K = Frac<E>;
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "Q" || s == "K") return poly_quotient<E>(Poly<K>(std::vector<K>{K(0), K(1)}));
    const fs::path p = base / s;
    return parse_algebra<E>(read_file(p), p.string(), p.parent_path());
  }
  if (!j.is_object()) schema(loc, "expected an algebra object, a shorthand, or a file name");
  try {
    if (j.contains("matrix")) return matrix_algebra<E>(count(field(j["matrix"], "n", join(loc, "matrix")), join(loc, "matrix/n")));
    if (j.contains("upper_triangular"))
      return upper_triangular<E>(count(field(j["upper_triangular"], "n", join(loc, "upper_triangular")), join(loc, "upper_triangular/n")));
    if (j.contains("quaternion")) {
      const auto& q = j["quaternion"];
      const auto l = join(loc, "quaternion");
      return quaternion_algebra<E>(parse_scalar<E>(field(q, "a", l), join(l, "a")), parse_scalar<E>(field(q, "b", l), join(l, "b")));
    }
    if (j.contains("poly_quotient")) {
      const auto l = join(loc, "poly_quotient");
      const auto& m = field(j["poly_quotient"], "modulus", l);
      if (!m.is_string()) schema(join(l, "modulus"), "expected a polynomial string in x");
      return poly_quotient<E>(parse_x_poly<E>(m.get<std::string>(), join(l, "modulus")));
    }
    if (j.contains("product")) {
      const auto& parts = j["product"];
      if (!parts.is_array() || parts.empty()) schema(join(loc, "product"), "expected a non-empty array of algebras");
      std::vector<AlgebraPtr<E>> algs;
      for (std::size_t i = 0; i < parts.size(); ++i) algs.push_back(parse_algebra<E>(parts[i], join(join(loc, "product"), i), base));
      return product_algebra<E>(algs);
    }
    if (j.contains("matrix_over")) {
      const auto l = join(loc, "matrix_over");
      const auto& m = j["matrix_over"];
      return matrix_over<E>(parse_algebra<E>(field(m, "algebra", l), join(l, "algebra"), base), count(field(m, "n", l), join(l, "n")));
    }
  } catch (const error& e) {
    if (!e.location().empty()) throw;
    fail(e.code(), e.message(), loc);
  }
  const std::size_t n = count(field(j, "dim", loc), join(loc, "dim"));
  if (n == 0) schema(join(loc, "dim"), "dimension must be positive");
  std::vector<std::string> names;
  if (j.contains("basis")) {
    const auto& b = j["basis"];
    if (!b.is_array() || b.size() != n) schema(join(loc, "basis"), "expected " + std::to_string(n) + " basis names");
    for (std::size_t i = 0; i < n; ++i) {
      if (!b[i].is_string()) schema(join(join(loc, "basis"), i), "basis names are strings");
      names.push_back(b[i].get<std::string>());
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) names.push_back("b" + std::to_string(i + 1));
  }
  const auto& mj = field(j, "mul", loc);
  const auto ml = join(loc, "mul");
  if (!mj.is_array() || mj.size() != n) schema(ml, "expected " + std::to_string(n) + " rows of products");
  std::vector<std::vector<std::vector<K>>> mul(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (!mj[a].is_array() || mj[a].size() != n) schema(join(ml, a), "expected " + std::to_string(n) + " products");
    for (std::size_t b = 0; b < n; ++b) mul[a].push_back(parse_vector<E>(mj[a][b], join(join(ml, a), b), n));
  }
  const auto one = parse_vector<E>(field(j, "one", loc), join(loc, "one"), n);
  try {
    return std::make_shared<const Algebra<E>>(names, mul, one, true);
  } catch (const error& e) {
    fail(e.code(), e.message(), loc);
  }
}

// ---- orders -----------------------------------------------------------------

template <ground_ring_element E>
json order_json(const Order<E>& o) {
  return json{{"algebra", algebra_json(*o.algebra())}, {"basis", format_matrix<E>(o.basis())}};
}

template <ground_ring_element E>
Order<E> parse_order(const json& j, const std::string& loc, const fs::path& base) {
  if (j.is_string()) {
    const fs::path p = base / j.get<std::string>();
    return parse_order<E>(read_file(p), p.string(), p.parent_path());
  }
  const auto alg = parse_algebra<E>(field(j, "algebra", loc), join(loc, "algebra"), base);
  Matrix<Frac<E>> b = j.contains("basis") ? parse_matrix<E>(j["basis"], join(loc, "basis"), alg->dim())
                                          : Matrix<Frac<E>>::identity(alg->dim());
  try {
    return Order<E>::from_basis(alg, b);
  } catch (const error& e) {
    fail(e.code(), e.message(), join(loc, "basis"));
  }
}

template <ground_ring_element E>
json certificate_json(const E& p, const PrimeVerdict& v) {
  return json{{"prime", format_ring(p)}, {"idealizer_fixed", v.idealizer_fixed}, {"residue_simple", v.residue_simple}};
}

template <ground_ring_element E>
std::vector<E> parse_primes(const std::string& list, const std::string& loc) {
  std::vector<E> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
    if (item.empty()) continue;
    if constexpr (!is_poly_ground<E>) {
      if (item.find('t') != std::string::npos) fail(errc::invalid_argument, "prime '" + item + "' needs a polynomial ground ring", loc);
    }
    E p = parse_ring<E>(item, loc);
    try {
      require_prime(p);
    } catch (const error& e) {
      fail(e.code(), e.message(), loc);
    }
    out.push_back(normalize(p));
  }
  return out;
}

// ---- Serre tensor documents (ground ring Z) ----------------------------------

inline serre::IsogenyType parse_isogeny_type(const json& j, const std::string& loc, const fs::path& base) {
  serre::IsogenyType t;
  const auto& fs_ = field(j, "factors", loc);
  if (!fs_.is_array()) schema(join(loc, "factors"), "expected an array");
  for (std::size_t i = 0; i < fs_.size(); ++i) {
    const auto l = join(join(loc, "factors"), i);
    const auto& f = fs_[i];
    serre::IsogenyFactor fac;
    const auto& lab = field(f, "label", l);
    if (!lab.is_string()) schema(join(l, "label"), "expected a string");
    fac.label = lab.get<std::string>();
    fac.dim_b = count(field(f, "dim", l), join(l, "dim"));
    fac.endo = f.contains("endo") ? parse_algebra<Integer>(f["endo"], join(l, "endo"), base) : parse_algebra<Integer>("Q", l, base);
    fac.multiplicity = count(field(f, "mult", l), join(l, "mult"));
    t.factors.push_back(std::move(fac));
  }
  try {
    t.validate();
  } catch (const error& e) {
    fail(e.code(), e.message(), loc);
  }
  return t;
}

inline json isogeny_type_json(const serre::IsogenyType& t) {
  json fs_ = json::array();
  for (const auto& f : t.factors)
    fs_.push_back(json{{"label", f.label}, {"dim", f.dim_b}, {"endo", algebra_json(*f.endo)}, {"mult", f.multiplicity}});
  return json{{"factors", fs_}, {"dimension", t.dimension()}};
}

inline std::vector<std::vector<std::vector<Frac<Integer>>>> parse_element_matrix(const json& j, const std::string& loc,
                                                                                std::size_t dim, std::size_t& rows,
                                                                                std::size_t& cols) {
  if (!j.is_array()) schema(loc, "expected a matrix of algebra elements");
  std::vector<std::vector<std::vector<Frac<Integer>>>> out;
  rows = j.size();
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto l = join(loc, i);
    if (!j[i].is_array()) schema(l, "expected a row of algebra elements");
    if (i == 0) cols = j[i].size();
    if (j[i].size() != cols) schema(l, "rows have different lengths");
    out.emplace_back();
    for (std::size_t k = 0; k < cols; ++k) out.back().push_back(parse_vector<Integer>(j[i][k], join(l, k), dim));
  }
  return out;
}

inline serre::ModulePresentation parse_presentation(const json& j, const std::string& loc, const fs::path& base) {
  auto o = parse_order<Integer>(field(j, "order", loc), join(loc, "order"), base);
  serre::ModulePresentation m{o, 0, 0, {}};
  std::size_t cols = j.contains("generators") ? count(j["generators"], join(loc, "generators")) : 0;
  const std::size_t declared = cols;
  m.alpha = parse_element_matrix(field(j, "alpha", loc), join(loc, "alpha"), o.algebra()->dim(), m.r, cols);
  if (declared && m.r > 0 && cols != declared) schema(join(loc, "generators"), "alpha has " + std::to_string(cols) + " columns");
  m.s = cols;
  if (m.s == 0) schema(loc, "module needs at least one generator (give \"generators\" when alpha is empty)");
  try {
    m.validate();
  } catch (const error& e) {
    fail(e.code(), e.message(), join(loc, "alpha"));
  }
  return m;
}

inline serre::ModuleMap parse_module_map(const json& j, const std::string& loc, std::size_t dim) {
  std::size_t r = 0, c = 0;
  return parse_element_matrix(j, loc, dim, r, c);
}

inline serre::PeriodLattice parse_period_lattice(const json& j, const std::string& loc) {
  serre::PeriodLattice t;
  if (j.contains("prime")) {
    if (j["prime"].is_string())
      t.prime = j["prime"].get<std::string>();
    else if (j["prime"].is_number_integer())
      t.prime = std::to_string(j["prime"].get<long long>());
    else
      schema(join(loc, "prime"), "expected a prime or \"generic\"");
  }
  t.basis = parse_matrix<Integer>(field(j, "basis", loc), join(loc, "basis"));
  const auto& a = field(j, "action", loc);
  if (!a.is_array()) schema(join(loc, "action"), "expected an array of matrices");
  for (std::size_t k = 0; k < a.size(); ++k) t.action.push_back(parse_matrix<Integer>(a[k], join(join(loc, "action"), k), t.basis.cols()));
  return t;
}

inline json period_lattice_json(const serre::PeriodLattice& t) {
  json act = json::array();
  for (const auto& m : t.action) act.push_back(format_matrix<Integer>(m));
  return json{{"prime", t.prime}, {"basis", format_matrix<Integer>(t.basis)}, {"action", act}};
}

}  // namespace mord::io
