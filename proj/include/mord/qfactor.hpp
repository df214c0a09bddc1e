#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "mord/error.hpp"
#include "mord/frac.hpp"
#include "mord/integer.hpp"
#include "mord/poly.hpp"

namespace mord {

using Rational = Frac<Integer>;
using QPoly = Poly<Rational>;

namespace detail {

inline Integer eval_int(const std::vector<Integer>& f, const Integer& x) {
  Integer acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

// Primitive integer coefficients (low first) of a nonzero rational polynomial.
inline std::vector<Integer> primitive_part(const QPoly& f) {
  Integer d = 1;
  for (const auto& c : f.coeffs()) d = mord::lcm(d, c.den());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& c : f.coeffs()) {
    out.push_back(Integer(c.num() * (d / c.den())));
    g = ring_traits<Integer>::gcd(g, out.back());
  }
  for (auto& c : out) c /= g;
  return out;
}

inline std::vector<Integer> positive_divisors(const Integer& n) {
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : ring_traits<Integer>::factor(n)) {
    const std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

// Lagrange interpolation through (xs[i], ys[i]).
inline QPoly interpolate(const std::vector<Integer>& xs, const std::vector<Integer>& ys) {
  QPoly acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    QPoly term(1);
    Rational denom(1);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      term *= QPoly(std::vector<Rational>{Rational(Integer(-xs[j])), Rational(1)});
      denom *= Rational(Integer(xs[i] - xs[j]));
    }
    acc += term.scaled(Rational(ys[i]) / denom);
  }
  return acc;
}

// A proper factor of f of degree <= deg f / 2, or the zero polynomial when
// f is irreducible over Q.
inline QPoly find_factor(const QPoly& f, std::size_t combination_budget) {
  const auto zf = primitive_part(f);
  const long n = f.degree();
  // Evaluation points ranked by divisor count of f(a); a root gives a factor.
  struct Point {
    Integer x, fx;
    std::size_t ndiv;
  };
  std::vector<Point> pts;
  for (long a = 0; pts.size() < static_cast<std::size_t>(n / 2 + 1) + 8 && a < 200; ++a) {
    for (long s : {a, -a}) {
      if (a == 0 && s != 0) continue;
      Integer x(s), fx = eval_int(zf, x);
      if (sgn(fx) == 0) return QPoly(std::vector<Rational>{Rational(Integer(-x)), Rational(1)});
      pts.push_back({x, fx, positive_divisors(abs(fx)).size()});
      if (a == 0) break;
    }
  }
  std::stable_sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.ndiv < b.ndiv; });
  for (long d = 1; d <= n / 2; ++d) {
    const std::size_t m = static_cast<std::size_t>(d) + 1;
    std::vector<Integer> xs;
    std::vector<std::vector<Integer>> choices;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < m; ++i) {
      xs.push_back(pts[i].x);
      auto divs = positive_divisors(abs(pts[i].fx));
      std::vector<Integer> signed_divs;
      for (auto& v : divs) {
        signed_divs.push_back(v);
        if (i > 0) signed_divs.push_back(-v);
      }
      combos *= signed_divs.size();
      if (combos > combination_budget)
        fail(errc::dimension_too_large, "polynomial factorization over Q exceeds the search budget");
      choices.push_back(std::move(signed_divs));
    }
    std::vector<std::size_t> idx(m, 0);
    std::vector<Integer> ys(m);
    for (;;) {
      for (std::size_t i = 0; i < m; ++i) ys[i] = choices[i][idx[i]];
      QPoly g = interpolate(xs, ys);
      if (g.degree() == d) {
        QPoly q, r;
        QPoly::divmod(f, g, q, r);
        if (r.is_zero()) return g.monic();
      }
      std::size_t k = 0;
      while (k < m && ++idx[k] == choices[k].size()) idx[k++] = 0;
      if (k == m) break;
    }
  }
  return QPoly();
}

}  // namespace detail

// Monic irreducible factors of a squarefree nonconstant polynomial over Q
// (Kronecker's method).
inline std::vector<QPoly> factor_squarefree_rational(const QPoly& f,
                                                     std::size_t combination_budget = 2000000) {
  if (f.degree() < 1) fail(errc::invalid_argument, "factoring a constant polynomial");
  std::vector<QPoly> todo{f.monic()}, out;
  while (!todo.empty()) {
    QPoly g = std::move(todo.back());
    todo.pop_back();
    if (g.degree() == 1) {
      out.push_back(g);
      continue;
    }
    QPoly h = detail::find_factor(g, combination_budget);
    if (h.is_zero()) {
      out.push_back(g);
      continue;
    }
    todo.push_back(h);
    todo.push_back((g / h).monic());
  }
  std::sort(out.begin(), out.end(), [](const QPoly& a, const QPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (long i = a.degree(); i >= 0; --i) {
      const Rational x = a.coeff(static_cast<std::size_t>(i)), y = b.coeff(static_cast<std::size_t>(i));
      if (x == y) continue;
      return (x - y).num() < 0;
    }
    return false;
  });
  return out;
}

}  // namespace mord
