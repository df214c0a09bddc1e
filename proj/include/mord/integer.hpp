#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mord/error.hpp"
#include "mord/ring.hpp"

namespace mord {

using Integer = mpz_class;

namespace detail {

inline Integer pollard_brent(const Integer& n, unsigned long c) {
  if (mpz_even_p(n.get_mpz_t())) return Integer(2);
  auto f = [&](const Integer& x) {
    Integer y = x * x + c;
    mpz_mod(y.get_mpz_t(), y.get_mpz_t(), n.get_mpz_t());
    return y;
  };
  Integer y = 2, x, ys, q = 1, g = 1;
  unsigned long r = 1;
  const unsigned long m = 64;
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = f(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        Integer d = abs(x - y);
        q = (q * d) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      Integer d = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

inline void factor_into(Integer n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0) {
    out.push_back(n);
    return;
  }
  for (unsigned long c = 1;; ++c) {
    Integer d = pollard_brent(n, c);
    if (d != n && d != 1) {
      factor_into(d, out);
      factor_into(n / d, out);
      return;
    }
  }
}

}  // namespace detail

template <>
struct ring_traits<Integer> {
  static constexpr std::uint64_t characteristic = 0;

  static Integer zero() { return Integer(0); }
  static Integer one() { return Integer(1); }
  static bool is_zero(const Integer& a) { return sgn(a) == 0; }
  static bool is_unit(const Integer& a) { return abs(a) == 1; }

  // Floor division: for b > 0 the remainder lies in [0, b).
  static void divmod(const Integer& a, const Integer& b, Integer& q, Integer& r) {
    if (sgn(b) == 0) fail(errc::invalid_argument, "division by zero");
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }

  static Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  }

  static Integer unit_part(const Integer& a) { return Integer(sgn(a) < 0 ? -1 : 1); }
  static Integer unit_inverse(const Integer& u) { return u; }
  static bool size_less(const Integer& a, const Integer& b) {
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0;
  }

  static bool is_prime(const Integer& a) {
    return sgn(a) > 0 && mpz_probab_prime_p(a.get_mpz_t(), 40) > 0;
  }

  // Prime factorization of |a|, a != 0, primes ascending.
  static std::vector<std::pair<Integer, unsigned>> factor(const Integer& a) {
    if (sgn(a) == 0) fail(errc::zero_element, "cannot factor zero");
    Integer n = abs(a);
    std::vector<Integer> primes;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        primes.emplace_back(p);
        n /= p;
      }
    }
    for (unsigned long p = 17; p < 10000 && n > 1; p += 2) {
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        primes.emplace_back(p);
        n /= p;
      }
    }
    detail::factor_into(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<Integer, unsigned>> out;
    for (auto& p : primes) {
      if (!out.empty() && out.back().first == p)
        ++out.back().second;
      else
        out.emplace_back(p, 1u);
    }
    return out;
  }

  static std::size_t residue_degree(const Integer&) { return 1; }

  static std::uint64_t residue_char(const Integer& p) {
    if (sgn(p) <= 0 || !mpz_fits_ulong_p(p.get_mpz_t()) ||
        p > Integer(std::numeric_limits<std::uint32_t>::max()))
      fail(errc::dimension_too_large,
           "residue characteristic must fit in 32 bits: " + p.get_str());
    return p.get_ui();
  }

  static std::vector<std::uint64_t> residue_coords(const Integer& a, const Integer& p) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return {r.get_ui()};
  }

  static Integer residue_lift(std::span<const std::uint64_t> c, const Integer&) {
    return Integer(static_cast<unsigned long>(c[0]));
  }

  static std::string to_string(const Integer& a) { return a.get_str(); }

  static Integer parse(std::string_view s) {
    std::string t;
    for (char ch : s)
      if (ch != ' ') t.push_back(ch);
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    bool ok = !t.empty();
    for (std::size_t i = 0; i < t.size(); ++i) {
      char ch = t[i];
      if (!(std::isdigit(static_cast<unsigned char>(ch)) || (i == 0 && ch == '-' && t.size() > 1)))
        ok = false;
    }
    if (!ok) fail(errc::parse_error, "not an integer: '" + std::string(s) + "'");
    return Integer(t);
  }

  static std::string name() { return "Z"; }
};

}  // namespace mord
