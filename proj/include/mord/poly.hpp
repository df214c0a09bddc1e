#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mord/error.hpp"
#include "mord/prime_field.hpp"
#include "mord/ring.hpp"

namespace mord {

// Dense univariate polynomial over a field F, coefficients low degree first,
// no trailing zeros. F needs the field operators and construction from int.
template <class F>
class Poly {
 public:
  Poly() = default;
  Poly(long long c) {  // NOLINT(google-explicit-constructor)
    if (!(F(c) == F(0))) c_.push_back(F(c));
  }
  explicit Poly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(const F& a) { return Poly(std::vector<F>{a}); }
  static Poly monomial(const F& a, std::size_t deg) {
    std::vector<F> c(deg + 1, F(0));
    c[deg] = a;
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(F(1), 1); }

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const F& lead() const { return c_.back(); }
  F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : F(0); }
  const std::vector<F>& coeffs() const { return c_; }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()), F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()), F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
    return Poly(std::move(r));
  }
  Poly operator-() const {
    std::vector<F> r = c_;
    for (auto& x : r) x = -x;
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == F(0)) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  Poly scaled(const F& s) const {
    std::vector<F> r = c_;
    for (auto& x : r) x = x * s;
    return Poly(std::move(r));
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  // a = q*b + r with deg r < deg b.
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) fail(errc::invalid_argument, "polynomial division by zero");
    std::vector<F> rem = a.c_;
    const long db = b.degree();
    const F inv = F(1) / b.lead();
    std::vector<F> quo(a.degree() >= db ? static_cast<std::size_t>(a.degree() - db + 1) : 0, F(0));
    for (long i = a.degree(); i >= db; --i) {
      F c = rem[static_cast<std::size_t>(i)] * inv;
      if (c == F(0)) continue;
      quo[static_cast<std::size_t>(i - db)] = c;
      for (long j = 0; j <= db; ++j)
        rem[static_cast<std::size_t>(i - db + j)] =
            rem[static_cast<std::size_t>(i - db + j)] - c * b.c_[static_cast<std::size_t>(j)];
    }
    q = Poly(std::move(quo));
    r = Poly(std::move(rem));
  }
  friend Poly operator%(const Poly& a, const Poly& b) {
    Poly q, r;
    divmod(a, b, q, r);
    return r;
  }
  friend Poly operator/(const Poly& a, const Poly& b) {
    Poly q, r;
    divmod(a, b, q, r);
    return q;
  }

  Poly monic() const { return is_zero() ? *this : scaled(F(1) / lead()); }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<F> r(c_.size() - 1, F(0));
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * F(static_cast<long long>(i));
    return Poly(std::move(r));
  }

  template <class X>
  X eval(const X& x, const X& one) const {
    X acc = one * F(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + one * c_[i];
    return acc;
  }
  F operator()(const F& x) const {
    F acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  // g = s*a + t*b, g monic.
  static Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& t) {
    Poly r0 = a, r1 = b, s0(1), s1, t0, t1(1);
    while (!r1.is_zero()) {
      Poly q, r;
      divmod(r0, r1, q, r);
      r0 = std::move(r1);
      r1 = std::move(r);
      Poly ns = s0 - q * s1;
      s0 = std::move(s1);
      s1 = std::move(ns);
      Poly nt = t0 - q * t1;
      t0 = std::move(t1);
      t1 = std::move(nt);
    }
    if (r0.is_zero()) {
      s = Poly();
      t = Poly();
      return r0;
    }
    F inv = F(1) / r0.lead();
    s = s0.scaled(inv);
    t = t0.scaled(inv);
    return r0.scaled(inv);
  }

  // b^e mod m
  static Poly powmod(Poly b, unsigned long long e, const Poly& m) {
    Poly acc = Poly(1) % m;
    b = b % m;
    while (e) {
      if (e & 1u) acc = (acc * b) % m;
      e >>= 1u;
      if (e) b = (b * b) % m;
    }
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == F(0)) c_.pop_back();
  }
  std::vector<F> c_;
};

namespace detail {

// Null space basis of a square matrix over F_P (rows x cols), row vectors v
// with v*M = 0.
template <std::uint32_t P>
std::vector<std::vector<Fp<P>>> fp_left_kernel(std::vector<std::vector<Fp<P>>> m, std::size_t cols) {
  using F = Fp<P>;
  const std::size_t rows = m.size();
  // Augment with identity and row reduce the left block.
  for (std::size_t i = 0; i < rows; ++i) {
    m[i].resize(cols + rows, F(0));
    m[i][cols + i] = F(1);
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == F(0)) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    F inv = F(1) / m[r][c];
    for (auto& x : m[r]) x = x * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == F(0)) continue;
      F f = m[i][c];
      for (std::size_t j = 0; j < cols + rows; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    ++r;
  }
  std::vector<std::vector<Fp<P>>> out;
  for (std::size_t i = r; i < rows; ++i)
    out.emplace_back(m[i].begin() + static_cast<long>(cols), m[i].end());
  return out;
}

// Berlekamp splitting of a monic squarefree polynomial.
template <std::uint32_t P>
std::vector<Poly<Fp<P>>> berlekamp(const Poly<Fp<P>>& f) {
  using F = Fp<P>;
  using Pl = Poly<F>;
  const std::size_t n = static_cast<std::size_t>(f.degree());
  if (n <= 1) return {f};
  // Rows: x^{P i} mod f, minus identity.
  std::vector<std::vector<F>> q(n, std::vector<F>(n, F(0)));
  Pl xp = Pl::powmod(Pl::x(), P, f);
  Pl cur(1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) q[i][j] = cur.coeff(j);
    q[i][i] = q[i][i] - F(1);
    cur = (cur * xp) % f;
  }
  auto ker = fp_left_kernel<P>(q, n);
  std::vector<Pl> factors{f};
  if (ker.size() == 1) return factors;
  for (const auto& v : ker) {
    Pl g{std::vector<F>(v.begin(), v.end())};
    if (g.degree() <= 0) continue;
    std::vector<Pl> next;
    for (const auto& h : factors) {
      if (h.degree() <= 1) {
        next.push_back(h);
        continue;
      }
      Pl rest = h;
      for (std::uint32_t s = 0; s < P && rest.degree() > 0; ++s) {
        Pl d = Pl::gcd(rest, g - Pl::constant(F(static_cast<long long>(s))));
        if (d.degree() > 0 && d.degree() < rest.degree() + 1) {
          next.push_back(d);
          rest = rest / d;
        }
      }
      if (rest.degree() > 0) next.push_back(rest.monic());
    }
    factors = std::move(next);
    if (factors.size() == ker.size()) break;
  }
  return factors;
}

// Squarefree decomposition of a monic polynomial over F_P: pairs
// (squarefree part, multiplicity).
template <std::uint32_t P>
std::vector<std::pair<Poly<Fp<P>>, unsigned>> squarefree_parts(const Poly<Fp<P>>& f) {
  using F = Fp<P>;
  using Pl = Poly<F>;
  std::vector<std::pair<Pl, unsigned>> out;
  if (f.degree() <= 0) return out;
  Pl c = Pl::gcd(f, f.derivative());
  Pl w = f / c;
  unsigned i = 1;
  while (w.degree() > 0) {
    Pl y = Pl::gcd(w, c);
    Pl fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.monic(), i);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    // c is a P-th power: take the P-th root coefficientwise (Frobenius is
    // the identity on F_P).
    std::vector<F> root;
    for (std::size_t k = 0; k <= static_cast<std::size_t>(c.degree()); k += P) root.push_back(c.coeff(k));
    for (auto& [g, m] : squarefree_parts<P>(Pl(std::move(root)).monic())) out.emplace_back(g, m * P);
  }
  return out;
}

}  // namespace detail

template <std::uint32_t P>
struct ring_traits<Poly<Fp<P>>> {
  using F = Fp<P>;
  using E = Poly<F>;
  static constexpr std::uint64_t characteristic = P;

  static E zero() { return E(); }
  static E one() { return E(1); }
  static bool is_zero(const E& a) { return a.is_zero(); }
  static bool is_unit(const E& a) { return a.degree() == 0; }
  static void divmod(const E& a, const E& b, E& q, E& r) { E::divmod(a, b, q, r); }
  static E gcd(const E& a, const E& b) { return E::gcd(a, b); }
  static E unit_part(const E& a) { return a.is_zero() ? E(1) : E::constant(a.lead()); }
  static E unit_inverse(const E& u) { return E::constant(F(1) / u.lead()); }
  static bool size_less(const E& a, const E& b) { return a.degree() < b.degree(); }

  static std::vector<std::pair<E, unsigned>> factor(const E& a) {
    if (a.is_zero()) fail(errc::zero_element, "cannot factor zero");
    std::vector<std::pair<E, unsigned>> out;
    for (auto& [g, m] : detail::squarefree_parts<P>(a.monic()))
      for (auto& h : detail::berlekamp<P>(g)) out.emplace_back(h.monic(), m);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return less(x.first, y.first); });
    // Merge equal primes arising from different squarefree layers.
    std::vector<std::pair<E, unsigned>> merged;
    for (auto& pr : out) {
      if (!merged.empty() && merged.back().first == pr.first)
        merged.back().second += pr.second;
      else
        merged.push_back(pr);
    }
    return merged;
  }

  static bool is_prime(const E& a) {
    if (a.degree() < 1 || !(a.lead() == F(1))) return false;
    auto f = factor(a);
    return f.size() == 1 && f[0].second == 1;
  }

  static std::size_t residue_degree(const E& p) { return static_cast<std::size_t>(p.degree()); }
  static std::uint64_t residue_char(const E&) { return P; }

  static std::vector<std::uint64_t> residue_coords(const E& a, const E& p) {
    E r = a % p;
    std::vector<std::uint64_t> out(static_cast<std::size_t>(p.degree()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = r.coeff(i).value();
    return out;
  }

  static E residue_lift(std::span<const std::uint64_t> c, const E&) {
    std::vector<F> v;
    for (auto x : c) v.emplace_back(static_cast<long long>(x));
    return E(std::move(v));
  }

  // Deterministic total order (degree, then coefficients high to low).
  static bool less(const E& a, const E& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (long i = a.degree(); i >= 0; --i) {
      auto x = a.coeff(static_cast<std::size_t>(i)).value();
      auto y = b.coeff(static_cast<std::size_t>(i)).value();
      if (x != y) return x < y;
    }
    return false;
  }

  static std::string to_string(const E& a, std::string_view var = "t") {
    if (a.is_zero()) return "0";
    std::string s;
    for (long i = a.degree(); i >= 0; --i) {
      auto c = a.coeff(static_cast<std::size_t>(i)).value();
      if (c == 0) continue;
      if (!s.empty()) s += "+";
      if (i == 0) {
        s += std::to_string(c);
        continue;
      }
      if (c != 1) s += std::to_string(c);
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
    return s;
  }

  // Accepts sums of terms like "3t^2", "t", "2*t", "5"; '-' subtracts.
  static E parse(std::string_view text, std::string_view var = "t") {
    std::string s;
    for (char ch : text)
      if (ch != ' ') s.push_back(ch);
    auto bad = [&]() -> E {
      fail(errc::parse_error, "not a polynomial in " + std::string(var) + ": '" + std::string(text) + "'");
    };
    if (s.empty()) bad();
    E acc;
    std::size_t i = 0;
    while (i < s.size()) {
      long long sign = 1;
      if (s[i] == '+' || s[i] == '-') {
        sign = s[i] == '-' ? -1 : 1;
        ++i;
      } else if (i != 0) {
        bad();
      }
      std::size_t j = i;
      long long coef = 1;
      bool have_coef = false;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j > i) {
        coef = std::stoll(s.substr(i, j - i)) % static_cast<long long>(P);
        have_coef = true;
      }
      std::size_t deg = 0;
      if (j < s.size() && s[j] == '*') ++j;
      if (s.compare(j, var.size(), var) == 0) {
        j += var.size();
        deg = 1;
        if (j < s.size() && s[j] == '^') {
          std::size_t k = ++j;
          while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
          if (j == k) bad();
          deg = std::stoul(s.substr(k, j - k));
        }
      } else if (!have_coef) {
        bad();
      }
      acc += E::monomial(F(sign * coef), deg);
      i = j;
    }
    return acc;
  }

  static std::string name() { return "F" + std::to_string(P) + "[t]"; }
};

}  // namespace mord
