#pragma once

#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mord/error.hpp"

namespace mord {

// Customization point describing a principal ideal ground ring R.
// Specializations live next to the element types (integer.hpp, poly.hpp).
//
// Every specialization provides Euclidean division with a canonical
// remainder for unit-normal divisors, a unit normalization (so that
// associates have one representative), complete factorization, and a view
// of the residue field R/p as an F_q-vector space of dimension
// residue_degree(p) over its prime field F_q, q = residue_char(p).
template <class E>
struct ring_traits;

template <class E>
concept ground_ring_element = requires(const E& a, const E& b, E& q, E& r) {
  { ring_traits<E>::zero() } -> std::same_as<E>;
  { ring_traits<E>::one() } -> std::same_as<E>;
  { ring_traits<E>::is_zero(a) } -> std::same_as<bool>;
  { ring_traits<E>::is_unit(a) } -> std::same_as<bool>;
  ring_traits<E>::divmod(a, b, q, r);
  { ring_traits<E>::gcd(a, b) } -> std::same_as<E>;
  { ring_traits<E>::unit_part(a) } -> std::same_as<E>;
  { ring_traits<E>::unit_inverse(a) } -> std::same_as<E>;
  { ring_traits<E>::size_less(a, b) } -> std::same_as<bool>;
  { ring_traits<E>::is_prime(a) } -> std::same_as<bool>;
  { ring_traits<E>::residue_degree(a) } -> std::same_as<std::size_t>;
  { ring_traits<E>::residue_char(a) } -> std::same_as<std::uint64_t>;
  { ring_traits<E>::to_string(a) } -> std::same_as<std::string>;
  { a + b } -> std::convertible_to<E>;
  { a - b } -> std::convertible_to<E>;
  { a * b } -> std::convertible_to<E>;
  { -a } -> std::convertible_to<E>;
  { a == b } -> std::convertible_to<bool>;
};

// Generic helpers built on the traits.

template <class E>
E normalize(const E& a) {
  using T = ring_traits<E>;
  if (T::is_zero(a)) return a;
  return a * T::unit_inverse(T::unit_part(a));
}

template <class E>
bool divides(const E& d, const E& a) {
  using T = ring_traits<E>;
  if (T::is_zero(d)) return T::is_zero(a);
  E q, r;
  T::divmod(a, d, q, r);
  return T::is_zero(r);
}

// Exact quotient; the caller guarantees d | a.
template <class E>
E exact_div(const E& a, const E& d) {
  E q, r;
  ring_traits<E>::divmod(a, d, q, r);
  return q;
}

// g = s*a + t*b with g unit-normal.
template <class E>
E xgcd(const E& a, const E& b, E& s, E& t) {
  using T = ring_traits<E>;
  E r0 = a, r1 = b;
  E s0 = T::one(), s1 = T::zero();
  E t0 = T::zero(), t1 = T::one();
  while (!T::is_zero(r1)) {
    E q, r;
    T::divmod(r0, r1, q, r);
    r0 = std::move(r1);
    r1 = std::move(r);
    E ns = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(ns);
    E nt = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(nt);
  }
  if (T::is_zero(r0)) {
    s = T::zero();
    t = T::zero();
    return r0;
  }
  E inv = T::unit_inverse(T::unit_part(r0));
  s = s0 * inv;
  t = t0 * inv;
  return r0 * inv;
}

template <class E>
E lcm(const E& a, const E& b) {
  using T = ring_traits<E>;
  if (T::is_zero(a) || T::is_zero(b)) return T::zero();
  return normalize(E(exact_div(a, T::gcd(a, b)) * b));
}

// Multiplicity of the prime p in a != 0.
template <class E>
long valuation(E a, const E& p) {
  using T = ring_traits<E>;
  if (T::is_zero(a)) fail(errc::zero_element, "valuation of zero");
  if (T::is_unit(p) || T::is_zero(p)) fail(errc::not_prime, "valuation at a unit");
  long v = 0;
  for (;;) {
    E q, r;
    T::divmod(a, p, q, r);
    if (!T::is_zero(r)) return v;
    a = std::move(q);
    ++v;
  }
}

template <class E>
E power(E base, unsigned long e) {
  E acc = ring_traits<E>::one();
  while (e) {
    if (e & 1u) acc = acc * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return acc;
}

}  // namespace mord
