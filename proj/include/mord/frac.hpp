#pragma once

#include <type_traits>

#include <ostream>
#include <string>
#include <utility>

#include "mord/error.hpp"
#include "mord/ring.hpp"

namespace mord {

// Element of the fraction field K = Frac(R). Always reduced, with a
// unit-normal denominator; zero is 0/1.
template <class E>
class Frac {
  using T = ring_traits<E>;

  static E from_int(long long v) {
    if constexpr (std::is_constructible_v<E, long long>)
      return E(v);
    else
      return E(static_cast<long>(v));
  }

 public:
  using ring_type = E;

  Frac() : num_(T::zero()), den_(T::one()) {}
  Frac(long long v) : num_(from_int(v)), den_(T::one()) {}  // NOLINT(google-explicit-constructor)
  Frac(E n) : num_(std::move(n)), den_(T::one()) {}   // NOLINT(google-explicit-constructor)
  Frac(E n, E d) : num_(std::move(n)), den_(std::move(d)) {
    if (T::is_zero(den_)) fail(errc::invalid_argument, "zero denominator");
    canonicalize();
  }

  const E& num() const { return num_; }
  const E& den() const { return den_; }
  bool is_zero() const { return T::is_zero(num_); }
  bool is_integral() const { return T::is_unit(den_); }

  friend Frac operator+(const Frac& a, const Frac& b) {
    if (a.is_integral() && b.is_integral()) return Frac(E(a.num_ + b.num_), true);
    return Frac(E(a.num_ * b.den_ + b.num_ * a.den_), E(a.den_ * b.den_));
  }
  friend Frac operator-(const Frac& a, const Frac& b) {
    if (a.is_integral() && b.is_integral()) return Frac(E(a.num_ - b.num_), true);
    return Frac(E(a.num_ * b.den_ - b.num_ * a.den_), E(a.den_ * b.den_));
  }
  friend Frac operator*(const Frac& a, const Frac& b) {
    if (a.is_zero() || b.is_zero()) return Frac();
    if (a.is_integral() && b.is_integral()) return Frac(E(a.num_ * b.num_), true);
    return Frac(E(a.num_ * b.num_), E(a.den_ * b.den_));
  }
  friend Frac operator/(const Frac& a, const Frac& b) {
    if (b.is_zero()) fail(errc::invalid_argument, "division by zero in fraction field");
    return Frac(E(a.num_ * b.den_), E(a.den_ * b.num_));
  }
  Frac operator-() const {
    Frac r = *this;
    r.num_ = E(-num_);
    return r;
  }
  Frac& operator+=(const Frac& o) { return *this = *this + o; }
  Frac& operator-=(const Frac& o) { return *this = *this - o; }
  Frac& operator*=(const Frac& o) { return *this = *this * o; }
  Frac& operator/=(const Frac& o) { return *this = *this / o; }
  friend bool operator==(const Frac& a, const Frac& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  Frac inverse() const { return Frac(T::one()) / *this; }

  std::string str() const {
    if (is_integral()) return T::to_string(num_);
    return T::to_string(num_) + "/" + T::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Frac& a) { return os << a.str(); }

 private:
  // Integral fast path; denominator already 1.
  Frac(E n, bool) : num_(std::move(n)), den_(T::one()) {}

  void canonicalize() {
    if (T::is_zero(num_)) {
      den_ = T::one();
      return;
    }
    E g = T::gcd(num_, den_);
    if (!T::is_unit(g)) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    E u = T::unit_part(den_);
    if (!(u == T::one())) {
      E inv = T::unit_inverse(u);
      num_ = num_ * inv;
      den_ = den_ * inv;
    }
  }

  E num_;
  E den_;
};

// Integer part-free helpers used by lattice code.
template <class E>
E common_denominator(const Frac<E>& a, const E& acc) {
  return mord::lcm(acc, a.den());
}

}  // namespace mord
