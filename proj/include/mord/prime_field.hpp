#pragma once

#include <cstdint>
#include <ostream>

namespace mord {

constexpr bool is_small_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Element of F_P for a word-sized prime P.
template <std::uint32_t P>
class Fp {
  static_assert(is_small_prime(P), "Fp<P> requires P prime");

 public:
  static constexpr std::uint32_t modulus = P;

  constexpr Fp() = default;
  constexpr Fp(long long v)  // NOLINT(google-explicit-constructor)
      : v_(static_cast<std::uint32_t>(((v % static_cast<long long>(P)) + P) % P)) {}

  constexpr std::uint32_t value() const { return v_; }

  friend constexpr Fp operator+(Fp a, Fp b) { return raw((a.v_ + b.v_) % P); }
  friend constexpr Fp operator-(Fp a, Fp b) { return raw((a.v_ + P - b.v_) % P); }
  friend constexpr Fp operator*(Fp a, Fp b) {
    return raw(static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v_) * b.v_ % P));
  }
  friend constexpr Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  constexpr Fp operator-() const { return raw((P - v_) % P); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  friend constexpr bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }

  constexpr Fp pow(std::uint64_t e) const {
    Fp acc = raw(1 % P), b = *this;
    while (e) {
      if (e & 1u) acc = acc * b;
      b = b * b;
      e >>= 1u;
    }
    return acc;
  }
  constexpr Fp inverse() const { return pow(P - 2); }

  friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.v_; }

 private:
  static constexpr Fp raw(std::uint32_t v) {
    Fp r;
    r.v_ = v;
    return r;
  }
  std::uint32_t v_ = 0;
};

}  // namespace mord
