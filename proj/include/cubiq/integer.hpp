#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "cubiq/errors.hpp"

namespace cubiq {

/// Arbitrary-precision integer used wherever intermediate values can leave
/// the 64-bit range (determinants, normal-form elimination).
using Integer = boost::multiprecision::cpp_int;

namespace detail {

struct Overflow : std::overflow_error {
  Overflow() : std::overflow_error("64-bit overflow") {}
};

/// int64 wrapper whose arithmetic throws Overflow instead of wrapping.
/// Algorithms templated on the integer type run on this first and are
/// retried on Integer when it throws.
struct Checked64 {
  std::int64_t v = 0;

  constexpr Checked64() = default;
  constexpr Checked64(std::int64_t x) : v(x) {}  // NOLINT(google-explicit-constructor)

  friend Checked64 operator+(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked64 operator-(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked64 operator*(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked64 operator/(Checked64 a, Checked64 b) {
    if (b.v == 0) throw std::domain_error("division by zero");
    if (a.v == std::numeric_limits<std::int64_t>::min() && b.v == -1) throw Overflow{};
    return a.v / b.v;
  }
  friend Checked64 operator%(Checked64 a, Checked64 b) {
    if (b.v == 0) throw std::domain_error("division by zero");
    if (b.v == -1) return 0;
    return a.v % b.v;
  }
  Checked64 operator-() const {
    if (v == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
    return -v;
  }
  Checked64& operator+=(Checked64 o) { return *this = *this + o; }
  Checked64& operator-=(Checked64 o) { return *this = *this - o; }
  Checked64& operator*=(Checked64 o) { return *this = *this * o; }

  friend constexpr auto operator<=>(Checked64, Checked64) = default;
  friend constexpr bool operator==(Checked64, Checked64) = default;
};

inline std::int64_t to_int64(Checked64 x) { return x.v; }

inline std::int64_t to_int64(const Integer& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min()) {
    throw ResourceLimit("value " + x.str() + " exceeds the 64-bit range");
  }
  return static_cast<std::int64_t>(x);
}

inline Integer to_integer(Checked64 x) { return Integer(x.v); }
inline Integer to_integer(const Integer& x) { return x; }

template <typename Int>
Int abs_value(const Int& x) {
  return x < Int(0) ? -x : x;
}

/// Floor division (rounds toward negative infinity).
template <typename Int>
Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a - q * b;
  if (r != Int(0) && ((r < Int(0)) != (b < Int(0)))) q = q - Int(1);
  return q;
}

/// Non-negative remainder for positive modulus.
template <typename Int>
Int floor_mod(const Int& a, const Int& b) {
  return a - floor_div(a, b) * b;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) { return (Checked64(a) + Checked64(b)).v; }
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) { return (Checked64(a) * Checked64(b)).v; }

}  // namespace detail
}  // namespace cubiq
