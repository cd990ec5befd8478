#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lnt {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

enum class RingTag { INT, RAT, MODP };

// The three coefficient rings share one small interface: construction from
// integers, arithmetic, zero/one tests, printing, and (for fields) inversion.
// Ring objects are value types; ModRing carries its modulus.

struct IntRing {
  using Elem = BigInt;
  static constexpr RingTag tag = RingTag::INT;
  static constexpr bool is_field = false;

  std::string name() const { return "Z"; }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const { return v; }
  Elem from_bigint(const BigInt& v) const { return v; }
  Elem neg(const Elem& a) const { return -a; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string str(const Elem& a) const { return a.str(); }
  bool same(const IntRing&) const { return true; }
};

struct RatRing {
  using Elem = BigRat;
  static constexpr RingTag tag = RingTag::RAT;
  static constexpr bool is_field = true;

  std::string name() const { return "Q"; }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const { return v; }
  Elem from_bigint(const BigInt& v) const { return Elem(v); }
  Elem from_fraction(const BigInt& num, const BigInt& den) const {
    if (den == 0) throw std::invalid_argument("division by zero");
    // cpp_rational rejects negative denominators at construction
    if (den < 0) return Elem(-num, -den);
    return Elem(num, den);
  }
  Elem neg(const Elem& a) const { return -a; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw std::invalid_argument("division by zero");
    return 1 / a;
  }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string str(const Elem& a) const {
    BigInt n = numerator(a), d = denominator(a);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
  }
  bool same(const RatRing&) const { return true; }
};

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, p);
    a = mulmod_u64(a, a, p);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs with these bases.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

struct ModRing {
  using Elem = std::uint64_t;
  static constexpr RingTag tag = RingTag::MODP;
  static constexpr bool is_field = true;

  std::uint64_t p = 0;

  ModRing() = default;
  explicit ModRing(std::uint64_t prime) : p(prime) {
    if (!detail::is_prime_u64(p))
      throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  }

  std::string name() const { return "F" + std::to_string(p); }
  Elem zero() const { return 0; }
  Elem one() const { return 1 % p; }
  Elem from_int(long long v) const {
    long long m = v % static_cast<long long>(p);
    if (m < 0) m += static_cast<long long>(p);
    return static_cast<Elem>(m);
  }
  Elem from_bigint(const BigInt& v) const {
    BigInt m = v % p;
    if (m < 0) m += p;
    return m.convert_to<std::uint64_t>();
  }
  Elem neg(const Elem& a) const { return a == 0 ? 0 : p - a; }
  Elem add(const Elem& a, const Elem& b) const {
    Elem s = a + b;
    return s >= p ? s - p : s;
  }
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  Elem mul(const Elem& a, const Elem& b) const { return detail::mulmod_u64(a, b, p); }
  Elem inv(const Elem& a) const {
    if (a == 0) throw std::invalid_argument("division by zero");
    return detail::powmod_u64(a, p - 2, p);
  }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string str(const Elem& a) const { return std::to_string(a); }
  bool same(const ModRing& o) const { return p == o.p; }
};

}  // namespace lnt
