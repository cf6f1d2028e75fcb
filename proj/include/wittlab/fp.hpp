#pragma once
// Element of a prime field F_p with the modulus carried along. A default
// constructed element is an untyped zero that adopts the modulus of whatever
// it is combined with.

#include "wittlab/arith.hpp"

#include <string>

namespace wl {

struct Fp {
  u64 v = 0;
  u64 p = 0;

  Fp() = default;
  Fp(i64 value, u64 mod) : v(mod ? static_cast<u64>(mod64(value, static_cast<i64>(mod))) : 0), p(mod) {}
  static Fp from_int(const Int& n, u64 mod) { return Fp(static_cast<i64>(mpz_fdiv_ui(n.get_mpz_t(), mod)), mod); }
  static Fp from_rat(const Rat& r, u64 mod) {
    Fp num = from_int(r.get_num(), mod), den = from_int(r.get_den(), mod);
    if (den.v == 0) throw MathError("denominator divisible by p");
    return num * den.inv();
  }

  bool is_zero() const { return v == 0; }
  Fp inv() const {
    if (v == 0) throw MathError("F_p: inverse of zero");
    return Fp(invmod(static_cast<i64>(v), static_cast<i64>(p)), p);
  }
  Fp pow(u64 e) const { return Fp(static_cast<i64>(powmod(v, e, p)), p); }

  friend u64 join(const Fp& a, const Fp& b) { return a.p ? a.p : b.p; }
  friend Fp operator+(const Fp& a, const Fp& b) {
    u64 m = join(a, b);
    u64 s = a.v + b.v;
    return Fp(static_cast<i64>(s >= m ? s - m : s), m);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    u64 m = join(a, b);
    return Fp(static_cast<i64>(a.v >= b.v ? a.v - b.v : a.v + m - b.v), m);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    u64 m = join(a, b);
    if (!m) return Fp();
    return Fp(static_cast<i64>(mulmod(a.v, b.v, m)), m);
  }
  Fp operator-() const { return Fp(v ? static_cast<i64>(p - v) : 0, p); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  friend bool operator==(const Fp& a, const Fp& b) { return a.v == b.v; }
  std::string str() const { return std::to_string(v); }
};

}  // namespace wl
