#pragma once
// Machine-integer number theory plus a few GMP conveniences.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wl {

using Int = mpz_class;
using Rat = mpq_class;
using u64 = std::uint64_t;
using i64 = std::int64_t;

struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// an internal consistency check failed (a bug, not a bad input)
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

// Seed for every randomized algorithm in the library (EDF splitting, rho).
inline constexpr u64 kDefaultSeed = 0x5eed2024ULL;

inline i64 gcd64(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}
inline i64 lcm64(i64 a, i64 b) { return a / gcd64(a, b) * b; }
inline i64 mod64(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}
inline u64 mulmod(u64 a, u64 b, u64 m) { return (unsigned __int128)a * b % m; }
u64 powmod(u64 b, u64 e, u64 m);
i64 invmod(i64 a, i64 m);  // throws when not invertible

bool is_prime(u64 n);
std::map<u64, int> factor(u64 n);
std::vector<u64> divisors(u64 n);
u64 totient(u64 n);
u64 mult_order(u64 a, u64 n);  // order of a in (Z/n)^x, n >= 1
u64 primitive_root(u64 p);
u64 ipow(u64 b, unsigned e);  // throws on overflow
u64 checked_mul(u64 a, u64 b);

int val_p(const Int& n, u64 p);  // n != 0
int val_p(i64 n, u64 p);
int val_p(const Rat& r, u64 p);  // r != 0

Int int_pow(u64 b, unsigned e);
Int mod_int(const Int& a, const Int& m);  // in [0, m)
Int inv_int(const Int& a, const Int& m);
Rat rat_pow(const Rat& r, long e);
std::string rat_str(const Rat& r);
Rat parse_rat(const std::string& s);

}  // namespace wl
