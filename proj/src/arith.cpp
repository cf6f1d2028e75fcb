#include "wittlab/arith.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace wl {

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

i64 invmod(i64 a, i64 m) {
  i64 g = m, x = 0, g1 = mod64(a, m), x1 = 1;
  while (g1) {
    i64 q = g / g1;
    std::swap(g, g1);
    g1 -= q * g;
    std::swap(x, x1);
    x1 -= q * x;
  }
  if (g != 1) throw MathError("invmod: " + std::to_string(a) + " not invertible mod " + std::to_string(m));
  return mod64(x, m);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while (!(d & 1)) d >>= 1, ++s;
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s && comp; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) comp = false;
    }
    if (comp) return false;
  }
  return true;
}

namespace {

u64 rho(u64 n, std::mt19937_64& rng) {
  if (n % 2 == 0) return 2;
  for (;;) {
    u64 c = rng() % (n - 1) + 1, x = rng() % n, y = x, d = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_rec(u64 n, std::map<u64, int>& out, std::mt19937_64& rng) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  u64 d = rho(n, rng);
  factor_rec(d, out, rng);
  factor_rec(n / d, out, rng);
}

}  // namespace

std::map<u64, int> factor(u64 n) {
  std::map<u64, int> out;
  if (n == 0) throw MathError("factor(0)");
  for (u64 q = 2; q < 1000 && q * q <= n; ++q) {
    while (n % q == 0) {
      ++out[q];
      n /= q;
    }
  }
  std::mt19937_64 rng(kDefaultSeed);
  factor_rec(n, out, rng);
  return out;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> ds{1};
  for (auto [q, e] : factor(n)) {
    size_t k = ds.size();
    u64 pw = 1;
    for (int i = 1; i <= e; ++i) {
      pw *= q;
      for (size_t j = 0; j < k; ++j) ds.push_back(ds[j] * pw);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

u64 totient(u64 n) {
  u64 r = n;
  for (auto [q, e] : factor(n)) r = r / q * (q - 1);
  return r;
}

u64 mult_order(u64 a, u64 n) {
  if (n == 1) return 1;
  if (std::gcd(a % n, n) != 1) throw MathError("mult_order: not a unit");
  u64 ord = totient(n);
  for (auto [q, e] : factor(ord)) {
    for (int i = 0; i < e && ord % q == 0 && powmod(a, ord / q, n) == 1; ++i) ord /= q;
  }
  return ord;
}

u64 primitive_root(u64 p) {
  if (p == 2) return 1;
  auto fs = factor(p - 1);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (auto [q, e] : fs) ok = ok && powmod(g, (p - 1) / q, p) != 1;
    if (ok) return g;
  }
}

u64 ipow(u64 b, unsigned e) {
  u64 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (b && r > UINT64_MAX / b) throw MathError("ipow overflow");
    r *= b;
  }
  return r;
}

u64 checked_mul(u64 a, u64 b) {
  if (a && b > UINT64_MAX / a) throw MathError("integer overflow");
  return a * b;
}

int val_p(const Int& n, u64 p) {
  if (n == 0) throw MathError("val_p(0)");
  Int m = n, q;
  int v = 0;
  for (;;) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), p) == 0) return v;
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++v;
  }
}

int val_p(i64 n, u64 p) { return val_p(Int(static_cast<long>(n)), p); }

int val_p(const Rat& r, u64 p) { return val_p(Int(r.get_num()), p) - val_p(Int(r.get_den()), p); }

Int int_pow(u64 b, unsigned e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

Int mod_int(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int inv_int(const Int& a, const Int& m) {
  Int r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t())) throw MathError("inverse does not exist");
  return r;
}

Rat rat_pow(const Rat& r, long e) {
  Rat base = r;
  if (e < 0) {
    if (r == 0) throw MathError("0 to negative power");
    base = 1 / r;
    e = -e;
  }
  Int n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), e);
  Rat out(n, d);
  out.canonicalize();
  return out;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw MathError("bad rational '" + s + "'");
  if (r.get_den() == 0) throw MathError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace wl
