#include "wittlab/fp_poly.hpp"

#include <algorithm>
#include <random>

namespace wl {

FpPoly::FpPoly(u64 p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& x : c_) x %= p_;
  trim();
}

FpPoly FpPoly::monomial(u64 p, size_t deg, u64 c) {
  std::vector<u64> v(deg + 1, 0);
  v[deg] = c % p;
  return FpPoly(p, v);
}

FpPoly FpPoly::constant(u64 p, i64 c) { return FpPoly(p, {static_cast<u64>(mod64(c, static_cast<i64>(p)))}); }

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

bool operator<(const FpPoly& a, const FpPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
  return false;
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  u64 p = a.p_ ? a.p_ : b.p_;
  FpPoly r(p);
  r.c_.assign(std::max(a.c_.size(), b.c_.size()), 0);
  for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = (a[i] + b[i]) % p;
  r.trim();
  return r;
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  u64 p = a.p_ ? a.p_ : b.p_;
  FpPoly r(p);
  r.c_.assign(std::max(a.c_.size(), b.c_.size()), 0);
  for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = (a[i] + p - b[i]) % p;
  r.trim();
  return r;
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  u64 p = a.p_ ? a.p_ : b.p_;
  FpPoly r(p);
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
  // p < 2^32, so products fit; reduce lazily every few additions
  const u64 limit = UINT64_MAX - (p - 1) * (p - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (!a.c_[i]) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      u64& t = r.c_[i + j];
      t += a.c_[i] * b.c_[j];
      if (t >= limit) t %= p;
    }
  }
  for (auto& x : r.c_) x %= p;
  r.trim();
  return r;
}

FpPoly FpPoly::operator-() const { return FpPoly(p_) - *this; }

FpPoly FpPoly::scaled(u64 c) const {
  FpPoly r(p_);
  r.c_.resize(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = mulmod(c_[i], c % p_, p_);
  r.trim();
  return r;
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& d) const {
  if (d.is_zero()) throw MathError("FpPoly: division by zero");
  FpPoly q(p_), r = *this;
  if (degree() < d.degree()) return {q, r};
  u64 inv = static_cast<u64>(invmod(static_cast<i64>(d.lead()), static_cast<i64>(p_)));
  q.c_.assign(c_.size() - d.c_.size() + 1, 0);
  int dd = d.degree();
  for (int i = r.degree(); i >= dd; --i) {
    u64 c = r.c_[i];
    if (!c) continue;
    c = mulmod(c, inv, p_);
    q.c_[i - dd] = c;
    for (int j = 0; j <= dd; ++j) r.c_[i - dd + j] = (r.c_[i - dd + j] + p_ - mulmod(c, d.c_[j], p_)) % p_;
  }
  r.trim();
  q.trim();
  return {q, r};
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(static_cast<u64>(invmod(static_cast<i64>(lead()), static_cast<i64>(p_))));
}

FpPoly FpPoly::derivative() const {
  FpPoly r(p_);
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = mulmod(c_[i], i % p_, p_);
  r.trim();
  return r;
}

u64 FpPoly::eval(u64 x) const {
  u64 acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = (mulmod(acc, x, p_) + c_[i]) % p_;
  return acc;
}

FpPoly FpPoly::compose_power(u64 k) const {
  FpPoly r(p_);
  if (is_zero()) return r;
  r.c_.assign(degree() * k + 1, 0);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i * k] = c_[i];
  r.trim();
  return r;
}

FpPoly FpPoly::compose(const FpPoly& g, const FpPoly& mod) const {
  FpPoly acc(p_);
  for (size_t i = c_.size(); i-- > 0;) acc = (acc * g + FpPoly::constant(p_, static_cast<i64>(c_[i]))) % mod;
  return acc;
}

std::string FpPoly::str(const std::string& var) const { return to_sparse(var).to_string(); }

FPoly FpPoly::to_sparse(const std::string& var) const {
  std::vector<FPoly::Term> ts;
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i]) ts.push_back({Exps{static_cast<std::uint32_t>(i)}, Fp(static_cast<i64>(c_[i]), p_)});
  return FPoly::from_terms({var}, std::move(ts));
}

FpPoly FpPoly::from_sparse(const FPoly& f, u64 p) {
  if (f.nvars() > 1) throw MathError("expected a univariate polynomial");
  std::vector<u64> c;
  for (auto& [e, v] : f.terms()) {
    size_t d = e.empty() ? 0 : e[0];
    if (c.size() <= d) c.resize(d + 1, 0);
    c[d] = (c[d] + v.v) % p;
  }
  return FpPoly(p, c);
}

FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::tuple<FpPoly, FpPoly, FpPoly> xgcd(const FpPoly& a, const FpPoly& b) {
  u64 p = a.p() ? a.p() : b.p();
  FpPoly r0 = a, r1 = b, s0 = FpPoly::constant(p, 1), s1(p), t0(p), t1 = FpPoly::constant(p, 1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    FpPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  u64 inv = static_cast<u64>(invmod(static_cast<i64>(r0.lead()), static_cast<i64>(p)));
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

FpPoly powmod(const FpPoly& base, const Int& e, const FpPoly& mod) {
  if (e < 0) throw MathError("FpPoly powmod: negative exponent");
  FpPoly r = FpPoly::constant(mod.p(), 1) % mod, b = base % mod;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = (r * r) % mod;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * b) % mod;
  }
  return r;
}

FpPoly invmod(const FpPoly& a, const FpPoly& mod) {
  auto [g, s, t] = xgcd(a % mod, mod);
  if (!g.is_one()) throw MathError("FpPoly: not invertible modulo");
  return s % mod;
}

bool is_irreducible(const FpPoly& f) {
  int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  u64 p = f.p();
  FpPoly g = f.monic(), x = FpPoly::x(p), h = x;
  // Rabin: x^{p^n} = x mod f and gcd(x^{p^{n/q}} - x, f) = 1 for prime q | n
  std::vector<FpPoly> frob(n + 1);
  frob[0] = x;
  for (int i = 1; i <= n; ++i) frob[i] = powmod(frob[i - 1], Int(static_cast<unsigned long>(p)), g);
  if (!(frob[n] == x % g)) return false;
  for (auto [q, e] : factor(static_cast<u64>(n))) {
    if (!gcd(g, frob[n / q] - x).is_one()) return false;
  }
  return true;
}

bool is_primitive(const FpPoly& f) {
  int n = f.degree();
  u64 p = f.p();
  FpPoly x = FpPoly::x(p);
  if (f[0] == 0) return false;
  u64 order = ipow(p, n) - 1;
  if (n == 1) {
    u64 root = (p - f.monic()[0]) % p;
    return root != 0 && mult_order(root, p) == p - 1;
  }
  if (!(powmod(x, Int(static_cast<unsigned long>(order)), f) == FpPoly::constant(p, 1))) return false;
  for (auto [q, e] : factor(order)) {
    if (powmod(x, Int(static_cast<unsigned long>(order / q)), f).is_one()) return false;
  }
  return true;
}

namespace {

// f monic squarefree with all factors of degree d
void edf(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  u64 p = f.p();
  int n = f.degree();
  for (;;) {
    std::vector<u64> rc(n);
    for (auto& c : rc) c = rng() % p;
    FpPoly a(p, rc);
    if (a.degree() < 1) continue;
    FpPoly g = gcd(f, a);
    if (g.degree() > 0 && g.degree() < n) {
      edf(g, d, rng, out);
      edf(f / g, d, rng, out);
      return;
    }
    FpPoly b;
    if (p == 2) {
      // absolute trace a + a^2 + ... + a^{2^{d-1}}
      b = a % f;
      FpPoly t = b;
      for (int i = 1; i < d; ++i) {
        t = (t * t) % f;
        b = b + t;
      }
    } else {
      Int e = (int_pow(p, d) - 1) / 2;
      b = powmod(a, e, f) - FpPoly::constant(p, 1);
    }
    g = gcd(f, b);
    if (g.degree() > 0 && g.degree() < n) {
      edf(g, d, rng, out);
      edf(f / g, d, rng, out);
      return;
    }
  }
}

// distinct-degree factorization of a monic squarefree polynomial
std::vector<std::pair<FpPoly, int>> ddf(FpPoly f) {
  std::vector<std::pair<FpPoly, int>> out;
  u64 p = f.p();
  FpPoly x = FpPoly::x(p), h = x % f;
  for (int i = 1; 2 * i <= f.degree(); ++i) {
    h = powmod(h, Int(static_cast<unsigned long>(p)), f);
    FpPoly g = gcd(f, h - x);
    if (!g.is_one()) {
      out.push_back({g, i});
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.push_back({f, f.degree()});
  return out;
}

// squarefree decomposition: pairs (g, m), g squarefree monic
std::vector<std::pair<FpPoly, int>> squarefree(const FpPoly& f) {
  std::vector<std::pair<FpPoly, int>> out;
  u64 p = f.p();
  FpPoly c = gcd(f, f.derivative());
  FpPoly w = f.monic() / c;
  int i = 1;
  while (!w.is_one()) {
    FpPoly y = gcd(w, c);
    FpPoly z = w / y;
    if (!z.is_one()) out.push_back({z, i});
    ++i;
    w = y;
    c = c / y;
  }
  if (!c.is_one()) {
    // c is a p-th power: take the p-th root coefficientwise
    std::vector<u64> r(c.degree() / p + 1, 0);
    for (int k = 0; k <= c.degree(); k += static_cast<int>(p)) r[k / p] = c[k];
    for (auto& [g, m] : squarefree(FpPoly(p, r))) out.push_back({g, m * static_cast<int>(p)});
  }
  return out;
}

}  // namespace

Factorization factor_mod_p(const FpPoly& f, u64 seed) {
  if (f.is_zero()) throw MathError("factor_mod_p: zero polynomial");
  std::mt19937_64 rng(seed);
  std::map<FpPoly, int> acc;
  if (f.degree() == 0) return {};
  for (auto& [g, m] : squarefree(f.monic())) {
    for (auto& [h, d] : ddf(g)) {
      std::vector<FpPoly> parts;
      edf(h, d, rng, parts);
      for (auto& q : parts) acc[q.monic()] += m;
    }
  }
  return Factorization(acc.begin(), acc.end());
}

std::vector<u64> roots_mod_p(const FpPoly& f, u64 seed) {
  if (f.is_zero()) throw MathError("roots_mod_p: zero polynomial");
  u64 p = f.p();
  FpPoly x = FpPoly::x(p);
  FpPoly lin = gcd(f, powmod(x, Int(static_cast<unsigned long>(p)), f.monic()) - x);
  std::vector<u64> out;
  if (lin.degree() <= 0) return out;
  std::mt19937_64 rng(seed);
  std::vector<FpPoly> parts;
  edf(lin, 1, rng, parts);
  for (auto& q : parts) out.push_back((p - q.monic()[0]) % p);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace wl
