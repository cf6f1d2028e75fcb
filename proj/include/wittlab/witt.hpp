#pragma once
// Truncated big Witt vectors W_N(A) over the ring descriptors of rings.hpp.
// Arithmetic is routed either through ghost components (torsion-free rings,
// exact division by n) or through universal integral polynomials evaluated in
// the target ring.

#include "wittlab/arith.hpp"
#include "wittlab/rings.hpp"
#include "wittlab/sparse_poly.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace wl {

class TruncationSet {
 public:
  TruncationSet() : e_{1} {}
  explicit TruncationSet(std::vector<u64> elems);
  static TruncationSet range(u64 N);
  static TruncationSet p_typical(u64 p, unsigned length);

  const std::vector<u64>& elements() const { return e_; }
  size_t size() const { return e_.size(); }
  u64 max() const { return e_.back(); }
  bool contains(u64 n) const { return std::binary_search(e_.begin(), e_.end(), n); }
  size_t index(u64 n) const;
  // {r : r*n in N}
  TruncationSet quotient(u64 n) const;
  bool is_range() const { return e_.back() == e_.size(); }
  bool is_p_typical(u64 p) const;
  friend bool operator==(const TruncationSet& a, const TruncationSet& b) { return a.e_ == b.e_; }
  friend bool operator!=(const TruncationSet& a, const TruncationSet& b) { return a.e_ != b.e_; }
  std::string str() const;

 private:
  std::vector<u64> e_;
};

struct WittLimits {
  u64 max_index = 30;
  unsigned max_p_typical = 12;
};
WittLimits witt_limits();
void set_witt_limits(const WittLimits& l);

// ---- universal polynomials over Z ------------------------------------------
enum class UOp { Add, Mul, Neg, Frob };
std::string uop_name(UOp op);

// Variable layout: Add/Mul at index n use x_d (d|n ascending) then y_d;
// Neg uses x_d; Frob(m, r) uses x_d for d | m*r. Generated by ghost recursion
// on symbolic inputs, memoized in memory and (if WITTLAB_CACHE_DIR is set) on
// disk.
std::shared_ptr<const ZPoly> universal_poly(UOp op, u64 index, u64 frob_m = 0);
void clear_universal_memory_cache();

// A universal polynomial compiled for repeated evaluation.
struct CompiledPoly {
  struct Term {
    Int coeff;
    std::vector<std::pair<uint32_t, uint32_t>> factors;  // (var, exponent)
  };
  std::vector<Term> terms;
  std::vector<uint32_t> max_deg;
};
std::shared_ptr<const CompiledPoly> universal_compiled(UOp op, u64 index, u64 frob_m = 0);

template <class R>
typename R::Elem eval_compiled(const CompiledPoly& P, const std::vector<typename R::Elem>& vals, const R& ring) {
  using E = typename R::Elem;
  std::vector<std::vector<E>> pw(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) {
    uint32_t d = P.max_deg[i];
    if (!d) continue;
    pw[i].reserve(d);
    pw[i].push_back(vals[i]);
    for (uint32_t k = 1; k < d; ++k) pw[i].push_back(ring.mul(pw[i].back(), vals[i]));
  }
  E acc = ring.zero();
  for (auto& t : P.terms) {
    E v = ring.from_int(t.coeff);
    if (ring.is_zero(v)) continue;
    for (auto [var, e] : t.factors) v = ring.mul(v, pw[var][e - 1]);
    acc = ring.add(acc, v);
  }
  return acc;
}

// ---- Witt vectors ----------------------------------------------------------
template <class R>
class WittVector {
 public:
  using Elem = typename R::Elem;
  WittVector(R ring, TruncationSet trunc, std::vector<Elem> comps)
      : ring_(std::move(ring)), trunc_(std::move(trunc)), c_(std::move(comps)) {
    if (c_.size() != trunc_.size()) throw MathError("witt vector: component count does not match truncation");
  }
  static WittVector zero(const R& ring, const TruncationSet& t) {
    return WittVector(ring, t, std::vector<Elem>(t.size(), ring.zero()));
  }
  static WittVector teichmuller(const R& ring, const TruncationSet& t, const Elem& a) {
    auto v = zero(ring, t);
    v.c_[0] = a;
    return v;
  }
  static WittVector one(const R& ring, const TruncationSet& t) { return teichmuller(ring, t, ring.one()); }

  const R& ring() const { return ring_; }
  const TruncationSet& trunc() const { return trunc_; }
  const std::vector<Elem>& comps() const { return c_; }
  const Elem& at(u64 n) const { return c_[trunc_.index(n)]; }
  Elem& at(u64 n) { return c_[trunc_.index(n)]; }
  bool is_zero() const {
    for (auto& c : c_)
      if (!ring_.is_zero(c)) return false;
    return true;
  }
  bool equals(const WittVector& o) const {
    if (trunc_ != o.trunc_) return false;
    for (size_t i = 0; i < c_.size(); ++i)
      if (!ring_.equal(c_[i], o.c_[i])) return false;
    return true;
  }
  // Components on a divisor-closed subset.
  WittVector restrict_to(const TruncationSet& t) const {
    std::vector<Elem> out;
    for (u64 n : t.elements()) {
      if (!trunc_.contains(n)) throw MathError("restrict: index " + std::to_string(n) + " outside truncation");
      out.push_back(at(n));
    }
    return WittVector(ring_, t, std::move(out));
  }

 private:
  R ring_;
  TruncationSet trunc_;
  std::vector<Elem> c_;
};

enum class Route { Auto, Ghost, Universal };

template <class R>
typename R::Elem ghost(const WittVector<R>& x, u64 n) {
  if (!x.trunc().contains(n)) throw MathError("ghost: index " + std::to_string(n) + " outside truncation");
  const R& ring = x.ring();
  auto acc = ring.zero();
  for (u64 d : divisors(n)) {
    auto t = ring_pow(ring, x.at(d), n / d);
    acc = ring.add(acc, ring.mul(ring.from_int(Int(static_cast<unsigned long>(d))), t));
  }
  return acc;
}

template <class R>
std::vector<typename R::Elem> ghost_vector(const WittVector<R>& x) {
  std::vector<typename R::Elem> out;
  for (u64 n : x.trunc().elements()) out.push_back(ghost(x, n));
  return out;
}

// Inverse of the ghost map over a torsion-free ring; throws when some
// division by n is inexact.
template <class R>
WittVector<R> from_ghost(const R& ring, const TruncationSet& t, const std::vector<typename R::Elem>& g) {
  if (g.size() != t.size()) throw MathError("from_ghost: length mismatch");
  auto x = WittVector<R>::zero(ring, t);
  for (size_t i = 0; i < t.size(); ++i) {
    u64 n = t.elements()[i];
    auto acc = g[i];
    for (u64 d : divisors(n)) {
      if (d == n) continue;
      acc = ring.sub(acc, ring.mul(ring.from_int(Int(static_cast<unsigned long>(d))), ring_pow(ring, x.at(d), n / d)));
    }
    auto q = ring.divexact(acc, n);
    if (!q) throw MathError("ghost recursion: inexact division by " + std::to_string(n) + " in ring " + ring.name());
    x.at(n) = *q;
  }
  return x;
}

namespace detail {
inline Route resolve(Route r, bool torsion_free) {
  if (r == Route::Auto) return torsion_free ? Route::Ghost : Route::Universal;
  if (r == Route::Ghost && !torsion_free) throw MathError("ghost route requested on a ring with torsion");
  return r;
}
template <class R>
void check_same(const WittVector<R>& x, const WittVector<R>& y) {
  if (x.trunc() != y.trunc()) throw MathError("witt: truncation mismatch");
}
// t: truncation being computed; top: largest index fed to a universal polynomial
void check_universal_limits(const TruncationSet& t, u64 top);

template <class R>
WittVector<R> binary_universal(UOp op, const WittVector<R>& x, const WittVector<R>& y) {
  check_universal_limits(x.trunc(), x.trunc().max());
  const R& ring = x.ring();
  auto out = WittVector<R>::zero(ring, x.trunc());
  for (u64 n : x.trunc().elements()) {
    auto P = universal_compiled(op, n);
    auto ds = divisors(n);
    std::vector<typename R::Elem> vals;
    vals.reserve(2 * ds.size());
    for (u64 d : ds) vals.push_back(x.at(d));
    for (u64 d : ds) vals.push_back(y.at(d));
    out.at(n) = eval_compiled(*P, vals, ring);
  }
  return out;
}
}  // namespace detail

template <class R>
WittVector<R> witt_add(const WittVector<R>& x, const WittVector<R>& y, Route route = Route::Auto) {
  detail::check_same(x, y);
  if (detail::resolve(route, R::torsion_free) == Route::Universal) return detail::binary_universal(UOp::Add, x, y);
  const R& ring = x.ring();
  auto gx = ghost_vector(x), gy = ghost_vector(y);
  for (size_t i = 0; i < gx.size(); ++i) gx[i] = ring.add(gx[i], gy[i]);
  return from_ghost(ring, x.trunc(), gx);
}

template <class R>
WittVector<R> witt_mul(const WittVector<R>& x, const WittVector<R>& y, Route route = Route::Auto) {
  detail::check_same(x, y);
  if (detail::resolve(route, R::torsion_free) == Route::Universal) return detail::binary_universal(UOp::Mul, x, y);
  const R& ring = x.ring();
  auto gx = ghost_vector(x), gy = ghost_vector(y);
  for (size_t i = 0; i < gx.size(); ++i) gx[i] = ring.mul(gx[i], gy[i]);
  return from_ghost(ring, x.trunc(), gx);
}

// Componentwise negation; only correct for p-typical vectors over a ring of
// odd characteristic p.
template <class R>
WittVector<R> witt_neg_componentwise(const WittVector<R>& x) {
  std::vector<typename R::Elem> c;
  for (auto& a : x.comps()) c.push_back(x.ring().neg(a));
  return WittVector<R>(x.ring(), x.trunc(), std::move(c));
}

template <class R>
bool componentwise_negation_valid(const WittVector<R>& x) {
  u64 p = x.ring().char_p();
  return p > 2 && x.trunc().is_p_typical(p);
}

template <class R>
WittVector<R> witt_neg(const WittVector<R>& x, Route route = Route::Auto) {
  if (route == Route::Auto && componentwise_negation_valid(x)) return witt_neg_componentwise(x);
  const R& ring = x.ring();
  if (detail::resolve(route, R::torsion_free) == Route::Universal) {
    detail::check_universal_limits(x.trunc(), x.trunc().max());
    auto out = WittVector<R>::zero(ring, x.trunc());
    for (u64 n : x.trunc().elements()) {
      auto P = universal_compiled(UOp::Neg, n);
      std::vector<typename R::Elem> vals;
      for (u64 d : divisors(n)) vals.push_back(x.at(d));
      out.at(n) = eval_compiled(*P, vals, ring);
    }
    return out;
  }
  auto g = ghost_vector(x);
  for (auto& a : g) a = ring.neg(a);
  return from_ghost(ring, x.trunc(), g);
}

template <class R>
WittVector<R> witt_sub(const WittVector<R>& x, const WittVector<R>& y, Route route = Route::Auto) {
  return witt_add(x, witt_neg(y, route), route);
}

// n*x for an integer n >= 0.
template <class R>
WittVector<R> witt_scale(const WittVector<R>& x, u64 n, Route route = Route::Auto) {
  if (detail::resolve(route, R::torsion_free) == Route::Ghost) {
    const R& ring = x.ring();
    auto g = ghost_vector(x);
    for (auto& a : g) a = ring.mul(ring.from_int(Int(static_cast<unsigned long>(n))), a);
    return from_ghost(ring, x.trunc(), g);
  }
  auto acc = WittVector<R>::zero(x.ring(), x.trunc());
  auto b = x;
  while (n) {
    if (n & 1) acc = witt_add(acc, b, route);
    n >>= 1;
    if (n) b = witt_add(b, b, route);
  }
  return acc;
}

template <class R>
WittVector<R> witt_from_integer(const R& ring, const TruncationSet& t, u64 n, Route route = Route::Auto) {
  return witt_scale(WittVector<R>::one(ring, t), n, route);
}

// F_n : W_N -> W_target, target defaults to N/n; gh_r F_n = gh_{rn}.
template <class R>
WittVector<R> frobenius(const WittVector<R>& x, u64 n, const TruncationSet* target = nullptr, Route route = Route::Auto) {
  if (n == 0) throw MathError("frobenius: n must be positive");
  TruncationSet t = target ? *target : x.trunc().quotient(n);
  for (u64 r : t.elements())
    if (!x.trunc().contains(r * n))
      throw MathError("frobenius: truncation incompatible (" + std::to_string(r * n) + " missing)");
  const R& ring = x.ring();
  if (n == 1) return x.restrict_to(t);
  if (detail::resolve(route, R::torsion_free) == Route::Universal) {
    detail::check_universal_limits(t, t.max() * n);
    auto out = WittVector<R>::zero(ring, t);
    for (u64 r : t.elements()) {
      auto P = universal_compiled(UOp::Frob, r, n);
      std::vector<typename R::Elem> vals;
      for (u64 d : divisors(r * n)) vals.push_back(x.at(d));
      out.at(r) = eval_compiled(*P, vals, ring);
    }
    return out;
  }
  std::vector<typename R::Elem> g;
  for (u64 r : t.elements()) g.push_back(ghost(x, r * n));
  return from_ghost(ring, t, g);
}

// V_n : W_{N/n} -> W_N, a_m -> a_{m/n} when n | m, else 0.
template <class R>
WittVector<R> verschiebung(const WittVector<R>& x, u64 n, const TruncationSet& target) {
  if (n == 0) throw MathError("verschiebung: n must be positive");
  auto out = WittVector<R>::zero(x.ring(), target);
  for (u64 m : target.elements()) {
    if (m % n) continue;
    if (!x.trunc().contains(m / n))
      throw MathError("verschiebung: source truncation lacks index " + std::to_string(m / n));
    out.at(m) = x.at(m / n);
  }
  return out;
}

// ---- Lambda(A) -------------------------------------------------------------
template <class R>
class LambdaSeries {
 public:
  using Elem = typename R::Elem;
  // coeffs a_1..a_T (constant term 1 implicit)
  LambdaSeries(R ring, std::vector<Elem> coeffs) : ring_(std::move(ring)), a_(std::move(coeffs)) {}
  static LambdaSeries one(const R& ring, u64 T) { return LambdaSeries(ring, std::vector<Elem>(T, ring.zero())); }
  const R& ring() const { return ring_; }
  u64 degree() const { return a_.size(); }
  // a_0 = 1
  Elem coeff(u64 k) const { return k == 0 ? ring_.one() : a_.at(k - 1); }
  const std::vector<Elem>& coeffs() const { return a_; }
  bool equals(const LambdaSeries& o) const {
    if (a_.size() != o.a_.size()) return false;
    for (size_t i = 0; i < a_.size(); ++i)
      if (!ring_.equal(a_[i], o.a_[i])) return false;
    return true;
  }
  LambdaSeries truncated(u64 T) const {
    if (T > a_.size()) throw MathError("lambda: cannot extend degree");
    return LambdaSeries(ring_, std::vector<Elem>(a_.begin(), a_.begin() + T));
  }

 private:
  R ring_;
  std::vector<Elem> a_;
};

// Series product (Witt addition on the Lambda side).
template <class R>
LambdaSeries<R> lambda_mul(const LambdaSeries<R>& f, const LambdaSeries<R>& g) {
  if (f.degree() != g.degree()) throw MathError("lambda: degree mismatch");
  const R& ring = f.ring();
  u64 T = f.degree();
  std::vector<typename R::Elem> c(T, ring.zero());
  for (u64 n = 1; n <= T; ++n) {
    auto acc = ring.zero();
    for (u64 k = 0; k <= n; ++k) acc = ring.add(acc, ring.mul(f.coeff(k), g.coeff(n - k)));
    c[n - 1] = acc;
  }
  return LambdaSeries<R>(ring, std::move(c));
}

// (1 + sum a_k t^k)^e for rational e; coefficients must be p-integral when the
// ring has characteristic p.
template <class R>
LambdaSeries<R> lambda_pow(const LambdaSeries<R>& f, const Rat& e) {
  const R& ring = f.ring();
  u64 T = f.degree();
  // u = f - 1; (1+u)^e = sum binom(e,k) u^k
  std::vector<typename R::Elem> u(f.coeffs()), upow(T, ring.zero()), out(T, ring.zero());
  upow = u;
  Rat binom = e;
  for (u64 k = 1; k <= T; ++k) {
    auto b = ring.from_rat(binom);
    for (u64 i = 0; i < T; ++i) out[i] = ring.add(out[i], ring.mul(b, upow[i]));
    std::vector<typename R::Elem> next(T, ring.zero());
    for (u64 i = 1; i <= T; ++i)
      for (u64 j = 1; i + j <= T; ++j) next[i + j - 1] = ring.add(next[i + j - 1], ring.mul(upow[i - 1], u[j - 1]));
    upow = std::move(next);
    binom = binom * (e - Rat(static_cast<long>(k))) / Rat(static_cast<long>(k + 1));
  }
  return LambdaSeries<R>(ring, std::move(out));
}

// f(t^n)
template <class R>
LambdaSeries<R> lambda_substitute_power(const LambdaSeries<R>& f, u64 n) {
  const R& ring = f.ring();
  std::vector<typename R::Elem> c(f.degree(), ring.zero());
  for (u64 k = 1; k * n <= f.degree(); ++k) c[k * n - 1] = f.coeff(k);
  return LambdaSeries<R>(ring, std::move(c));
}

// prod (1 - x_n t^n)^{-1}
template <class R>
LambdaSeries<R> lambda_from_witt(const WittVector<R>& x) {
  if (!x.trunc().is_range()) throw MathError("lambda_from_witt: truncation must be {1..T}");
  const R& ring = x.ring();
  u64 T = x.trunc().max();
  std::vector<typename R::Elem> c(T + 1, ring.zero());
  c[0] = ring.one();
  for (u64 n = 1; n <= T; ++n) {
    const auto& xn = x.at(n);
    if (ring.is_zero(xn)) continue;
    // multiply by sum_k xn^k t^{nk}: c_j += xn * c_{j-n} in increasing j
    for (u64 j = n; j <= T; ++j) c[j] = ring.add(c[j], ring.mul(xn, c[j - n]));
  }
  return LambdaSeries<R>(ring, std::vector<typename R::Elem>(c.begin() + 1, c.end()));
}

template <class R>
WittVector<R> witt_from_lambda(const LambdaSeries<R>& f) {
  const R& ring = f.ring();
  u64 T = f.degree();
  std::vector<typename R::Elem> g(T + 1, ring.zero()), x;
  g[0] = ring.one();
  for (u64 k = 1; k <= T; ++k) g[k] = f.coeff(k);
  for (u64 n = 1; n <= T; ++n) {
    auto xn = g[n];
    x.push_back(xn);
    if (ring.is_zero(xn)) continue;
    // g <- g * (1 - xn t^n), descending j
    for (u64 j = T; j >= n; --j) g[j] = ring.sub(g[j], ring.mul(xn, g[j - n]));
  }
  return WittVector<R>(ring, TruncationSet::range(T), std::move(x));
}

// w_n(f) from n a_n = sum_{k=1}^{n} w_k a_{n-k}, i.e. t f'/f.
template <class R>
std::vector<typename R::Elem> lambda_ghost(const LambdaSeries<R>& f) {
  const R& ring = f.ring();
  u64 T = f.degree();
  std::vector<typename R::Elem> w;
  for (u64 n = 1; n <= T; ++n) {
    auto acc = ring.mul(ring.from_int(Int(static_cast<unsigned long>(n))), f.coeff(n));
    for (u64 k = 1; k < n; ++k) acc = ring.sub(acc, ring.mul(w[k - 1], f.coeff(n - k)));
    w.push_back(acc);
  }
  return w;
}

template <class R>
LambdaSeries<R> lambda_from_ghost(const R& ring, const std::vector<typename R::Elem>& w) {
  u64 T = w.size();
  std::vector<typename R::Elem> a;
  for (u64 n = 1; n <= T; ++n) {
    auto acc = w[n - 1];
    for (u64 k = 1; k < n; ++k) acc = ring.add(acc, ring.mul(w[k - 1], a[n - k - 1]));
    auto q = ring.divexact(acc, n);
    if (!q) throw MathError("lambda ghost recursion: inexact division by " + std::to_string(n));
    a.push_back(*q);
  }
  return LambdaSeries<R>(ring, std::move(a));
}

template <class R>
LambdaSeries<R> lambda_star(const LambdaSeries<R>& f, const LambdaSeries<R>& g, Route route = Route::Auto) {
  if (f.degree() != g.degree()) throw MathError("lambda_star: degree mismatch");
  if (f.ring().name() != g.ring().name()) throw MathError("lambda_star: ring mismatch");
  const R& ring = f.ring();
  if (detail::resolve(route, R::torsion_free) == Route::Ghost) {
    auto wf = lambda_ghost(f), wg = lambda_ghost(g);
    for (size_t i = 0; i < wf.size(); ++i) wf[i] = ring.mul(wf[i], wg[i]);
    return lambda_from_ghost(ring, wf);
  }
  return lambda_from_witt(witt_mul(witt_from_lambda(f), witt_from_lambda(g), Route::Universal));
}

// ---- Artin-Hasse -----------------------------------------------------------
struct ArtinHasseContext {
  u64 p = 0;
  u64 T = 0;
  std::vector<Rat> comps;  // x_1..x_T, all in Z_(p)

  Rat at(u64 n) const { return comps.at(n - 1); }
  template <class R>
  WittVector<R> witt(const R& ring) const {
    std::vector<typename R::Elem> c;
    for (auto& r : comps) c.push_back(ring.from_rat(r));
    return WittVector<R>(ring, TruncationSet::range(T), std::move(c));
  }
  template <class R>
  LambdaSeries<R> series(const R& ring) const {
    return lambda_from_witt(witt(ring));
  }
};
ArtinHasseContext artin_hasse(u64 p, u64 T);

// ---- Theta -----------------------------------------------------------------
// n in I(p), n <= M  ->  p-typical vector (F_n(x)_{p^k})_{k<K}
template <class R>
std::map<u64, WittVector<R>> theta_decompose(const WittVector<R>& x, u64 p, u64 M, unsigned K) {
  if (!is_prime(p)) throw MathError("theta: p must be prime");
  if (K == 0) throw MathError("theta: length must be positive");
  TruncationSet pt = TruncationSet::p_typical(p, K);
  std::map<u64, WittVector<R>> out;
  for (u64 n = 1; n <= M; ++n) {
    if (n % p == 0) continue;
    if (!x.trunc().contains(n * pt.max()))
      throw MathError("theta: truncation lacks index " + std::to_string(n * pt.max()));
    out.emplace(n, frobenius(x, n, &pt));
  }
  return out;
}

}  // namespace wl
