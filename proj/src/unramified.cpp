#include "wittlab/unramified.hpp"

#include <algorithm>

namespace wl {

namespace {

Int pw(u64 p, long e) { return int_pow(p, static_cast<unsigned>(std::max(0L, e))); }

void reduce_coeffs(std::vector<Int>& v, const Int& m) {
  for (auto& x : v) x = mod_int(x, m);
}

std::vector<Int> pow_mod(std::vector<Int> base, const Int& e, const std::vector<Int>& mod, const Int& m) {
  size_t d = mod.size() - 1;
  std::vector<Int> r(d, 0);
  r[0] = 1;
  reduce_coeffs(r, m);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = zpoly_mulmod(r, r, mod, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = zpoly_mulmod(r, base, mod, m);
  }
  return r;
}

std::vector<Int> lift_fp(const FpPoly& a, size_t d) {
  std::vector<Int> c(d, 0);
  for (size_t i = 0; i < d; ++i) c[i] = Int(static_cast<unsigned long>(a[i]));
  return c;
}

}  // namespace

std::vector<Int> zpoly_mulmod(const std::vector<Int>& a, const std::vector<Int>& b, const std::vector<Int>& mod, const Int& m) {
  size_t d = mod.size() - 1;
  std::vector<Int> r(2 * d, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  for (size_t i = r.size(); i-- > d;) {
    if (r[i] == 0) continue;
    Int c = mod_int(r[i], m);
    for (size_t j = 0; j <= d; ++j) r[i - d + j] -= c * mod[j];
  }
  r.resize(d);
  reduce_coeffs(r, m);
  return r;
}

std::vector<Int> hensel_lift_modulus(const FpPoly& g_in, int K) {
  FpPoly g = g_in.monic();
  int d = g.degree();
  if (d < 1) throw MathError("hensel_lift_modulus: degree must be positive");
  u64 p = g.p();
  std::vector<Int> g0(d + 1);
  for (int i = 0; i <= d; ++i) g0[i] = Int(static_cast<unsigned long>(g[i]));
  if (K <= 1) return g0;
  Int m = pw(p, K), q = pw(p, d);
  std::vector<Int> theta(d, 0);
  if (d == 1)
    theta[0] = mod_int(-g0[0], m);
  else
    theta[1] = 1;
  for (int it = 0; it <= K + 1; ++it) {
    auto next = pow_mod(theta, q, g0, m);
    if (next == theta) break;
    theta = std::move(next);
  }
  // prod_{i<d} (Y - theta^{p^i}) with coefficients in (Z/p^K)[X]/(g0)
  std::vector<std::vector<Int>> P{std::vector<Int>(d, 0)};
  P[0][0] = 1;
  std::vector<Int> conj = theta;
  for (int i = 0; i < d; ++i) {
    std::vector<std::vector<Int>> Q(P.size() + 1, std::vector<Int>(d, 0));
    for (size_t k = 0; k < P.size(); ++k) {
      for (int j = 0; j < d; ++j) Q[k + 1][j] += P[k][j];
      auto t = zpoly_mulmod(P[k], conj, g0, m);
      for (int j = 0; j < d; ++j) Q[k][j] -= t[j];
    }
    for (auto& c : Q) reduce_coeffs(c, m);
    P = std::move(Q);
    conj = pow_mod(conj, Int(static_cast<unsigned long>(p)), g0, m);
  }
  std::vector<Int> out(d + 1);
  for (int k = 0; k <= d; ++k) {
    for (int j = 1; j < d; ++j)
      if (P[k][j] != 0) throw MathError("hensel_lift_modulus: conjugate product not constant (g reducible?)");
    out[k] = P[k][0];
  }
  return out;
}

std::shared_ptr<const UnramifiedContext> UnramifiedContext::make(const FpPoly& g, int K) {
  if (!is_irreducible(g)) throw MathError("unramified context: residue polynomial not irreducible");
  auto c = std::make_shared<UnramifiedContext>();
  c->p = g.p();
  c->d = g.degree();
  c->K = K;
  c->pK = pw(c->p, K);
  c->residue = g.monic();
  c->modulus = hensel_lift_modulus(g, K);
  std::vector<Int> x(c->d, 0);
  if (c->d == 1)
    x[0] = mod_int(-c->modulus[0], c->pK);
  else
    x[1] = 1;
  auto xp = pow_mod(x, Int(static_cast<unsigned long>(c->p)), c->modulus, c->pK);
  std::vector<Int> cur(c->d, 0);
  cur[0] = 1;
  for (int i = 0; i < c->d; ++i) {
    c->frob_x.push_back(cur);
    cur = zpoly_mulmod(cur, xp, c->modulus, c->pK);
  }
  return c;
}

UnramifiedElement UnramifiedElement::normalize(const UnramCtx& ctx, long v, std::vector<Int> c, long rel) {
  UnramifiedElement out;
  out.ctx_ = ctx;
  rel = std::min<long>(rel, ctx->K);
  Int m = pw(ctx->p, rel);
  reduce_coeffs(c, m);
  int w = -1;
  for (auto& x : c)
    if (x != 0) {
      int vx = val_p(x, ctx->p);
      w = (w < 0) ? vx : std::min(w, vx);
    }
  if (w < 0 || rel <= 0) {
    out.v_ = v + std::max(rel, 0L);
    out.K_ = 0;
    out.u_.assign(ctx->d, 0);
    return out;
  }
  Int pw_w = pw(ctx->p, w);
  for (auto& x : c) x /= pw_w;
  out.v_ = v + w;
  out.K_ = static_cast<int>(rel - w);
  reduce_coeffs(c, pw(ctx->p, out.K_));
  out.u_ = std::move(c);
  return out;
}

UnramifiedElement UnramifiedElement::zero(const UnramCtx& ctx) {
  UnramifiedElement z;
  z.ctx_ = ctx;
  z.K_ = ctx->K;
  z.u_.assign(ctx->d, 0);
  return z;
}

UnramifiedElement UnramifiedElement::one(const UnramCtx& ctx) { return from_int(ctx, 1); }

UnramifiedElement UnramifiedElement::from_padic(const UnramCtx& ctx, const PadicNumber& x) {
  if (x.p() != ctx->p && !x.is_exact_zero()) throw MathError("prime mismatch");
  if (x.is_exact_zero()) return zero(ctx);
  std::vector<Int> c(ctx->d, 0);
  c[0] = x.unit();
  return normalize(ctx, x.val(), std::move(c), x.prec());
}

UnramifiedElement UnramifiedElement::from_int(const UnramCtx& ctx, const Int& n) {
  return from_padic(ctx, PadicNumber::from_int(n, ctx->p, ctx->K));
}

UnramifiedElement UnramifiedElement::from_rat(const UnramCtx& ctx, const Rat& r) {
  return from_padic(ctx, PadicNumber::from_rat(r, ctx->p, ctx->K));
}

UnramifiedElement UnramifiedElement::from_coords(const UnramCtx& ctx, std::vector<Int> coords, int K) {
  coords.resize(ctx->d, 0);
  return normalize(ctx, 0, std::move(coords), K);
}

UnramifiedElement UnramifiedElement::generator(const UnramCtx& ctx) {
  std::vector<Int> c(ctx->d, 0);
  if (ctx->d == 1)
    c[0] = -ctx->modulus[0];
  else
    c[1] = 1;
  return from_coords(ctx, std::move(c), ctx->K);
}

UnramifiedElement operator+(const UnramifiedElement& a, const UnramifiedElement& b) {
  if (a.is_exact_zero()) return b;
  if (b.is_exact_zero()) return a;
  const auto& ctx = a.ctx_;
  u64 p = ctx->p;
  long A = std::min(a.abs_prec(), b.abs_prec());
  long v = std::min(a.v_, b.v_);
  std::vector<Int> c(ctx->d, 0);
  if (v < A) {
    Int fa = pw(p, a.v_ - v), fb = pw(p, b.v_ - v);
    for (int i = 0; i < ctx->d; ++i) c[i] = (a.K_ ? a.u_[i] * fa : Int(0)) + (b.K_ ? b.u_[i] * fb : Int(0));
  }
  return UnramifiedElement::normalize(ctx, v, std::move(c), A - v);
}

UnramifiedElement UnramifiedElement::operator-() const {
  UnramifiedElement r = *this;
  for (auto& x : r.u_) x = -x;
  if (!is_exact_zero()) reduce_coeffs(r.u_, pw(ctx_->p, K_));
  return r;
}

UnramifiedElement operator-(const UnramifiedElement& a, const UnramifiedElement& b) { return a + (-b); }

UnramifiedElement operator*(const UnramifiedElement& a, const UnramifiedElement& b) {
  if (a.is_exact_zero()) return a;
  if (b.is_exact_zero()) return b;
  const auto& ctx = a.ctx_;
  int K = std::min(a.K_, b.K_);
  long v = a.v_ + b.v_;
  if (K == 0) return UnramifiedElement::normalize(ctx, v, std::vector<Int>(ctx->d, 0), 0);
  Int m = pw(ctx->p, K);
  return UnramifiedElement::normalize(ctx, v, zpoly_mulmod(a.u_, b.u_, ctx->modulus, m), K);
}

UnramifiedElement operator/(const UnramifiedElement& a, const UnramifiedElement& b) {
  if (b.is_zero()) throw MathError("unramified division by an element not known to be nonzero");
  if (a.is_exact_zero()) return a;
  const auto& ctx = b.ctx_;
  int K = std::min(a.K_, b.K_);
  // inverse of the unit part: invert mod p, then Newton
  FpPoly ub(ctx->p);
  {
    std::vector<u64> c(ctx->d);
    for (int i = 0; i < ctx->d; ++i) c[i] = mpz_fdiv_ui(b.u_[i].get_mpz_t(), ctx->p);
    ub = FpPoly(ctx->p, c);
  }
  std::vector<Int> y = lift_fp(invmod(ub, ctx->residue), ctx->d);
  Int m = pw(ctx->p, std::max(K, 1));
  for (int prec = 1; prec < K; prec *= 2) {
    auto t = zpoly_mulmod(b.u_, y, ctx->modulus, m);
    for (auto& x : t) x = -x;
    t[0] += 2;
    y = zpoly_mulmod(y, t, ctx->modulus, m);
  }
  UnramifiedElement inv = UnramifiedElement::normalize(ctx, -b.v_, y, std::max(K, 1));
  return a * inv;
}

UnramifiedElement UnramifiedElement::pow(const Int& e) const {
  if (e < 0) return one(ctx_) / pow(Int(-e));
  if (e == 0) return one(ctx_);
  if (is_exact_zero()) return *this;
  if (K_ == 0) return normalize(ctx_, v_ * e.get_si(), u_, 0);
  Int m = pw(ctx_->p, K_);
  Int ev = Int(v_) * e;
  return normalize(ctx_, ev.get_si(), pow_mod(u_, e, ctx_->modulus, m), K_);
}

UnramifiedElement UnramifiedElement::frobenius(int times) const {
  if (is_zero()) return *this;
  int d = ctx_->d;
  int t = static_cast<int>(mod64(times, d));
  std::vector<Int> c = u_;
  Int m = pw(ctx_->p, K_);
  for (int s = 0; s < t; ++s) {
    std::vector<Int> n(d, 0);
    for (int i = 0; i < d; ++i) {
      if (c[i] == 0) continue;
      for (int j = 0; j < d; ++j) n[j] += c[i] * ctx_->frob_x[i][j];
    }
    reduce_coeffs(n, m);
    c = std::move(n);
  }
  return normalize(ctx_, v_, std::move(c), K_);
}

UnramifiedElement UnramifiedElement::with_prec(long abs_prec) const {
  if (abs_prec >= this->abs_prec()) return *this;
  if (is_exact_zero()) return normalize(ctx_, abs_prec, std::vector<Int>(ctx_->d, 0), 0);
  return normalize(ctx_, v_, u_, abs_prec - v_);
}

std::vector<Int> UnramifiedElement::coords(long N) const {
  std::vector<Int> c(ctx_->d, 0);
  if (is_exact_zero()) return c;
  if (N > abs_prec()) throw MathError("coords: not known to that precision");
  if (v_ < 0) throw MathError("coords: negative valuation");
  if (K_ == 0 || N <= v_) return c;
  Int f = pw(ctx_->p, v_), m = pw(ctx_->p, N);
  for (int i = 0; i < ctx_->d; ++i) c[i] = mod_int(u_[i] * f, m);
  return c;
}

FpPoly UnramifiedElement::residue() const {
  auto c = coords(1);
  std::vector<u64> r(c.size());
  for (size_t i = 0; i < c.size(); ++i) r[i] = c[i].get_ui();
  return FpPoly(ctx_->p, r);
}

bool UnramifiedElement::equal_mod(const UnramifiedElement& o, long N) const {
  if (N > abs_prec() || N > o.abs_prec()) throw MathError("equal_mod: insufficient precision");
  UnramifiedElement d = *this - o;
  return d.is_exact_zero() || d.val() >= N;
}

bool UnramifiedElement::is_padic() const {
  if (is_zero()) return true;
  for (int i = 1; i < ctx_->d; ++i)
    if (u_[i] != 0) return false;
  return true;
}

PadicNumber UnramifiedElement::to_padic() const {
  if (!is_padic()) throw MathError("element does not lie in Z_p");
  if (is_exact_zero()) return PadicNumber::zero(ctx_->p, ctx_->K);
  if (K_ == 0) return PadicNumber::approx_zero(ctx_->p, v_);
  return PadicNumber::make(ctx_->p, v_, u_[0], K_);
}

std::string UnramifiedElement::str() const {
  if (is_exact_zero()) return "0";
  std::string s = "[";
  for (int i = 0; i < ctx_->d; ++i) s += (i ? "," : "") + u_[i].get_str();
  s += "]";
  if (v_) s += "*" + std::to_string(ctx_->p) + "^" + std::to_string(v_);
  return s + " + O(" + std::to_string(ctx_->p) + "^" + std::to_string(abs_prec()) + ")";
}

UnramifiedElement teichmuller(const FpPoly& a_in, const UnramCtx& ctx) {
  FpPoly a = a_in % ctx->residue;
  if (a.is_zero()) return UnramifiedElement::zero(ctx);
  std::vector<Int> x = lift_fp(a, ctx->d);
  Int q = pw(ctx->p, ctx->d);
  for (int it = 0; it <= ctx->K + 1; ++it) {
    auto next = pow_mod(x, q, ctx->modulus, ctx->pK);
    if (next == x) break;
    x = std::move(next);
  }
  return UnramifiedElement::from_coords(ctx, std::move(x), ctx->K);
}

}  // namespace wl
