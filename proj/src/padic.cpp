#include "wittlab/padic.hpp"

#include <algorithm>

namespace wl {

namespace {

Int pw(u64 p, long e) { return int_pow(p, static_cast<unsigned>(std::max(0L, e))); }

int ilog(u64 p, u64 n) {
  int k = 0;
  while (n >= p) n /= p, ++k;
  return k;
}

}  // namespace

PadicNumber PadicNumber::zero(u64 p, int nominal_prec) {
  PadicNumber z;
  z.p_ = p;
  z.K_ = nominal_prec;
  return z;
}

PadicNumber PadicNumber::approx_zero(u64 p, long abs_prec) {
  PadicNumber z;
  z.p_ = p;
  z.v_ = abs_prec;
  z.K_ = 0;
  z.u_ = 0;
  return z;
}

PadicNumber PadicNumber::make(u64 p, long v, const Int& unit, int K) {
  if (K <= 0) return approx_zero(p, v);
  PadicNumber x;
  x.p_ = p;
  x.v_ = v;
  x.K_ = K;
  x.u_ = mod_int(unit, pw(p, K));
  if (mpz_divisible_ui_p(x.u_.get_mpz_t(), p)) throw MathError("PadicNumber::make: unit divisible by p");
  return x;
}

PadicNumber PadicNumber::from_residue(const Int& s, u64 p, long abs_prec) {
  Int m = mod_int(s, pw(p, abs_prec));
  if (m == 0) return approx_zero(p, abs_prec);
  int v = val_p(m, p);
  Int u = m / pw(p, v);
  return make(p, v, u, static_cast<int>(abs_prec - v));
}

PadicNumber PadicNumber::from_int(const Int& n, u64 p, int K) {
  if (n == 0) return zero(p, K);
  int v = val_p(n, p);
  return make(p, v, n / pw(p, v), K);
}

PadicNumber PadicNumber::from_rat(const Rat& r, u64 p, int K) {
  if (r == 0) return zero(p, K);
  int vn = val_p(Int(r.get_num()), p), vd = val_p(Int(r.get_den()), p);
  Int num = Int(r.get_num()) / pw(p, vn), den = Int(r.get_den()) / pw(p, vd);
  Int mod = pw(p, K);
  return make(p, vn - vd, mod_int(num * inv_int(den, mod), mod), K);
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
  if (a.is_exact_zero()) return b;
  if (b.is_exact_zero()) return a;
  if (a.p_ != b.p_) throw MathError("p-adic prime mismatch");
  u64 p = a.p_;
  long A = std::min(a.abs_prec(), b.abs_prec());
  long v = std::min(a.v_, b.v_);
  if (v >= A) return PadicNumber::approx_zero(p, A);
  Int s = a.u_ * pw(p, a.v_ - v) + b.u_ * pw(p, b.v_ - v);
  PadicNumber r = PadicNumber::from_residue(s, p, A - v);
  if (r.v_ != PadicNumber::kInf) r.v_ += v;
  return r;
}

PadicNumber PadicNumber::operator-() const {
  if (is_zero()) return *this;
  PadicNumber r = *this;
  r.u_ = mod_int(-u_, pw(p_, K_));
  return r;
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
  if (a.is_exact_zero()) return a;
  if (b.is_exact_zero()) return b;
  if (a.p_ != b.p_) throw MathError("p-adic prime mismatch");
  long v = a.v_ + b.v_;
  int K = std::min(a.K_, b.K_);
  if (K == 0) return PadicNumber::approx_zero(a.p_, v + K);
  return PadicNumber::make(a.p_, v, a.u_ * b.u_, K);
}

PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) {
  if (b.is_zero()) throw MathError("p-adic division by an element not known to be nonzero");
  if (a.is_exact_zero()) return a;
  long v = a.v_ - b.v_;
  int K = std::min(a.K_, b.K_);
  if (K == 0) return PadicNumber::approx_zero(a.p_, v);
  Int mod = pw(a.p_, K);
  return PadicNumber::make(a.p_, v, a.u_ * inv_int(b.u_, mod), K);
}

PadicNumber PadicNumber::pow(long e) const {
  if (e == 0) return from_int(1, p_, is_exact_zero() ? K_ : std::max(K_, 1));
  if (e < 0) return from_int(1, p_, K_) / pow(-e);
  if (is_exact_zero()) return *this;
  if (K_ == 0) return approx_zero(p_, v_ * e);
  Int u;
  Int mod = pw(p_, K_);
  mpz_powm_ui(u.get_mpz_t(), u_.get_mpz_t(), static_cast<unsigned long>(e), mod.get_mpz_t());
  return make(p_, v_ * e, u, K_);
}

PadicNumber PadicNumber::with_prec(long abs_prec) const {
  if (abs_prec >= this->abs_prec()) return *this;
  if (is_exact_zero()) return approx_zero(p_, abs_prec);
  if (abs_prec <= v_) return approx_zero(p_, abs_prec);
  return make(p_, v_, u_, static_cast<int>(abs_prec - v_));
}

Int PadicNumber::residue(long N) const {
  if (is_exact_zero()) return 0;
  if (N > abs_prec()) throw MathError("residue: not known to that precision");
  if (v_ < 0) throw MathError("residue: negative valuation");
  if (N <= v_) return 0;
  return mod_int(u_ * pw(p_, v_), pw(p_, N));
}

bool PadicNumber::equal_mod(const PadicNumber& o, long N) const {
  if (N > abs_prec() || N > o.abs_prec()) throw MathError("equal_mod: insufficient precision");
  PadicNumber d = *this - o;
  return d.is_exact_zero() || d.val() >= N;
}

std::string PadicNumber::digits() const {
  std::string s;
  Int u = u_;
  for (int i = 0; i < K_; ++i) {
    unsigned long dgt = mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), p_);
    if (!s.empty()) s += ",";
    s += std::to_string(dgt);
  }
  return s;
}

std::string PadicNumber::str() const {
  if (is_exact_zero()) return "0";
  if (K_ == 0) return "O(" + std::to_string(p_) + "^" + std::to_string(v_) + ")";
  std::string s = u_.get_str();
  if (v_ != 0) s += "*" + std::to_string(p_) + "^" + std::to_string(v_);
  return s + " + O(" + std::to_string(p_) + "^" + std::to_string(abs_prec()) + ")";
}

Int teichmuller_unit(const Int& u, u64 p, int K) {
  Int mod = pw(p, K);
  if (p == 2) {
    Int r = mod_int(u, 4);
    if (K < 2) throw MathError("teichmuller: need precision >= 2 for p = 2");
    return r == 1 ? Int(1) : mod_int(Int(-1), mod);
  }
  // u^{p^{K-1}} is congruent to omega(u) modulo p^K
  Int e = pw(p, K - 1), r;
  Int base = mod_int(u, mod);
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  return r;
}

PadicNumber iwasawa_log(const PadicNumber& x) {
  if (x.is_exact_zero()) throw MathError("log of zero");
  u64 p = x.p();
  int K = x.prec();
  PrimeConstants pc(p);
  if (K < pc.v_q) throw MathError("iwasawa_log: insufficient precision to separate the Teichmuller part");
  Int mod = pw(p, K);
  Int w = teichmuller_unit(x.unit(), p, K);
  Int a = mod_int(x.unit() * inv_int(w, mod), mod);  // principal unit
  Int y = mod_int(a - 1, mod);
  if (y == 0) return PadicNumber::approx_zero(p, K);
  int vy = val_p(y, p);
  // terms y^n/n with n*vy - v_p(n) < K
  u64 nmax = 1;
  while (static_cast<long>((nmax + 1) * vy) - ilog(p, nmax + 1) < K) ++nmax;
  int E = ilog(p, nmax) + 1;
  Int big = pw(p, K + E), acc = 0, yn = 1;
  for (u64 n = 1; n <= nmax; ++n) {
    yn = mod_int(yn * y, big);
    int vn = val_p(static_cast<i64>(n), p);
    Int t = yn / pw(p, vn);
    Int n1 = Int(static_cast<unsigned long>(n)) / pw(p, vn);
    t = mod_int(t * inv_int(n1, mod), mod);
    if (n % 2 == 0) t = -t;
    acc += t;
  }
  return PadicNumber::from_residue(acc, p, K);
}

PadicNumber padic_exp(const PadicNumber& x) {
  u64 p = x.p();
  PrimeConstants pc(p);
  if (x.is_exact_zero()) return PadicNumber::from_int(1, p, x.prec());
  if (x.val() < pc.v_q) throw MathError("padic_exp: argument outside the convergence disc");
  long A = x.abs_prec();
  // terms x^n/n! with n*v - v_p(n!) < A; v_p(n!) <= (n-1)/(p-1)
  long v = x.val();
  u64 nmax = 1;
  auto lower = [&](u64 n) { return static_cast<long>(n) * v - static_cast<long>((n - 1) / (p - 1)); };
  while (lower(nmax + 1) < A) ++nmax;
  int E = 1;
  for (u64 m = nmax / p; m; m /= p) E += static_cast<int>(m);  // v_p(nmax!) + 1
  Int mod = pw(p, A), big = pw(p, A + E);
  Int xi = x.is_zero() ? Int(0) : Int(x.unit() * pw(p, v));
  Int acc = 1, xn = 1, fact_unit = 1;
  int fact_v = 0;
  for (u64 n = 1; n <= nmax; ++n) {
    xn = mod_int(xn * xi, big);
    u64 m = n;
    int vn = 0;
    while (m % p == 0) m /= p, ++vn;
    fact_v += vn;
    fact_unit = mod_int(fact_unit * Int(static_cast<unsigned long>(m)), big);
    Int t = xn / pw(p, fact_v);
    acc += t * inv_int(fact_unit, mod);
  }
  return PadicNumber::from_residue(acc, p, A);
}

std::pair<PadicNumber, PadicNumber> omega_angle(const Rat& r, u64 p, int K) {
  if (r == 0 || val_p(r, p) != 0) throw MathError("omega_angle: not a p-adic unit");
  PadicNumber x = PadicNumber::from_rat(r, p, K);
  Int w = teichmuller_unit(x.unit(), p, K);
  PadicNumber om = PadicNumber::make(p, 0, w, K);
  return {om, x / om};
}

PadicNumber i_p(const Rat& r, u64 p, int K) {
  PrimeConstants pc(p);
  int W = K + pc.v_q;
  PadicNumber lr = iwasawa_log(PadicNumber::from_rat(r, p, W));
  PadicNumber lq = iwasawa_log(PadicNumber::from_int(Int(static_cast<unsigned long>(1 + pc.q)), p, W));
  return lr / lq;
}

}  // namespace wl
