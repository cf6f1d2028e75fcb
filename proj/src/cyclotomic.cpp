#include "wittlab/cyclotomic.hpp"

#include <map>
#include <mutex>

namespace wl {

namespace {

std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
  // den monic
  size_t dn = den.size() - 1;
  std::vector<Int> q(num.size() - dn, 0);
  for (size_t i = num.size(); i-- > dn;) {
    Int c = num[i];
    q[i - dn] = c;
    if (c != 0)
      for (size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (size_t i = 0; i < dn; ++i)
    if (num[i] != 0) throw MathError("cyclotomic: inexact division");
  return q;
}

}  // namespace

const std::vector<Int>& cyclotomic_coeffs(u64 n) {
  static std::mutex mu;
  static std::map<u64, std::vector<Int>> memo;
  if (n == 0) throw MathError("cyclotomic_poly(0)");
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
  }
  std::vector<Int> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (u64 d : divisors(n))
    if (d < n) num = poly_div_exact(num, cyclotomic_coeffs(d));
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(n, std::move(num)).first->second;
}

ZPoly cyclotomic_poly(u64 n, const std::string& var) {
  const auto& c = cyclotomic_coeffs(n);
  std::vector<ZPoly::Term> ts;
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) ts.push_back({Exps{static_cast<std::uint32_t>(i)}, c[i]});
  return ZPoly::from_terms({var}, std::move(ts));
}

CycloElement::CycloElement(u64 conductor) : b_(conductor), c_(totient(conductor), Rat(0)) {}

CycloElement::CycloElement(u64 conductor, std::vector<Rat> coords) : b_(conductor), c_(reduce(std::move(coords), conductor)) {}

std::vector<Rat> CycloElement::reduce(std::vector<Rat> v, u64 b) {
  const auto& phi = cyclotomic_coeffs(b);
  size_t d = phi.size() - 1;
  for (size_t i = v.size(); i-- > d;) {
    if (v[i] == 0) continue;
    Rat c = v[i];
    for (size_t j = 0; j <= d; ++j) v[i - d + j] -= c * phi[j];
  }
  v.resize(d, Rat(0));
  return v;
}

CycloElement CycloElement::rational(const Rat& r, u64 conductor) {
  CycloElement e(conductor);
  e.c_[0] = r;
  return e;
}

CycloElement CycloElement::zeta(u64 conductor, i64 k) {
  i64 e = mod64(k, static_cast<i64>(conductor));
  std::vector<Rat> v(static_cast<size_t>(e) + 1, Rat(0));
  v[e] = 1;
  return CycloElement(conductor, std::move(v));
}

bool CycloElement::is_zero() const {
  for (auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool CycloElement::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat CycloElement::to_rational() const {
  if (!is_rational()) throw MathError("cyclotomic element is not rational");
  return c_[0];
}

CycloElement CycloElement::lift(u64 B) const {
  if (B == b_) return *this;
  if (B % b_) throw MathError("lift: conductor does not divide target");
  u64 k = B / b_;
  std::vector<Rat> v((c_.size() ? c_.size() - 1 : 0) * k + 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) v[i * k] = c_[i];
  return CycloElement(B, std::move(v));
}

namespace {

// Solve A y = t over Q where A has the given columns; empty optional if inconsistent.
bool solve_columns(const std::vector<std::vector<Rat>>& cols, const std::vector<Rat>& t, std::vector<Rat>& y) {
  size_t rows = t.size(), n = cols.size();
  std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(n + 1));
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < n; ++c) m[r][c] = cols[c][r];
    m[r][n] = t[r];
  }
  std::vector<size_t> pivcol;
  size_t r = 0;
  for (size_t c = 0; c < n && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (size_t k = 0; k < rows; ++k) {
      if (k == r || m[k][c] == 0) continue;
      Rat f = m[k][c] / m[r][c];
      for (size_t j = c; j <= n; ++j) m[k][j] -= f * m[r][j];
    }
    pivcol.push_back(c);
    ++r;
  }
  for (size_t k = r; k < rows; ++k)
    if (m[k][n] != 0) return false;
  y.assign(n, Rat(0));
  for (size_t k = 0; k < r; ++k) y[pivcol[k]] = m[k][n] / m[k][pivcol[k]];
  return true;
}

}  // namespace

CycloElement CycloElement::reduced() const {
  for (u64 d : divisors(b_)) {
    if (d == b_) break;
    std::vector<std::vector<Rat>> cols;
    for (u64 i = 0; i < totient(d); ++i) cols.push_back(zeta(d, static_cast<i64>(i)).lift(b_).c_);
    std::vector<Rat> y;
    if (solve_columns(cols, c_, y)) return CycloElement(d, y);
  }
  return *this;
}

CycloElement CycloElement::galois(i64 c) const {
  if (gcd64(c, static_cast<i64>(b_)) != 1) throw MathError("galois: exponent not a unit");
  CycloElement out(b_);
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) out += zeta(b_, c * static_cast<i64>(i)).scaled(c_[i]);
  return out;
}

namespace {
u64 common(const CycloElement& a, const CycloElement& b) {
  return static_cast<u64>(lcm64(static_cast<i64>(a.conductor()), static_cast<i64>(b.conductor())));
}
}  // namespace

CycloElement operator+(const CycloElement& a, const CycloElement& b) {
  u64 B = common(a, b);
  CycloElement x = a.lift(B), y = b.lift(B);
  for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
  return x;
}

CycloElement operator-(const CycloElement& a, const CycloElement& b) { return a + (-b); }

CycloElement operator*(const CycloElement& a, const CycloElement& b) {
  u64 B = common(a, b);
  CycloElement x = a.lift(B), y = b.lift(B);
  if (B == 1) return CycloElement::rational(x.c_[0] * y.c_[0]);
  std::vector<Rat> v(x.c_.size() + y.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i] == 0) continue;
    for (size_t j = 0; j < y.c_.size(); ++j)
      if (y.c_[j] != 0) v[i + j] += x.c_[i] * y.c_[j];
  }
  return CycloElement(B, std::move(v));
}

CycloElement CycloElement::operator-() const {
  CycloElement out = *this;
  for (auto& x : out.c_) x = -x;
  return out;
}

CycloElement CycloElement::scaled(const Rat& r) const {
  CycloElement out = *this;
  for (auto& x : out.c_) x *= r;
  return out;
}

bool operator==(const CycloElement& a, const CycloElement& b) {
  u64 B = common(a, b);
  return a.lift(B).c_ == b.lift(B).c_;
}

std::string CycloElement::str() const {
  CycloElement r = reduced();
  if (r.is_rational()) return r.c_[0].get_str();
  std::vector<QPoly::Term> ts;
  for (size_t i = 0; i < r.c_.size(); ++i)
    if (r.c_[i] != 0) ts.push_back({Exps{static_cast<std::uint32_t>(i)}, r.c_[i]});
  return QPoly::from_terms({"z" + std::to_string(r.b_)}, std::move(ts)).to_string();
}

}  // namespace wl
