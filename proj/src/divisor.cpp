#include "wittlab/divisor.hpp"

namespace wl {

Divisor Divisor::point(std::shared_ptr<const FieldTower> tower, const Frac& g, i64 mult) {
  Divisor d(std::move(tower));
  d.add_point(g, mult);
  return d;
}

Divisor Divisor::of_element(std::shared_ptr<const FieldTower> tower, const FpPoly& a, unsigned n, i64 mult) {
  Frac g = tower->log_fraction(a, n);
  return point(std::move(tower), g, mult);
}

void Divisor::add_point(const Frac& g0, i64 mult) {
  Frac g = make_frac(static_cast<i64>(g0.a), g0.b);
  if (g.b % tower_->p() == 0) throw MathError("divisor point e(" + g.str() + ") is not a prime-to-p root of unity");
  if (mult == 0) return;
  i64& m = s_[g];
  m += mult;
  if (m == 0) s_.erase(g);
}

i64 Divisor::degree() const {
  i64 s = 0;
  for (auto& [g, m] : s_) s += m;
  return s;
}

unsigned Divisor::field_level() const {
  u64 l = 1;
  for (auto& [g, m] : s_) l = lcm64(l, tower_->level_for(g));
  return static_cast<unsigned>(l);
}

Divisor operator+(const Divisor& a, const Divisor& b) {
  Divisor out = a;
  for (auto& [g, m] : b.s_) out.add_point(g, m);
  return out;
}

std::string Divisor::str() const {
  if (s_.empty()) return "0";
  std::string out;
  for (auto& [g, m] : s_) {
    if (!out.empty()) out += " + ";
    out += std::to_string(m) + "[e(" + g.str() + ")]";
  }
  return out;
}

Divisor divisor_fn(const Divisor& d, u64 n) {
  if (n == 0) throw MathError("F_n needs n >= 1");
  Divisor out(d.tower_ptr());
  for (auto& [g, m] : d.support()) out.add_point(frac_mul_int(g, n), m);
  return out;
}

Divisor divisor_vn(const Divisor& d, u64 n) {
  if (n == 0) throw MathError("V_n needs n >= 1");
  u64 p = d.tower().p();
  u64 pk = 1, m = n;
  while (m % p == 0) m /= p, pk *= p;
  Divisor out(d.tower_ptr());
  for (auto& [g, mult] : d.support()) {
    // unique p^k-th root: g * (p^k)^{-1} mod 1
    Frac r = g;
    if (g.b > 1) r = make_frac(static_cast<i64>(mulmod(g.a, static_cast<u64>(invmod(static_cast<i64>(pk % g.b), static_cast<i64>(g.b))), g.b)), g.b);
    for (u64 j = 0; j < m; ++j)
      out.add_point(make_frac(static_cast<i64>(r.a + j * r.b), checked_mul(r.b, m)), mult * static_cast<i64>(pk));
  }
  return out;
}

Divisor divisor_mul(const Divisor& a, const Divisor& b) {
  Divisor out(a.tower_ptr());
  for (auto& [g, m] : a.support())
    for (auto& [h, n] : b.support()) out.add_point(frac_add(g, h), m * n);
  return out;
}

namespace {
std::vector<FpPoly> poly_mul(const std::vector<FpPoly>& a, const std::vector<FpPoly>& b, const GaloisFieldRing& F) {
  std::vector<FpPoly> c(a.size() + b.size() - 1, F.zero());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  return c;
}
}  // namespace

DivisorLRatio divisor_L_ratio(const Divisor& d, unsigned level) {
  unsigned need = d.field_level();
  if (level == 0) level = need;
  if (level % need) throw MathError("L-map: level " + std::to_string(level) + " does not contain the support");
  const auto& F = d.tower().level(level);
  DivisorLRatio r;
  r.level = level;
  r.num = {F.one()};
  r.den = {F.one()};
  for (auto& [g, m] : d.support()) {
    std::vector<FpPoly> lin{F.one(), F.neg(d.tower().root_of_unity(g, level))};
    auto& side = m > 0 ? r.den : r.num;
    for (i64 i = 0; i < (m > 0 ? m : -m); ++i) side = poly_mul(side, lin, F);
  }
  return r;
}

LambdaSeries<GaloisFieldRing> divisor_L_series(const Divisor& d, u64 T, unsigned level) {
  auto r = divisor_L_ratio(d, level);
  const auto& F = d.tower().level(r.level);
  // num / den with den(0) = 1
  std::vector<FpPoly> q(T + 1, F.zero());
  for (u64 n = 0; n <= T; ++n) {
    FpPoly acc = n < r.num.size() ? r.num[n] : F.zero();
    for (u64 k = 1; k <= n && k < r.den.size(); ++k) acc = F.sub(acc, F.mul(r.den[k], q[n - k]));
    q[n] = acc;
  }
  return LambdaSeries<GaloisFieldRing>(F, std::vector<FpPoly>(q.begin() + 1, q.end()));
}

}  // namespace wl
