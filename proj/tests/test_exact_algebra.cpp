#include <doctest.h>

#include "wittlab/cyclotomic.hpp"
#include "wittlab/fp_poly.hpp"
#include "wittlab/padic.hpp"
#include "wittlab/sparse_poly.hpp"
#include "wittlab/unramified.hpp"

#include <random>

using namespace wl;

namespace {

std::mt19937_64 rng(12345);

i64 rnd(i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng); }

// schoolbook long division of integer polynomials, divisor monic
std::vector<Int> long_div(std::vector<Int> a, const std::vector<Int>& b) {
  std::vector<Int> q(a.size() - b.size() + 1, 0);
  for (size_t i = a.size(); i-- >= b.size();) {
    q[i - b.size() + 1] = a[i];
    for (size_t j = 0; j < b.size(); ++j) a[i - b.size() + 1 + j] -= q[i - b.size() + 1] * b[j];
    if (i == b.size() - 1) break;
  }
  return q;
}

FpPoly random_poly(u64 p, int deg) {
  std::vector<u64> c(deg + 1);
  for (auto& x : c) x = static_cast<u64>(rnd(0, static_cast<i64>(p) - 1));
  c[deg] = static_cast<u64>(rnd(1, static_cast<i64>(p) - 1));
  return FpPoly(p, c);
}

// irreducible iff no monic factor of degree <= n/2, by exhaustion
bool brute_irreducible(const FpPoly& f) {
  u64 p = f.p();
  int n = f.degree();
  for (int d = 1; 2 * d <= n; ++d) {
    u64 count = ipow(p, d);
    for (u64 code = 0; code < count; ++code) {
      std::vector<u64> c(d + 1);
      u64 t = code;
      for (int i = 0; i < d; ++i) c[i] = t % p, t /= p;
      c[d] = 1;
      if ((f % FpPoly(p, c)).is_zero()) return false;
    }
  }
  return n >= 1;
}

ZPoly zparse(const std::string& s, std::vector<std::string> vars) {
  return ZPoly::parse(s, vars, [](const std::string& t) { return Int(t); });
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1).to_string() == "x - 1");
  // x^4 - 1 divided by (x - 1)(x + 1)
  auto q4 = long_div(long_div({-1, 0, 0, 0, 1}, {-1, 1}), {1, 1});
  CHECK(cyclotomic_coeffs(4) == q4);
  CHECK(cyclotomic_poly(4).to_string() == "x^2 + 1");
  auto q6 = long_div(long_div(long_div({-1, 0, 0, 0, 0, 0, 1}, {-1, 1}), {1, 1}), {1, 1, 1});
  CHECK(cyclotomic_coeffs(6) == q6);
  CHECK(cyclotomic_poly(6).to_string() == "x^2 - x + 1");
  for (u64 n = 1; n <= 60; ++n) CHECK(cyclotomic_poly(n).total_degree() == totient(n));
}

TEST_CASE("factor_mod_p golden cases") {
  auto f = factor_mod_p(FpPoly(3, {2, 0, 1}));  // x^2 - 1
  REQUIRE(f.size() == 2);
  CHECK(f[0].first == FpPoly(3, {1, 1}));
  CHECK(f[1].first == FpPoly(3, {2, 1}));
  auto g = factor_mod_p(FpPoly(2, {1, 1, 1}));
  REQUIRE(g.size() == 1);
  CHECK(g[0].first == FpPoly(2, {1, 1, 1}));
  // Phi_7 over F_2 against all irreducible cubics dividing it
  FpPoly phi7(2, std::vector<u64>(7, 1));
  std::vector<FpPoly> expect;
  for (u64 code = 0; code < 8; ++code) {
    FpPoly c(2, {code & 1, (code >> 1) & 1, (code >> 2) & 1, 1});
    if (c.eval(0) && c.eval(1) && (phi7 % c).is_zero()) expect.push_back(c);
  }
  auto h = factor_mod_p(phi7);
  REQUIRE(h.size() == expect.size());
  for (size_t i = 0; i < h.size(); ++i) CHECK(h[i].first == expect[i]);
  CHECK(h[0].first.str() == "T^3 + T + 1");
  CHECK(h[1].first.str() == "T^3 + T^2 + 1");
  CHECK_THROWS(factor_mod_p(FpPoly(5)));
}

TEST_CASE("factor_mod_p random reconstitution") {
  for (u64 p : {2, 3, 5, 7}) {
    for (int trial = 0; trial < 25; ++trial) {
      FpPoly a = random_poly(p, static_cast<int>(rnd(1, 5)));
      FpPoly b = random_poly(p, static_cast<int>(rnd(1, 4)));
      FpPoly f = a * b * b;
      auto fs = factor_mod_p(f);
      FpPoly prod = FpPoly::constant(p, 1);
      for (auto& [g, m] : fs) {
        CHECK(brute_irreducible(g));
        CHECK(is_irreducible(g));
        for (int i = 0; i < m; ++i) prod = prod * g;
      }
      CHECK(prod == f.monic());
    }
  }
}

TEST_CASE("Phi_{p^n-1} splits into the primitive irreducibles of degree n") {
  for (u64 p : {2, 3, 5}) {
    for (int n = 1; n <= 6; ++n) {
      u64 N = ipow(p, n) - 1;
      if (N > 20000) continue;
      const auto& c = cyclotomic_coeffs(N);
      std::vector<u64> r(c.size());
      for (size_t i = 0; i < c.size(); ++i) r[i] = mpz_fdiv_ui(c[i].get_mpz_t(), p);
      FpPoly phi(p, r);
      auto fs = factor_mod_p(phi);
      CHECK(fs.size() == totient(N) / n);
      for (auto& [g, m] : fs) {
        CHECK(m == 1);
        CHECK(g.degree() == n);
        CHECK(is_primitive(g));
      }
    }
  }
}

TEST_CASE("sparse polynomial ring axioms and text form") {
  std::vector<std::string> v{"x0", "x1", "x2"};
  auto rand_poly = [&] {
    std::vector<ZPoly::Term> ts;
    for (int i = 0; i < 5; ++i)
      ts.push_back({Exps{static_cast<uint32_t>(rnd(0, 3)), static_cast<uint32_t>(rnd(0, 2)), static_cast<uint32_t>(rnd(0, 2))}, Int(static_cast<long>(rnd(-5, 5)))});
    return ZPoly::from_terms(v, ts);
  };
  for (int t = 0; t < 30; ++t) {
    auto a = rand_poly(), b = rand_poly(), c = rand_poly();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
    CHECK(zparse(a.to_string(), v) == a);
  }
  auto f = zparse("x2 + 3*x0*x1 - x0^3*x2 + 1", v);
  CHECK(f.to_string() == "-x0^3*x2 + 3*x0*x1 + x2 + 1");
  CHECK(f.pow(2) == f * f);
}

TEST_CASE("cyclotomic element arithmetic") {
  for (u64 b : {1, 3, 4, 5, 8, 12}) {
    auto z = CycloElement::zeta(b, 1);
    CycloElement acc = CycloElement::rational(1, b);
    for (u64 i = 0; i < b; ++i) acc = acc * z;
    CHECK(acc == CycloElement::rational(1, b));
    // sum of all b-th roots of unity is 0 for b > 1
    CycloElement s(b);
    for (u64 i = 0; i < b; ++i) s += CycloElement::zeta(b, static_cast<i64>(i));
    CHECK(s == CycloElement::rational(b == 1 ? 1 : 0, b));
  }
  auto a = CycloElement::zeta(12, 5) + CycloElement::rational(Rat(1, 3)), b = CycloElement::zeta(4, 1), c = CycloElement::zeta(6, 1);
  CHECK((a * b) * c == a * (b * c));
  CHECK(a * (b + c) == a * b + a * c);
  CHECK(CycloElement::zeta(12, 3) == CycloElement::zeta(4, 1));
  CHECK(CycloElement::zeta(12, 3).str() == "z4");
  CHECK((CycloElement::zeta(8, 1) + CycloElement::zeta(8, -1)).galois(3) == CycloElement::zeta(8, 3) + CycloElement::zeta(8, 5));
}

TEST_CASE("iwasawa log golden values") {
  CHECK(iwasawa_log(PadicNumber::from_int(3, 3, 10)).is_zero());
  CHECK(iwasawa_log(PadicNumber::from_int(-1, 7, 10)).is_zero());
  CHECK(iwasawa_log(PadicNumber::from_int(-1, 2, 10)).is_zero());
  // log(4) = -sum (-3)^n/n, direct rational summation
  Rat s = 0;
  for (int n = 1; n <= 40; ++n) s -= rat_pow(Rat(-3), n) / n;
  Int mod = int_pow(3, 6);
  // the tail beyond n=40 has valuation > 6
  Int num = s.get_num(), den = s.get_den();
  Int expect = mod_int(num * inv_int(den, mod), mod);
  auto lg = iwasawa_log(PadicNumber::from_int(4, 3, 6));
  CHECK(lg.residue(6) == expect);
  CHECK_THROWS(iwasawa_log(PadicNumber::zero(3)));
}

TEST_CASE("exp and log") {
  CHECK(padic_exp(PadicNumber::zero(3, 8)).residue(8) == 1);
  auto e = padic_exp(iwasawa_log(PadicNumber::from_int(4, 3, 12)));
  CHECK(e.residue(e.abs_prec()) == mod_int(4, int_pow(3, e.abs_prec())));
  CHECK(e.abs_prec() >= 11);
  CHECK_THROWS(padic_exp(PadicNumber::from_int(2, 2, 10)));
  for (u64 p : {2, 3, 5}) {
    int lo = p == 2 ? 2 : 1;
    for (int t = 0; t < 10; ++t) {
      auto x1 = PadicNumber::from_int(Int(static_cast<long>(rnd(1, 50))) * int_pow(p, lo), p, 15);
      auto x2 = PadicNumber::from_int(Int(static_cast<long>(rnd(1, 50))) * int_pow(p, lo), p, 15);
      auto l = padic_exp(x1 + x2), r = padic_exp(x1) * padic_exp(x2);
      CHECK(l.equal_mod(r, std::min(l.abs_prec(), r.abs_prec())));
    }
  }
}

TEST_CASE("omega, angle and i_p") {
  auto [w, a] = omega_angle(2, 3, 10);
  CHECK(w.residue(10) == mod_int(-1, int_pow(3, 10)));
  auto [w1, a1] = omega_angle(1, 5, 10);
  CHECK(w1.residue(10) == 1);
  CHECK(a1.residue(10) == 1);
  auto sq = padic_exp(iwasawa_log(PadicNumber::from_int(2, 3, 12)) * PadicNumber::from_int(2, 3, 12));
  CHECK(sq.residue(10) == (a * a).residue(10));
  CHECK((a * a).residue(10) == 4);
  CHECK(i_p(1, 3, 10).is_zero());
  CHECK(i_p(4, 3, 10).residue(10) == 1);
  CHECK(i_p(5, 2, 10).residue(10) == 1);
  // p=2, r=9: quotient of the two log series summed directly
  {
    auto series = [](const Rat& y, int terms) {
      Rat s = 0;
      for (int n = 1; n <= terms; ++n) s += (n % 2 ? 1 : -1) * rat_pow(y, n) / n;
      return s;
    };
    Rat q = series(8, 80) / series(4, 80);
    Int mod = int_pow(2, 10);
    CHECK(i_p(9, 2, 10).residue(10) == mod_int(Int(q.get_num()) * inv_int(q.get_den(), mod), mod));
  }
  for (u64 p : {2, 3, 5, 7}) {
    for (int t = 0; t < 10; ++t) {
      i64 r = rnd(1, 200), s = rnd(1, 200);
      if (r % static_cast<i64>(p) == 0 || s % static_cast<i64>(p) == 0) continue;
      auto lhs = i_p(Rat(r * s), p, 12), rhs = i_p(Rat(r), p, 12) + i_p(Rat(s), p, 12);
      CHECK(lhs.equal_mod(rhs, std::min(lhs.abs_prec(), rhs.abs_prec())));
      auto wr = omega_angle(Rat(r), p, 12).first, ws = omega_angle(Rat(s), p, 12).first, wrs = omega_angle(Rat(r * s), p, 12).first;
      CHECK((wr * ws).residue(12) == wrs.residue(12));
      // log of a root of unity vanishes
      CHECK(iwasawa_log(wr).is_zero());
    }
  }
}

TEST_CASE("teichmuller and hensel lifts") {
  auto ctx7 = UnramifiedContext::make(FpPoly(7, {5, 1}), 2);  // x - 2
  CHECK(ctx7->modulus == std::vector<Int>{Int(49 - 30), 1});
  auto t = teichmuller(FpPoly::constant(7, 2), ctx7);
  CHECK(t.coords(2)[0] == 30);
  CHECK(teichmuller(FpPoly::constant(7, 0), ctx7).is_exact_zero());
  CHECK(teichmuller(FpPoly::constant(7, 1), ctx7).coords(2)[0] == 1);
  CHECK(hensel_lift_modulus(FpPoly(7, {5, 1}), 1) == std::vector<Int>{5, 1});
  // x^2 + x + 1 over F_2: Newton-lift X toward a root of Y^3 - 1 in (Z/8)[X]/(lift)
  auto lift = hensel_lift_modulus(FpPoly(2, {1, 1, 1}), 3);
  CHECK(lift == std::vector<Int>{1, 1, 1});
  {
    Int m = 8;
    std::vector<Int> y{0, 1};
    for (int it = 0; it < 4; ++it) {
      auto y2 = zpoly_mulmod(y, y, lift, m), y3 = zpoly_mulmod(y2, y, lift, m);
      y3[0] -= 1;
      // Newton step y - (y^3-1)/(3y^2); 3y^2 is a unit
      FpPoly res(2, {mpz_fdiv_ui(Int(3 * y2[0]).get_mpz_t(), 2), mpz_fdiv_ui(Int(3 * y2[1]).get_mpz_t(), 2)});
      CHECK(!res.is_zero());
      bool fixed = mod_int(y3[0], m) == 0 && mod_int(y3[1], m) == 0;
      CHECK(fixed);
      if (fixed) break;
    }
  }
  auto ctx = UnramifiedContext::make(FpPoly(3, {2, 2, 1}), 6);  // x^2 + 2x + 2 over F_3
  for (int trial = 0; trial < 20; ++trial) {
    FpPoly a(3, {static_cast<u64>(rnd(0, 2)), static_cast<u64>(rnd(0, 2))}), b(3, {static_cast<u64>(rnd(0, 2)), static_cast<u64>(rnd(0, 2))});
    auto lhs = teichmuller((a * b) % ctx->residue, ctx), rhs = teichmuller(a, ctx) * teichmuller(b, ctx);
    CHECK(lhs.equal_mod(rhs, 6));
  }
  auto X = UnramifiedElement::generator(ctx);
  CHECK(X.pow(8).equal_mod(UnramifiedElement::one(ctx), 6));
}

TEST_CASE("unramified ring axioms and Frobenius") {
  auto ctx = UnramifiedContext::make(FpPoly(5, {2, 0, 1, 1}), 8);  // x^3 + x^2 + 2 over F_5
  REQUIRE(is_irreducible(ctx->residue));
  auto rand_el = [&] {
    std::vector<Int> c(3);
    for (auto& x : c) x = Int(static_cast<long>(rnd(0, 390624)));
    auto e = UnramifiedElement::from_coords(ctx, c, 8);
    return e * UnramifiedElement::from_int(ctx, int_pow(5, static_cast<unsigned>(rnd(0, 1))));
  };
  for (int t = 0; t < 20; ++t) {
    auto a = rand_el(), b = rand_el(), c = rand_el();
    CHECK(((a * b) * c).equal_mod(a * (b * c), 6));
    CHECK((a * (b + c)).equal_mod(a * b + a * c, 6));
    CHECK((a * b).frobenius().equal_mod(a.frobenius() * b.frobenius(), 6));
    CHECK(a.frobenius(3).equal_mod(a, 6));
    CHECK(a.frobenius(-1).frobenius().equal_mod(a, 6));
    if (!b.is_zero()) CHECK(((a / b) * b).equal_mod(a, a.abs_prec() - 2));
  }
  // Frobenius of a Teichmuller lift is its p-th power
  auto t = teichmuller(FpPoly(5, {1, 3, 2}), ctx);
  CHECK(t.frobenius().equal_mod(t.pow(5), 8));
}
