#include <doctest.h>

#include "wittlab/serialize.hpp"
#include "wittlab/witt.hpp"

#include <cstdlib>
#include <filesystem>
#include <random>
#include <set>
#include <thread>

using namespace wl;

namespace {

Rat frac(long a, long b) {
  Rat r(a, b);
  r.canonicalize();
  return r;
}

std::mt19937_64 rng_for(u64 salt) { return std::mt19937_64(kDefaultSeed + salt); }

template <class R, class G>
WittVector<R> random_witt(const R& ring, const TruncationSet& t, G&& gen) {
  std::vector<typename R::Elem> c;
  for (size_t i = 0; i < t.size(); ++i) c.push_back(gen());
  return WittVector<R>(ring, t, std::move(c));
}

ZPolyRing symbolic(const std::string& stem, u64 n) { return ZPolyRing(indexed_vars(stem, n, 1)); }

ZPoly parse_z(const ZPolyRing& R, const std::string& s) { return R.parse(s); }

// log-derivative t f'/f via the power series of log over Q (test-side oracle)
std::vector<Rat> log_derivative_oracle(const std::vector<Rat>& a) {
  size_t T = a.size();
  std::vector<Rat> u(a), upow(a), logf(T, 0);
  for (size_t k = 1; k <= T; ++k) {
    Rat c = Rat(k % 2 ? 1 : -1, static_cast<long>(k));
    for (size_t i = 0; i < T; ++i) logf[i] += c * upow[i];
    std::vector<Rat> next(T, 0);
    for (size_t i = 1; i <= T; ++i)
      for (size_t j = 1; i + j <= T; ++j) next[i + j - 1] += upow[i - 1] * u[j - 1];
    upow = next;
  }
  for (size_t i = 0; i < T; ++i) logf[i] *= Rat(static_cast<long>(i + 1));
  return logf;
}

// exp(sum_k t^{p^k}/p^k) to degree T (test-side oracle)
std::vector<Rat> artin_hasse_series_oracle(u64 p, size_t T) {
  std::vector<Rat> g(T, 0);
  for (u64 q = 1; q <= T; q *= p) g[q - 1] = Rat(1, static_cast<long>(q));
  std::vector<Rat> e(T + 1, 0), gp(T + 1, 0), out(T + 1, 0);
  out[0] = 1;
  gp[0] = 1;
  Rat fact = 1;
  for (size_t k = 1; k <= T; ++k) {
    std::vector<Rat> next(T + 1, 0);
    for (size_t i = 0; i <= T; ++i)
      for (size_t j = 1; i + j <= T; ++j) next[i + j] += gp[i] * g[j - 1];
    gp = next;
    fact *= Rat(static_cast<long>(k));
    for (size_t i = 0; i <= T; ++i) out[i] += gp[i] / fact;
  }
  return std::vector<Rat>(out.begin() + 1, out.end());
}

}  // namespace

TEST_CASE("truncation sets") {
  CHECK(TruncationSet::range(6).elements() == std::vector<u64>{1, 2, 3, 4, 5, 6});
  CHECK(TruncationSet::p_typical(3, 4).elements() == std::vector<u64>{1, 3, 9, 27});
  CHECK(TruncationSet({1, 2, 3, 6}).quotient(2).elements() == std::vector<u64>{1, 3});
  CHECK(TruncationSet::range(12).quotient(5).elements() == std::vector<u64>{1, 2});
  CHECK_THROWS_AS(TruncationSet({1, 6}), MathError);
  CHECK_THROWS_AS(TruncationSet({2}), MathError);
  CHECK(TruncationSet::p_typical(2, 3).is_p_typical(2));
  CHECK_FALSE(TruncationSet::range(3).is_p_typical(2));
}

TEST_CASE("ghost components") {
  auto R = symbolic("x", 4);
  auto x = WittVector<ZPolyRing>(R, TruncationSet::range(4), {R.var("x1"), R.var("x2"), R.var("x3"), R.var("x4")});
  CHECK(ghost(x, 1) == R.var("x1"));
  CHECK(ghost(x, 2) == parse_z(R, "x1^2 + 2*x2"));
  CHECK(ghost(x, 4) == parse_z(R, "x1^4 + 2*x2^2 + 4*x4"));
  CHECK_THROWS_AS(ghost(x, 5), MathError);

  auto A = symbolic("a", 3);
  LambdaSeries<ZPolyRing> f(A, {A.var("a1"), A.var("a2"), A.var("a3")});
  auto w = lambda_ghost(f);
  CHECK(w[0] == A.var("a1"));
  CHECK(w[1] == parse_z(A, "-a1^2 + 2*a2"));
  CHECK(w[2] == parse_z(A, "a1^3 - 3*a1*a2 + 3*a3"));
}

TEST_CASE("star product golden cubic") {
  ZPolyRing R(std::vector<std::string>{"a1", "a2", "a3", "b1", "b2", "b3"});
  LambdaSeries<ZPolyRing> f(R, {R.var("a1"), R.var("a2"), R.var("a3")});
  LambdaSeries<ZPolyRing> g(R, {R.var("b1"), R.var("b2"), R.var("b3")});
  auto t1 = parse_z(R, "a1*b1");
  auto t2 = parse_z(R, "a1^2*b1^2 - a2*b1^2 - a1^2*b2 + 2*a2*b2");
  auto t3 = parse_z(R,
                    "a1^3*b1^3 - 2*a1*a2*b1^3 + a3*b1^3 - 2*a1^3*b1*b2 + 5*a1*a2*b1*b2 - 3*a3*b1*b2 + a1^3*b3 - "
                    "3*a1*a2*b3 + 3*a3*b3");
  for (Route r : {Route::Ghost, Route::Universal}) {
    auto h = lambda_star(f, g, r);
    CHECK(h.coeff(1) == t1);
    CHECK(h.coeff(2) == t2);
    CHECK(h.coeff(3) == t3);
  }
}

TEST_CASE("Frobenius F_3 golden components") {
  auto R = symbolic("x", 15);
  std::vector<ZPoly> c;
  for (u64 i = 1; i <= 15; ++i) c.push_back(R.var("x" + std::to_string(i)));
  WittVector<ZPolyRing> x(R, TruncationSet::range(15), c);
  std::vector<std::string> golden = {
      "x1^3 + 3*x3",
      "x2^3 - 3*x1^3*x3 - 3*x3^2 + 3*x6",
      "-3*x1^6*x3 - 9*x1^3*x3^2 - 8*x3^3 + 3*x9",
      "-3*x1^9*x3 + 3*x1^3*x2^3*x3 - 18*x1^6*x3^2 + 3*x2^3*x3^2 - 36*x1^3*x3^3 - 24*x3^4 + x4^3 - 3*x2^3*x6 + "
      "9*x1^3*x3*x6 + 9*x3^2*x6 - 3*x6^2 + 3*x12",
      "-3*x1^12*x3 - 18*x1^9*x3^2 - 54*x1^6*x3^3 - 81*x1^3*x3^4 - 48*x3^5 + x5^3 + 3*x15",
  };
  for (Route r : {Route::Ghost, Route::Universal}) {
    auto F = frobenius(x, 3, nullptr, r);
    REQUIRE(F.trunc() == TruncationSet::range(5));
    for (u64 m = 1; m <= 5; ++m) CHECK(F.at(m) == parse_z(R, golden[m - 1]));
  }
}

TEST_CASE("witt add/mul basics over Q and Z") {
  RationalRing Q;
  auto t = TruncationSet::range(10);
  auto g = rng_for(1);
  auto rq = [&] { return frac(static_cast<long>(g() % 11) - 5, static_cast<long>(g() % 4) + 1); };
  for (int it = 0; it < 20; ++it) {
    auto x = random_witt(Q, t, rq), y = random_witt(Q, t, rq);
    CHECK(witt_add(x, WittVector<RationalRing>::zero(Q, t)).equals(x));
    CHECK(witt_mul(x, WittVector<RationalRing>::one(Q, t)).equals(x));
    CHECK(witt_add(x, witt_neg(x)).is_zero());
    auto s = witt_add(x, y), p = witt_mul(x, y);
    for (u64 n : t.elements()) {
      CHECK(ghost(s, n) == ghost(x, n) + ghost(y, n));
      CHECK(ghost(p, n) == ghost(x, n) * ghost(y, n));
    }
  }
  CHECK_THROWS_AS(witt_add(WittVector<RationalRing>::zero(Q, t), WittVector<RationalRing>::zero(Q, TruncationSet::range(4))),
                  MathError);
  PrimeFieldRing F3(3);
  auto z = WittVector<PrimeFieldRing>::zero(F3, t);
  CHECK_THROWS_AS(witt_add(z, z, Route::Ghost), MathError);
}

TEST_CASE("universal and ghost routes agree over Z") {
  IntegerRing Z;
  auto t = TruncationSet::range(10);
  auto g = rng_for(2);
  auto ri = [&] { return Int(static_cast<long>(g() % 13) - 6); };
  for (int it = 0; it < 15; ++it) {
    auto x = random_witt(Z, t, ri), y = random_witt(Z, t, ri);
    CHECK(witt_add(x, y, Route::Ghost).equals(witt_add(x, y, Route::Universal)));
    CHECK(witt_mul(x, y, Route::Ghost).equals(witt_mul(x, y, Route::Universal)));
    CHECK(witt_neg(x, Route::Ghost).equals(witt_neg(x, Route::Universal)));
    for (u64 n : {2, 3, 5})
      CHECK(frobenius(x, n, nullptr, Route::Ghost).equals(frobenius(x, n, nullptr, Route::Universal)));
  }
}

TEST_CASE("negation and the p = 2 exception") {
  auto g = rng_for(3);
  PrimeFieldRing F3(3), F2(2);
  auto t3 = TruncationSet::p_typical(3, 3);
  for (int it = 0; it < 20; ++it) {
    auto x = random_witt(F3, t3, [&] { return Fp(static_cast<i64>(g() % 3), 3); });
    CHECK(componentwise_negation_valid(x));
    auto n = witt_neg_componentwise(x);
    CHECK(n.equals(witt_neg(x, Route::Universal)));
    CHECK(witt_add(x, n).is_zero());
  }
  auto t2 = TruncationSet::p_typical(2, 3);
  WittVector<PrimeFieldRing> one(F2, t2, {Fp(1, 2), Fp(0, 2), Fp(0, 2)});
  CHECK_FALSE(componentwise_negation_valid(one));
  CHECK_FALSE(witt_add(one, witt_neg_componentwise(one)).is_zero());
  CHECK(witt_add(one, witt_neg(one)).is_zero());
  for (int it = 0; it < 20; ++it) {
    auto x = random_witt(F2, t2, [&] { return Fp(static_cast<i64>(g() % 2), 2); });
    CHECK(witt_add(x, witt_neg(x)).is_zero());
  }
  // big Witt vectors over F_3 are not negated componentwise
  auto t = TruncationSet::range(6);
  auto x = WittVector<PrimeFieldRing>::one(F3, t);
  CHECK_FALSE(componentwise_negation_valid(x));
  CHECK(witt_add(x, witt_neg(x)).is_zero());
}

namespace {

template <class R, class G>
void rabi_suite(const R& ring, G&& gen, int cases) {
  auto N = TruncationSet::range(12);
  auto g = rng_for(99);
  for (int it = 0; it < cases; ++it) {
    u64 n = 1 + g() % 6;
    auto Nn = N.quotient(n);
    auto x = random_witt(ring, N, gen), xs = random_witt(ring, Nn, gen), ys = random_witt(ring, Nn, gen);
    // (1)
    CHECK(frobenius(verschiebung(xs, n, N), n).equals(witt_scale(xs, n)));
    // (2)
    CHECK(verschiebung(witt_mul(frobenius(x, n), ys), n, N).equals(witt_mul(x, verschiebung(ys, n, N))));
    // (3)
    for (u64 m = 1; m <= 6; ++m) {
      if (gcd64(m, n) != 1) continue;
      auto lhs = verschiebung(frobenius(x, n), m, Nn);
      auto rhs = frobenius(verschiebung(x.restrict_to(N.quotient(m)), m, N), n);
      CHECK(lhs.equals(rhs));
    }
    // (4)
    CHECK(witt_mul(verschiebung(xs, n, N), verschiebung(ys, n, N)).equals(witt_scale(verschiebung(witt_mul(xs, ys), n, N), n)));
    // composition of Frobenius and Verschiebung
    u64 m = 1 + g() % 3;
    if (n * m <= 12) {
      CHECK(frobenius(frobenius(x, m), n).equals(frobenius(x, n * m)));
      CHECK(frobenius(frobenius(x, n), m).equals(frobenius(x, n * m)));
      auto z = random_witt(ring, N.quotient(n * m), gen);
      CHECK(verschiebung(verschiebung(z, m, Nn), n, N).equals(verschiebung(z, n * m, N)));
    }
    // ghost map is a ring homomorphism
    auto y = random_witt(ring, N, gen);
    auto s = witt_add(x, y), p = witt_mul(x, y);
    for (u64 k : N.elements()) {
      CHECK(ring.equal(ghost(s, k), ring.add(ghost(x, k), ghost(y, k))));
      CHECK(ring.equal(ghost(p, k), ring.mul(ghost(x, k), ghost(y, k))));
    }
  }
}

}  // namespace

TEST_CASE("Frobenius/Verschiebung identities over Z") {
  IntegerRing Z;
  auto g = rng_for(4);
  rabi_suite(Z, [&] { return Int(static_cast<long>(g() % 7) - 3); }, 25);
}

TEST_CASE("Frobenius/Verschiebung identities over F_p") {
  for (u64 p : {2, 3, 5}) {
    PrimeFieldRing F(p);
    auto g = rng_for(10 + p);
    rabi_suite(F, [&] { return Fp(static_cast<i64>(g() % p), p); }, 25);
  }
}

TEST_CASE("Frobenius congruence F_p(x)_m = x_m^p") {
  auto N = TruncationSet::range(25);
  for (u64 p : {2, 3, 5}) {
    PrimeFieldRing F(p);
    auto g = rng_for(20 + p);
    for (int it = 0; it < 5; ++it) {
      auto x = random_witt(F, N, [&] { return Fp(static_cast<i64>(g() % p), p); });
      auto y = frobenius(x, p);
      for (u64 m : y.trunc().elements()) CHECK(y.at(m) == x.at(m).pow(p));
    }
    IntegerRing Z;
    auto x = random_witt(Z, TruncationSet::range(12), [&] { return Int(static_cast<long>(g() % 9) - 4); });
    auto y = frobenius(x, p);
    for (u64 m : y.trunc().elements()) {
      Int d = y.at(m) - ring_pow(Z, x.at(m), p);
      CHECK(mpz_divisible_ui_p(d.get_mpz_t(), p));
    }
  }
}

TEST_CASE("Lambda model") {
  RationalRing Q;
  auto t = TruncationSet::range(16);
  CHECK(lambda_from_witt(WittVector<RationalRing>::zero(Q, t)).equals(LambdaSeries<RationalRing>::one(Q, 16)));
  auto tau = lambda_from_witt(WittVector<RationalRing>::teichmuller(Q, t, Rat(2, 3)));
  for (u64 k = 1; k <= 16; ++k) CHECK(tau.coeff(k) == rat_pow(Rat(2, 3), static_cast<int>(k)));
  // V_n(tau(a)) = (1 - a t^n)^{-1}
  auto v = lambda_from_witt(verschiebung(WittVector<RationalRing>::teichmuller(Q, t.quotient(3), Rat(5)), 3, t));
  for (u64 k = 1; k <= 16; ++k) CHECK(v.coeff(k) == (k % 3 ? Rat(0) : rat_pow(Rat(5), static_cast<int>(k / 3))));

  auto g = rng_for(5);
  auto rq = [&] { return frac(static_cast<long>(g() % 9) - 4, static_cast<long>(g() % 3) + 1); };
  for (int it = 0; it < 10; ++it) {
    auto x = random_witt(Q, t, rq), y = random_witt(Q, t, rq);
    CHECK(witt_from_lambda(lambda_from_witt(x)).equals(x));
    CHECK(lambda_from_witt(witt_add(x, y)).equals(lambda_mul(lambda_from_witt(x), lambda_from_witt(y))));
    CHECK(lambda_from_witt(witt_mul(x, y)).equals(lambda_star(lambda_from_witt(x), lambda_from_witt(y))));
    // Lambda ghost = Witt ghost
    auto w = lambda_ghost(lambda_from_witt(x));
    for (u64 n = 1; n <= 16; ++n) CHECK(w[n - 1] == ghost(x, n));
  }
}

TEST_CASE("star product properties") {
  RationalRing Q;
  auto g = rng_for(6);
  auto rq = [&] { return frac(static_cast<long>(g() % 9) - 4, static_cast<long>(g() % 3) + 1); };
  auto unit = lambda_from_witt(WittVector<RationalRing>::one(Q, TruncationSet::range(12)));
  for (int it = 0; it < 10; ++it) {
    std::vector<Rat> a, b;
    for (int i = 0; i < 12; ++i) a.push_back(rq()), b.push_back(rq());
    LambdaSeries<RationalRing> f(Q, a), h(Q, b);
    CHECK(lambda_star(unit, f).equals(f));
    auto fh = lambda_star(f, h);
    auto wf = log_derivative_oracle(a), wh = log_derivative_oracle(b), wfh = log_derivative_oracle(fh.coeffs());
    for (size_t n = 0; n < 12; ++n) CHECK(wfh[n] == wf[n] * wh[n]);
  }
  // char p route agrees with reduction of the integral product
  PrimeFieldRing F5(5);
  for (int it = 0; it < 5; ++it) {
    std::vector<Int> a, b;
    std::vector<Fp> ar, br;
    for (int i = 0; i < 10; ++i) {
      a.push_back(Int(static_cast<long>(g() % 7) - 3));
      b.push_back(Int(static_cast<long>(g() % 7) - 3));
      ar.push_back(Fp::from_int(a.back(), 5));
      br.push_back(Fp::from_int(b.back(), 5));
    }
    IntegerRing Z;
    auto zs = lambda_star(LambdaSeries<IntegerRing>(Z, a), LambdaSeries<IntegerRing>(Z, b));
    auto fs = lambda_star(LambdaSeries<PrimeFieldRing>(F5, ar), LambdaSeries<PrimeFieldRing>(F5, br));
    for (u64 k = 1; k <= 10; ++k) CHECK(fs.coeff(k) == Fp::from_int(zs.coeff(k), 5));
  }
}

TEST_CASE("Artin-Hasse") {
  auto e2 = artin_hasse(2, 8);
  RationalRing Q;
  auto gh = ghost_vector(e2.witt(Q));
  CHECK(gh == std::vector<Rat>{1, 1, 0, 1, 0, 0, 0, 1});
  CHECK_THROWS_AS(artin_hasse(4, 8), MathError);
  CHECK_THROWS_AS(artin_hasse(2, 0), MathError);
  for (u64 p : {2, 3}) {
    auto E = artin_hasse(p, 20);
    auto x = E.witt(Q);
    CHECK(x.at(1) == 1);
    for (u64 q = p; q <= 20; q *= p) CHECK(x.at(q) == 0);
    for (u64 m = 2; m <= 20; ++m) {
      if (m % p == 0) continue;
      auto F = frobenius(x, m);
      for (u64 q = 1; q <= F.trunc().max(); q *= p) CHECK(F.at(q) == 0);
    }
    auto f = E.series(Q);
    CHECK(f.coeffs() == artin_hasse_series_oracle(p, 20));
    CHECK(lambda_star(f, f).equals(f));
    for (u64 m : {2, 3, 5}) {
      if (m == p) continue;
      CHECK(frobenius(x, m).is_zero());
    }
    // F_{p^k}(E_p) = E_p
    auto Fp_ = frobenius(x, p);
    CHECK(Fp_.equals(x.restrict_to(Fp_.trunc())));
  }
  auto E2 = artin_hasse(2, 18);
  auto F3 = lambda_from_witt(frobenius(E2.witt(Q), 3));
  CHECK(F3.equals(LambdaSeries<RationalRing>::one(Q, 6)));
}

TEST_CASE("Theta decomposition") {
  // F_9 = F_3[T]/(T^2+1)
  GaloisFieldRing F9(FpPoly(3, {1, 0, 1}));
  auto N = TruncationSet::range(36);
  auto y = F9.parse("T + 1");
  auto th = theta_decompose(WittVector<GaloisFieldRing>::teichmuller(F9, N, y), 3, 4, 3);
  CHECK(th.size() == 3);
  for (auto& [n, v] : th) {
    CHECK(v.trunc() == TruncationSet::p_typical(3, 3));
    CHECK(v.equals(WittVector<GaloisFieldRing>::teichmuller(F9, v.trunc(), ring_pow(F9, y, n))));
  }
  for (auto& [n, v] : theta_decompose(WittVector<GaloisFieldRing>::zero(F9, N), 3, 4, 3)) CHECK(v.is_zero());
  CHECK_THROWS_AS(theta_decompose(WittVector<GaloisFieldRing>::zero(F9, N), 3, 5, 3), MathError);
}

TEST_CASE("constant Theta families are Frobenius fixed") {
  // L(lambda) = prod_{m in I(p)} h_lambda(t^m)^{1/m} with h_lambda = prod E_p(lambda_{p^k} t^{p^k})
  for (u64 p : {2, 3}) {
    PrimeFieldRing F(p);
    const u64 T = 30;
    auto E = artin_hasse(p, T);
    auto g = rng_for(40 + p);
    unsigned K = 2;
    std::vector<Fp> lam;
    for (unsigned k = 0; k < K + 1; ++k) lam.push_back(Fp(static_cast<i64>(g() % p), p));
    auto h = LambdaSeries<PrimeFieldRing>::one(F, T);
    u64 q = 1;
    for (unsigned k = 0; k < lam.size(); ++k, q *= p) {
      // E_p(a t^q): coefficient of t^{qj} is e_j a^j
      std::vector<Fp> c(T, Fp(0, p));
      auto Es = E.series(RationalRing());
      for (u64 j = 1; j * q <= T; ++j) c[j * q - 1] = Fp::from_rat(Es.coeff(j), p) * lam[k].pow(j);
      h = lambda_mul(h, LambdaSeries<PrimeFieldRing>(F, c));
    }
    auto L = LambdaSeries<PrimeFieldRing>::one(F, T);
    for (u64 m = 1; m <= T; ++m) {
      if (m % p == 0) continue;
      L = lambda_mul(L, lambda_pow(lambda_substitute_power(h, m), Rat(1, static_cast<long>(m))));
    }
    auto x = witt_from_lambda(L);
    for (u64 k = 2; k <= 5; ++k) {
      if (k % p == 0) continue;
      auto Fk = frobenius(x, k);
      CHECK(Fk.equals(x.restrict_to(Fk.trunc())));
    }
    auto th = theta_decompose(x, p, 5, K);
    for (auto& [n, v] : th)
      for (unsigned k = 0; k < K; ++k) CHECK(v.comps()[k] == lam[k]);
  }
}

TEST_CASE("universal polynomial cache") {
  auto dir = std::filesystem::temp_directory_path() / ("wittlab_cache_test_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  ::setenv("WITTLAB_CACHE_DIR", dir.c_str(), 1);
  clear_universal_memory_cache();
  auto a = universal_poly(UOp::Mul, 6);
  auto f = universal_poly(UOp::Frob, 2, 3);
  CHECK(std::filesystem::exists(dir / "mul_6.json"));
  CHECK(std::filesystem::exists(dir / "frob_3_2.json"));
  clear_universal_memory_cache();
  auto b = universal_poly(UOp::Mul, 6);
  CHECK(*a == *b);
  CHECK(a->to_string() == b->to_string());
  CHECK(universal_poly(UOp::Add, 2)->to_string() == "-x1*y1 + x2 + y2");
  CHECK(*universal_poly(UOp::Frob, 2, 3) == *f);

  // concurrent readers and writers
  clear_universal_memory_cache();
  std::vector<std::thread> th;
  std::vector<std::string> outs(4);
  for (int i = 0; i < 4; ++i) th.emplace_back([&, i] { outs[i] = universal_poly(UOp::Add, 12)->to_string(); });
  for (auto& t : th) t.join();
  for (auto& s : outs) CHECK(s == outs[0]);
  std::filesystem::remove_all(dir);
  ::unsetenv("WITTLAB_CACHE_DIR");

  set_witt_limits({10, 12});
  PrimeFieldRing F2(2);
  auto z = WittVector<PrimeFieldRing>::zero(F2, TruncationSet::range(12));
  CHECK_THROWS_AS(witt_add(z, z), MathError);
  auto pt = WittVector<PrimeFieldRing>::zero(F2, TruncationSet::p_typical(2, 5));
  CHECK(witt_add(pt, pt).is_zero());
  set_witt_limits({});
}

TEST_CASE("witt json round trip") {
  PrimeFieldRing F7(7);
  WittVector<PrimeFieldRing> x(F7, TruncationSet::range(3), {Fp(1, 7), Fp(5, 7), Fp(6, 7)});
  auto j = witt_to_json(x);
  CHECK(j["comps"]["2"] == "5");
  CHECK(j["ring"] == "F_7");
  CHECK(witt_from_json(F7, j).equals(x));
  CHECK_THROWS_AS(witt_from_json(PrimeFieldRing(5), j), MathError);
}

#include "wittlab/divisor.hpp"

TEST_CASE("divisor Frobenius and Verschiebung") {
  auto tw = std::make_shared<const FieldTower>(conway_sequence(2, 12));
  Divisor a = Divisor::point(tw, {1, 5});
  CHECK(divisor_fn(a, 3) == Divisor::point(tw, {3, 5}));
  CHECK(divisor_fn(a, 5) == Divisor::point(tw, {0, 1}));

  // alpha of order 5 in F_16: V_3 gives the three cube roots, multiplicity 1
  auto v = divisor_vn(a, 3);
  CHECK(v.support().size() == 3);
  const auto& F16 = tw->level(4);
  FpPoly alpha = tw->root_of_unity({1, 5}, 4);
  std::set<std::vector<u64>> oracle, got;
  for (u64 idx = 0; idx < 16; ++idx) {
    FpPoly x(2, {idx & 1, (idx >> 1) & 1, (idx >> 2) & 1, (idx >> 3) & 1});
    if (ring_pow(F16, x, 3) == alpha) oracle.insert(x.coeffs());
  }
  for (auto& [g, m] : v.support()) {
    CHECK(m == 1);
    got.insert(tw->root_of_unity(g, 4).coeffs());
  }
  CHECK(got == oracle);
  auto L = divisor_L_series(v, 12, 4);
  for (u64 k = 1; k <= 12; ++k) CHECK(L.coeff(k) == (k % 3 ? F16.zero() : ring_pow(F16, alpha, k / 3)));

  // p = 3, n = 3: unique cube root with multiplicity 3
  auto t3 = std::make_shared<const FieldTower>(conway_sequence(3, 6));
  Divisor b = Divisor::point(t3, {5, 13});
  auto vb = divisor_vn(b, 3);
  REQUIRE(vb.support().size() == 1);
  auto [root, mult] = *vb.support().begin();
  CHECK(mult == 3);
  unsigned lev = t3->level_for(root);
  CHECK(ring_pow(t3->level(lev), t3->root_of_unity(root, lev), 3) == t3->root_of_unity({5, 13}, lev));
  CHECK_THROWS_AS(Divisor::point(t3, {1, 3}), MathError);
}

TEST_CASE("divisor L-map intertwines F_n, V_n and products") {
  auto tw = std::make_shared<const FieldTower>(conway_sequence(2, 12));
  std::vector<Frac> pts = {{1, 3}, {2, 5}, {1, 15}, {0, 1}, {4, 15}, {7, 15}};
  auto g = rng_for(50);
  for (int it = 0; it < 6; ++it) {
    Divisor d(tw), e(tw);
    for (int k = 0; k < 3; ++k) {
      d.add_point(pts[g() % pts.size()], static_cast<i64>(g() % 5) - 2);
      e.add_point(pts[g() % pts.size()], static_cast<i64>(g() % 3) + 1);
    }
    const u64 T = 12;
    auto Ld = divisor_L_series(d, T, 4);
    // V_n on Lambda is t -> t^n
    for (u64 n : {2, 3}) {
      auto lhs = divisor_L_series(divisor_vn(d, n), T, 12);
      auto rhs = lambda_substitute_power(divisor_L_series(d, T, 12), n);
      CHECK(lhs.equals(rhs));
    }
    // F_n through the Witt side
    for (u64 n : {2, 3}) {
      auto x = witt_from_lambda(Ld);
      auto Fx = lambda_from_witt(frobenius(x, n));
      auto Ln = divisor_L_series(divisor_fn(d, n), T / n, 4);
      CHECK(Fx.equals(Ln));
    }
    // products of divisors go to the star product
    auto lhs = divisor_L_series(divisor_mul(d, e), 8, 4);
    auto rhs = lambda_star(divisor_L_series(d, 8, 4), divisor_L_series(e, 8, 4));
    CHECK(lhs.equals(rhs));
    // sums go to series products
    CHECK(divisor_L_series(d + e, 8, 4).equals(lambda_mul(divisor_L_series(d, 8, 4), divisor_L_series(e, 8, 4))));
  }
  // rank-one classes: [a] * [b] = [ab]
  Divisor a = Divisor::point(tw, {1, 3}), b = Divisor::point(tw, {2, 5});
  CHECK(divisor_mul(a, b) == Divisor::point(tw, frac_add({1, 3}, {2, 5})));
  // negative multiplicity lands in the numerator
  auto r = divisor_L_ratio(Divisor::point(tw, {1, 3}, -2));
  CHECK(r.num.size() == 3);
  CHECK(r.den.size() == 1);
}
