#include <doctest.h>

#include "wittlab/standard_model.hpp"

#include <random>
#include <set>

using namespace wl;

namespace {

Frac fr(i64 a, u64 b) { return make_frac(a, b); }
QDense qd(std::initializer_list<long> c) {
  QDense out;
  for (long x : c) out.push_back(Rat(x));
  return out;
}

// characteristic polynomial of multiplication by x on Q(zeta_N), Faddeev-LeVerrier
QDense charpoly_oracle(const CycloElement& x) {
  u64 N = x.conductor();
  size_t n = totient(N);
  std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n));
  for (size_t j = 0; j < n; ++j) {
    CycloElement col = x * CycloElement::zeta(N, static_cast<i64>(j));
    for (size_t i = 0; i < n; ++i) A[i][j] = col.coords()[i];
  }
  auto mul = [&](const std::vector<std::vector<Rat>>& P, const std::vector<std::vector<Rat>>& Q) {
    std::vector<std::vector<Rat>> R(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k)
        if (P[i][k] != 0)
          for (size_t j = 0; j < n; ++j) R[i][j] += P[i][k] * Q[k][j];
    return R;
  };
  QDense c(n + 1, Rat(0));
  c[n] = 1;
  std::vector<std::vector<Rat>> M(n, std::vector<Rat>(n, Rat(0)));
  for (size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<Rat>> AM = mul(A, M);
    for (size_t i = 0; i < n; ++i) AM[i][i] += c[n - k + 1];
    M = AM;
    std::vector<std::vector<Rat>> AMk = mul(A, M);
    Rat tr = 0;
    for (size_t i = 0; i < n; ++i) tr += AMk[i][i];
    c[n - k] = -tr / Rat(static_cast<long>(k));
  }
  return c;
}

QDense qd_pow(const QDense& f, size_t e) {
  QDense r{Rat(1)};
  for (size_t i = 0; i < e; ++i) r = qd_mul(r, f);
  return r;
}

// residue systems through the Teichmuller embeddings of zeta_N, one per unit c
std::set<std::vector<u64>> primes_oracle(u64 ell, u64 p) {
  u64 u = u_exponent(p, ell);
  std::set<std::vector<u64>> out;
  if (u == 0) return {std::vector<u64>{}};
  u64 N = ell == 2 ? ipow(2, static_cast<unsigned>(u + 2)) : ipow(ell, static_cast<unsigned>(u + 1));
  SigmaSpec spec = SigmaSpec::standard(p);
  UnramCtx ctx = spec.context(mult_order(p % N, N), 2);
  for (u64 c = 1; c < N; ++c) {
    if (c % ell == 0) continue;
    std::vector<u64> res;
    for (unsigned k = 1; k <= u; ++k)
      for (u64 i = 0; i < (ell == 2 ? 1 : ell); ++i) {
        Frac arg = eta_arg(ell, k, i);
        UnramifiedElement s = UnramifiedElement::zero(ctx);
        unsigned lev = 0;
        for (u64 t = arg.b; t % ell == 0; t /= ell) ++lev;
        for (u64 d : delta_group(ell, lev)) s = s + rho_root(ctx, spec, frac_mul_int(arg, d * c % arg.b));
        auto co = s.coords(1);
        for (size_t j = 1; j < co.size(); ++j) REQUIRE(co[j] == 0);
        res.push_back(co[0].get_ui());
      }
    out.insert(res);
  }
  return out;
}

}  // namespace

TEST_CASE("eta generators") {
  EtaGenerator e20 = eta(2, 0);
  CHECK(e20.value.is_zero());
  EtaGenerator e21 = eta(2, 1);
  CHECK(e21.value == CycloElement::zeta(8, 1) + CycloElement::zeta(8, 7));
  CHECK(e21.minpoly == qd({-2, 0, 1}));
  CHECK(qdense_str(e21.minpoly) == "X^2 - 2");
  CHECK(eta(3, 1, 0).value == CycloElement::zeta(9, 1) + CycloElement::zeta(9, 8));
  CHECK(eta(3, 0, 0).value == CycloElement::rational(-1, 3));
  CHECK(eta(3, 0, 2).value == CycloElement::rational(2, 3));
  CHECK(eta(5, 1, 0).arg == fr(1, 25));
  CHECK(eta(5, 1, 2).arg == fr(11, 25));
  CHECK_THROWS_AS(eta(2, 1, 1), MathError);
  CHECK_THROWS_AS(eta(3, 1, 3), MathError);

  for (u64 ell : {2u, 3u})
    for (unsigned k = 0; k <= 3; ++k) {
      EtaGenerator e = eta(ell, k, 0);
      CHECK(e.minpoly.size() - 1 == ipow(ell, k));
      // a root of its own minimal polynomial
      CycloElement s(e.value.conductor());
      for (size_t i = e.minpoly.size(); i-- > 0;) s = s * e.value + CycloElement::rational(e.minpoly[i], e.value.conductor());
      CHECK(s.is_zero());
      for (auto& c : e.minpoly) CHECK(c.get_den() == 1);
    }
  // charpoly = minpoly^[Q(zeta):Q(eta)]
  for (auto [ell, k] : std::vector<std::pair<u64, unsigned>>{{2, 1}, {2, 2}, {3, 1}, {5, 1}, {3, 2}}) {
    EtaGenerator e = eta(ell, k, ell == 2 ? 0 : 1);
    size_t deg = e.minpoly.size() - 1;
    CHECK(charpoly_oracle(e.value) == qd_pow(e.minpoly, totient(e.value.conductor()) / deg));
  }
}

TEST_CASE("delta group") {
  CHECK(delta_group(2, 3) == std::vector<u64>{1, 7});
  CHECK(delta_group(3, 2) == std::vector<u64>{1, 8});
  for (u64 ell : {3u, 5u, 7u})
    for (unsigned e = 1; e <= 3; ++e) {
      auto D = delta_group(ell, e);
      u64 M = ipow(ell, e);
      CHECK(D.size() == ell - 1);
      for (u64 d : D) {
        CHECK(powmod(d, ell - 1, M) == 1);
        for (u64 d2 : D) CHECK(std::find(D.begin(), D.end(), mulmod(d, d2, M)) != D.end());
      }
    }
}

TEST_CASE("primes above p in B_l") {
  auto P = primes_above(2, 7);
  REQUIRE(P.size() == 2);
  CHECK(P[0].residues == std::vector<u64>{3});
  CHECK(P[1].residues == std::vector<u64>{4});
  CHECK(P[0].str() == "ℓ=2 p=7 residues=[3]");
  CHECK(prime_above_to_json(P[1])["residues"][0] == 4);
  auto Q = primes_above(3, 2);
  REQUIRE(Q.size() == 1);
  CHECK(Q[0].residues.empty());
  CHECK(primes_above(2, 3).size() == 1);
  CHECK_THROWS_AS(primes_above(3, 3), MathError);

  const std::vector<u64> primes{2, 3, 5, 7, 11, 13};
  for (u64 ell : primes)
    for (u64 p : primes) {
      if (ell == p) continue;
      u64 u = u_exponent(p, ell);
      auto ps = primes_above(ell, p);
      CHECK(ps.size() == ipow(ell, static_cast<unsigned>(u)));
      std::set<std::vector<u64>> got;
      for (auto& x : ps) {
        CHECK(x.residues.size() == (ell == 2 ? 1 : ell) * u);
        got.insert(x.residues);
      }
      CHECK(got.size() == ps.size());
      CHECK(got == primes_oracle(ell, p));
    }
  // deeper levels: u(31, 2) = 3, u(17, 2) = 2, u(10, 3) has no prime, use u(19, 3) = 1
  for (auto [ell, p] : std::vector<std::pair<u64, u64>>{{2, 17}, {2, 31}, {3, 19}}) {
    auto ps = primes_above(ell, p);
    CHECK(ps.size() == ipow(ell, static_cast<unsigned>(u_exponent(p, ell))));
    std::set<std::vector<u64>> got;
    for (auto& x : ps) got.insert(x.residues);
    CHECK(got == primes_oracle(ell, p));
  }
}

TEST_CASE("valuations on the unramified part") {
  ConwaySequence s2 = conway_sequence(2, 2), s3 = conway_sequence(3, 2);
  CHECK(val_inertia(QZElement::e(Frac{}), s2, 2).value == 0);
  CHECK(val_inertia(QZElement::e(Frac{}, 2), s2, 2).value == 1);
  CHECK(val_inertia(QZElement::e(Frac{}, 9), s3, 3).value == 2);
  auto z = val_inertia(QZElement::e(Frac{}) + QZElement::e(fr(1, 3)) + QZElement::e(fr(2, 3)), s2, 2);
  CHECK(z.lower_bound);
  CHECK(z.value == 64);
  CHECK(z.str() == ">= 64");
  CHECK(val_inertia(QZElement::e(Frac{}) - QZElement::e(fr(1, 3)), s2, 2).value == 0);
  CHECK_THROWS_AS(val_inertia(QZElement::e(fr(1, 2)), s2, 2), MathError);
  CHECK_THROWS_AS(val_inertia(QZElement::e(Frac{}, 1) + QZElement::e(fr(1, 3), 0) + QZElement::constant(Rat(1, 2)), s2, 2), MathError);

  // oracle: strip the common p-power, then reduce in F_{p^d}
  std::mt19937_64 rng(kDefaultSeed);
  for (u64 p : {2u, 3u, 5u}) {
    ConwaySequence seq = conway_sequence(p, 1);
    for (int it = 0; it < 25; ++it) {
      QZElement x;
      u64 b = 1 + rng() % 12;
      while (b % p == 0) b = 1 + rng() % 12;
      long t = static_cast<long>(rng() % 3);
      for (int j = 0; j < 3; ++j) {
        long c = (static_cast<long>(rng() % 7) - 3) * static_cast<long>(ipow(p, static_cast<unsigned>(t)));
        if (c) x.add_term(fr(static_cast<i64>(rng() % b), b), Rat(c));
      }
      if (x.is_zero()) continue;
      unsigned d = static_cast<unsigned>(mult_order(p % b, b));
      FieldTower tower(extend_sequence(seq, d));
      FpPoly s = tower.level(d).zero();
      Int P = ipow(p, static_cast<unsigned>(t));
      for (auto& [g, c] : x.support()) {
        Int n = c.get_num() / P;
        s = s + tower.root_of_unity(g, d).scaled(mod_int(n, Int(static_cast<unsigned long>(p))).get_ui());
      }
      if (s.is_zero()) continue;
      auto v = val_inertia(x, seq, p);
      CHECK(!v.lower_bound);
      CHECK(v.value == t);
    }
  }
}

TEST_CASE("valuations on the ramified part") {
  CHECK(*val_ramified({Rat(0)}, 3, 3) == 0);
  CHECK(*val_ramified({std::nullopt, Rat(0)}, 5, 5) == Rat(1, 4));
  CHECK(*val_ramified({Rat(1), Rat(0)}, 9, 3) == Rat(1, 6));
  CHECK(!val_ramified({std::nullopt, std::nullopt}, 9, 3));
  CHECK_THROWS_AS(val_ramified({Rat(0)}, 6, 3), MathError);
  for (u64 p : {2u, 3u})
    for (unsigned m = 1; m <= 2; ++m) {
      u64 n = ipow(p, m), phi = totient(n);
      // p in the pi-basis via the Eisenstein relation, and every power of pi
      CHECK(*val_ramified_coords(pi_power_coords(static_cast<unsigned>(phi), n), n, p) == 1);
      for (unsigned k = 0; k <= 3 * phi; ++k) {
        Rat expect(static_cast<long>(k), static_cast<long>(phi));
        expect.canonicalize();
        CHECK(*val_ramified_coords(pi_power_coords(k, n), n, p) == expect);
      }
      std::vector<Rat> pc(phi, Rat(0));
      pc[0] = Rat(static_cast<long>(p));
      CHECK(*val_ramified_coords(pc, n, p) == 1);
    }
  CHECK(pi_power_coords(2, 3) == std::vector<Rat>{Rat(-3), Rat(-3)});
}

TEST_CASE("residue map on Frobenius-stable sums") {
  ConwaySequence s2 = conway_sequence(2, 2);
  CHECK(residue_map(s2, QZElement::e(fr(1, 3)) + QZElement::e(fr(2, 3))) == 1);
  CHECK(residue_map(s2, QZElement::e(Frac{})) == 1);
  CHECK_THROWS_AS(residue_map(s2, QZElement::e(fr(1, 3))), MathError);
  for (u64 p : {2u, 3u, 5u}) {
    unsigned top = p == 5 ? 3 : 4;
    ConwaySequence seq = conway_sequence(p, top);
    FieldTower tower(seq);
    SigmaSpec spec{p, seq, {}};
    for (unsigned n = 1; n <= top; ++n)
      for (auto& orb : orbits_at_level(p, n)) {
        QZElement x;
        for (auto& g : orb.elements) x.add_term(g, 1);
        u64 r = residue_map(seq, x);
        CHECK(r == trace_invariant(tower, orb));
        // the Teichmuller lift of the sum lies in Z_p and reduces to the same residue
        UnramCtx ctx = spec.context(n, 2);
        UnramifiedElement s = UnramifiedElement::zero(ctx);
        for (auto& g : orb.elements) s = s + rho_root(ctx, spec, g);
        auto co = s.coords(2);
        for (size_t j = 1; j < co.size(); ++j) CHECK(co[j] == 0);
        CHECK(mod_int(co[0], Int(static_cast<unsigned long>(p))) == r);
      }
  }
}
