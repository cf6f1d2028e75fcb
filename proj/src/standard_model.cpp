#include "wittlab/standard_model.hpp"

#include <algorithm>
#include <set>

namespace wl {

namespace {

u64 eta_conductor(u64 ell, unsigned k) { return ell == 2 ? ipow(2, k + 2) : ipow(ell, k + 1); }

void check_prime_arg(u64 x, const char* what) {
  if (x < 2 || !is_prime(x)) throw MathError(std::string(what) + " = " + std::to_string(x) + " is not prime");
}

u64 reduce_mod(const Rat& c, u64 p) {
  if (c == 0) return 0;
  if (val_p(c, p) < 0) throw MathError("coefficient " + rat_str(c) + " is not p-integral");
  Int P(static_cast<unsigned long>(p));
  Int num = mod_int(c.get_num(), P), den = mod_int(c.get_den(), P);
  return mod_int(num * inv_int(den, P), P).get_ui();
}

FpPoly reduce_poly(const QDense& f, u64 p) {
  std::vector<u64> c;
  for (auto& x : f) c.push_back(reduce_mod(x, p));
  return FpPoly(p, c);
}

void check_support(const QZElement& x, u64 p, bool integral) {
  for (auto& [g, c] : x.support()) {
    if (g.b % p == 0) throw MathError("support point " + g.str() + " is not prime to p");
    if (integral && c.get_den() != 1) throw MathError("coefficient " + rat_str(c) + " is not an integer");
  }
}

}  // namespace

std::vector<u64> delta_group(u64 ell, unsigned e) {
  check_prime_arg(ell, "l");
  if (e == 0) return {0};
  u64 M = ipow(ell, e);
  if (ell == 2) return M <= 2 ? std::vector<u64>{1} : std::vector<u64>{1, M - 1};
  std::vector<u64> out;
  u64 exp = ipow(ell, e - 1);
  for (u64 t = 1; t < ell; ++t) out.push_back(powmod(t, exp, M));
  std::sort(out.begin(), out.end());
  return out;
}

CycloElement delta_trace(u64 ell, const Frac& g) {
  u64 b = g.b;
  unsigned e = 0;
  while (b % ell == 0) b /= ell, ++e;
  if (b != 1) throw MathError(g.str() + " is not l-primary for l = " + std::to_string(ell));
  CycloElement s(g.b);
  for (u64 d : delta_group(ell, std::max(e, 1u))) s += CycloElement::zeta(g.b, static_cast<i64>(mulmod(d % g.b, g.a, g.b)));
  return s;
}

QDense minimal_polynomial(const CycloElement& x) {
  u64 N = x.conductor();
  // product over the distinct Galois conjugates
  std::vector<CycloElement> conj;
  for (u64 c = 1; c <= N; ++c) {
    if (gcd64(static_cast<i64>(c % N), static_cast<i64>(N)) != 1) continue;
    CycloElement y = x.galois(static_cast<i64>(c % N));
    if (std::find(conj.begin(), conj.end(), y) == conj.end()) conj.push_back(y);
  }
  std::vector<CycloElement> f{CycloElement::rational(1, N)};
  for (auto& r : conj) {
    std::vector<CycloElement> g(f.size() + 1, CycloElement(N));
    for (size_t i = 0; i < f.size(); ++i) {
      g[i + 1] += f[i];
      g[i] -= f[i] * r;
    }
    f = std::move(g);
  }
  QDense out;
  for (auto& c : f) out.push_back(c.reduced().to_rational());
  return out;
}

std::string qdense_str(const QDense& f, const std::string& var) {
  std::vector<QPoly::Term> ts;
  for (size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0) ts.push_back({Exps{static_cast<std::uint32_t>(i)}, f[i]});
  return QPoly::from_terms({var}, ts).to_string();
}

Frac eta_arg(u64 ell, unsigned k, u64 i) {
  check_prime_arg(ell, "l");
  u64 N = eta_conductor(ell, k);
  if (ell == 2) {
    if (i != 0) throw MathError("eta_{2,k} takes no index i");
    return make_frac(1, N);
  }
  if (i >= ell) throw MathError("eta index i must be below l");
  return make_frac(static_cast<i64>(1 + i * ipow(ell, k)), N);
}

EtaGenerator eta(u64 ell, unsigned k, u64 i) {
  EtaGenerator g;
  g.ell = ell;
  g.k = k;
  g.i = i;
  g.arg = eta_arg(ell, k, i);
  u64 N = eta_conductor(ell, k);
  g.value = delta_trace(ell, g.arg).lift(N);
  unsigned e = 0;
  for (u64 t = N; t % ell == 0; t /= ell) ++e;
  for (u64 d : delta_group(ell, e))
    if (g.value.galois(static_cast<i64>(d)) != g.value) throw InvariantError("eta is not Delta-invariant");
  g.minpoly = minimal_polynomial(g.value);
  return g;
}

std::string PrimeAbove::str() const {
  std::string s = "ℓ=" + std::to_string(ell) + " p=" + std::to_string(p) + " residues=[";
  for (size_t j = 0; j < residues.size(); ++j) s += (j ? ", " : "") + std::to_string(residues[j]);
  return s + "]";
}

json prime_above_to_json(const PrimeAbove& P) { return json{{"l", P.ell}, {"p", P.p}, {"residues", P.residues}}; }

std::vector<PrimeAbove> primes_above(u64 ell, u64 p) {
  check_prime_arg(ell, "l");
  check_prime_arg(p, "p");
  if (ell == p) throw MathError("primes_above needs p != l");
  u64 u = u_exponent(p, ell);
  u64 width = ell == 2 ? 1 : ell;
  if (u == 0) return {{ell, p, {}}};

  // Each irreducible factor g of Phi_N mod p gives a hom Z[zeta_N] -> F_p[x]/(g);
  // on B_u its values are constants, and several factors give the same prime.
  u64 N = eta_conductor(ell, static_cast<unsigned>(u));
  std::vector<u64> phi;
  for (auto& c : cyclotomic_coeffs(N)) phi.push_back(mod_int(c, Int(static_cast<unsigned long>(p))).get_ui());
  std::vector<FpPoly> factors;
  for (auto& [g, mult] : factor_mod_p(FpPoly(p, phi))) factors.push_back(g);

  FpPoly X = FpPoly::x(p);
  std::vector<std::vector<u64>> tuples(factors.size());
  for (unsigned k = 1; k <= u; ++k) {
    FpPoly f = reduce_poly(eta(ell, k, 0).minpoly, p);
    // the F_p-roots: gcd with X^p - X; every irreducible factor must be linear
    FpPoly split = gcd(f, powmod(X, Int(static_cast<unsigned long>(p)), f) - X);
    int rad = 0;
    for (auto& [h, mult] : factor_mod_p(f)) rad += h.degree();
    if (split.degree() != rad) throw InvariantError("non-split factor at level " + std::to_string(k) + " for l = " + std::to_string(ell) + ", p = " + std::to_string(p));
    std::vector<u64> roots = roots_mod_p(split);
    for (u64 i = 0; i < width; ++i) {
      Frac arg = eta_arg(ell, k, i);
      unsigned e = 0;
      for (u64 t = arg.b; t % ell == 0; t /= ell) ++e;
      std::vector<u64> delta = delta_group(ell, e);
      for (size_t fi = 0; fi < factors.size(); ++fi) {
        const FpPoly& g = factors[fi];
        FpPoly s(p);
        for (u64 d : delta) s = s + powmod(X, Int(static_cast<unsigned long>(mulmod(d % arg.b, arg.a, arg.b) * (N / arg.b))), g);
        s = s % g;
        if (s.degree() > 0) throw InvariantError("eta is not in F_p modulo a prime above p at level " + std::to_string(k));
        if (std::find(roots.begin(), roots.end(), s[0]) == roots.end()) throw InvariantError("residue is not a root of the reduced minimal polynomial");
        tuples[fi].push_back(s[0]);
      }
    }
    std::set<std::vector<u64>> level(tuples.begin(), tuples.end());
    if (level.size() != ipow(ell, k))
      throw InvariantError("found " + std::to_string(level.size()) + " primes above " + std::to_string(p) + " at level " + std::to_string(k) + ", expected " + std::to_string(ipow(ell, k)));
  }
  std::set<std::vector<u64>> distinct(tuples.begin(), tuples.end());
  std::vector<PrimeAbove> out;
  for (auto& t : distinct) out.push_back({ell, p, t});
  return out;
}

std::string ValuationResult::str() const { return (lower_bound ? ">= " : "") + rat_str(value); }

ValuationResult val_inertia(const QZElement& x, const ConwaySequence& seq, u64 p, int cap) {
  check_prime_arg(p, "p");
  if (seq.p != p) throw MathError("Conway sequence is for a different prime");
  check_support(x, p, true);
  if (x.is_zero()) return {Rat(cap), true, cap};
  std::vector<u64> dens;
  for (auto& [g, c] : x.support()) dens.push_back(g.b);
  u64 d = SigmaSpec::residue_degree(p, dens);
  SigmaSpec spec{p, seq, {}};
  int K = std::min(8, cap);
  while (true) {
    UnramCtx ctx = spec.context(d, K);
    UnramifiedElement s = UnramifiedElement::zero(ctx);
    for (auto& [g, c] : x.support()) s = s + UnramifiedElement::from_int(ctx, c.get_num()) * rho_root(ctx, spec, g);
    if (!s.is_zero()) return {Rat(s.val()), false, K};
    if (K >= cap) return {Rat(cap), true, K};
    K = std::min(2 * K, cap);
  }
}

std::optional<Rat> val_ramified(const std::vector<std::optional<Rat>>& vals, u64 n, u64 p) {
  check_prime_arg(p, "p");
  u64 t = n;
  while (t % p == 0) t /= p;
  if (t != 1 || n == 1) throw MathError("level n = " + std::to_string(n) + " is not a positive power of p");
  u64 phi = totient(n);
  if (vals.size() > phi) throw MathError("more than phi(n) coordinates");
  std::optional<Rat> best;
  for (size_t j = 0; j < vals.size(); ++j) {
    if (!vals[j]) continue;
    Rat v = *vals[j] + Rat(static_cast<long>(j), static_cast<long>(phi));
    v.canonicalize();
    if (!best || v < *best) best = v;
  }
  return best;
}

std::optional<Rat> val_ramified_coords(const std::vector<Rat>& coords, u64 n, u64 p) {
  std::vector<std::optional<Rat>> v;
  for (auto& c : coords) v.push_back(c == 0 ? std::nullopt : std::optional<Rat>(Rat(val_p(c, p))));
  return val_ramified(v, n, p);
}

std::vector<Rat> pi_power_coords(unsigned k, u64 n) {
  // Phi_n(X + 1)
  const auto& phi = cyclotomic_coeffs(n);
  QDense F{Rat(0)};
  QDense shift{Rat(1)};
  for (size_t i = 0; i < phi.size(); ++i) {
    QDense term = shift;
    for (auto& c : term) c *= Rat(phi[i]);
    F = qd_add(F, term);
    shift = qd_mul(shift, QDense{Rat(1), Rat(1)});
  }
  QDense xk(k + 1, Rat(0));
  xk[k] = 1;
  QDense r = qd_divmod(xk, F).second;
  r.resize(F.size() - 1, Rat(0));
  return r;
}

u64 residue_map(const ConwaySequence& seq, const QZElement& x) {
  u64 p = seq.p;
  check_prime_arg(p, "p");
  check_support(x, p, false);
  if (frobenius_qz(x, p) != x) throw MathError("element is not a sum of full Frobenius orbits");
  if (x.is_zero()) return 0;
  std::vector<u64> dens;
  for (auto& [g, c] : x.support()) dens.push_back(g.b);
  unsigned d = static_cast<unsigned>(SigmaSpec::residue_degree(p, dens));
  FieldTower tower(extend_sequence(seq, d));
  const GaloisFieldRing& F = tower.level(d);
  FpPoly s = F.zero();
  for (auto& [g, c] : x.support()) s = F.add(s, tower.root_of_unity(g, d).scaled(reduce_mod(c, p)));
  if (s.degree() > 0) throw InvariantError("Frobenius-stable sum left F_p");
  return s[0];
}

}  // namespace wl
