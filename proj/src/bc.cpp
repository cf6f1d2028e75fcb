#include "wittlab/bc.hpp"

#include <numeric>
#include <sstream>

namespace wl {

namespace {

u64 split_p(u64 n, u64 p, unsigned& k) {
  k = 0;
  while (n % p == 0) n /= p, ++k;
  return n;
}

Frac frac_of(u64 a, u64 b) { return make_frac(static_cast<i64>(a % b), b); }

}  // namespace

QZElement QZElement::e(const Frac& g, const Rat& c) {
  QZElement x;
  x.add_term(g, c);
  return x;
}

Rat QZElement::coeff(const Frac& g) const {
  auto it = s_.find(g);
  return it == s_.end() ? Rat(0) : it->second;
}

void QZElement::add_term(const Frac& g0, const Rat& c) {
  if (c == 0) return;
  Frac g = frac_of(g0.a, g0.b);
  Rat& r = s_[g];
  r += c;
  r.canonicalize();
  if (r == 0) s_.erase(g);
}

QZElement operator+(const QZElement& a, const QZElement& b) {
  QZElement out = a;
  for (auto& [g, c] : b.s_) out.add_term(g, c);
  return out;
}

QZElement operator-(const QZElement& a, const QZElement& b) { return a + (-b); }

QZElement QZElement::operator-() const {
  QZElement out;
  for (auto& [g, c] : s_) out.s_[g] = -c;
  return out;
}

QZElement operator*(const QZElement& a, const QZElement& b) {
  QZElement out;
  for (auto& [g, c] : a.s_)
    for (auto& [h, d] : b.s_) out.add_term(frac_add(g, h), c * d);
  return out;
}

QZElement operator*(const Rat& c, const QZElement& a) {
  QZElement out;
  if (c == 0) return out;
  for (auto& [g, d] : a.s_) out.add_term(g, c * d);
  return out;
}

std::string QZElement::str() const {
  if (s_.empty()) return "0";
  std::string out;
  for (auto& [g, c] : s_) {
    if (!out.empty()) out += " + ";
    if (c != 1) out += rat_str(c) + "*";
    out += "e(" + g.str() + ")";
  }
  return out;
}

QZElement sigma_n(const QZElement& x, u64 n) {
  if (n == 0) throw MathError("sigma_n needs n >= 1");
  QZElement out;
  for (auto& [g, c] : x.support()) out.add_term(frac_mul_int(g, n), c);
  return out;
}

QZElement rho_tilde_n(const QZElement& x, u64 n) {
  if (n == 0) throw MathError("rho~_n needs n >= 1");
  QZElement out;
  for (auto& [g, c] : x.support()) {
    u64 den = checked_mul(g.b, n);
    // (g + j)/n = (a + j b)/(n b)
    for (u64 j = 0; j < n; ++j) out.add_term(frac_of(g.a + j * g.b, den), c);
  }
  return out;
}

QZElement retraction(const QZElement& x, u64 p) {
  QZElement out;
  for (auto& [g, c] : x.support()) {
    unsigned s;
    u64 b0 = split_p(g.b, p, s);
    if (b0 == 1) {
      out.add_term(Frac{}, c);
      continue;
    }
    // a/(b0 p^s) = x/b0 + y/p^s with x = a (p^s)^{-1} mod b0
    u64 ps = g.b / b0;
    u64 inv = static_cast<u64>(invmod(static_cast<i64>(ps % b0), static_cast<i64>(b0)));
    out.add_term(frac_of(mulmod(g.a % b0, inv, b0), b0), c);
  }
  return out;
}

QZElement r_rho_formula(const Frac& g0, u64 n, u64 p) {
  if (n == 0) throw MathError("r_rho_formula needs n >= 1");
  Frac g = frac_of(g0.a, g0.b);
  if (g.b % p == 0) throw MathError("r_rho_formula: e(" + g.str() + ") is not prime to p");
  unsigned k;
  u64 m = split_p(n, p, k);
  u64 pk = n / m;
  u64 bm = checked_mul(g.b, m);
  // p^k y = a/(bm): y = f/(bm), f = a (p^k)^{-1} mod bm
  u64 f = bm == 1 ? 0 : mulmod(g.a % bm, static_cast<u64>(invmod(static_cast<i64>(pk % bm), static_cast<i64>(bm))), bm);
  QZElement out;
  for (u64 w = 0; w < m; ++w) out.add_term(frac_of(f + w * g.b, bm), Rat(static_cast<unsigned long>(pk)));
  return out;
}

QZElement frobenius_qz(const QZElement& x, u64 p) {
  for (auto& [g, c] : x.support())
    if (g.b % p == 0) throw MathError("fr is only defined on the prime-to-p part, got e(" + g.str() + ")");
  return sigma_n(x, p);
}

BCElement BCElement::scalar(const QZElement& x) {
  BCElement out;
  out.add_term(1, 1, x);
  return out;
}

BCElement BCElement::monomial(u64 a, const QZElement& x, u64 b) {
  if (a == 0 || b == 0) throw MathError("monomial indices must be >= 1");
  u64 g = static_cast<u64>(gcd64(static_cast<i64>(a), static_cast<i64>(b)));
  BCElement out;
  // mu~_g x mu*_g = rho~_g(x)
  out.add_term(a / g, b / g, g == 1 ? x : rho_tilde_n(x, g));
  return out;
}

void BCElement::add_term(u64 a, u64 b, const QZElement& x) {
  if (gcd64(static_cast<i64>(a), static_cast<i64>(b)) != 1) throw MathError("BCElement key (" + std::to_string(a) + "," + std::to_string(b) + ") is not coprime");
  if (x.is_zero()) return;
  auto it = t_.find({a, b});
  if (it == t_.end()) {
    t_.emplace(Key{a, b}, x);
    return;
  }
  it->second = it->second + x;
  if (it->second.is_zero()) t_.erase(it);
}

BCElement operator+(const BCElement& a, const BCElement& b) {
  BCElement out = a;
  for (auto& [k, x] : b.t_) out.add_term(k.first, k.second, x);
  return out;
}

BCElement operator-(const BCElement& a, const BCElement& b) { return a + Rat(-1) * b; }

BCElement operator*(const Rat& c, const BCElement& a) {
  BCElement out;
  for (auto& [k, x] : a.t_) out.add_term(k.first, k.second, c * x);
  return out;
}

std::string BCElement::str() const {
  if (t_.empty()) return "0";
  std::string out;
  for (auto& [k, x] : t_) {
    if (!out.empty()) out += " + ";
    std::string s = "(" + x.str() + ")";
    if (k.first != 1) s = "mu~_" + std::to_string(k.first) + " " + s;
    if (k.second != 1) s += " mu*_" + std::to_string(k.second);
    out += s;
  }
  return out;
}

BCElement bc_mul(const BCElement& x, const BCElement& y) {
  BCElement out;
  for (auto& [k1, X] : x.terms()) {
    auto [n, m] = k1;
    for (auto& [k2, Y] : y.terms()) {
      auto [s, t] = k2;
      u64 u = static_cast<u64>(gcd64(static_cast<i64>(m), static_cast<i64>(s)));
      u64 m1 = m / u, s1 = s / u;
      u64 ns = checked_mul(n, s1), mt = checked_mul(m1, t);
      u64 v = static_cast<u64>(gcd64(static_cast<i64>(ns), static_cast<i64>(mt)));
      QZElement inner = rho_tilde_n(sigma_n(X, s1) * sigma_n(Y, m1), v);
      out.add_term(ns / v, mt / v, Rat(static_cast<unsigned long>(u)) * inner);
    }
  }
  return out;
}

bool jp_membership(const BCElement& x, u64 p) {
  for (auto& [k, c] : x.terms())
    if (!retraction(c, p).is_zero()) return false;
  return true;
}

json qz_to_json(const QZElement& x) {
  json supp = json::array();
  for (auto& [g, c] : x.support()) supp.push_back(json::array({g.str(), rat_str(c)}));
  return json{{"supp", supp}};
}

QZElement qz_from_json(const json& j) {
  QZElement x;
  for (auto& t : j.at("supp")) {
    const json& c = t.at(1);
    Rat r = c.is_string() ? parse_rat(c.get<std::string>()) : Rat(c.get<long>());
    x.add_term(parse_frac(t.at(0).get<std::string>()), r);
  }
  return x;
}

json bc_to_json(const BCElement& x) {
  json terms = json::array();
  for (auto& [k, c] : x.terms()) terms.push_back(json{{"a", k.first}, {"b", k.second}, {"coef", qz_to_json(c)}});
  return json{{"terms", terms}};
}

BCElement bc_from_json(const json& j) {
  BCElement out;
  for (auto& t : j.at("terms")) out = out + BCElement::monomial(t.at("a").get<u64>(), qz_from_json(t.at("coef")), t.at("b").get<u64>());
  return out;
}

SigmaSpec SigmaSpec::standard(u64 p) {
  SigmaSpec s;
  s.p = p;
  s.seq = conway_sequence(p, 1);
  return s;
}

void SigmaSpec::validate() const {
  if (!is_prime(p)) throw MathError("sigma spec: p must be prime");
  if (seq.p != p) throw MathError("sigma spec: sequence prime differs from p");
  for (auto& t : twists) {
    if (!is_prime(t.ell) || t.ell == p) throw MathError("sigma spec: twist modulus must be a prime other than p");
    if (t.k == 0) throw MathError("sigma spec: twist level must be >= 1");
    if (t.unit % t.ell == 0) throw MathError("sigma spec: twist " + std::to_string(t.unit) + " is not a unit mod " + std::to_string(t.ell));
  }
}

Frac SigmaSpec::twist(const Frac& g) const {
  Frac out = g;
  for (auto& t : twists) {
    u64 b0 = g.b, lj = 1;
    while (b0 % t.ell == 0) b0 /= t.ell, lj *= t.ell;
    if (lj == 1) continue;
    // l-primary part of g: (a b0^{-1} mod l^j) / l^j
    u64 x = mulmod(g.a % lj, static_cast<u64>(invmod(static_cast<i64>(b0 % lj), static_cast<i64>(lj))), lj);
    u64 delta = mulmod(x, (t.unit % lj + lj - 1) % lj, lj);
    out = frac_add(out, frac_of(delta, lj));
  }
  return out;
}

u64 SigmaSpec::residue_degree(u64 p, const std::vector<u64>& dens) {
  u64 d = 1;
  for (u64 b : dens) {
    unsigned s;
    u64 b0 = split_p(b, p, s);
    d = static_cast<u64>(lcm64(static_cast<i64>(d), static_cast<i64>(mult_order(p % b0, b0))));
  }
  return d;
}

UnramCtx SigmaSpec::context(u64 d, int K) {
  validate();
  if (!seq.has(static_cast<unsigned>(d))) seq = extend_sequence(seq, static_cast<unsigned>(d));
  return UnramifiedContext::make(seq.at(static_cast<unsigned>(d)), K);
}

RepVector RepVector::zero(const UnramCtx& ctx, u64 M) {
  RepVector v;
  v.p = ctx->p;
  v.M = M;
  v.ctx = ctx;
  return v;
}

RepVector RepVector::basis(const UnramCtx& ctx, u64 M, u64 m, const UnramifiedElement& c) {
  RepVector v = zero(ctx, M);
  v.set(m, c);
  return v;
}

UnramifiedElement RepVector::at(u64 m) const {
  auto it = comps.find(m);
  return it == comps.end() ? UnramifiedElement::zero(ctx) : it->second;
}

void RepVector::set(u64 m, const UnramifiedElement& c) {
  if (m == 0 || m % p == 0) throw MathError("eps_" + std::to_string(m) + ": index must lie in I(" + std::to_string(p) + ")");
  if (c.is_exact_zero()) {
    comps.erase(m);
    return;
  }
  if (m > M) {
    if (!c.is_zero()) throw RepOverflow("index " + std::to_string(m) + " exceeds the bound M = " + std::to_string(M));
    return;
  }
  comps[m] = c;
}

bool RepVector::equal_mod(const RepVector& o, long N) const {
  for (auto& [m, c] : comps)
    if (!c.equal_mod(o.at(m), N)) return false;
  for (auto& [m, c] : o.comps)
    if (!comps.count(m) && !c.equal_mod(UnramifiedElement::zero(ctx), N)) return false;
  return true;
}

std::string RepVector::str() const {
  if (comps.empty()) return "0";
  std::string out;
  for (auto& [m, c] : comps) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")*eps_" + std::to_string(m);
  }
  return out;
}

RepVector rep_add(const RepVector& a, const RepVector& b) {
  RepVector out = a;
  for (auto& [m, c] : b.comps) out.set(m, out.at(m) + c);
  return out;
}

RepVector rep_scale(const UnramifiedElement& c, const RepVector& v) {
  RepVector out = RepVector::zero(v.ctx, v.M);
  for (auto& [m, x] : v.comps) out.set(m, c * x);
  return out;
}

RepVector rep_fr(const RepVector& v, long times) {
  RepVector out = RepVector::zero(v.ctx, v.M);
  for (auto& [m, x] : v.comps) out.set(m, x.frobenius(static_cast<int>(times)));
  return out;
}

RepVector rep_mu(const RepVector& v, u64 n) {
  if (n == 0) throw MathError("mu_n needs n >= 1");
  unsigned k;
  u64 n1 = split_p(n, v.p, k);
  RepVector out = RepVector::zero(v.ctx, v.M);
  for (auto& [m, x] : v.comps) out.set(checked_mul(m, n1), k ? x.frobenius(-static_cast<int>(k)) : x);
  return out;
}

RepVector rep_mu_tilde(const RepVector& v, u64 n) {
  return rep_scale(UnramifiedElement::from_int(v.ctx, Int(static_cast<unsigned long>(n))), rep_mu(v, n));
}

RepVector rep_mu_star(const RepVector& v, u64 n) {
  if (n == 0) throw MathError("mu*_n needs n >= 1");
  unsigned k;
  u64 n1 = split_p(n, v.p, k);
  RepVector out = RepVector::zero(v.ctx, v.M);
  for (auto& [m, x] : v.comps)
    if (m % n1 == 0) out.set(m / n1, k ? x.frobenius(static_cast<int>(k)) : x);
  return out;
}

namespace {

// rho(zeta_g) in the context: X^{a (p^d - 1)/b}, X the Teichmuller class of T_d
UnramifiedElement root_of_unity(const UnramCtx& ctx, const Frac& g) {
  Int N = int_pow(ctx->p, static_cast<unsigned>(ctx->d)) - 1;
  if (N % Int(static_cast<unsigned long>(g.b)) != 0)
    throw MathError("e(" + g.str() + ") needs residue degree " + std::to_string(mult_order(ctx->p % g.b, g.b)) + ", context has degree " + std::to_string(ctx->d));
  Int e = N / Int(static_cast<unsigned long>(g.b)) * Int(static_cast<unsigned long>(g.a));
  return UnramifiedElement::generator(ctx).pow(e);
}

void check_spec(const RepVector& v, const SigmaSpec& spec) {
  if (spec.p != v.p) throw MathError("sigma spec prime differs from the vector's prime");
  spec.validate();
  unsigned d = static_cast<unsigned>(v.ctx->d);
  if (spec.seq.has(d) && !(spec.seq.at(d) == v.ctx->residue)) throw MathError("vector context is not the sequence's level " + std::to_string(d));
  if (!spec.seq.has(d)) throw MathError("sigma spec has no level " + std::to_string(d) + "; build the context through SigmaSpec::context");
}

}  // namespace

UnramifiedElement rho_root(const UnramCtx& ctx, const SigmaSpec& spec, const Frac& g) {
  if (ctx->p != spec.p) throw MathError("sigma spec prime differs from the context prime");
  return root_of_unity(ctx, spec.twist(g));
}

RepVector rep_e(const RepVector& v, const QZElement& x, const SigmaSpec& spec) {
  check_spec(v, spec);
  QZElement rx = retraction(x, v.p);
  std::vector<std::pair<Frac, UnramifiedElement>> terms;
  for (auto& [g, c] : rx.support()) {
    if (val_p(c, v.p) < 0) throw MathError("coefficient " + rat_str(c) + " is not p-integral");
    terms.push_back({spec.twist(g), UnramifiedElement::from_rat(v.ctx, c)});
  }
  RepVector out = RepVector::zero(v.ctx, v.M);
  for (auto& [m, xm] : v.comps) {
    UnramifiedElement s = UnramifiedElement::zero(v.ctx);
    for (auto& [g, c] : terms) s = s + c * root_of_unity(v.ctx, frac_mul_int(g, m));
    out.set(m, s * xm);
  }
  return out;
}

RepVector pi_apply(const BCElement& op, const RepVector& v, const SigmaSpec& spec) {
  RepVector out = RepVector::zero(v.ctx, v.M);
  for (auto& [k, x] : op.terms()) {
    RepVector w = rep_mu_star(v, k.second);
    w = rep_e(w, x, spec);
    w = rep_mu_tilde(w, k.first);
    out = rep_add(out, w);
  }
  return out;
}

bool RelationsReport::ok() const {
  for (auto& r : results)
    if (!r.pass()) return false;
  return !results.empty();
}

namespace {

struct Checker {
  u64 p, bound;
  int K;
  UnramCtx ctx;
  SigmaSpec spec;
  std::mt19937_64 rng;
  u64 D;  // p^d - 1
  std::vector<u64> prime_to_p;  // I(p) up to bound

  UnramifiedElement random_scalar() {
    std::vector<Int> c(ctx->d);
    for (auto& x : c) x = Int(static_cast<unsigned long>(rng() % 1000000)) % ctx->pK;
    return UnramifiedElement::from_coords(ctx, c, K);
  }
  // random element of Z[Q/Z]; prime-to-p denominators divide Dmax, p-parts up to p^2
  QZElement random_x(u64 Dmax, bool p_part = true) {
    std::vector<u64> dv = divisors(Dmax);
    QZElement x;
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < terms; ++i) {
      u64 b = dv[rng() % dv.size()];
      if (p_part) b *= ipow(p, static_cast<unsigned>(rng() % 3));
      x.add_term(frac_of(rng() % b, b), Rat(static_cast<long>(rng() % 7) - 3));
    }
    return x;
  }
  std::vector<u64> admissible_n(u64 j) const {
    // n with prime-to-p part n' dividing D and j n' <= bound; p-parts up to p^2
    std::vector<u64> out;
    for (u64 n1 : divisors(D)) {
      if (checked_mul(n1, j) > bound) continue;
      for (unsigned k = 0; k <= 2; ++k) out.push_back(n1 * ipow(p, k));
    }
    return out;
  }
  RepVector vec(u64 j) { return RepVector::basis(ctx, bound, j, random_scalar()); }
};

RelationResult named(const char* name) {
  RelationResult r;
  r.name = name;
  return r;
}

void record(RelationResult& r, bool ok, const std::string& what) {
  ++r.cases;
  if (!ok && r.failures++ == 0) r.first_failure = what;
}

}  // namespace

RelationsReport relations_check(u64 p, u64 bound, int K, u64 seed) {
  const u64 d = 6;
  Checker C{p, bound, K, nullptr, SigmaSpec::standard(p), std::mt19937_64(seed), 0, {}};
  C.ctx = C.spec.context(d, K);
  C.D = ipow(p, static_cast<unsigned>(d)) - 1;
  for (u64 j = 1; j <= bound; ++j)
    if (j % p) C.prime_to_p.push_back(j);

  RelationsReport rep;
  rep.p = p;
  rep.bound = bound;
  rep.K = K;
  rep.degree = d;
  auto eq = [&](const RepVector& a, const RepVector& b) { return a.equal_mod(b, K); };
  auto pi = [&](const BCElement& x, const RepVector& v) { return pi_apply(x, v, C.spec); };
  auto tag = [](u64 j, u64 n, u64 m = 0) { return "eps_" + std::to_string(j) + " n=" + std::to_string(n) + (m ? " m=" + std::to_string(m) : ""); };

  RelationResult r1 = named("mu~_n x mu*_n = rho~_n(x)"), r2 = named("mu*_n x = sigma_n(x) mu*_n"), r3 = named("x mu~_n = mu~_n sigma_n(x)");
  RelationResult r4 = named("mu~_nm = mu~_n mu~_m"), r5 = named("mu*_nm = mu*_n mu*_m"), r6 = named("mu*_n mu~_n = n"), r7 = named("mu~_n mu*_m = mu*_m mu~_n, (n,m)=1");
  RelationResult r8 = named("pi(mu_n) eps_m = eps_nm, n in I(p)"), r9 = named("pi(mu*_n) eps_k = eps_{k/n} or 0, n in I(p)");
  RelationResult r10 = named("pi(mu_p) = fr^-1, pi(mu*_p) = fr"), r11 = named("pi(mu*_p)(c v) = fr(c) pi(mu*_p)(v)");
  RelationResult r12 = named("pi(x) = pi(r(x))"), r13 = named("Z_p^ur-linearity for n in I(p)");
  RelationResult s1 = named("bc_mul: mu~_n x mu*_n = rho~_n(x)"), s2 = named("bc_mul: mu*_n x = sigma_n(x) mu*_n"), s3 = named("bc_mul: x mu~_n = mu~_n sigma_n(x)");
  RelationResult s4 = named("bc_mul: mu~_nm = mu~_n mu~_m, mu*_nm = mu*_n mu*_m"), s5 = named("bc_mul: mu*_n mu~_n = n"), s6 = named("bc_mul: mu~_n mu*_m = mu*_m mu~_n, (n,m)=1");
  RelationResult s7 = named("bc_mul: associativity");

  for (u64 j : C.prime_to_p) {
    for (u64 n : C.admissible_n(j)) {
      unsigned k;
      u64 n1 = split_p(n, p, k);
      QZElement x = C.random_x(C.D / n1);
      BCElement X = BCElement::scalar(x);
      RepVector v = C.vec(j);
      // operators
      record(r1, eq(rep_mu_tilde(rep_e(rep_mu_star(v, n), x, C.spec), n), rep_e(v, rho_tilde_n(x, n), C.spec)), tag(j, n));
      record(r2, eq(rep_mu_star(rep_e(v, x, C.spec), n), rep_e(rep_mu_star(v, n), sigma_n(x, n), C.spec)), tag(j, n));
      record(r3, eq(rep_e(rep_mu_tilde(v, n), x, C.spec), rep_mu_tilde(rep_e(v, sigma_n(x, n), C.spec), n)), tag(j, n));
      {
        RepVector up = rep_mu_tilde(v, n);
        RepVector back = rep_mu_star(up, n);
        record(r6, eq(back, rep_scale(UnramifiedElement::from_int(C.ctx, Int(static_cast<unsigned long>(n))), v)), tag(j, n));
      }
      // the same identities through the BCElement product, then pi
      BCElement lhs1 = bc_mul(bc_mul(BCElement::mu_tilde(n), X), BCElement::mu_star(n));
      record(s1, lhs1 == BCElement::scalar(rho_tilde_n(x, n)), tag(j, n));
      record(r1, eq(pi(lhs1, v), rep_e(v, rho_tilde_n(x, n), C.spec)), tag(j, n) + " via pi");
      record(s2, bc_mul(BCElement::mu_star(n), X) == bc_mul(BCElement::scalar(sigma_n(x, n)), BCElement::mu_star(n)), tag(j, n));
      record(s3, bc_mul(X, BCElement::mu_tilde(n)) == bc_mul(BCElement::mu_tilde(n), BCElement::scalar(sigma_n(x, n))), tag(j, n));
      record(s5, bc_mul(BCElement::mu_star(n), BCElement::mu_tilde(n)) == BCElement::scalar(QZElement::constant(Rat(static_cast<unsigned long>(n)))), tag(j, n));
      record(r12, eq(rep_e(v, x, C.spec), rep_e(v, retraction(x, p), C.spec)), tag(j, n));

      for (u64 m : C.admissible_n(j)) {
        u64 m1 = split_p(m, p, k);
        if (checked_mul(checked_mul(n1, m1), j) > bound) continue;
        record(r4, eq(rep_mu_tilde(v, n * m), rep_mu_tilde(rep_mu_tilde(v, m), n)), tag(j, n, m));
        RepVector w = C.vec(j * n1 * m1);
        record(r5, eq(rep_mu_star(w, n * m), rep_mu_star(rep_mu_star(w, m), n)), tag(j * n1 * m1, n, m));
        if (gcd64(static_cast<i64>(n), static_cast<i64>(m)) == 1) {
          RepVector w2 = C.vec(j * m1);
          record(r7, eq(rep_mu_tilde(rep_mu_star(w2, m), n), rep_mu_star(rep_mu_tilde(w2, n), m)), tag(j * m1, n, m));
          record(s6, bc_mul(BCElement::mu_tilde(n), BCElement::mu_star(m)) == bc_mul(BCElement::mu_star(m), BCElement::mu_tilde(n)), tag(j, n, m));
        }
        record(s4, bc_mul(BCElement::mu_tilde(n), BCElement::mu_tilde(m)) == BCElement::mu_tilde(n * m) &&
                       bc_mul(BCElement::mu_star(n), BCElement::mu_star(m)) == BCElement::mu_star(n * m),
               tag(j, n, m));
        BCElement A = BCElement::monomial(n, C.random_x(C.D / n1), m);
        BCElement B = BCElement::monomial(m, C.random_x(C.D / m1), n);
        record(s7, bc_mul(bc_mul(A, B), X) == bc_mul(A, bc_mul(B, X)), tag(j, n, m));
      }
    }
    // basis formulas for n in I(p)
    UnramifiedElement c = C.random_scalar();
    RepVector v = RepVector::basis(C.ctx, bound, j, c);
    for (u64 n = 1; n <= bound; ++n) {
      if (n % p == 0) continue;
      if (n * j <= bound) record(r8, eq(rep_mu(v, n), RepVector::basis(C.ctx, bound, n * j, c)), tag(j, n));
      RepVector expect = j % n == 0 ? RepVector::basis(C.ctx, bound, j / n, c) : RepVector::zero(C.ctx, bound);
      record(r9, eq(rep_mu_star(v, n), expect), tag(j, n));
      if (n * j <= bound) {
        UnramifiedElement lam = C.random_scalar();
        QZElement x = C.random_x(C.D, true);
        bool lin = eq(rep_mu(rep_scale(lam, v), n), rep_scale(lam, rep_mu(v, n))) &&
                   eq(rep_mu_star(rep_scale(lam, v), n), rep_scale(lam, rep_mu_star(v, n))) &&
                   eq(rep_e(rep_scale(lam, v), x, C.spec), rep_scale(lam, rep_e(v, x, C.spec)));
        record(r13, lin, tag(j, n));
      }
    }
    record(r10, eq(rep_mu(v, p), RepVector::basis(C.ctx, bound, j, c.frobenius(-1))) && eq(rep_mu_star(v, p), RepVector::basis(C.ctx, bound, j, c.frobenius(1))) &&
                    eq(rep_mu_star(rep_mu(v, p), p), v),
           tag(j, p));
    UnramifiedElement lam = C.random_scalar();
    record(r11, eq(rep_mu_star(rep_scale(lam, v), p), rep_scale(lam.frobenius(1), rep_mu_star(v, p))), tag(j, p));
  }
  rep.results = {r1, r2, r3, r4, r5, r6, r7, r8, r9, r10, r11, r12, r13, s1, s2, s3, s4, s5, s6, s7};
  return rep;
}

}  // namespace wl
