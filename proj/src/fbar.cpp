#include "wittlab/fbar.hpp"
#include "wittlab/witt.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace wl {

Frac make_frac(i64 a, u64 b) {
  if (b == 0) throw MathError("fraction with zero denominator");
  u64 r = static_cast<u64>(mod64(a, static_cast<i64>(b)));
  if (r == 0) return {0, 1};
  u64 g = gcd64(r, b);
  return {r / g, b / g};
}

Frac parse_frac(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return make_frac(std::stoll(s), 1);
    return make_frac(std::stoll(s.substr(0, slash)), std::stoull(s.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw MathError("bad fraction: " + s);
  }
}

Frac frac_add(const Frac& x, const Frac& y) {
  u64 l = lcm64(x.b, y.b);
  unsigned __int128 s = static_cast<unsigned __int128>(x.a) * (l / x.b) + static_cast<unsigned __int128>(y.a) * (l / y.b);
  return make_frac(static_cast<i64>(s % l), l);
}

Frac frac_mul_int(const Frac& x, u64 n) {
  unsigned __int128 s = static_cast<unsigned __int128>(x.a) * n % x.b;
  return make_frac(static_cast<i64>(s), x.b);
}

const FpPoly& ConwaySequence::at(unsigned n) const {
  auto it = polys.find(n);
  if (it == polys.end()) throw MathError("sequence has no polynomial of degree " + std::to_string(n));
  return it->second;
}

bool ConwayReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const ConwayCheck& c) { return c.pass; });
}

namespace {

bool compatible(const FpPoly& Pm, unsigned m, const FpPoly& Pn, unsigned n, u64 p) {
  u64 d = (ipow(p, n) - 1) / (ipow(p, m) - 1);
  FpPoly g = powmod(FpPoly::x(p), Int(static_cast<unsigned long>(d)), Pn);
  return Pm.compose(g, Pn).is_zero();
}

}  // namespace

ConwayReport verify_conway(const ConwaySequence& seq) {
  ConwayReport r;
  for (auto& [n, P] : seq.polys) {
    bool deg = P.degree() == static_cast<int>(n);
    bool monic = P.lead() == 1;
    bool irr = deg && is_irreducible(P);
    r.checks.push_back({n, 0, "degree", deg});
    r.checks.push_back({n, 0, "monic", monic});
    r.checks.push_back({n, 0, "irreducible", irr});
    r.checks.push_back({n, 0, "primitive", irr && is_primitive(P)});
    for (u64 m : divisors(n)) {
      if (m == n || !seq.has(static_cast<unsigned>(m))) continue;
      const FpPoly& Pm = seq.at(static_cast<unsigned>(m));
      bool ok = deg && Pm.degree() == static_cast<int>(m) && compatible(Pm, static_cast<unsigned>(m), P, n, seq.p);
      r.checks.push_back({n, static_cast<unsigned>(m), "compatible", ok});
    }
  }
  return r;
}

FpPoly first_primitive_poly(u64 p, unsigned n) {
  u64 count = ipow(p, n);
  for (u64 idx = 0; idx < count; ++idx) {
    // idx in base p, most significant digit is c_{n-1}
    std::vector<u64> c(n + 1, 0);
    u64 t = idx;
    for (unsigned i = 0; i < n; ++i, t /= p) c[i] = t % p;
    c[n] = 1;
    if (c[0] == 0) continue;
    FpPoly f(p, c);
    if (is_irreducible(f) && is_primitive(f)) return f;
  }
  throw MathError("no primitive polynomial found (search exhausted)");
}

FpPoly minpoly_in(const FpPoly& a0, const FpPoly& mod) {
  u64 p = mod.p();
  FpPoly a = a0 % mod;
  std::vector<FpPoly> conj{a};
  for (;;) {
    FpPoly nx = powmod(conj.back(), Int(static_cast<unsigned long>(p)), mod);
    if (nx == a) break;
    conj.push_back(nx);
    if (conj.size() > static_cast<size_t>(mod.degree())) throw MathError("minpoly: conjugate orbit too long");
  }
  // prod (Y - c) with coefficients in F_p[X]/(mod), low degree first
  std::vector<FpPoly> poly{FpPoly::constant(p, 1)};
  for (auto& c : conj) {
    std::vector<FpPoly> next(poly.size() + 1, FpPoly(p));
    for (size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = next[i + 1] + poly[i];
      next[i] = next[i] - (poly[i] * c) % mod;
    }
    poly = std::move(next);
  }
  std::vector<u64> out;
  for (auto& c : poly) {
    if (c.degree() > 0) throw MathError("minpoly: coefficient outside F_p");
    out.push_back(c[0]);
  }
  return FpPoly(p, out);
}

namespace {
struct VecHash {
  size_t operator()(const std::vector<u64>& v) const {
    size_t h = 1469598103934665603ULL;
    for (u64 x : v) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};
}  // namespace

std::optional<u64> discrete_log(const FpPoly& a0, const FpPoly& mod) {
  u64 p = mod.p();
  FpPoly a = a0 % mod;
  if (a.is_zero()) return std::nullopt;
  u64 N = ipow(p, static_cast<unsigned>(mod.degree())) - 1;
  u64 m = 1;
  while (m * m < N) ++m;
  std::unordered_map<std::vector<u64>, u64, VecHash> baby;
  FpPoly T = FpPoly::x(p) % mod, cur = FpPoly::constant(p, 1);
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(cur.coeffs(), j);
    cur = (cur * T) % mod;
  }
  // cur = T^m; giant step multiplies by T^{-m}
  FpPoly giant = invmod(cur, mod);
  FpPoly g = a;
  for (u64 i = 0; i <= m; ++i) {
    auto it = baby.find(g.coeffs());
    if (it != baby.end()) return (i * m + it->second) % N;
    g = (g * giant) % mod;
  }
  throw MathError("discrete log: T is not a generator");
}

ConwaySequence extend_sequence(ConwaySequence seq, unsigned n, SearchStrategy s) {
  if (!is_prime(seq.p)) throw MathError("sequence prime must be prime");
  u64 p = seq.p;
  if (!verify_conway(seq).ok()) throw MathError("extend_sequence: input sequence fails the Conway conditions");
  for (unsigned k = 1; k <= n; ++k) {
    if (seq.has(k)) continue;
    for (u64 m : divisors(k))
      if (m < k && !seq.has(static_cast<unsigned>(m))) seq = extend_sequence(seq, static_cast<unsigned>(m), s);
    FpPoly Q = first_primitive_poly(p, k);
    u64 N = ipow(p, k) - 1;
    // admissible exponents j: X^j primitive and (X^j)^{d_m} a root of P_m,
    // i.e. j mod (p^m - 1) lies in the exponent set of P_m's roots
    std::vector<std::pair<u64, std::vector<bool>>> cons;
    for (u64 m : divisors(k)) {
      if (m == k) continue;
      u64 Nm = ipow(p, static_cast<unsigned>(m)) - 1;
      FpPoly gam = powmod(FpPoly::x(p), Int(static_cast<unsigned long>(N / Nm)), Q);
      const FpPoly& Pm = seq.at(static_cast<unsigned>(m));
      std::vector<bool> ok(Nm, false);
      FpPoly cur = FpPoly::constant(p, 1);
      size_t hits = 0;
      for (u64 t = 0; t < Nm; ++t) {
        if (Pm.compose(cur, Q).is_zero()) ok[t] = true, ++hits;
        cur = (cur * gam) % Q;
      }
      if (hits != m) throw MathError("extend_sequence: P_" + std::to_string(m) + " does not split as expected");
      cons.push_back({Nm, std::move(ok)});
    }
    auto admissible = [&](u64 j) {
      if (gcd64(j, N) != 1) return false;
      for (auto& [Nm, ok] : cons)
        if (!ok[j % Nm]) return false;
      return true;
    };
    std::optional<FpPoly> best;
    std::vector<bool> seen(N + 1, false);
    for (u64 j = 1; j <= N; ++j) {
      if (seen[j] || !admissible(j % N)) continue;
      FpPoly cand = minpoly_in(powmod(FpPoly::x(p), Int(static_cast<unsigned long>(j)), Q), Q);
      if (s == SearchStrategy::FirstFound) {
        best = cand;
        break;
      }
      u64 c = j;
      for (unsigned i = 0; i < k; ++i, c = static_cast<u64>(static_cast<unsigned __int128>(c) * p % N)) seen[c == 0 ? N : c] = true;
      if (!best || cand < *best) best = cand;
    }
    if (!best) throw MathError("extend_sequence: search exhausted at degree " + std::to_string(k));
    seq.polys.emplace(k, *best);
    auto rep = verify_conway(seq);
    if (!rep.ok()) throw MathError("extend_sequence: produced polynomial fails verification at degree " + std::to_string(k));
  }
  return seq;
}

ConwaySequence conway_sequence(u64 p, unsigned n, SearchStrategy s) {
  ConwaySequence seq;
  seq.p = p;
  return extend_sequence(seq, n, s);
}

FieldTower::FieldTower(ConwaySequence seq) : seq_(std::move(seq)) {
  for (auto& [n, P] : seq_.polys) levels_.emplace(n, GaloisFieldRing(P));
}

const GaloisFieldRing& FieldTower::level(unsigned n) const {
  auto it = levels_.find(n);
  if (it == levels_.end()) throw MathError("field tower has no level " + std::to_string(n));
  return it->second;
}

FpPoly FieldTower::embed(const FpPoly& a, unsigned m, unsigned n) const {
  if (n % m) throw MathError("embed: level " + std::to_string(m) + " does not divide " + std::to_string(n));
  const auto& Lm = level(m);
  const auto& Ln = level(n);
  FpPoly g;
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = embed_memo_.find({m, n});
    if (it != embed_memo_.end()) g = it->second;
  }
  if (g.p() == 0) {
    u64 d = (ipow(p(), n) - 1) / (ipow(p(), m) - 1);
    g = powmod(FpPoly::x(p()), Int(static_cast<unsigned long>(d)), Ln.modulus);
    std::lock_guard<std::mutex> lk(mu_);
    embed_memo_.emplace(std::make_pair(m, n), g);
  }
  return (a % Lm.modulus).compose(g, Ln.modulus);
}

unsigned FieldTower::level_for(const Frac& g) const {
  if (g.b % p() == 0) throw MathError("denominator divisible by p");
  return static_cast<unsigned>(g.b == 1 ? 1 : mult_order(p() % g.b, g.b));
}

FpPoly FieldTower::root_of_unity(const Frac& g, unsigned n) const {
  unsigned need = level_for(g);
  if (n % need) throw MathError("e(" + g.str() + ") is not in level " + std::to_string(n));
  const auto& L = level(n);
  u64 N = ipow(p(), n) - 1;
  u64 e = static_cast<u64>(static_cast<unsigned __int128>(g.a) * (N / g.b));
  return powmod(FpPoly::x(p()), Int(static_cast<unsigned long>(e)), L.modulus);
}

Frac FieldTower::log_fraction(const FpPoly& a, unsigned n) const {
  auto dl = discrete_log(a, level(n).modulus);
  if (!dl) throw MathError("log of zero");
  return make_frac(static_cast<i64>(*dl), ipow(p(), n) - 1);
}

FrobeniusOrbit frobenius_orbit(u64 p, const Frac& g0) {
  Frac g = make_frac(static_cast<i64>(g0.a), g0.b);
  if (g.b % p == 0) throw MathError("orbit: denominator " + std::to_string(g.b) + " divisible by p");
  FrobeniusOrbit o;
  o.p = p;
  Frac cur = g;
  do {
    o.elements.push_back(cur);
    cur = frac_mul_int(cur, p);
  } while (cur != g);
  auto it = std::min_element(o.elements.begin(), o.elements.end());
  std::rotate(o.elements.begin(), it, o.elements.end());
  o.rep = o.elements.front();
  return o;
}

std::vector<FrobeniusOrbit> orbits_at_level(u64 p, unsigned n) {
  u64 N = ipow(p, n) - 1;
  std::vector<bool> seen(N, false);
  std::vector<FrobeniusOrbit> out;
  for (u64 a = 0; a < N; ++a) {
    if (seen[a]) continue;
    u64 c = a;
    do {
      seen[c] = true;
      c = static_cast<u64>(static_cast<unsigned __int128>(c) * p % N);
    } while (c != a);
    out.push_back(frobenius_orbit(p, make_frac(static_cast<i64>(a), N)));
  }
  std::sort(out.begin(), out.end(), [](const FrobeniusOrbit& x, const FrobeniusOrbit& y) { return x.rep < y.rep; });
  return out;
}

u64 trace_invariant(const FieldTower& tower, const FrobeniusOrbit& orbit, unsigned level) {
  unsigned need = tower.level_for(orbit.rep);
  if (level == 0) {
    for (unsigned L = need; L <= tower.sequence().max_level(); L += need)
      if (tower.has_level(L)) {
        level = L;
        break;
      }
    if (level == 0) throw MathError("trace: no level of the tower contains e(" + orbit.rep.str() + ")");
  }
  FpPoly acc(tower.p());
  for (auto& g : orbit.elements) acc = acc + tower.root_of_unity(g, level);
  if (acc.degree() > 0) throw MathError("trace: orbit sum is not Frobenius fixed");
  return acc[0];
}

u64 TraceInvariant::at(const Frac& rep) const {
  auto it = values.find(rep);
  if (it == values.end()) throw MathError("trace invariant: missing orbit data for " + rep.str());
  return it->second;
}

TraceInvariant compute_trace_invariant(const FieldTower& tower, unsigned n) {
  // one pass over T^a, a < p^n - 1, accumulating each orbit's sum
  u64 p = tower.p();
  const FpPoly& P = tower.level(n).modulus;
  u64 N = ipow(p, n) - 1;
  std::vector<uint32_t> orbit_of(N, UINT32_MAX);
  std::vector<u64> reps;
  for (u64 a = 0; a < N; ++a) {
    if (orbit_of[a] != UINT32_MAX) continue;
    u64 c = a, rep = a;
    do {
      orbit_of[c] = static_cast<uint32_t>(reps.size());
      rep = std::min(rep, c);
      c = static_cast<u64>(static_cast<unsigned __int128>(c) * p % N);
    } while (c != a);
    reps.push_back(rep);
  }
  std::vector<std::vector<u64>> sums(reps.size(), std::vector<u64>(n, 0));
  std::vector<u64> cur(n, 0);
  cur[0] = 1 % p;
  for (u64 a = 0; a < N; ++a) {
    auto& s = sums[orbit_of[a]];
    for (unsigned i = 0; i < n; ++i) s[i] = (s[i] + cur[i]) % p;
    // cur <- cur * T mod P (P monic)
    u64 top = cur[n - 1];
    for (unsigned i = n - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top)
      for (unsigned i = 0; i < n; ++i) cur[i] = (cur[i] + (p - mulmod(top, P[i], p))) % p;
  }
  TraceInvariant tr;
  tr.p = p;
  for (size_t k = 0; k < reps.size(); ++k) {
    for (unsigned i = 1; i < n; ++i)
      if (sums[k][i]) throw MathError("trace: orbit sum is not Frobenius fixed");
    tr.values.emplace(make_frac(static_cast<i64>(reps[k]), N), sums[k][0]);
  }
  return tr;
}

FpPoly reconstruct_charpoly(const TraceInvariant& tr, unsigned n) {
  u64 p = tr.p;
  u64 N = ipow(p, n) - 1;
  std::vector<u64> c(n + 1, 0);
  c[n] = 1;
  std::vector<u64> pw(n);
  for (unsigned i = 0; i < n; ++i) pw[i] = ipow(p, i);
  for (unsigned k = 1; k <= n; ++k) {
    // D_k: exactly k base-p digits equal to 1, the rest 0
    std::set<Frac> reps;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
      u64 a = 0;
      for (unsigned i = 0; i < n; ++i)
        if (pick[i]) a += pw[i];
      reps.insert(frobenius_orbit(p, make_frac(static_cast<i64>(a % N), N)).rep);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    u64 sigma = 0;
    for (auto& r : reps) sigma = (sigma + tr.at(r)) % p;
    c[n - k] = (k % 2) ? (p - sigma) % p : sigma;
  }
  return FpPoly(p, c);
}

// ---- Artin-Schreier towers -------------------------------------------------

ArtinSchreierTower::ArtinSchreierTower(u64 p) : p_(p) {
  if (!is_prime(p)) throw MathError("Artin-Schreier tower needs a prime");
}

u64 ArtinSchreierTower::size(unsigned L) const { return ipow(p_, L); }

unsigned ArtinSchreierTower::level_of(const Elem& a) const {
  u64 s = 1;
  for (unsigned L = 0; L <= levels(); ++L, s *= p_)
    if (a.size() == s) return L;
  throw MathError("Artin-Schreier element of unexpected size");
}

ArtinSchreierTower::Elem ArtinSchreierTower::constant(unsigned L, u64 c) const {
  Elem e(size(L), 0);
  e[0] = c % p_;
  return e;
}

ArtinSchreierTower::Elem ArtinSchreierTower::gen(unsigned L, unsigned i) const {
  if (i >= L) throw MathError("generator y_" + std::to_string(i) + " not below level " + std::to_string(L));
  Elem e(size(L), 0);
  e[ipow(p_, i)] = 1;
  return e;
}

ArtinSchreierTower::Elem ArtinSchreierTower::lift(const Elem& a, unsigned L) const {
  if (a.size() > size(L)) throw MathError("cannot lift to a lower level");
  Elem e(a);
  e.resize(size(L), 0);
  return e;
}

ArtinSchreierTower::Elem ArtinSchreierTower::add(const Elem& a, const Elem& b) const {
  Elem x = lift(a, std::max(level_of(a), level_of(b))), y = lift(b, level_of(x));
  for (size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + y[i]) % p_;
  return x;
}

ArtinSchreierTower::Elem ArtinSchreierTower::neg(const Elem& a) const {
  Elem x(a);
  for (auto& v : x) v = (p_ - v) % p_;
  return x;
}

ArtinSchreierTower::Elem ArtinSchreierTower::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

bool ArtinSchreierTower::is_zero(const Elem& a) const {
  return std::all_of(a.begin(), a.end(), [](u64 v) { return v == 0; });
}

ArtinSchreierTower::Elem ArtinSchreierTower::mul_rec(const Elem& a, const Elem& b, unsigned L) const {
  if (L == 0) return {mulmod(a[0], b[0], p_)};
  u64 blk = size(L - 1);
  auto slice = [&](const Elem& v, u64 i) { return Elem(v.begin() + i * blk, v.begin() + (i + 1) * blk); };
  std::vector<Elem> C(2 * p_ - 1, Elem(blk, 0));
  for (u64 i = 0; i < p_; ++i) {
    Elem Ai = slice(a, i);
    if (is_zero(Ai)) continue;
    for (u64 j = 0; j < p_; ++j) {
      Elem Bj = slice(b, j);
      if (is_zero(Bj)) continue;
      C[i + j] = add(C[i + j], mul_rec(Ai, Bj, L - 1));
    }
  }
  // y^k = y^{k-p} (y + alpha)
  for (u64 k = 2 * p_ - 2; k >= p_; --k) {
    if (is_zero(C[k])) continue;
    C[k - p_ + 1] = add(C[k - p_ + 1], C[k]);
    C[k - p_] = add(C[k - p_], mul_rec(C[k], alpha_[L - 1], L - 1));
  }
  Elem out;
  out.reserve(size(L));
  for (u64 i = 0; i < p_; ++i) out.insert(out.end(), C[i].begin(), C[i].end());
  return out;
}

ArtinSchreierTower::Elem ArtinSchreierTower::mul(const Elem& a, const Elem& b) const {
  unsigned L = std::max(level_of(a), level_of(b));
  return mul_rec(lift(a, L), lift(b, L), L);
}

ArtinSchreierTower::Elem ArtinSchreierTower::pow(const Elem& a, const Int& e0) const {
  Elem r = constant(level_of(a), 1), b = a;
  Int e = e0;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mul(r, b);
    e >>= 1;
    if (e > 0) b = mul(b, b);
  }
  return r;
}

ArtinSchreierTower::Elem ArtinSchreierTower::inv(const Elem& a) const {
  if (is_zero(a)) throw MathError("Artin-Schreier inverse of zero");
  unsigned L = level_of(a);
  Int q = int_pow(p_, static_cast<unsigned>(size(L)));
  return pow(a, q - 2);
}

u64 ArtinSchreierTower::absolute_trace(const Elem& a) const {
  unsigned L = level_of(a);
  Elem acc = a, s = a;
  for (u64 i = 1; i < size(L); ++i) {
    s = pow(s, Int(static_cast<unsigned long>(p_)));
    acc = add(acc, s);
  }
  for (size_t i = 1; i < acc.size(); ++i)
    if (acc[i]) throw MathError("absolute trace not in F_p (tower is not a field?)");
  return acc[0];
}

void ArtinSchreierTower::push(const Elem& alpha) {
  if (level_of(alpha) > levels()) throw MathError("alpha above the top level");
  alpha_.push_back(lift(alpha, levels()));
}

ArtinSchreierTower::Elem ArtinSchreierTower::eval(const FPoly& f, unsigned L) const {
  Elem acc = constant(L, 0);
  for (auto& [e, c] : f.terms()) {
    Elem t = constant(L, c.v);
    for (size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (i >= L) throw MathError("polynomial uses a variable above the tower level");
      t = mul(t, pow(gen(L, static_cast<unsigned>(i)), Int(static_cast<unsigned long>(e[i]))));
    }
    acc = add(acc, t);
  }
  return acc;
}

FPoly ArtinSchreierTower::to_poly(const Elem& a, const std::vector<std::string>& vars) const {
  unsigned L = level_of(a);
  if (vars.size() < L) throw MathError("to_poly: not enough variables");
  std::vector<FPoly::Term> ts;
  for (u64 idx = 0; idx < a.size(); ++idx) {
    if (!a[idx]) continue;
    Exps e(vars.size(), 0);
    u64 t = idx;
    for (unsigned i = 0; i < L; ++i, t /= p_) e[i] = static_cast<uint32_t>(t % p_);
    ts.push_back({e, Fp(static_cast<i64>(a[idx]), p_)});
  }
  return FPoly::from_terms(vars, std::move(ts));
}

std::string TowerEquation::str() const {
  return "x" + std::to_string(level) + "^" + std::to_string(p) + " = " + rhs.to_string();
}

std::string TowerEquation::reduced_str() const {
  return "x" + std::to_string(level) + "^" + std::to_string(p) + " = " + reduced.to_string();
}

std::vector<TowerEquation> witt_as_tower(u64 p, unsigned levels) {
  if (!is_prime(p)) throw MathError("witt tower: p must be prime");
  if (levels == 0) throw MathError("witt tower: need at least one level");
  detail::check_universal_limits(TruncationSet::p_typical(p, levels), ipow(p, levels - 1));
  ArtinSchreierTower tower(p);
  std::vector<TowerEquation> out;
  for (unsigned j = 0; j < levels; ++j) {
    auto U = universal_poly(UOp::Add, ipow(p, j));
    size_t nd = j + 1;  // divisors 1, p, ..., p^j
    auto vars = indexed_vars("x", j + 1, 0);
    std::vector<FPoly::Term> ts;
    for (auto& [e, c] : U->terms()) {
      // y = (1, 0, ..., 0)
      bool dead = false;
      for (size_t i = 1; i < nd; ++i)
        if (e[nd + i]) dead = true;
      if (dead) continue;
      ts.push_back({Exps(e.begin(), e.begin() + nd), Fp::from_int(c, p)});
    }
    FPoly rhs = FPoly::from_terms(vars, std::move(ts));
    FPoly xj = FPoly::variable(vars, j, Fp(1, p));
    FPoly alpha = rhs - xj;
    if (alpha.degree_in(j) != 0) throw MathError("witt tower: level relation is not of Artin-Schreier form");
    auto a = tower.eval(alpha, j);
    TowerEquation eq;
    eq.p = p;
    eq.level = j;
    eq.rhs = rhs;
    eq.reduced = tower.to_poly(a, vars) + xj;
    eq.irreducible = tower.as_irreducible(a);
    tower.push(a);
    out.push_back(std::move(eq));
  }
  return out;
}

std::vector<DslStep> dsl_chain(u64 p, unsigned steps) {
  ArtinSchreierTower tower(p);
  std::vector<DslStep> out;
  auto alpha = tower.constant(0, 1);
  for (unsigned k = 0; k < steps; ++k) {
    DslStep s;
    s.p = p;
    s.step = k;
    s.alpha = tower.to_poly(alpha, indexed_vars("y", k + 1, 0));
    s.irreducible = tower.as_irreducible(alpha);
    s.degree = ipow(p, k + 1);
    out.push_back(s);
    tower.push(alpha);
    if (k + 1 == steps) break;
    auto y = tower.gen(k + 1, k);
    auto y1 = tower.add(y, tower.constant(k + 1, 1));
    if (tower.is_zero(y1)) throw MathError("dsl chain: y_k = -1 degeneracy");
    alpha = tower.neg(tower.mul(y, tower.inv(y1)));
  }
  return out;
}

std::string DslStep::str() const {
  std::string y = "y" + std::to_string(step);
  return y + "^" + std::to_string(p) + " = " + y + " + " + alpha.to_string();
}

u64 u_exponent(u64 p, u64 l) {
  if (!is_prime(p) || !is_prime(l)) throw MathError("u(p,l): arguments must be prime");
  if (p == l) throw MathError("u(p,l): p and l must differ");
  if (l == 2) {
    Int v = Int(static_cast<unsigned long>(p)) * p - 1;
    return static_cast<u64>(val_p(v, 2) - 3);
  }
  Int v = int_pow(p, static_cast<unsigned>(l - 1)) - 1;
  return static_cast<u64>(val_p(v, l) - 1);
}

}  // namespace wl
