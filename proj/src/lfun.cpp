#include "wittlab/lfun.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>

namespace wl {

namespace {

std::mutex g_bern_mu;
std::vector<Rat> g_bern_nums{Rat(1)};
std::deque<QPoly> g_bern_polys;

Rat binom_rat(unsigned n, unsigned k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rat(r);
}

void extend_numbers(unsigned n) {
  while (g_bern_nums.size() <= n) {
    unsigned k = static_cast<unsigned>(g_bern_nums.size());
    // sum_{j <= k} C(k+1, j) B_j = 0
    Rat s = 0;
    for (unsigned j = 0; j < k; ++j) s += binom_rat(k + 1, j) * g_bern_nums[j];
    Rat b = -s / Rat(k + 1);
    b.canonicalize();
    g_bern_nums.push_back(b);
  }
}

Rat frac_rat(u64 a, u64 b) {
  Rat r(Int(static_cast<unsigned long>(a)), Int(static_cast<unsigned long>(b)));
  r.canonicalize();
  return r;
}

Rat pow_u(u64 b, unsigned e) { return Rat(int_pow(b, e)); }

void trim(QDense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

const PrimeConstants& check_prime(u64 p, PrimeConstants& store) {
  if (p < 2 || !is_prime(p)) throw MathError(std::to_string(p) + " is not prime");
  store = PrimeConstants(p);
  return store;
}

void check_exact_m(unsigned m, u64 p) {
  PrimeConstants pc(2);
  check_prime(p, pc);
  if (m == 0 || m % pc.phi_q) throw MathError("m = " + std::to_string(m) + " is not a positive multiple of phi(q) = " + std::to_string(pc.phi_q));
}

void check_unramified(const Frac& g, u64 p) {
  if (g.b % p == 0) throw MathError("ramified denominator: " + g.str() + " at p = " + std::to_string(p));
}

CycloElement inverse(const CycloElement& x) {
  if (x.is_zero()) throw MathError("division by zero in Q(zeta)");
  u64 b = x.conductor();
  // x^{-1} = prod_{c != 1} sigma_c(x) / N(x)
  CycloElement prod = CycloElement::rational(1, b);
  for (u64 c = 2; c < b; ++c)
    if (gcd64(static_cast<i64>(c), static_cast<i64>(b)) == 1) prod = prod * x.galois(static_cast<i64>(c));
  CycloElement norm = prod * x;
  return prod.scaled(1 / norm.to_rational());
}

using CPoly = std::vector<CycloElement>;

CPoly cp_mul(const CPoly& a, const CPoly& b, u64 field) {
  if (a.empty() || b.empty()) return {};
  CPoly out(a.size() + b.size() - 1, CycloElement(field));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

CPoly cp_add(CPoly a, const CPoly& b, u64 field) {
  if (a.size() < b.size()) a.resize(b.size(), CycloElement(field));
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

void cp_trim(CPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

// f(zeta_g^j x) for f over Q
CPoly twist_poly(const QDense& f, u64 g, u64 j) {
  CPoly out;
  for (size_t i = 0; i < f.size(); ++i) out.push_back(CycloElement::zeta(g, static_cast<i64>(mulmod(i, j, g))).scaled(f[i]));
  return out;
}

// f(x^g) over Q(zeta_g)
CPoly compose_power(const QDense& f, u64 g) {
  CPoly out(f.empty() ? 0 : (f.size() - 1) * g + 1, CycloElement(g));
  for (size_t i = 0; i < f.size(); ++i) out[i * g] = CycloElement::rational(f[i], g);
  return out;
}

// chi' on Z/f for the primitive character under chi mod n
CycloElement primitive_value(const DirichletChar& chi, u64 c, u64 field) {
  u64 f = chi.conductor, n = chi.modulus;
  c %= f;
  if (gcd64(static_cast<i64>(c), static_cast<i64>(f)) != 1) return CycloElement(field);
  for (u64 t = c; t < n + f; t += f) {
    u64 x = t % n;
    if (chi.log[x] >= 0) return chi.value(x, field);
  }
  throw MathError("no unit lift found");  // unreachable for f | n
}

}  // namespace

Rat bernoulli_number(unsigned n) {
  std::lock_guard<std::mutex> lk(g_bern_mu);
  extend_numbers(n);
  return g_bern_nums[n];
}

const QPoly& bernoulli_poly(unsigned n) {
  std::lock_guard<std::mutex> lk(g_bern_mu);
  extend_numbers(n);
  while (g_bern_polys.size() <= n) {
    unsigned k = static_cast<unsigned>(g_bern_polys.size());
    std::vector<QPoly::Term> ts;
    for (unsigned j = 0; j <= k; ++j) {
      Rat c = binom_rat(k, j) * g_bern_nums[j];
      if (c != 0) ts.push_back({Exps{k - j}, c});
    }
    g_bern_polys.push_back(QPoly::from_terms({"u"}, ts));
  }
  return g_bern_polys[n];
}

Rat eval_q(const QPoly& f, const Rat& x) {
  Rat s = 0;
  for (auto& [e, c] : f.terms()) s += c * rat_pow(x, static_cast<long>(e.empty() ? 0 : e[0]));
  return s;
}

QDense qd_mul(const QDense& a, const QDense& b) {
  if (a.empty() || b.empty()) return {};
  QDense out(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

QDense qd_add(const QDense& a, const QDense& b) {
  QDense out = a.size() >= b.size() ? a : b;
  const QDense& o = a.size() >= b.size() ? b : a;
  for (size_t i = 0; i < o.size(); ++i) out[i] += o[i];
  trim(out);
  return out;
}

QDense qd_sub(const QDense& a, const QDense& b) {
  QDense nb = b;
  for (auto& c : nb) c = -c;
  return qd_add(a, nb);
}

QDense qd_derive(const QDense& a) {
  QDense out;
  for (size_t i = 1; i < a.size(); ++i) out.push_back(a[i] * Rat(static_cast<long>(i)));
  trim(out);
  return out;
}

std::pair<QDense, QDense> qd_divmod(const QDense& a, const QDense& b) {
  if (b.empty()) throw MathError("polynomial division by zero");
  QDense r = a, q;
  trim(r);
  if (r.size() >= b.size()) q.assign(r.size() - b.size() + 1, Rat(0));
  while (r.size() >= b.size()) {
    size_t sh = r.size() - b.size();
    Rat c = r.back() / b.back();
    q[sh] = c;
    for (size_t i = 0; i < b.size(); ++i) r[sh + i] -= c * b[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
  return {q, r};
}

QDense qd_gcd(const QDense& a, const QDense& b) {
  QDense x = a, y = b;
  trim(x);
  trim(y);
  while (!y.empty()) {
    QDense r = qd_divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.empty()) return x;
  Rat lead = x.back();
  for (auto& c : x) c /= lead;
  return x;
}

RationalFunction RationalFunction::make(QDense num, QDense den) {
  trim(num);
  trim(den);
  if (den.empty()) throw MathError("rational function with zero denominator");
  if (num.empty()) return {{}, {Rat(1)}};
  QDense g = qd_gcd(num, den);
  num = qd_divmod(num, g).first;
  den = qd_divmod(den, g).first;
  Rat lead = den.back();
  for (auto& c : num) c /= lead;
  for (auto& c : den) c /= lead;
  return {num, den};
}

CycloElement RationalFunction::eval(const CycloElement& z) const {
  u64 b = z.conductor();
  auto horner = [&](const QDense& f) {
    CycloElement s(b);
    for (size_t i = f.size(); i-- > 0;) s = s * z + CycloElement::rational(f[i], b);
    return s;
  };
  CycloElement d = horner(den);
  if (d.is_zero()) throw MathError("rational function has a pole at " + z.str());
  return horner(num) * inverse(d);
}

std::string RationalFunction::str(const std::string& var) const {
  auto show = [&](const QDense& f) {
    std::vector<QPoly::Term> ts;
    for (size_t i = 0; i < f.size(); ++i)
      if (f[i] != 0) ts.push_back({Exps{static_cast<std::uint32_t>(i)}, f[i]});
    return QPoly::from_terms({var}, ts).to_string();
  };
  std::string n = show(num);
  if (den.size() == 1) return n;
  return "(" + n + ")/(" + show(den) + ")";
}

RationalFunction polylog_neg(unsigned n) {
  RationalFunction l = RationalFunction::make({Rat(0), Rat(1)}, {Rat(1), Rat(-1)});
  const QDense z{Rat(0), Rat(1)};
  for (unsigned i = 0; i < n; ++i) {
    QDense num = qd_mul(z, qd_sub(qd_mul(qd_derive(l.num), l.den), qd_mul(l.num, qd_derive(l.den))));
    l = RationalFunction::make(num, qd_mul(l.den, l.den));
  }
  return l;
}

CycloElement y_m(const Frac& g, unsigned m, u64 f) {
  if (m < 2) throw MathError("y_m needs m >= 2");
  if (f == 0) f = g.b;
  if (f % g.b) throw MathError("f = " + std::to_string(f) + " is not a multiple of " + std::to_string(g.b));
  const QPoly& B = bernoulli_poly(m);
  std::vector<Rat> acc(g.b, Rat(0));
  for (u64 j = 0; j < f; ++j) acc[mulmod(g.a, j % g.b, g.b)] += eval_q(B, frac_rat(j, f));
  Rat scale = pow_u(f, m - 1);
  for (auto& c : acc) c *= scale;
  return CycloElement(g.b, std::move(acc));
}

CycloElement z_exact(const Frac& g, unsigned m, u64 p) {
  check_exact_m(m, p);
  check_unramified(g, p);
  CycloElement y = y_m(g, m, 0) - y_m(frac_mul_int(g, p), m, 0).lift(g.b).scaled(pow_u(p, m - 1));
  return y.scaled(Rat(-1) / Rat(m));
}

CycloElement residue_at_one(const Frac& g, u64 p, u64 f) {
  PrimeConstants pc(2);
  check_prime(p, pc);
  u64 bq = checked_mul(g.b, pc.q);
  if (f == 0) f = bq;
  if (f % bq) throw MathError("f = " + std::to_string(f) + " is not a multiple of b q = " + std::to_string(bq));
  std::vector<Rat> acc(g.b, Rat(0));
  for (u64 c = 1; c < f; ++c)
    if (c % p) acc[mulmod(g.a, c % g.b, g.b)] += 1;
  for (auto& c : acc) c /= Rat(Int(static_cast<unsigned long>(f)));
  return CycloElement(g.b, std::move(acc));
}

CycloElement weighted_value(const std::vector<CycloElement>& g, unsigned m, u64 p, u64 f) {
  check_exact_m(m, p);
  u64 b = g.size();
  if (b == 0) throw MathError("weighted_value: empty function");
  if (b % p == 0) throw MathError("weighted_value: modulus " + std::to_string(b) + " is divisible by p");
  u64 bq = checked_mul(b, PrimeConstants(p).q);
  if (f == 0) f = bq;
  if (f % bq) throw MathError("f = " + std::to_string(f) + " is not a multiple of b q = " + std::to_string(bq));
  const QPoly& B = bernoulli_poly(m);
  std::vector<Rat> w(b, Rat(0));
  for (u64 c = 1; c < f; ++c)
    if (c % p) w[c % b] += eval_q(B, frac_rat(c, f));
  Rat scale = -pow_u(f, m - 1) / Rat(m);
  CycloElement out;
  for (u64 r = 0; r < b; ++r)
    if (w[r] != 0) out += g[r].scaled(w[r] * scale);
  return out;
}

CycloElement DirichletChar::value(u64 c, u64 field) const {
  if (field % N) throw MathError("field conductor " + std::to_string(field) + " does not contain zeta_" + std::to_string(N));
  i64 l = log[c % modulus];
  if (l < 0) return CycloElement(field);
  return CycloElement::zeta(field, l * static_cast<i64>(field / N));
}

bool DirichletChar::is_even() const { return log[(modulus - 1) % modulus] == 0; }

std::vector<DirichletChar> dirichlet_characters(u64 n) {
  if (n == 0) throw MathError("modulus 0");
  // cyclic generators of (Z/n)^x through the prime-power factors
  struct Gen {
    u64 elem, order;
  };
  std::vector<Gen> gens;
  for (auto [l, e] : factor(n)) {
    u64 le = ipow(l, static_cast<unsigned>(e)), rest = n / le;
    auto lift = [&](u64 x) {
      // x mod le, 1 mod rest
      if (rest == 1) return x % le;
      u64 t = mulmod((x + le - 1) % le, static_cast<u64>(invmod(static_cast<i64>(rest % le), static_cast<i64>(le))), le);
      return (1 + rest * t) % n;
    };
    if (l == 2) {
      if (e >= 2) gens.push_back({lift(le - 1), 2});
      if (e >= 3) gens.push_back({lift(5), le / 4});
    } else {
      u64 g = primitive_root(l);
      if (e >= 2 && powmod(g, l - 1, l * l) == 1) g += l;
      gens.push_back({lift(g), le / l * (l - 1)});
    }
  }
  u64 N = 1;
  for (auto& g : gens) N = static_cast<u64>(lcm64(static_cast<i64>(N), static_cast<i64>(g.order)));
  // exponent vector of every unit
  std::vector<std::vector<u64>> expo(n);
  std::vector<u64> cur(gens.size(), 0);
  std::function<void(size_t, u64)> walk = [&](size_t i, u64 x) {
    if (i == gens.size()) {
      expo[x % n] = cur;
      return;
    }
    u64 y = x;
    for (u64 k = 0; k < gens[i].order; ++k) {
      cur[i] = k;
      walk(i + 1, y);
      y = mulmod(y, gens[i].elem, n);
    }
  };
  walk(0, 1 % n);

  std::vector<DirichletChar> out;
  std::vector<u64> ks(gens.size(), 0);
  auto divs = divisors(n);
  std::sort(divs.begin(), divs.end());
  while (true) {
    DirichletChar chi;
    chi.modulus = n;
    chi.N = N;
    chi.log.assign(n, -1);
    for (u64 c = 0; c < n; ++c) {
      if (gcd64(static_cast<i64>(c), static_cast<i64>(n)) != 1) continue;
      u64 s = 0;
      for (size_t i = 0; i < gens.size(); ++i) s = (s + ks[i] * expo[c][i] % gens[i].order * (N / gens[i].order)) % N;
      chi.log[c] = static_cast<i64>(s);
    }
    for (u64 d : divs) {
      bool ok = true;
      for (u64 c = 1 % n; c < n && ok; c += d)
        if (chi.log[c] > 0) ok = false;
      if (n == 1 || ok) {
        chi.conductor = d;
        break;
      }
    }
    out.push_back(std::move(chi));
    size_t i = 0;
    while (i < gens.size() && ++ks[i] == gens[i].order) ks[i++] = 0;
    if (i == gens.size()) break;
  }
  return out;
}

std::vector<CharTerm> comblem_decompose(const Frac& g, unsigned m, u64 p) {
  check_exact_m(m, p);
  check_unramified(g, p);
  u64 b = g.b;
  std::vector<CharTerm> out;
  auto divs = divisors(b);
  std::sort(divs.begin(), divs.end());
  for (u64 d : divs) {
    u64 mp = b / d;
    Rat inv_phi = Rat(1) / Rat(Int(static_cast<unsigned long>(totient(mp))));
    for (const DirichletChar& chi : dirichlet_characters(mp)) {
      u64 F = static_cast<u64>(lcm64(static_cast<i64>(b), static_cast<i64>(chi.N)));
      CharTerm t;
      t.d = d;
      t.modulus = mp;
      t.conductor = chi.conductor;
      // c(d, chi) = (1/phi(m')) sum_{c in (Z/m')^x} g(d c) chi(c)^{-1}
      t.coeff = CycloElement(F);
      for (u64 c = 0; c < mp; ++c) {
        if (chi.log[c] < 0) continue;
        i64 e = static_cast<i64>(mulmod(g.a, mulmod(d, c, b), b) * (F / b)) - chi.log[c] * static_cast<i64>(F / chi.N);
        t.coeff += CycloElement::zeta(F, e);
      }
      t.coeff = t.coeff.scaled(inv_phi);
      std::vector<CycloElement> prim;
      for (u64 c = 0; c < chi.conductor; ++c) prim.push_back(primitive_value(chi, c, chi.N));
      t.lvalue = weighted_value(prim, m, p);
      t.euler = CycloElement::rational(pow_u(d, m - 1), chi.N);
      for (auto [l, e] : factor(mp)) {
        (void)e;
        if (chi.conductor % l == 0) continue;
        t.euler = t.euler * (CycloElement::rational(1, chi.N) - primitive_value(chi, l, chi.N).scaled(pow_u(l, m - 1)));
      }
      out.push_back(std::move(t));
    }
  }
  return out;
}

CycloElement comblem_value(const std::vector<CharTerm>& terms) {
  CycloElement s;
  for (auto& t : terms) s += t.coeff * t.lvalue * t.euler;
  return s;
}

KmsPoint KmsPoint::exact(u64 p, unsigned m) {
  KmsPoint pt;
  pt.p = p;
  pt.mode = KmsMode::Exact;
  pt.m = m;
  pt.validate();
  return pt;
}

KmsPoint KmsPoint::padic(const PadicNumber& beta) {
  KmsPoint pt;
  pt.p = beta.p();
  pt.mode = KmsMode::Padic;
  pt.beta = beta;
  pt.validate();
  return pt;
}

KmsPoint KmsPoint::lambda_point(const PadicNumber& lambda) {
  KmsPoint pt;
  pt.p = lambda.p();
  pt.mode = KmsMode::Lambda;
  pt.lambda = lambda;
  pt.validate();
  return pt;
}

void KmsPoint::validate() const {
  PrimeConstants pc(2);
  check_prime(p, pc);
  switch (mode) {
    case KmsMode::Exact:
      check_exact_m(m, p);
      break;
    case KmsMode::Padic:
      if (beta.p() != p) throw MathError("beta is not a " + std::to_string(p) + "-adic number");
      // beta in Q_p with |beta| < q p^{-1/(p-1)} means beta in Z_p
      if (!beta.is_exact_zero() && beta.val() < 0) throw MathError("beta = " + beta.str() + " lies outside the domain D_p");
      break;
    case KmsMode::Lambda: {
      if (lambda.p() != p) throw MathError("lambda is not a " + std::to_string(p) + "-adic number");
      PadicNumber d = lambda - PadicNumber::from_int(1, p, lambda.prec());
      if (lambda.is_zero() || lambda.val() != 0 || (!d.is_exact_zero() && d.val() < 1)) throw MathError("lambda must satisfy |lambda - 1| < 1");
      break;
    }
  }
}

Rat sigma_beta_exact(u64 a, u64 b, const KmsPoint& pt) {
  pt.validate();
  if (pt.mode != KmsMode::Exact) throw MathError("sigma_beta_exact needs an exact point");
  if (a == 0 || b == 0 || a % pt.p == 0 || b % pt.p == 0) throw MathError("sigma_beta: a, b must be prime to p");
  // r^(beta) = r^{1-m} at beta = 1 - m
  return rat_pow(frac_rat(b, a), 1 - static_cast<long>(pt.m));
}

PadicNumber r_beta(const Rat& r, const PadicNumber& beta, int K) {
  u64 p = beta.p();
  if (r == 0 || val_p(r, p) != 0) throw MathError("r^(beta) needs a p-adic unit");
  PrimeConstants pc(p);
  int W = K + pc.v_q + 2;
  PadicNumber lr = iwasawa_log(PadicNumber::from_rat(r, p, W));
  PadicNumber e = padic_exp((beta - PadicNumber::from_int(1, p, W)) * lr);
  return (PadicNumber::from_rat(r, p, W) * e).with_prec(K);
}

PadicNumber sigma_beta_scalar(u64 a, u64 b, const KmsPoint& pt, int K) {
  pt.validate();
  if (a == 0 || b == 0 || a % pt.p == 0 || b % pt.p == 0) throw MathError("sigma_beta: a, b must be prime to p");
  Rat r = frac_rat(b, a);
  switch (pt.mode) {
    case KmsMode::Exact:
      return PadicNumber::from_rat(sigma_beta_exact(a, b, pt), pt.p, K);
    case KmsMode::Padic:
      return r_beta(r, pt.beta, K);
    case KmsMode::Lambda: {
      PrimeConstants pc(pt.p);
      int W = K + pc.v_q + 2;
      auto [om, ang] = omega_angle(r, pt.p, W);
      (void)ang;
      PadicNumber ip = i_p(r, pt.p, W);
      PadicNumber ll = iwasawa_log(pt.lambda.with_prec(std::min<long>(pt.lambda.abs_prec(), W)));
      return (om * padic_exp(ip * ll)).with_prec(K);
    }
  }
  throw MathError("unknown KMS mode");
}

UnramifiedElement embed_cyclo(const CycloElement& x, const UnramCtx& ctx, const SigmaSpec& spec) {
  u64 b = x.conductor();
  UnramifiedElement s = UnramifiedElement::zero(ctx);
  const auto& c = x.coords();
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    s = s + UnramifiedElement::from_rat(ctx, c[i]) * rho_root(ctx, spec, make_frac(static_cast<i64>(i), b));
  }
  return s;
}

PadicValue z_padic(const Frac& g, const PadicNumber& beta, SigmaSpec& spec, int K, u64 f) {
  KmsPoint::padic(beta);
  u64 p = spec.p;
  if (beta.p() != p) throw MathError("beta and the sigma spec use different primes");
  check_unramified(g, p);
  if (K < 1) throw MathError("target precision must be positive");
  PrimeConstants pc(p);
  u64 bq = checked_mul(g.b, pc.q);
  if (f == 0) f = bq;
  if (f % bq) throw MathError("f = " + std::to_string(f) + " is not a multiple of b q = " + std::to_string(bq));

  PadicNumber one = PadicNumber::from_int(1, p, std::max<long>(beta.abs_prec(), 1));
  PadicNumber bm1 = beta - one;
  if (bm1.is_zero()) throw MathError("beta = 1 is the pole; use residue_at_one");
  long vb = bm1.val();
  long vf = val_p(static_cast<i64>(f), p);
  long W = K + vf + vb + 2;
  // (f/c)^j B_j has valuation >= j v(f) - 1
  u64 J = static_cast<u64>((W + 1 + vf - 1) / vf);
  long vJ = 0;
  for (u64 t = J / p; t; t /= p) vJ += static_cast<long>(t);
  int Wk = static_cast<int>(W + vJ + 1);
  PadicNumber s = PadicNumber::from_int(1, p, Wk) - beta;  // 1 - beta

  std::vector<PadicNumber> coef;  // binom(s, j) B_j
  PadicNumber bin = PadicNumber::from_int(1, p, Wk);
  for (u64 j = 0; j <= J; ++j) {
    if (j > 0) bin = bin * (s - PadicNumber::from_int(Int(static_cast<unsigned long>(j - 1)), p, Wk)) / PadicNumber::from_int(Int(static_cast<unsigned long>(j)), p, Wk);
    Rat Bj = bernoulli_number(static_cast<unsigned>(j));
    coef.push_back(Bj == 0 ? PadicNumber::zero(p, Wk) : bin * PadicNumber::from_rat(Bj, p, Wk));
  }

  std::vector<PadicNumber> acc(g.b, PadicNumber::zero(p, Wk));
  for (u64 c = 1; c < f; ++c) {
    if (c % p == 0) continue;
    PadicNumber cc = PadicNumber::from_int(Int(static_cast<unsigned long>(c)), p, Wk);
    PadicNumber ang = padic_exp(s * iwasawa_log(cc));  // <c>^{1-beta}
    PadicNumber x = PadicNumber::from_rat(frac_rat(f, c), p, Wk);
    PadicNumber inner = PadicNumber::zero(p, Wk), xj = PadicNumber::from_int(1, p, Wk);
    for (u64 j = 0; j <= J; ++j) {
      if (!coef[j].is_exact_zero()) inner = inner + coef[j] * xj;
      xj = xj * x;
    }
    u64 r = mulmod(g.a, c % g.b, g.b);
    acc[r] = acc[r] + ang * inner;
  }

  PadicNumber denom = PadicNumber::from_int(Int(static_cast<unsigned long>(f)), p, Wk) * bm1;
  u64 d = SigmaSpec::residue_degree(p, {g.b});
  UnramCtx ctx = spec.context(d, static_cast<int>(W));
  UnramifiedElement v = UnramifiedElement::zero(ctx);
  for (u64 r = 0; r < g.b; ++r) {
    if (acc[r].is_exact_zero()) continue;
    v = v + UnramifiedElement::from_padic(ctx, acc[r] / denom) * rho_root(ctx, spec, make_frac(static_cast<i64>(r), g.b));
  }
  long eff = std::min<long>(K, v.abs_prec());
  if (eff <= 0 && !v.is_exact_zero()) throw MathError("precision unattainable: beta is known only to " + std::to_string(beta.abs_prec()) + " digits");
  return {v.with_prec(eff), eff};
}

namespace {

void check_h_p(const BCElement& x, u64 p) {
  for (auto& [k, q] : x.terms()) {
    if (k.first % p == 0 || k.second % p == 0)
      throw MathError("monomial mu~_" + std::to_string(k.first) + " x mu*_" + std::to_string(k.second) + " is outside H^(p)");
    for (auto& [g, c] : q.support()) {
      (void)c;
      check_unramified(g, p);
    }
  }
}

}  // namespace

CycloElement kms_phi(const BCElement& x, unsigned m, u64 p) {
  check_exact_m(m, p);
  check_h_p(x, p);
  CycloElement s;
  auto it = x.terms().find({1, 1});
  if (it == x.terms().end()) return s;
  for (auto& [g, c] : it->second.support()) s += z_exact(g, m, p).scaled(c);
  return s;
}

CycloElement kms_state(const BCElement& x, unsigned m, u64 p) {
  Rat z = z_exact(Frac{}, m, p).to_rational();
  return kms_phi(x, m, p).scaled(1 / z);
}

BCElement sigma_beta_apply(const BCElement& x, const KmsPoint& pt) {
  pt.validate();
  if (pt.mode != KmsMode::Exact) throw MathError("sigma_beta_apply acts on rational elements at exact points only");
  BCElement out;
  for (auto& [k, q] : x.terms()) out.add_term(k.first, k.second, sigma_beta_exact(k.first, k.second, pt) * q);
  return out;
}

KmsResult kms_verify(const BCElement& x, const BCElement& y, const KmsPoint& pt) {
  pt.validate();
  if (pt.mode != KmsMode::Exact) throw MathError("kms_verify needs an exact point");
  check_h_p(x, pt.p);
  check_h_p(y, pt.p);
  KmsResult r;
  r.lhs = kms_phi(bc_mul(x, sigma_beta_apply(y, pt)), pt.m, pt.p);
  r.rhs = kms_phi(bc_mul(y, x), pt.m, pt.p);
  r.equal = r.lhs == r.rhs;
  return r;
}

bool homogeneity_check(const QZElement& X, u64 n, unsigned m, u64 p) {
  if (n == 0 || n % p == 0) throw MathError("n must lie in I(p)");
  CycloElement lhs = kms_phi(BCElement::scalar(rho_tilde_n(X, n)), m, p);
  CycloElement rhs = kms_phi(BCElement::scalar(X), m, p).scaled(pow_u(n, m));
  return lhs == rhs;
}

bool symmetry_check(const Frac& g, unsigned m, u64 p) {
  if (p == 2) throw MathError("symmetry_check needs p > 2");
  return z_exact(g, m, p) == z_exact(make_frac(-static_cast<i64>(g.a), g.b), m, p);
}

bool division_relation_check(unsigned n, u64 g) {
  if (n < 2) throw MathError("division relation needs n >= 2");
  if (g == 0) throw MathError("g must be positive");
  RationalFunction l = polylog_neg(n - 1);
  // sum_j N_j / D_j = g^n N(x^g) / D(x^g), cleared of denominators
  CPoly Q{CycloElement::rational(1, g)}, P;
  for (u64 j = 0; j < g; ++j) {
    CPoly Nj = twist_poly(l.num, g, j), Dj = twist_poly(l.den, g, j);
    P = cp_add(cp_mul(P, Dj, g), cp_mul(Nj, Q, g), g);
    Q = cp_mul(Q, Dj, g);
  }
  CPoly lhs = cp_mul(P, compose_power(l.den, g), g);
  CPoly rhs = cp_mul(compose_power(l.num, g), Q, g);
  for (auto& c : rhs) c = c.scaled(pow_u(g, n));
  cp_trim(lhs);
  cp_trim(rhs);
  if (lhs.size() != rhs.size()) return false;
  for (size_t i = 0; i < lhs.size(); ++i)
    if (lhs[i] != rhs[i]) return false;
  return true;
}

json cyclo_to_json(const CycloElement& x) {
  json coords = json::array();
  for (auto& c : x.coords()) coords.push_back(rat_str(c));
  return json{{"conductor", x.conductor()}, {"coords", coords}};
}

json padic_value_to_json(const PadicValue& v) {
  const UnramifiedElement& x = v.value;
  json j;
  j["p"] = x.ctx()->p;
  j["degree"] = x.ctx()->d;
  json mod = json::array();
  for (auto& c : x.ctx()->modulus) mod.push_back(c.get_str());
  j["modulus"] = mod;
  if (x.is_exact_zero()) {
    j["val"] = nullptr;
    j["coords"] = json::array();
  } else {
    j["val"] = x.val();
    json u = json::array();
    for (auto& c : x.unit()) u.push_back(c.get_str());
    j["coords"] = u;
  }
  j["prec"] = x.prec();
  j["prec_effective"] = v.prec_effective;
  return j;
}

}  // namespace wl
