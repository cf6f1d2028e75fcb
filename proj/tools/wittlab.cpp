// wittlab: batch front end over the library. Text output starts with a
// "# wittlab <command> seed=<n>" header; --json emits one object holding the
// same header fields and a "result" built from the module serializers.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage or invalid input,
// 3 internal invariant breach.

#include "wittlab/bc.hpp"
#include "wittlab/fbar.hpp"
#include "wittlab/lfun.hpp"
#include "wittlab/serialize.hpp"
#include "wittlab/standard_model.hpp"
#include "wittlab/witt.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <string>
#include <vector>

using namespace wl;

namespace {

struct Out {
  std::vector<std::string> lines;
  json result;
  int code = 0;
  void line(std::string s) { lines.push_back(std::move(s)); }
};

struct Opts {
  bool json_mode = false;
  u64 seed = kDefaultSeed;
  u64 p = 0, l = 0, n = 0, N = 0, M = 0, f = 0, i = 0;
  unsigned m = 0, k = 0, levels = 0, steps = 0, symbolic = 0;
  int K = 8;
  int cap = 64;
  std::string ring = "Z", vars, x, y, trunc, route = "auto", strategy = "lex";
  std::string gamma, beta, op, v, coords;
  std::vector<std::string> polys;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  size_t pos = 0;
  while (true) {
    size_t end = s.find(sep, pos);
    std::string t = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    size_t a = t.find_first_not_of(' '), b = t.find_last_not_of(' ');
    out.push_back(a == std::string::npos ? "" : t.substr(a, b - a + 1));
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return out;
}

std::vector<u64> parse_u64_list(const std::string& s) {
  std::vector<u64> out;
  for (auto& t : split(s, ',')) out.push_back(std::stoull(t));
  return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

// ---- text forms of Z[Q/Z] and BC elements (inverse of their str()) ---------

struct Cursor {
  const std::string& s;
  size_t pos = 0;
  void ws() {
    while (pos < s.size() && s[pos] == ' ') ++pos;
  }
  bool done() {
    ws();
    return pos >= s.size();
  }
  bool eat(const std::string& t) {
    ws();
    if (s.compare(pos, t.size(), t) == 0) {
      pos += t.size();
      return true;
    }
    return false;
  }
  std::string token(const std::string& allowed) {
    ws();
    size_t a = pos;
    while (pos < s.size() && allowed.find(s[pos]) != std::string::npos) ++pos;
    return s.substr(a, pos - a);
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw MathError("cannot parse '" + s + "' at offset " + std::to_string(pos) + ": " + what);
  }
};

// "2*e(1/3) - e(1/4) + 5", constants sit at e(0/1)
QZElement parse_qz(const std::string& s) {
  Cursor c{s};
  QZElement out;
  if (c.eat("0") && c.done()) return out;
  c.pos = 0;
  bool first = true;
  while (!c.done()) {
    int sign = 1;
    bool plus = c.eat("+");
    if (c.eat("-")) {
      sign = -1;
    } else if (!plus && !first) {
      c.fail("expected + or -");
    }
    first = false;
    Rat coef = 1;
    Frac g{};
    if (!c.eat("e(")) {
      std::string num = c.token("0123456789/");
      if (num.empty()) c.fail("expected a coefficient or e(...)");
      coef = parse_rat(num);
      if (c.eat("*")) {
        if (!c.eat("e(")) c.fail("expected e(");
      } else {
        out.add_term(g, sign * coef);
        continue;
      }
    }
    std::string frac = c.token("0123456789/");
    if (!c.eat(")")) c.fail("expected )");
    g = parse_frac(frac);
    out.add_term(g, sign * coef);
  }
  return out;
}

// "mu~_2 (e(1/3)) mu*_5 + (1)"; a bare "mu~_2" has coefficient 1
BCElement parse_bc(const std::string& s) {
  Cursor c{s};
  BCElement out;
  if (c.eat("0") && c.done()) return out;
  c.pos = 0;
  bool first = true;
  while (!c.done()) {
    Rat sign = 1;
    if (c.eat("+")) {
    } else if (c.eat("-")) {
      sign = -1;
    } else if (!first) {
      c.fail("expected + or -");
    }
    first = false;
    u64 a = 1, b = 1;
    if (c.eat("mu~_")) {
      std::string t = c.token("0123456789");
      if (t.empty()) c.fail("expected an index after mu~_");
      a = std::stoull(t);
    }
    QZElement X = QZElement::constant(1);
    c.ws();
    if (c.pos < s.size() && s[c.pos] == '(') {
      size_t start = ++c.pos;
      int depth = 1;
      while (c.pos < s.size() && depth) {
        if (s[c.pos] == '(') ++depth;
        if (s[c.pos] == ')') --depth;
        ++c.pos;
      }
      if (depth) c.fail("unbalanced parentheses");
      X = parse_qz(s.substr(start, c.pos - 1 - start));
    }
    if (c.eat("mu*_")) {
      std::string t = c.token("0123456789");
      if (t.empty()) c.fail("expected an index after mu*_");
      b = std::stoull(t);
    }
    out = out + sign * BCElement::monomial(a, X, b);
  }
  return out;
}

Frac parse_gamma(const std::string& s) {
  if (s.empty()) throw MathError("--gamma is required");
  return parse_frac(s);
}

// ---- witt ------------------------------------------------------------------

Route parse_route(const std::string& s) {
  if (s == "auto") return Route::Auto;
  if (s == "ghost") return Route::Ghost;
  if (s == "universal") return Route::Universal;
  throw MathError("unknown route " + s + " (auto, ghost, universal)");
}

template <class R>
WittVector<R> read_witt(const R& ring, const std::string& comps, const std::string& trunc) {
  auto c = split(comps, ',');
  if (c.empty()) throw MathError("empty Witt vector");
  TruncationSet t = trunc.empty() ? TruncationSet::range(c.size()) : TruncationSet(parse_u64_list(trunc));
  if (t.size() != c.size())
    throw MathError("truncation " + t.str() + " has " + std::to_string(t.size()) + " indices but " + std::to_string(c.size()) + " components were given");
  std::vector<typename R::Elem> e;
  for (auto& s : c) e.push_back(ring.parse(s));
  return WittVector<R>(ring, t, std::move(e));
}

template <class R>
void emit_witt(Out& out, const WittVector<R>& w) {
  for (u64 n : w.trunc().elements()) out.line(std::to_string(n) + ": " + w.ring().str(w.at(n)));
  out.result = witt_to_json(w);
}

template <class F>
void with_ring(const Opts& o, F&& f) {
  if (o.ring == "Z") return f(IntegerRing{});
  if (o.ring == "Q") return f(RationalRing{});
  if (o.ring == "Fp") {
    if (o.p < 2 || !is_prime(o.p)) throw MathError("--ring Fp needs a prime --p");
    return f(PrimeFieldRing(o.p));
  }
  if (o.ring == "Zx") {
    if (o.vars.empty()) throw MathError("--ring Zx needs --vars");
    return f(ZPolyRing(split(o.vars, ',')));
  }
  throw MathError("unknown ring " + o.ring + " (Z, Q, Fp, Zx)");
}

// --symbolic N: x = (x1..xN), y = (y1..yN) over Z[x, y]
void apply_symbolic(Opts& o, const std::string& sx, const std::string& sy) {
  if (!o.symbolic) return;
  auto vx = indexed_vars(sx, o.symbolic, 1), vy = indexed_vars(sy, o.symbolic, 1);
  std::vector<std::string> all(vx);
  all.insert(all.end(), vy.begin(), vy.end());
  o.ring = "Zx";
  o.vars = join(all, ",");
  o.x = join(vx, ",");
  o.y = join(vy, ",");
}

void witt_cmd(Opts o, const std::string& cmd, Out& out) {
  apply_symbolic(o, cmd == "lambda-star" ? "a" : "x", cmd == "lambda-star" ? "b" : "y");
  Route route = parse_route(o.route);
  with_ring(o, [&](const auto& ring) {
    using R = std::decay_t<decltype(ring)>;
    if (cmd == "lambda-star") {
      auto ca = split(o.x, ','), cb = split(o.y, ',');
      std::vector<typename R::Elem> a, b;
      for (auto& s : ca) a.push_back(ring.parse(s));
      for (auto& s : cb) b.push_back(ring.parse(s));
      auto h = lambda_star(LambdaSeries<R>(ring, a), LambdaSeries<R>(ring, b), route);
      for (u64 k = 1; k <= h.degree(); ++k) out.line("t^" + std::to_string(k) + ": " + ring.str(h.coeff(k)));
      out.result = lambda_to_json(h);
      return;
    }
    auto x = read_witt(ring, o.x, o.trunc);
    if (cmd == "add" || cmd == "mul") {
      auto y = read_witt(ring, o.y, o.trunc);
      emit_witt(out, cmd == "add" ? witt_add(x, y, route) : witt_mul(x, y, route));
    } else if (cmd == "frob") {
      emit_witt(out, frobenius(x, o.n, nullptr, route));
    } else if (cmd == "versch") {
      u64 N = o.N ? o.N : checked_mul(o.n, x.trunc().max());
      emit_witt(out, verschiebung(x, o.n, TruncationSet::range(N)));
    } else if (cmd == "ghost") {
      json arr = json::array();
      for (u64 n : x.trunc().elements()) {
        if (o.n && n != o.n) continue;
        auto g = ring.str(ghost(x, n));
        out.line(o.n ? g : "gh_" + std::to_string(n) + ": " + g);
        arr.push_back(json{{"n", n}, {"value", g}});
      }
      if (arr.empty()) throw MathError("ghost: index " + std::to_string(o.n) + " outside truncation");
      out.result = arr;
    } else if (cmd == "theta") {
      json arr = json::array();
      for (auto& [n, w] : theta_decompose(x, o.p, o.M, o.k)) {
        std::vector<std::string> c;
        for (auto& e : w.comps()) c.push_back(ring.str(e));
        out.line("n=" + std::to_string(n) + ": [" + join(c, ", ") + "]");
        arr.push_back(json{{"n", n}, {"witt", witt_to_json(w)}});
      }
      out.result = arr;
    }
  });
}

void artin_hasse_cmd(const Opts& o, Out& out) {
  auto E = artin_hasse(o.p, o.N);
  RationalRing Q;
  auto x = E.witt(Q);
  auto f = E.series(Q);
  std::vector<std::string> comps, series;
  for (auto& c : E.comps) comps.push_back(rat_str(c));
  for (auto& c : f.coeffs()) series.push_back(rat_str(c));
  out.line("witt: [" + join(comps, ", ") + "]");
  out.line("series: [" + join(series, ", ") + "]");
  bool idem = lambda_star(f, f).equals(f);
  bool killed = true;
  for (u64 m : {2, 3, 5})
    if (m != o.p && m <= o.N && !frobenius(x, m).is_zero()) killed = false;
  out.line(std::string("E*E = E: ") + (idem ? "ok" : "FAIL"));
  out.line(std::string("F_m(E) = 0 for m in {2,3,5}, m != p: ") + (killed ? "ok" : "FAIL"));
  out.result = json{{"p", o.p}, {"T", o.N}, {"witt", witt_to_json(x)}, {"series", lambda_to_json(f)}, {"idempotent", idem}, {"frobenius_kills", killed}};
  if (!idem || !killed) out.code = 1;
}

// ---- fbar ------------------------------------------------------------------

SearchStrategy parse_strategy(const std::string& s) {
  if (s == "lex") return SearchStrategy::Lexicographic;
  if (s == "first") return SearchStrategy::FirstFound;
  throw MathError("unknown strategy " + s + " (lex, first)");
}

json level_poly_json(u64 p, unsigned level, const FPoly& f) { return json{{"p", p}, {"level", level}, {"poly", poly_to_json(f)}}; }

void fbar_cmd(const Opts& o, const std::string& cmd, Out& out) {
  if (cmd == "u") {
    u64 u = u_exponent(o.p, o.l);
    out.line(std::to_string(u));
    out.result = json{{"p", o.p}, {"l", o.l}, {"u", u}};
    return;
  }
  if (cmd == "witt-tower") {
    json arr = json::array();
    for (auto& e : witt_as_tower(o.p, o.levels)) {
      out.line(e.str());
      auto j = level_poly_json(o.p, e.level, e.rhs);
      j["irreducible"] = e.irreducible;
      arr.push_back(j);
    }
    out.result = arr;
    return;
  }
  if (cmd == "dsl-tower") {
    json arr = json::array();
    for (auto& s : dsl_chain(o.p, o.steps)) {
      out.line(s.str());
      auto j = level_poly_json(o.p, s.step, s.alpha);
      j["irreducible"] = s.irreducible;
      j["degree"] = s.degree;
      arr.push_back(j);
    }
    out.result = arr;
    return;
  }
  if (cmd == "conway-verify") {
    ConwaySequence seq;
    if (o.polys.empty()) {
      seq = conway_sequence(o.p, o.n, parse_strategy(o.strategy));
    } else {
      seq.p = o.p;
      // n=c0,c1,...,1
      for (auto& spec : o.polys) {
        auto eq = spec.find('=');
        if (eq == std::string::npos) throw MathError("--poly expects n=c0,c1,...");
        seq.polys.emplace(static_cast<unsigned>(std::stoul(spec.substr(0, eq))), FpPoly(o.p, parse_u64_list(spec.substr(eq + 1))));
      }
    }
    auto rep = verify_conway(seq);
    json arr = json::array();
    for (auto& c : rep.checks) {
      std::string s = "level " + std::to_string(c.level);
      if (c.other) s += "|" + std::to_string(c.other);
      out.line(s + " " + c.condition + " " + (c.pass ? "PASS" : "FAIL"));
      arr.push_back(json{{"level", c.level}, {"other", c.other}, {"condition", c.condition}, {"pass", c.pass}});
    }
    out.line(rep.ok() ? "conway: ok" : "conway: FAIL");
    out.result = json{{"p", o.p}, {"ok", rep.ok()}, {"checks", arr}};
    if (!rep.ok()) out.code = 1;
    return;
  }
  auto seq = conway_sequence(o.p, o.n, parse_strategy(o.strategy));
  if (cmd == "conway-gen") {
    json arr = json::array();
    for (auto& [lvl, P] : seq.polys) {
      out.line("P_" + std::to_string(lvl) + " = " + P.str());
      arr.push_back(level_poly_json(o.p, lvl, P.to_sparse()));
    }
    out.result = arr;
    return;
  }
  FieldTower tower(seq);
  auto tr = compute_trace_invariant(tower, o.n);
  if (cmd == "trace") {
    json arr = json::array();
    for (auto& [rep, val] : tr.values) {
      size_t sz = frobenius_orbit(o.p, rep).size();
      out.line(rep.str() + " size=" + std::to_string(sz) + " tr=" + std::to_string(val));
      arr.push_back(json{{"rep", rep.str()}, {"size", sz}, {"tr", val}});
    }
    out.result = json{{"p", o.p}, {"n", o.n}, {"orbits", arr}};
  } else if (cmd == "charpoly") {
    FpPoly P = reconstruct_charpoly(tr, o.n);
    bool ok = P == seq.at(o.n);
    out.line("P_" + std::to_string(o.n) + " = " + P.str());
    out.line(ok ? "matches the sequence: yes" : "matches the sequence: NO");
    auto j = level_poly_json(o.p, o.n, P.to_sparse());
    j["matches"] = ok;
    out.result = j;
    if (!ok) out.code = 1;
  }
}

// ---- bc --------------------------------------------------------------------

void bc_cmd(const Opts& o, const std::string& cmd, Out& out) {
  if (cmd == "mul") {
    auto z = bc_mul(parse_bc(o.x), parse_bc(o.y));
    out.line(z.str());
    out.result = bc_to_json(z);
  } else if (cmd == "jp-test") {
    bool in = jp_membership(parse_bc(o.x), o.p);
    out.line(std::string("in J_p: ") + (in ? "yes" : "no"));
    out.result = json{{"p", o.p}, {"element", bc_to_json(parse_bc(o.x))}, {"member", in}};
  } else if (cmd == "apply") {
    BCElement op = parse_bc(o.op);
    std::vector<u64> dens{1};
    for (auto& [key, X] : op.terms())
      for (auto& [g, c] : X.support()) dens.push_back(g.b);
    SigmaSpec spec = SigmaSpec::standard(o.p);
    UnramCtx ctx = spec.context(SigmaSpec::residue_degree(o.p, dens), o.K);
    RepVector v = RepVector::zero(ctx, o.M);
    for (auto& t : split(o.v, ',')) {
      auto colon = t.find(':');
      u64 idx = std::stoull(t.substr(0, colon));
      Rat c = colon == std::string::npos ? Rat(1) : parse_rat(t.substr(colon + 1));
      v.set(idx, v.at(idx) + UnramifiedElement::from_rat(ctx, c));
    }
    RepVector w = pi_apply(op, v, spec);
    out.line(w.str());
    json comps = json::object();
    for (auto& [m, c] : w.comps) comps[std::to_string(m)] = c.str();
    out.result = json{{"p", o.p}, {"K", o.K}, {"M", o.M}, {"degree", ctx->d}, {"comps", comps}};
  } else if (cmd == "relations") {
    auto rep = relations_check(o.p, o.N, o.K, o.seed);
    json arr = json::array();
    for (auto& r : rep.results) {
      out.line(r.name + " cases=" + std::to_string(r.cases) + " failures=" + std::to_string(r.failures) + (r.pass() ? " PASS" : " FAIL"));
      arr.push_back(json{{"name", r.name}, {"cases", r.cases}, {"failures", r.failures}, {"first_failure", r.first_failure}});
    }
    out.line(rep.ok() ? "relations: ok" : "relations: FAIL");
    out.result = json{{"p", o.p}, {"bound", o.N}, {"K", o.K}, {"degree", rep.degree}, {"ok", rep.ok()}, {"results", arr}};
    if (!rep.ok()) out.code = 1;
  }
}

// ---- lfun ------------------------------------------------------------------

void lfun_cmd(const Opts& o, const std::string& cmd, Out& out) {
  if (cmd == "bernoulli") {
    json arr = json::array();
    for (unsigned k = 0; k <= o.n; ++k) {
      out.line("B_" + std::to_string(k) + "(u) = " + bernoulli_poly(k).to_string());
      arr.push_back(json{{"n", k}, {"poly", poly_to_json(bernoulli_poly(k))}});
    }
    out.result = arr;
  } else if (cmd == "polylog") {
    auto r = polylog_neg(static_cast<unsigned>(o.n));
    out.line("l_{-" + std::to_string(o.n) + "}(z) = " + r.str());
    json num = json::array(), den = json::array();
    for (auto& c : r.num) num.push_back(rat_str(c));
    for (auto& c : r.den) den.push_back(rat_str(c));
    out.result = json{{"n", o.n}, {"num", num}, {"den", den}};
  } else if (cmd == "y") {
    auto v = y_m(parse_gamma(o.gamma), o.m, o.f);
    out.line(v.str());
    out.result = cyclo_to_json(v);
  } else if (cmd == "z-exact") {
    auto v = z_exact(parse_gamma(o.gamma), o.m, o.p);
    out.line(v.str());
    out.result = cyclo_to_json(v);
  } else if (cmd == "residue") {
    auto v = residue_at_one(parse_gamma(o.gamma), o.p, o.f);
    out.line(v.str());
    out.result = cyclo_to_json(v);
  } else if (cmd == "symmetry") {
    Frac g = parse_gamma(o.gamma);
    Frac neg = make_frac(-static_cast<i64>(g.a), g.b);
    auto a = z_exact(g, o.m, o.p), b = z_exact(neg, o.m, o.p);
    bool ok = symmetry_check(g, o.m, o.p);
    out.line("Z(" + g.str() + ") = " + a.str());
    out.line("Z(" + neg.str() + ") = " + b.str());
    out.line(ok ? "symmetric: yes" : "symmetric: NO");
    out.result = json{{"gamma", g.str()}, {"value", cyclo_to_json(a)}, {"reflected", cyclo_to_json(b)}, {"symmetric", ok}};
    if (!ok) out.code = 1;
  } else if (cmd == "z-padic") {
    if (o.beta.empty()) throw MathError("--beta is required");
    Rat beta = parse_rat(o.beta);
    PadicNumber b = beta == 0 ? PadicNumber::zero(o.p, 2 * o.K + 8) : PadicNumber::from_rat(beta, o.p, 2 * o.K + 8);
    SigmaSpec spec = SigmaSpec::standard(o.p);
    auto v = z_padic(parse_gamma(o.gamma), b, spec, o.K, o.f);
    out.line(v.value.str());
    out.line("prec_effective = " + std::to_string(v.prec_effective));
    out.result = padic_value_to_json(v);
  } else if (cmd == "kms") {
    BCElement x = parse_bc(o.x);
    if (o.y.empty()) {
      auto phi = kms_phi(x, o.m, o.p);
      out.line("phi = " + phi.str());
      out.result = json{{"phi", cyclo_to_json(phi)}};
      return;
    }
    auto r = kms_verify(x, parse_bc(o.y), KmsPoint::exact(o.p, o.m));
    out.line("phi(x sigma(y)) = " + r.lhs.str());
    out.line("phi(y x) = " + r.rhs.str());
    out.line(r.equal ? "kms: ok" : "kms: FAIL");
    out.result = json{{"lhs", cyclo_to_json(r.lhs)}, {"rhs", cyclo_to_json(r.rhs)}, {"equal", r.equal}};
    if (!r.equal) out.code = 1;
  }
}

// ---- model -----------------------------------------------------------------

void model_cmd(const Opts& o, const std::string& cmd, Out& out) {
  if (cmd == "eta") {
    auto e = eta(o.l, o.k, o.i);
    out.line("arg = " + e.arg.str());
    out.line("value = " + e.value.str());
    out.line("minpoly = " + qdense_str(e.minpoly));
    json mp = json::array();
    for (auto& c : e.minpoly) mp.push_back(rat_str(c));
    out.result = json{{"l", e.ell}, {"k", e.k}, {"i", e.i}, {"arg", e.arg.str()}, {"value", cyclo_to_json(e.value)}, {"minpoly", mp}};
  } else if (cmd == "primes-above") {
    json arr = json::array();
    for (auto& P : primes_above(o.l, o.p)) {
      out.line(P.str());
      arr.push_back(prime_above_to_json(P));
    }
    out.result = arr;
  } else if (cmd == "val") {
    if (!o.coords.empty()) {
      std::vector<Rat> c;
      for (auto& t : split(o.coords, ',')) c.push_back(parse_rat(t));
      auto v = val_ramified_coords(c, o.N, o.p);
      out.line(v ? rat_str(*v) : "inf");
      out.result = json{{"p", o.p}, {"n", o.N}, {"val", v ? json(rat_str(*v)) : json(nullptr)}};
      return;
    }
    auto r = val_inertia(parse_qz(o.x), conway_sequence(o.p, 1), o.p, o.cap);
    out.line(r.str());
    out.result = json{{"p", o.p}, {"val", rat_str(r.value)}, {"lower_bound", r.lower_bound}, {"precision", r.precision}};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wittlab: exact Witt vector, BC-system and p-adic L-value computations"};
  app.require_subcommand(1);
  app.fallthrough();
  Opts o;
  app.add_flag("--json", o.json_mode, "emit JSON");
  app.add_option("--seed", o.seed, "RNG seed, recorded in the output header (default 1592598564)");

  std::string path;
  std::function<void(Out&)> runner;
  auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help, std::function<void(Out&)> fn) {
    auto* s = group->add_subcommand(name, help);
    s->callback([&path, &runner, group, name, fn] {
      path = group->get_name() + " " + name;
      runner = fn;
    });
    return s;
  };
  auto opt_p = [&](CLI::App* s) { s->add_option("--p", o.p, "prime")->required(); };

  // witt
  auto* witt = app.add_subcommand("witt", "big Witt vectors");
  witt->require_subcommand(1);
  auto witt_common = [&](CLI::App* s, bool two) {
    s->add_option("--ring", o.ring, "Z, Q, Fp (with --p) or Zx (with --vars)");
    s->add_option("--p", o.p, "prime for --ring Fp");
    s->add_option("--vars", o.vars, "comma-separated variables for --ring Zx");
    s->add_option("--x", o.x, "components, comma separated");
    if (two) s->add_option("--y", o.y, "components, comma separated");
    s->add_option("--trunc", o.trunc, "truncation set (default 1..len)");
    s->add_option("--route", o.route, "auto, ghost or universal");
    s->add_option("--symbolic", o.symbolic, "use generic vectors x1..xN (and y1..yN) over Z");
  };
  for (std::string c : {"add", "mul"}) witt_common(leaf(witt, c, "Witt " + c, [&, c](Out& out) { witt_cmd(o, c, out); }), true);
  {
    auto* s = leaf(witt, "frob", "Frobenius F_n", [&](Out& out) { witt_cmd(o, "frob", out); });
    witt_common(s, false);
    s->add_option("--n", o.n, "index")->required();
    s = leaf(witt, "versch", "Verschiebung V_n into W_{1..N}", [&](Out& out) { witt_cmd(o, "versch", out); });
    witt_common(s, false);
    s->add_option("--n", o.n, "index")->required();
    s->add_option("--N", o.N, "target truncation 1..N (default n * max)");
    s = leaf(witt, "ghost", "ghost components", [&](Out& out) { witt_cmd(o, "ghost", out); });
    witt_common(s, false);
    s->add_option("--n", o.n, "single component (default all)");
    s = leaf(witt, "lambda-star", "star product of 1 + sum a_k t^k and 1 + sum b_k t^k", [&](Out& out) { witt_cmd(o, "lambda-star", out); });
    witt_common(s, true);
    s = leaf(witt, "theta", "p-typical decomposition (F_n x)_{p^k}", [&](Out& out) { witt_cmd(o, "theta", out); });
    witt_common(s, false);
    s->add_option("--M", o.M, "largest n")->required();
    s->add_option("--length", o.k, "p-typical length")->required();
    s = leaf(witt, "artin-hasse", "Artin-Hasse exponential E_p", [&](Out& out) { artin_hasse_cmd(o, out); });
    opt_p(s);
    s->add_option("--T", o.N, "degree")->required();
  }

  // fbar
  auto* fbar = app.add_subcommand("fbar", "finite field towers");
  fbar->require_subcommand(1);
  {
    auto seq_opts = [&](CLI::App* s) {
      opt_p(s);
      s->add_option("--n", o.n, "level")->required();
      s->add_option("--strategy", o.strategy, "lex or first");
    };
    seq_opts(leaf(fbar, "conway-gen", "Conway-condition sequence up to level n", [&](Out& out) { fbar_cmd(o, "conway-gen", out); }));
    auto* s = leaf(fbar, "conway-verify", "check the Conway conditions", [&](Out& out) { fbar_cmd(o, "conway-verify", out); });
    opt_p(s);
    s->add_option("--n", o.n, "level of the generated sequence");
    s->add_option("--strategy", o.strategy, "lex or first");
    s->add_option("--poly", o.polys, "n=c0,c1,...,1 (repeatable); replaces the generated sequence");
    seq_opts(leaf(fbar, "trace", "trace invariant on orbits of level n", [&](Out& out) { fbar_cmd(o, "trace", out); }));
    seq_opts(leaf(fbar, "charpoly", "P_n rebuilt from the trace invariant", [&](Out& out) { fbar_cmd(o, "charpoly", out); }));
    s = leaf(fbar, "witt-tower", "equations of x + 1 in p-typical coordinates", [&](Out& out) { fbar_cmd(o, "witt-tower", out); });
    opt_p(s);
    s->add_option("--levels", o.levels, "number of levels")->required();
    s = leaf(fbar, "dsl-tower", "Artin-Schreier chain", [&](Out& out) { fbar_cmd(o, "dsl-tower", out); });
    opt_p(s);
    s->add_option("--steps", o.steps, "number of steps")->required();
    s = leaf(fbar, "u", "u(p, l)", [&](Out& out) { fbar_cmd(o, "u", out); });
    opt_p(s);
    s->add_option("--l", o.l, "prime l")->required();
  }

  // bc
  auto* bc = app.add_subcommand("bc", "integral BC algebra");
  bc->require_subcommand(1);
  {
    auto* s = leaf(bc, "mul", "product of BC elements", [&](Out& out) { bc_cmd(o, "mul", out); });
    s->add_option("--x", o.x, "e.g. 'mu~_2 (e(1/3)) mu*_5'")->required();
    s->add_option("--y", o.y)->required();
    s = leaf(bc, "apply", "p-adic representation on sum c_m eps_m", [&](Out& out) { bc_cmd(o, "apply", out); });
    opt_p(s);
    s->add_option("--op", o.op, "BC element")->required();
    s->add_option("--v", o.v, "m:c,... (c rational)")->required();
    s->add_option("--K", o.K, "precision");
    s->add_option("--M", o.M, "index bound")->required();
    s = leaf(bc, "jp-test", "membership in J_p", [&](Out& out) { bc_cmd(o, "jp-test", out); });
    opt_p(s);
    s->add_option("--x", o.x)->required();
    s = leaf(bc, "relations", "presentation identities on basis vectors", [&](Out& out) { bc_cmd(o, "relations", out); });
    opt_p(s);
    s->add_option("--bound", o.N, "largest index")->required();
    s->add_option("--K", o.K, "precision");
  }

  // lfun
  auto* lfun = app.add_subcommand("lfun", "L-values and KMS functionals");
  lfun->require_subcommand(1);
  {
    auto* s = leaf(lfun, "bernoulli", "B_0 .. B_n", [&](Out& out) { lfun_cmd(o, "bernoulli", out); });
    s->add_option("--n", o.n)->required();
    s = leaf(lfun, "polylog", "l_{-n}", [&](Out& out) { lfun_cmd(o, "polylog", out); });
    s->add_option("--n", o.n)->required();
    s = leaf(lfun, "y", "Y_m(gamma)", [&](Out& out) { lfun_cmd(o, "y", out); });
    s->add_option("--gamma", o.gamma, "a/b")->required();
    s->add_option("--m", o.m)->required();
    s->add_option("--f", o.f, "multiple of b (default b)");
    for (std::string c : {"z-exact", "symmetry"}) {
      s = leaf(lfun, c, c == "z-exact" ? "Z(gamma, 1 - m)" : "Z(gamma) = Z(-gamma)", [&, c](Out& out) { lfun_cmd(o, c, out); });
      opt_p(s);
      s->add_option("--gamma", o.gamma, "a/b")->required();
      s->add_option("--m", o.m, "positive multiple of phi(q)")->required();
    }
    s = leaf(lfun, "residue", "residue at beta = 1", [&](Out& out) { lfun_cmd(o, "residue", out); });
    opt_p(s);
    s->add_option("--gamma", o.gamma, "a/b")->required();
    s->add_option("--f", o.f, "multiple of b q");
    s = leaf(lfun, "z-padic", "series value at p-adic beta", [&](Out& out) { lfun_cmd(o, "z-padic", out); });
    opt_p(s);
    s->add_option("--gamma", o.gamma, "a/b")->required();
    s->add_option("--beta", o.beta, "rational in Z_p")->required();
    s->add_option("--K", o.K, "precision");
    s->add_option("--f", o.f, "multiple of b q");
    s = leaf(lfun, "kms", "phi(x), or the KMS condition for (x, y)", [&](Out& out) { lfun_cmd(o, "kms", out); });
    opt_p(s);
    s->add_option("--m", o.m, "beta = 1 - m")->required();
    s->add_option("--x", o.x)->required();
    s->add_option("--y", o.y);
  }

  // model
  auto* model = app.add_subcommand("model", "standard model of F_p-bar");
  model->require_subcommand(1);
  {
    auto* s = leaf(model, "eta", "eta_{l,k,i}", [&](Out& out) { model_cmd(o, "eta", out); });
    s->add_option("--l", o.l)->required();
    s->add_option("--k", o.k)->required();
    s->add_option("--i", o.i);
    s = leaf(model, "primes-above", "primes above p in B_l", [&](Out& out) { model_cmd(o, "primes-above", out); });
    s->add_option("--l", o.l)->required();
    opt_p(s);
    s = leaf(model, "val", "valuation of sum n_j e(g_j), or of coordinates on pi^j", [&](Out& out) { model_cmd(o, "val", out); });
    opt_p(s);
    s->add_option("--x", o.x, "e.g. '1 - e(1/3)'");
    s->add_option("--cap", o.cap, "precision cap");
    s->add_option("--n", o.N, "level p^k for --coords");
    s->add_option("--coords", o.coords, "rational coordinates a_0,a_1,...");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (!runner) {
    std::cerr << app.help();
    return 2;
  }

  Out out;
  try {
    runner(out);
  } catch (const MathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number (" << e.what() << ")\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "internal invariant breach: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }

  if (o.json_mode) {
    std::cout << json{{"command", path}, {"seed", o.seed}, {"result", out.result}}.dump() << "\n";
  } else {
    std::cout << "# wittlab " << path << " seed=" << o.seed << "\n";
    for (auto& l : out.lines) std::cout << l << "\n";
  }
  return out.code;
}
