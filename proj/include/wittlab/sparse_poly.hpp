#pragma once
// Sparse multivariate polynomials. Terms are kept sorted in graded-lex
// descending order (x0 > x1 > ...), which is also the serialization order.

#include "wittlab/arith.hpp"
#include "wittlab/fp.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wl {

using Exps = std::vector<std::uint32_t>;

struct ExpsHash {
  size_t operator()(const Exps& e) const noexcept {
    size_t h = 1469598103934665603ULL;
    for (auto x : e) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

inline unsigned exps_degree(const Exps& e) {
  unsigned d = 0;
  for (auto x : e) d += x;
  return d;
}

// true when a comes strictly before b in graded-lex descending order
inline bool grlex_before(const Exps& a, const Exps& b) {
  unsigned da = exps_degree(a), db = exps_degree(b);
  if (da != db) return da > db;
  return a > b;
}

template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Int> {
  static bool is_zero(const Int& c) { return c == 0; }
  static bool is_one(const Int& c) { return c == 1; }
  static bool negative(const Int& c) { return c < 0; }
  static std::string str(const Int& c) { return c.get_str(); }
};

template <>
struct CoeffTraits<Rat> {
  static bool is_zero(const Rat& c) { return c == 0; }
  static bool is_one(const Rat& c) { return c == 1; }
  static bool negative(const Rat& c) { return c < 0; }
  static std::string str(const Rat& c) { return c.get_str(); }
};

template <>
struct CoeffTraits<Fp> {
  static bool is_zero(const Fp& c) { return c.v == 0; }
  static bool is_one(const Fp& c) { return c.v == 1; }
  static bool negative(const Fp&) { return false; }
  static std::string str(const Fp& c) { return c.str(); }
};

template <class C>
class SparsePoly {
 public:
  using Term = std::pair<Exps, C>;
  using Traits = CoeffTraits<C>;

  SparsePoly() = default;
  explicit SparsePoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static SparsePoly from_terms(std::vector<std::string> vars, std::vector<Term> terms) {
    SparsePoly out(std::move(vars));
    std::unordered_map<Exps, C, ExpsHash> acc;
    for (auto& [e, c] : terms) {
      if (e.size() != out.vars_.size()) throw MathError("exponent arity mismatch");
      auto it = acc.find(e);
      if (it == acc.end())
        acc.emplace(e, c);
      else
        it->second = it->second + c;
    }
    out.absorb(acc);
    return out;
  }
  static SparsePoly constant(std::vector<std::string> vars, const C& c) {
    SparsePoly out(std::move(vars));
    if (!Traits::is_zero(c)) out.terms_.push_back({Exps(out.vars_.size(), 0), c});
    return out;
  }
  static SparsePoly variable(std::vector<std::string> vars, size_t i, const C& one) {
    SparsePoly out(std::move(vars));
    Exps e(out.vars_.size(), 0);
    e.at(i) = 1;
    out.terms_.push_back({e, one});
    return out;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  size_t nvars() const { return vars_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  unsigned total_degree() const { return terms_.empty() ? 0 : exps_degree(terms_.front().first); }
  unsigned degree_in(size_t var) const {
    unsigned d = 0;
    for (auto& t : terms_) d = std::max(d, t.first[var]);
    return d;
  }
  C coefficient(const Exps& e) const {
    for (auto& t : terms_)
      if (t.first == e) return t.second;
    return C();
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }

  SparsePoly operator-() const {
    SparsePoly out = *this;
    for (auto& t : out.terms_) t.second = -t.second;
    return out;
  }

  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, false); }
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, true); }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    const auto& vars = a.vars_.size() >= b.vars_.size() ? a.vars_ : b.vars_;
    SparsePoly out(vars);
    if (a.is_zero() || b.is_zero()) return out;
    check_arity(a, b);
    if (a.terms_.size() == 1 || b.terms_.size() == 1) {
      // monomial times polynomial keeps the order, no hashing needed
      const SparsePoly& m = a.terms_.size() == 1 ? a : b;
      const SparsePoly& f = a.terms_.size() == 1 ? b : a;
      const auto& [me, mc] = m.terms_.front();
      out.terms_.reserve(f.terms_.size());
      for (auto& [e, c] : f.terms_) {
        C v = mc * c;
        if (Traits::is_zero(v)) continue;
        Exps s = e;
        for (size_t i = 0; i < s.size(); ++i) s[i] += me[i];
        out.terms_.push_back({std::move(s), std::move(v)});
      }
      return out;
    }
    std::unordered_map<Exps, C, ExpsHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size() / 2 + 8);
    Exps s(vars.size());
    for (auto& [ea, ca] : a.terms_) {
      for (auto& [eb, cb] : b.terms_) {
        for (size_t i = 0; i < s.size(); ++i) s[i] = ea[i] + eb[i];
        auto it = acc.find(s);
        if (it == acc.end())
          acc.emplace(s, ca * cb);
        else
          it->second += ca * cb;
      }
    }
    out.absorb(acc);
    return out;
  }

  SparsePoly& operator+=(const SparsePoly& o) { return *this = *this + o; }
  SparsePoly& operator-=(const SparsePoly& o) { return *this = *this - o; }
  SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

  SparsePoly scaled(const C& c) const {
    SparsePoly out(vars_);
    for (auto& [e, v] : terms_) {
      C w = v * c;
      if (!Traits::is_zero(w)) out.terms_.push_back({e, std::move(w)});
    }
    return out;
  }

  SparsePoly pow(unsigned k) const {
    if (k == 0) {
      if (terms_.empty() && vars_.empty()) throw MathError("pow: untyped zero polynomial");
      C one = terms_.empty() ? C() : terms_.front().second;
      return constant(vars_, unit_like(one));
    }
    SparsePoly r = *this;
    for (unsigned i = 1; i < k; ++i) r = r * *this;
    return r;
  }

  // Rename variables: variable i of this polynomial becomes map[i] of new_vars.
  SparsePoly remap(std::vector<std::string> new_vars, const std::vector<size_t>& map) const {
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (auto& [e, c] : terms_) {
      Exps f(new_vars.size(), 0);
      for (size_t i = 0; i < e.size(); ++i) f.at(map.at(i)) += e[i];
      ts.push_back({std::move(f), c});
    }
    return from_terms(std::move(new_vars), std::move(ts));
  }

  template <class D, class F>
  SparsePoly<D> map_coeffs(F f) const {
    std::vector<typename SparsePoly<D>::Term> ts;
    for (auto& [e, c] : terms_) ts.push_back({e, f(c)});
    return SparsePoly<D>::from_terms(vars_, std::move(ts));
  }

  // Evaluate at vals using conv to bring coefficients into the target ring.
  template <class R, class F>
  R eval(const std::vector<R>& vals, F conv, const R& zero) const {
    if (vals.size() != vars_.size()) throw MathError("eval: wrong number of values");
    std::vector<std::vector<R>> pw(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
      unsigned d = degree_in(i);
      if (d == 0) continue;
      pw[i].reserve(d + 1);
      pw[i].push_back(vals[i]);
      for (unsigned k = 1; k < d; ++k) pw[i].push_back(pw[i].back() * vals[i]);
    }
    R acc = zero;
    for (auto& [e, c] : terms_) {
      R t = conv(c);
      for (size_t i = 0; i < e.size(); ++i)
        if (e[i]) t = t * pw[i][e[i] - 1];
      acc = acc + t;
    }
    return acc;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [e, c] : terms_) {
      bool neg = Traits::negative(c);
      C a = neg ? C(-c) : c;
      std::string mono = monomial_str(e);
      std::string body;
      if (mono.empty())
        body = Traits::str(a);
      else if (Traits::is_one(a))
        body = mono;
      else
        body = Traits::str(a) + "*" + mono;
      if (first)
        out += (neg ? "-" : "") + body;
      else
        out += (neg ? " - " : " + ") + body;
      first = false;
    }
    return out;
  }

  std::string monomial_str(const Exps& e) const {
    std::string s;
    for (size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!s.empty()) s += "*";
      s += vars_[i];
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s;
  }

  // Parse the canonical text form (and looser variants: any term order,
  // '^' exponents, '*' separators, integer or a/b coefficients).
  static SparsePoly parse(const std::string& text, std::vector<std::string> vars,
                          const std::function<C(const std::string&)>& coeff) {
    std::vector<Term> ts;
    size_t i = 0, n = text.size();
    auto skip = [&] {
      while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    if (i == n) throw MathError("empty polynomial text");
    while (i < n) {
      bool neg = false;
      skip();
      while (i < n && (text[i] == '+' || text[i] == '-')) {
        if (text[i] == '-') neg = !neg;
        ++i;
        skip();
      }
      std::string num;
      Exps e(vars.size(), 0);
      bool any = false;
      for (;;) {
        skip();
        if (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
          std::string tok;
          while (i < n && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) tok += text[i++];
          if (!num.empty()) throw MathError("two coefficients in one term");
          num = tok;
        } else if (i < n && (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
          std::string name;
          while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) name += text[i++];
          auto it = std::find(vars.begin(), vars.end(), name);
          if (it == vars.end()) throw MathError("unknown variable '" + name + "'");
          unsigned ex = 1;
          skip();
          if (i < n && text[i] == '^') {
            ++i;
            skip();
            std::string d;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) d += text[i++];
            if (d.empty()) throw MathError("missing exponent");
            ex = static_cast<unsigned>(std::stoul(d));
          }
          e[it - vars.begin()] += ex;
        } else {
          throw MathError("unexpected character in polynomial text at offset " + std::to_string(i));
        }
        any = true;
        skip();
        if (i < n && text[i] == '*') {
          ++i;
          continue;
        }
        break;
      }
      if (!any) throw MathError("empty term");
      C c = coeff(num.empty() ? "1" : num);
      if (neg) c = -c;
      ts.push_back({std::move(e), std::move(c)});
      skip();
      if (i < n && text[i] != '+' && text[i] != '-') throw MathError("expected '+' or '-' in polynomial text");
    }
    return from_terms(std::move(vars), std::move(ts));
  }

 private:
  std::vector<std::string> vars_;
  std::vector<Term> terms_;

  static C unit_like(const C& proto) {
    if constexpr (std::is_same_v<C, Fp>)
      return Fp(1, proto.p);
    else
      return C(1);
  }

  static void check_arity(const SparsePoly& a, const SparsePoly& b) {
    if (a.vars_.size() != b.vars_.size() && !a.terms_.empty() && !b.terms_.empty())
      throw MathError("polynomial variable sets differ");
  }

  void absorb(std::unordered_map<Exps, C, ExpsHash>& acc) {
    terms_.clear();
    terms_.reserve(acc.size());
    for (auto& [e, c] : acc)
      if (!Traits::is_zero(c)) terms_.push_back({e, std::move(c)});
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return grlex_before(x.first, y.first); });
  }

  static SparsePoly merge(const SparsePoly& a, const SparsePoly& b, bool sub) {
    if (b.terms_.empty()) return a;
    if (a.terms_.empty()) return sub ? -b : b;
    check_arity(a, b);
    SparsePoly out(a.vars_);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && grlex_before(a.terms_[i].first, b.terms_[j].first))) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || grlex_before(b.terms_[j].first, a.terms_[i].first)) {
        out.terms_.push_back({b.terms_[j].first, sub ? C(-b.terms_[j].second) : b.terms_[j].second});
        ++j;
      } else {
        C c = sub ? C(a.terms_[i].second - b.terms_[j].second) : C(a.terms_[i].second + b.terms_[j].second);
        if (!Traits::is_zero(c)) out.terms_.push_back({a.terms_[i].first, std::move(c)});
        ++i, ++j;
      }
    }
    return out;
  }
};

using ZPoly = SparsePoly<Int>;
using QPoly = SparsePoly<Rat>;
using FPoly = SparsePoly<Fp>;

inline std::vector<std::string> indexed_vars(const std::string& stem, size_t n, size_t first = 0) {
  std::vector<std::string> v;
  for (size_t i = 0; i < n; ++i) v.push_back(stem + std::to_string(first + i));
  return v;
}

}  // namespace wl
