#pragma once
// Coefficient-ring descriptors for Witt vectors and Lambda series. Every
// descriptor exposes the same small interface (zero/one/from_int/add/sub/mul/
// neg/equal/is_zero/str/parse, torsion_free, divexact when torsion free).

#include "wittlab/arith.hpp"
#include "wittlab/fp.hpp"
#include "wittlab/fp_poly.hpp"
#include "wittlab/sparse_poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wl {

template <class R>
typename R::Elem ring_pow(const R& ring, typename R::Elem b, u64 e) {
  typename R::Elem r = ring.one();
  while (e) {
    if (e & 1) r = ring.mul(r, b);
    e >>= 1;
    if (e) b = ring.mul(b, b);
  }
  return r;
}

struct IntegerRing {
  using Elem = Int;
  static constexpr bool torsion_free = true;
  u64 char_p() const { return 0; }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(const Int& n) const { return n; }
  Elem from_rat(const Rat& r) const {
    if (r.get_den() != 1) throw MathError("not an integer: " + r.get_str());
    return r.get_num();
  }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool is_zero(const Elem& a) const { return a == 0; }
  std::optional<Elem> divexact(const Elem& a, u64 n) const {
    if (!mpz_divisible_ui_p(a.get_mpz_t(), n)) return std::nullopt;
    Elem q;
    mpz_divexact_ui(q.get_mpz_t(), a.get_mpz_t(), n);
    return q;
  }
  std::string name() const { return "Z"; }
  std::string str(const Elem& a) const { return a.get_str(); }
  Elem parse(const std::string& s) const { return Int(s); }
};

struct RationalRing {
  using Elem = Rat;
  static constexpr bool torsion_free = true;
  u64 char_p() const { return 0; }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(const Int& n) const { return Rat(n); }
  Elem from_rat(const Rat& r) const { return r; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool is_zero(const Elem& a) const { return a == 0; }
  std::optional<Elem> divexact(const Elem& a, u64 n) const { return Rat(a / Rat(Int(static_cast<unsigned long>(n)))); }
  std::string name() const { return "Q"; }
  std::string str(const Elem& a) const { return a.get_str(); }
  Elem parse(const std::string& s) const { return parse_rat(s); }
};

struct PrimeFieldRing {
  using Elem = Fp;
  static constexpr bool torsion_free = false;
  u64 p;
  explicit PrimeFieldRing(u64 prime) : p(prime) {}
  u64 char_p() const { return p; }
  Elem zero() const { return Fp(0, p); }
  Elem one() const { return Fp(1, p); }
  Elem from_int(const Int& n) const { return Fp::from_int(n, p); }
  Elem from_rat(const Rat& r) const { return Fp::from_rat(r, p); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  bool equal(const Elem& a, const Elem& b) const { return a.v == b.v; }
  bool is_zero(const Elem& a) const { return a.v == 0; }
  std::optional<Elem> divexact(const Elem&, u64) const { return std::nullopt; }
  std::string name() const { return "F_" + std::to_string(p); }
  std::string str(const Elem& a) const { return a.str(); }
  Elem parse(const std::string& s) const { return Fp::from_rat(parse_rat(s), p); }
};

// F_{p^n} = F_p[T]/(modulus); elements are reduced FpPoly values.
struct GaloisFieldRing {
  using Elem = FpPoly;
  static constexpr bool torsion_free = false;
  FpPoly modulus;
  explicit GaloisFieldRing(FpPoly m) : modulus(m.monic()) {}
  u64 p() const { return modulus.p(); }
  int degree() const { return modulus.degree(); }
  u64 char_p() const { return modulus.p(); }
  Elem zero() const { return FpPoly(p()); }
  Elem one() const { return FpPoly::constant(p(), 1); }
  Elem from_int(const Int& n) const { return FpPoly::constant(p(), static_cast<i64>(mpz_fdiv_ui(n.get_mpz_t(), p()))); }
  Elem from_rat(const Rat& r) const { return FpPoly::constant(p(), static_cast<i64>(Fp::from_rat(r, p()).v)); }
  Elem gen() const { return FpPoly::x(p()) % modulus; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return (a * b) % modulus; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const { return invmod(a, modulus); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  std::optional<Elem> divexact(const Elem&, u64) const { return std::nullopt; }
  std::string name() const { return "F_" + std::to_string(p()) + "^" + std::to_string(degree()) + "[" + modulus.str() + "]"; }
  std::string str(const Elem& a) const { return a.str(); }
  Elem parse(const std::string& s) const {
    auto f = FPoly::parse(s, {"T"}, [this](const std::string& t) { return Fp::from_rat(parse_rat(t), p()); });
    return FpPoly::from_sparse(f, p()) % modulus;
  }
};

// Z/p^K; elements kept reduced in [0, p^K).
struct ResidueRing {
  using Elem = Int;
  static constexpr bool torsion_free = false;
  u64 p;
  int K;
  Int mod;
  ResidueRing(u64 prime, int prec) : p(prime), K(prec), mod(int_pow(prime, static_cast<unsigned>(prec))) {}
  u64 char_p() const { return K == 1 ? p : 0; }
  Elem zero() const { return 0; }
  Elem one() const { return mod_int(1, mod); }
  Elem from_int(const Int& n) const { return mod_int(n, mod); }
  Elem from_rat(const Rat& r) const { return mod_int(Int(r.get_num()) * inv_int(r.get_den(), mod), mod); }
  Elem add(const Elem& a, const Elem& b) const { return mod_int(a + b, mod); }
  Elem sub(const Elem& a, const Elem& b) const { return mod_int(a - b, mod); }
  Elem mul(const Elem& a, const Elem& b) const { return mod_int(a * b, mod); }
  Elem neg(const Elem& a) const { return mod_int(-a, mod); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool is_zero(const Elem& a) const { return a == 0; }
  std::optional<Elem> divexact(const Elem&, u64) const { return std::nullopt; }
  std::string name() const { return "Z/" + std::to_string(p) + "^" + std::to_string(K); }
  std::string str(const Elem& a) const { return a.get_str(); }
  Elem parse(const std::string& s) const { return from_rat(parse_rat(s)); }
};

// Polynomials over Z or Q in a fixed list of variables (symbolic inputs).
template <class C>
struct PolynomialRing {
  using Elem = SparsePoly<C>;
  static constexpr bool torsion_free = true;
  std::vector<std::string> vars;
  explicit PolynomialRing(std::vector<std::string> v) : vars(std::move(v)) {}
  u64 char_p() const { return 0; }
  Elem zero() const { return Elem(vars); }
  Elem one() const { return Elem::constant(vars, C(1)); }
  Elem var(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return Elem::variable(vars, i, C(1));
    throw MathError("unknown variable " + name);
  }
  Elem from_int(const Int& n) const { return Elem::constant(vars, C(n)); }
  Elem from_rat(const Rat& r) const {
    if constexpr (std::is_same_v<C, Int>) {
      if (r.get_den() != 1) throw MathError("not an integer");
      return Elem::constant(vars, C(r.get_num()));
    } else {
      return Elem::constant(vars, r);
    }
  }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  std::optional<Elem> divexact(const Elem& a, u64 n) const {
    std::vector<typename Elem::Term> ts;
    for (auto& [e, c] : a.terms()) {
      if constexpr (std::is_same_v<C, Int>) {
        if (!mpz_divisible_ui_p(c.get_mpz_t(), n)) return std::nullopt;
        Int q;
        mpz_divexact_ui(q.get_mpz_t(), c.get_mpz_t(), n);
        ts.push_back({e, q});
      } else {
        ts.push_back({e, C(c / Rat(Int(static_cast<unsigned long>(n))))});
      }
    }
    return Elem::from_terms(vars, std::move(ts));
  }
  std::string name() const { return std::is_same_v<C, Int> ? "Z[...]" : "Q[...]"; }
  std::string str(const Elem& a) const { return a.to_string(); }
  Elem parse(const std::string& s) const {
    return Elem::parse(s, vars, [](const std::string& t) {
      if constexpr (std::is_same_v<C, Int>)
        return Int(t);
      else
        return parse_rat(t);
    });
  }
};

using ZPolyRing = PolynomialRing<Int>;
using QPolyRing = PolynomialRing<Rat>;

}  // namespace wl
