#pragma once
// Dense univariate polynomials over F_p (p < 2^32) and their factorization.

#include "wittlab/arith.hpp"
#include "wittlab/sparse_poly.hpp"

#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace wl {

class FpPoly {
 public:
  FpPoly() = default;
  explicit FpPoly(u64 p) : p_(p) {}
  FpPoly(u64 p, std::vector<u64> coeffs);  // low degree first
  static FpPoly monomial(u64 p, size_t deg, u64 c = 1);
  static FpPoly x(u64 p) { return monomial(p, 1); }
  static FpPoly constant(u64 p, i64 c);

  u64 p() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  const std::vector<u64>& coeffs() const { return c_; }
  u64 operator[](size_t i) const { return i < c_.size() ? c_[i] : 0; }
  u64 lead() const { return c_.empty() ? 0 : c_.back(); }

  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.c_ == b.c_; }
  friend bool operator<(const FpPoly& a, const FpPoly& b);  // degree, then (c_{n-1},...,c_0)
  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  FpPoly operator-() const;
  FpPoly scaled(u64 c) const;

  std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const;
  FpPoly operator/(const FpPoly& d) const { return divmod(d).first; }
  FpPoly operator%(const FpPoly& d) const { return divmod(d).second; }
  FpPoly monic() const;
  FpPoly derivative() const;
  u64 eval(u64 x) const;
  // f(x^k)
  FpPoly compose_power(u64 k) const;
  FpPoly compose(const FpPoly& g, const FpPoly& mod) const;  // f(g) mod m

  std::string str(const std::string& var = "T") const;
  FPoly to_sparse(const std::string& var = "T") const;
  static FpPoly from_sparse(const FPoly& f, u64 p);

 private:
  u64 p_ = 0;
  std::vector<u64> c_;
  void trim();
};

FpPoly gcd(FpPoly a, FpPoly b);
// (g, s, t) with s*a + t*b = g monic
std::tuple<FpPoly, FpPoly, FpPoly> xgcd(const FpPoly& a, const FpPoly& b);
FpPoly powmod(const FpPoly& base, const Int& e, const FpPoly& mod);
FpPoly invmod(const FpPoly& a, const FpPoly& mod);

bool is_irreducible(const FpPoly& f);
// order of T is p^n - 1 in F_p[T]/(f); f assumed irreducible of degree n
bool is_primitive(const FpPoly& f);

using Factorization = std::vector<std::pair<FpPoly, int>>;
// Monic irreducible factors with multiplicity, sorted; leading unit dropped.
Factorization factor_mod_p(const FpPoly& f, u64 seed = kDefaultSeed);
std::vector<u64> roots_mod_p(const FpPoly& f, u64 seed = kDefaultSeed);

}  // namespace wl
