#pragma once
// Cyclotomic polynomials and exact arithmetic in Q(zeta_b) = Q[x]/Phi_b.

#include "wittlab/arith.hpp"
#include "wittlab/sparse_poly.hpp"

#include <string>
#include <vector>

namespace wl {

// Coefficients of Phi_n, low degree first (memoized).
const std::vector<Int>& cyclotomic_coeffs(u64 n);
ZPoly cyclotomic_poly(u64 n, const std::string& var = "x");

class CycloElement {
 public:
  CycloElement() : CycloElement(1) {}
  explicit CycloElement(u64 conductor);  // zero
  CycloElement(u64 conductor, std::vector<Rat> coords);
  static CycloElement rational(const Rat& r, u64 conductor = 1);
  static CycloElement zeta(u64 conductor, i64 k);  // zeta_b^k

  u64 conductor() const { return b_; }
  const std::vector<Rat>& coords() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  Rat to_rational() const;  // throws unless rational

  // Same element viewed in Q(zeta_B), b | B.
  CycloElement lift(u64 B) const;
  // Smallest conductor containing the element.
  CycloElement reduced() const;
  // zeta -> zeta^c, gcd(c, b) = 1
  CycloElement galois(i64 c) const;

  friend CycloElement operator+(const CycloElement& a, const CycloElement& b);
  friend CycloElement operator-(const CycloElement& a, const CycloElement& b);
  friend CycloElement operator*(const CycloElement& a, const CycloElement& b);
  CycloElement operator-() const;
  CycloElement& operator+=(const CycloElement& o) { return *this = *this + o; }
  CycloElement& operator-=(const CycloElement& o) { return *this = *this - o; }
  CycloElement& operator*=(const CycloElement& o) { return *this = *this * o; }
  CycloElement scaled(const Rat& r) const;
  friend bool operator==(const CycloElement& a, const CycloElement& b);
  friend bool operator!=(const CycloElement& a, const CycloElement& b) { return !(a == b); }

  // "1/6" for rationals, else a polynomial in z_b
  std::string str() const;

 private:
  u64 b_;
  std::vector<Rat> c_;
  static std::vector<Rat> reduce(std::vector<Rat> v, u64 b);
};

}  // namespace wl
