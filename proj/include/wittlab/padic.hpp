#pragma once
// Bounded-precision p-adic numbers p^v * u with u known modulo p^K.
//
// Exact zero has v = kInf. A value known only to vanish modulo p^A is an
// "approximate zero": v = A, K = 0, u = 0. Every operation returns the
// precision it can actually vouch for.

#include "wittlab/arith.hpp"

#include <climits>
#include <string>
#include <utility>

namespace wl {

// q and phi(q) for the prime p (q = 4 when p = 2).
struct PrimeConstants {
  u64 p, q, phi_q;
  int v_q;  // valuation of q
  explicit PrimeConstants(u64 prime) : p(prime), q(prime == 2 ? 4 : prime), phi_q(prime == 2 ? 2 : prime - 1), v_q(prime == 2 ? 2 : 1) {}
};

class PadicNumber {
 public:
  static constexpr long kInf = LONG_MAX;

  PadicNumber() = default;
  static PadicNumber zero(u64 p, int nominal_prec = 20);
  static PadicNumber approx_zero(u64 p, long abs_prec);
  static PadicNumber from_int(const Int& n, u64 p, int K);
  static PadicNumber from_rat(const Rat& r, u64 p, int K);
  // value known modulo p^abs_prec, given by the integer representative s
  static PadicNumber from_residue(const Int& s, u64 p, long abs_prec);
  static PadicNumber make(u64 p, long v, const Int& unit, int K);

  u64 p() const { return p_; }
  long val() const { return v_; }
  const Int& unit() const { return u_; }
  int prec() const { return K_; }
  long abs_prec() const { return v_ == kInf ? kInf : v_ + K_; }
  bool is_exact_zero() const { return v_ == kInf; }
  bool is_zero() const { return v_ == kInf || K_ == 0; }

  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b);
  PadicNumber operator-() const;
  PadicNumber pow(long e) const;
  PadicNumber with_prec(long abs_prec) const;  // truncate

  // residue modulo p^N (requires v >= 0 and N <= abs_prec)
  Int residue(long N) const;
  // a - b vanishes modulo p^N (both must be known that far)
  bool equal_mod(const PadicNumber& o, long N) const;
  // base-p digits of the unit, little endian
  std::string digits() const;
  std::string str() const;

 private:
  u64 p_ = 0;
  long v_ = kInf;
  int K_ = 0;
  Int u_ = 0;
};

// Teichmuller representative of a unit u modulo p^K.
Int teichmuller_unit(const Int& u, u64 p, int K);
PadicNumber iwasawa_log(const PadicNumber& x);
PadicNumber padic_exp(const PadicNumber& x);
// (omega(r), <r>) with r = omega(r) <r>
std::pair<PadicNumber, PadicNumber> omega_angle(const Rat& r, u64 p, int K);
// log_p(r) / log_p(1+q), returned to relative precision K
PadicNumber i_p(const Rat& r, u64 p, int K);

}  // namespace wl
