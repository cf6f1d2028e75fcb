#pragma once
// The unramified extension of Q_p of degree d, as (Z/p^K)[X]/(g~) with g~ the
// Teichmuller-normalized lift of an irreducible g over F_p: the class of X is
// itself a (p^d - 1)-th root of unity, so Frobenius is X -> X^p.

#include "wittlab/arith.hpp"
#include "wittlab/fp_poly.hpp"
#include "wittlab/padic.hpp"

#include <memory>
#include <string>
#include <vector>

namespace wl {

// Monic lift of g to Z/p^K whose roots are Teichmuller representatives.
std::vector<Int> hensel_lift_modulus(const FpPoly& g, int K);

struct UnramifiedContext {
  u64 p;
  int d;
  int K;
  Int pK;
  FpPoly residue;
  std::vector<Int> modulus;  // monic, low degree first
  std::vector<std::vector<Int>> frob_x;  // X^{p i} reduced, i < d

  static std::shared_ptr<const UnramifiedContext> make(const FpPoly& g, int K);
};
using UnramCtx = std::shared_ptr<const UnramifiedContext>;

class UnramifiedElement {
 public:
  static constexpr long kInf = PadicNumber::kInf;

  UnramifiedElement() = default;
  static UnramifiedElement zero(const UnramCtx& ctx);
  static UnramifiedElement one(const UnramCtx& ctx);
  static UnramifiedElement from_int(const UnramCtx& ctx, const Int& n);
  static UnramifiedElement from_rat(const UnramCtx& ctx, const Rat& r);
  static UnramifiedElement from_padic(const UnramCtx& ctx, const PadicNumber& x);
  // integral element from coordinates, known modulo p^K (K <= ctx K)
  static UnramifiedElement from_coords(const UnramCtx& ctx, std::vector<Int> coords, int K);
  static UnramifiedElement generator(const UnramCtx& ctx);  // class of X

  const UnramCtx& ctx() const { return ctx_; }
  long val() const { return v_; }
  int prec() const { return K_; }
  long abs_prec() const { return v_ == kInf ? kInf : v_ + K_; }
  const std::vector<Int>& unit() const { return u_; }
  bool is_exact_zero() const { return v_ == kInf; }
  bool is_zero() const { return v_ == kInf || K_ == 0; }

  friend UnramifiedElement operator+(const UnramifiedElement& a, const UnramifiedElement& b);
  friend UnramifiedElement operator-(const UnramifiedElement& a, const UnramifiedElement& b);
  friend UnramifiedElement operator*(const UnramifiedElement& a, const UnramifiedElement& b);
  friend UnramifiedElement operator/(const UnramifiedElement& a, const UnramifiedElement& b);
  UnramifiedElement operator-() const;
  UnramifiedElement pow(const Int& e) const;
  UnramifiedElement frobenius(int times = 1) const;  // negative = inverse
  UnramifiedElement with_prec(long abs_prec) const;

  // integral coordinates modulo p^N (requires v >= 0, N <= abs_prec)
  std::vector<Int> coords(long N) const;
  FpPoly residue() const;  // reduction mod p, requires v >= 0
  bool equal_mod(const UnramifiedElement& o, long N) const;
  // the element lies in Z_p (only the constant coordinate survives)
  bool is_padic() const;
  PadicNumber to_padic() const;
  std::string str() const;

 private:
  UnramCtx ctx_;
  long v_ = kInf;
  int K_ = 0;
  std::vector<Int> u_;
  static UnramifiedElement normalize(const UnramCtx& ctx, long v, std::vector<Int> c, long rel);
};

UnramifiedElement teichmuller(const FpPoly& a, const UnramCtx& ctx);

// Polynomial helpers over Z/m modulo a monic polynomial.
std::vector<Int> zpoly_mulmod(const std::vector<Int>& a, const std::vector<Int>& b, const std::vector<Int>& mod, const Int& m);

}  // namespace wl
