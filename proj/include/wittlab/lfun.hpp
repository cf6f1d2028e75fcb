#pragma once
// Bernoulli polynomials, the rational functions l_{-n}, the cyclotomic sums
// Y_m, and the p-adic KMS functionals: exact values at beta = 1 - k phi(q) in
// Q(zeta_b), series evaluation for p-adic beta, the scalars r^(beta) and the
// KMS-condition check on monomials of the BC algebra.

#include "wittlab/bc.hpp"
#include "wittlab/cyclotomic.hpp"
#include "wittlab/padic.hpp"

#include <optional>
#include <vector>

namespace wl {

Rat bernoulli_number(unsigned n);
// B_n(u) in the variable "u"
const QPoly& bernoulli_poly(unsigned n);
Rat eval_q(const QPoly& f, const Rat& x);

// Dense univariate polynomials over Q, low degree first, no trailing zeros.
using QDense = std::vector<Rat>;
QDense qd_mul(const QDense& a, const QDense& b);
QDense qd_add(const QDense& a, const QDense& b);
QDense qd_sub(const QDense& a, const QDense& b);
QDense qd_derive(const QDense& a);
std::pair<QDense, QDense> qd_divmod(const QDense& a, const QDense& b);
QDense qd_gcd(const QDense& a, const QDense& b);  // monic

struct RationalFunction {
  QDense num, den;  // coprime, den monic
  static RationalFunction make(QDense num, QDense den);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) { return a.num == b.num && a.den == b.den; }
  CycloElement eval(const CycloElement& z) const;  // throws at a pole
  std::string str(const std::string& var = "z") const;
};

// l_0 = z/(1-z), l_{-n} = (z d/dz)^n l_0
RationalFunction polylog_neg(unsigned n);

// f^{m-1} sum_{j<f} zeta_{g}^j B_m(j/f) in Q(zeta_b); f = 0 picks f = b
CycloElement y_m(const Frac& g, unsigned m, u64 f = 0);

// -(1/m)(Y_m(g) - p^{m-1} Y_m(p g)) for m a positive multiple of phi(q)
CycloElement z_exact(const Frac& g, unsigned m, u64 p);

// (1/f) sum_{c<f, p !| c} zeta^c; f = 0 picks b q
CycloElement residue_at_one(const Frac& g, u64 p, u64 f = 0);

// Y(g, 1-m) for g on Z/bZ (g.size() = b), f a multiple of b q (0 = b q)
CycloElement weighted_value(const std::vector<CycloElement>& g, unsigned m, u64 p, u64 f = 0);

// The decomposition of z_exact(a/b) through Dirichlet L-values: delta_a is
// split as e_d(delta_c) with d = gcd(a, b), then delta_c by Fourier inversion
// over the characters mod b/d.
struct CharTerm {
  u64 d = 1, modulus = 1, conductor = 1;
  CycloElement coeff;  // c(d, chi)
  CycloElement lvalue;  // L_p(1-m, chi) of the primitive character
  CycloElement euler;   // d^{-1} d^m prod (1 - chi(l) l^{m-1})
};
std::vector<CharTerm> comblem_decompose(const Frac& g, unsigned m, u64 p);
CycloElement comblem_value(const std::vector<CharTerm>& terms);

// Dirichlet characters modulo n as value tables on Z/nZ (0 off the units),
// valued in Q(zeta_N) with N = exponent of (Z/n)^x
struct DirichletChar {
  u64 modulus = 1, conductor = 1;
  u64 N = 1;
  std::vector<i64> log;  // chi(c) = zeta_N^{log[c]}, -1 where c is not a unit
  CycloElement value(u64 c, u64 field) const;
  bool is_even() const;
};
std::vector<DirichletChar> dirichlet_characters(u64 n);

enum class KmsMode { Exact, Padic, Lambda };
struct KmsPoint {
  u64 p = 0;
  KmsMode mode = KmsMode::Exact;
  unsigned m = 0;          // exact: beta = 1 - m
  PadicNumber beta;        // padic
  PadicNumber lambda;      // lambda mode, |lambda - 1| < 1
  static KmsPoint exact(u64 p, unsigned m);
  static KmsPoint padic(const PadicNumber& beta);
  static KmsPoint lambda_point(const PadicNumber& lambda);
  void validate() const;
};

// (b/a)^(beta) for a, b prime to p
Rat sigma_beta_exact(u64 a, u64 b, const KmsPoint& pt);
PadicNumber sigma_beta_scalar(u64 a, u64 b, const KmsPoint& pt, int K = 20);
PadicNumber r_beta(const Rat& r, const PadicNumber& beta, int K);

struct PadicValue {
  UnramifiedElement value;
  long prec_effective = 0;
};
// the series definition at p-adic beta, f a multiple of b q (0 = b q)
PadicValue z_padic(const Frac& g, const PadicNumber& beta, SigmaSpec& spec, int K, u64 f = 0);
// rho applied to an exact value in Q(zeta_b)
UnramifiedElement embed_cyclo(const CycloElement& x, const UnramCtx& ctx, const SigmaSpec& spec);

// phi_beta on H^(p) at beta = 1 - m: Z(gamma) on the diagonal, 0 elsewhere
CycloElement kms_phi(const BCElement& x, unsigned m, u64 p);
// the normalized state phi / Z(beta)
CycloElement kms_state(const BCElement& x, unsigned m, u64 p);
BCElement sigma_beta_apply(const BCElement& x, const KmsPoint& pt);
struct KmsResult {
  CycloElement lhs, rhs;
  bool equal = false;
};
KmsResult kms_verify(const BCElement& x, const BCElement& y, const KmsPoint& pt);

bool homogeneity_check(const QZElement& X, u64 n, unsigned m, u64 p);
bool symmetry_check(const Frac& g, unsigned m, u64 p);
bool division_relation_check(unsigned n, u64 g);

json cyclo_to_json(const CycloElement& x);
json padic_value_to_json(const PadicValue& v);

}  // namespace wl
