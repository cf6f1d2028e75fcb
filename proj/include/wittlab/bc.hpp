#pragma once
// The integral BC algebra: the group ring of Q/Z with sigma_n and rho~_n,
// monomials mu~_a x mu*_b in normal form (gcd(a, b) = 1), the retraction onto
// the prime-to-p roots of unity, and the p-adic representation on W(F_p-bar)
// seen as (Z_p^ur)^{I(p)} with basis eps_m.

#include "wittlab/fbar.hpp"
#include "wittlab/serialize.hpp"
#include "wittlab/unramified.hpp"

#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace wl {

// Finite rational combination of e(g), g in Q/Z.
class QZElement {
 public:
  QZElement() = default;
  static QZElement e(const Frac& g, const Rat& c = 1);
  static QZElement constant(const Rat& c) { return e(Frac{}, c); }

  const std::map<Frac, Rat>& support() const { return s_; }
  bool is_zero() const { return s_.empty(); }
  Rat coeff(const Frac& g) const;
  void add_term(const Frac& g, const Rat& c);

  friend bool operator==(const QZElement& a, const QZElement& b) { return a.s_ == b.s_; }
  friend bool operator!=(const QZElement& a, const QZElement& b) { return !(a == b); }
  friend QZElement operator+(const QZElement& a, const QZElement& b);
  friend QZElement operator-(const QZElement& a, const QZElement& b);
  friend QZElement operator*(const QZElement& a, const QZElement& b);
  friend QZElement operator*(const Rat& c, const QZElement& a);
  QZElement operator-() const;
  std::string str() const;

 private:
  std::map<Frac, Rat> s_;
};

QZElement sigma_n(const QZElement& x, u64 n);
QZElement rho_tilde_n(const QZElement& x, u64 n);
// id (x) augmentation on the p-power part
QZElement retraction(const QZElement& x, u64 p);
// closed form of r(rho~_n(e(g))) for g with denominator prime to p
QZElement r_rho_formula(const Frac& g, u64 n, u64 p);
// e(g) -> e(p g), an automorphism of the prime-to-p part
QZElement frobenius_qz(const QZElement& x, u64 p);

// Finite sum of mu~_a x_{a,b} mu*_b with gcd(a, b) = 1.
class BCElement {
 public:
  using Key = std::pair<u64, u64>;
  BCElement() = default;
  static BCElement scalar(const QZElement& x);
  static BCElement one() { return scalar(QZElement::constant(1)); }
  // mu~_a x mu*_b for any a, b >= 1, brought to normal form
  static BCElement monomial(u64 a, const QZElement& x, u64 b);
  static BCElement mu_tilde(u64 n) { return monomial(n, QZElement::constant(1), 1); }
  static BCElement mu_star(u64 n) { return monomial(1, QZElement::constant(1), n); }
  // mu_n = mu~_n / n, living in the rational algebra
  static BCElement mu(u64 n) { return monomial(n, QZElement::constant(Rat(1, n)), 1); }

  const std::map<Key, QZElement>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  void add_term(u64 a, u64 b, const QZElement& x);

  friend bool operator==(const BCElement& a, const BCElement& b) { return a.t_ == b.t_; }
  friend bool operator!=(const BCElement& a, const BCElement& b) { return !(a == b); }
  friend BCElement operator+(const BCElement& a, const BCElement& b);
  friend BCElement operator-(const BCElement& a, const BCElement& b);
  friend BCElement operator*(const Rat& c, const BCElement& a);
  std::string str() const;

 private:
  std::map<Key, QZElement> t_;
};

BCElement bc_mul(const BCElement& x, const BCElement& y);
bool jp_membership(const BCElement& x, u64 p);

json qz_to_json(const QZElement& x);
QZElement qz_from_json(const json& j);
json bc_to_json(const BCElement& x);
BCElement bc_from_json(const json& j);

// An element of G_p acting on the l-primary roots of unity by g -> u g.
struct UnitTwist {
  u64 ell = 0;
  unsigned k = 1;
  u64 unit = 1;  // unit modulo ell^k; its integer representative acts at every l-power level
};

// The embedding rho: Teichmuller lifts of the roots of unity fixed by a
// Conway-condition sequence, composed with finite-level twists.
struct SigmaSpec {
  u64 p = 0;
  ConwaySequence seq;
  std::vector<UnitTwist> twists;

  static SigmaSpec standard(u64 p);
  void validate() const;
  Frac twist(const Frac& g) const;
  // degree d with ord_b(p) | d for every prime-to-p part b of the given denominators
  static u64 residue_degree(u64 p, const std::vector<u64>& dens);
  // context (p, d, K) with residue field F_p[T]/(P_d); extends seq as needed
  UnramCtx context(u64 d, int K);
};

// rho(zeta_g) = Teichmuller root for the twisted g in ctx (needs b | p^d - 1)
UnramifiedElement rho_root(const UnramCtx& ctx, const SigmaSpec& spec, const Frac& g);

struct RepOverflow : MathError {
  using MathError::MathError;
};

// Finitely supported vector sum_m c_m eps_m, m in I(p), m <= M.
struct RepVector {
  u64 p = 0;
  u64 M = 0;
  UnramCtx ctx;
  std::map<u64, UnramifiedElement> comps;  // absent = 0

  static RepVector zero(const UnramCtx& ctx, u64 M);
  static RepVector basis(const UnramCtx& ctx, u64 M, u64 m, const UnramifiedElement& c);
  UnramifiedElement at(u64 m) const;
  void set(u64 m, const UnramifiedElement& c);
  bool equal_mod(const RepVector& o, long N) const;
  std::string str() const;
};

RepVector rep_add(const RepVector& a, const RepVector& b);
RepVector rep_scale(const UnramifiedElement& c, const RepVector& v);
// fr acting componentwise (times may be negative)
RepVector rep_fr(const RepVector& v, long times);
// pi(mu_n): fr^{-k} followed by eps_j -> eps_{n' j}, n = p^k n'
RepVector rep_mu(const RepVector& v, u64 n);
RepVector rep_mu_tilde(const RepVector& v, u64 n);
RepVector rep_mu_star(const RepVector& v, u64 n);
// multiplication by pi(x) = pi(r(x)), x in Z[Q/Z] with p-integral coefficients
RepVector rep_e(const RepVector& v, const QZElement& x, const SigmaSpec& spec);

RepVector pi_apply(const BCElement& op, const RepVector& v, const SigmaSpec& spec);

struct RelationResult {
  std::string name;
  u64 cases = 0;
  u64 failures = 0;
  std::string first_failure;
  bool pass() const { return failures == 0 && cases > 0; }
};
struct RelationsReport {
  u64 p = 0, bound = 0;
  int K = 0;
  u64 degree = 0;
  std::vector<RelationResult> results;
  bool ok() const;
};
RelationsReport relations_check(u64 p, u64 bound, int K = 8, u64 seed = kDefaultSeed);

}  // namespace wl
