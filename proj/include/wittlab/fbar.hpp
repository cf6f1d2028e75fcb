#pragma once
// Finite-field towers: Conway-condition sequences, levels F_p[T]/(P_n) with
// embeddings T_m -> T_n^d, Frobenius orbits of roots of unity and their trace
// invariants, and Artin-Schreier towers for the p-part.

#include "wittlab/arith.hpp"
#include "wittlab/fp_poly.hpp"
#include "wittlab/rings.hpp"
#include "wittlab/sparse_poly.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace wl {

// Reduced fraction a/b in [0,1); zero is 0/1.
struct Frac {
  u64 a = 0, b = 1;
  friend bool operator==(const Frac& x, const Frac& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const Frac& x, const Frac& y) { return !(x == y); }
  // rational order
  friend bool operator<(const Frac& x, const Frac& y) {
    return static_cast<unsigned __int128>(x.a) * y.b < static_cast<unsigned __int128>(y.a) * x.b;
  }
  std::string str() const { return std::to_string(a) + "/" + std::to_string(b); }
};
Frac make_frac(i64 a, u64 b);
Frac parse_frac(const std::string& s);
Frac frac_add(const Frac& x, const Frac& y);
Frac frac_mul_int(const Frac& x, u64 n);

struct ConwaySequence {
  u64 p = 0;
  std::map<unsigned, FpPoly> polys;
  bool has(unsigned n) const { return polys.count(n) != 0; }
  const FpPoly& at(unsigned n) const;
  unsigned max_level() const { return polys.empty() ? 0 : polys.rbegin()->first; }
};

struct ConwayCheck {
  unsigned level = 0;
  unsigned other = 0;  // m for a compatibility check, else 0
  std::string condition;  // monic, degree, irreducible, primitive, compatible
  bool pass = false;
};
struct ConwayReport {
  std::vector<ConwayCheck> checks;
  bool ok() const;
};
ConwayReport verify_conway(const ConwaySequence& seq);

enum class SearchStrategy { Lexicographic, FirstFound };
// Lexicographic: smallest (c_{n-1},...,c_0) among all admissible P_n.
// FirstFound: P_n is the minimal polynomial of X^j for the least admissible
// exponent j, X generating the lexicographically first primitive field of
// degree n.
ConwaySequence extend_sequence(ConwaySequence seq, unsigned n, SearchStrategy s = SearchStrategy::Lexicographic);
ConwaySequence conway_sequence(u64 p, unsigned n, SearchStrategy s = SearchStrategy::Lexicographic);

// lexicographically smallest primitive irreducible polynomial of degree n
FpPoly first_primitive_poly(u64 p, unsigned n);
// minimal polynomial over F_p of a in F_p[X]/(mod)
FpPoly minpoly_in(const FpPoly& a, const FpPoly& mod);
// log of a to the base T in F_p[T]/(mod), T primitive; nullopt for a = 0
std::optional<u64> discrete_log(const FpPoly& a, const FpPoly& mod);

class FieldTower {
 public:
  explicit FieldTower(ConwaySequence seq);
  u64 p() const { return seq_.p; }
  const ConwaySequence& sequence() const { return seq_; }
  bool has_level(unsigned n) const { return seq_.has(n); }
  const GaloisFieldRing& level(unsigned n) const;
  // image of a in level n, a in level m, m | n
  FpPoly embed(const FpPoly& a, unsigned m, unsigned n) const;
  // smallest level containing e(g)
  unsigned level_for(const Frac& g) const;
  // e(g) = T_n^{a (p^n - 1)/b} at level n (level_for(g) | n)
  FpPoly root_of_unity(const Frac& g, unsigned n) const;
  // inverse of root_of_unity on nonzero elements of level n
  Frac log_fraction(const FpPoly& a, unsigned n) const;

 private:
  ConwaySequence seq_;
  std::map<unsigned, GaloisFieldRing> levels_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<unsigned, unsigned>, FpPoly> embed_memo_;
};

struct FrobeniusOrbit {
  u64 p = 0;
  Frac rep;
  std::vector<Frac> elements;  // rep, p*rep, p^2*rep, ...
  size_t size() const { return elements.size(); }
};
FrobeniusOrbit frobenius_orbit(u64 p, const Frac& g);
// all orbits of a/(p^n - 1), ordered by representative
std::vector<FrobeniusOrbit> orbits_at_level(u64 p, unsigned n);

// sum of e(g) over the orbit, computed at `level` (0 = smallest admissible)
u64 trace_invariant(const FieldTower& tower, const FrobeniusOrbit& orbit, unsigned level = 0);

struct TraceInvariant {
  u64 p = 0;
  std::map<Frac, u64> values;  // keyed by orbit representative
  u64 at(const Frac& rep) const;
};
// trace invariant on every orbit with denominator dividing p^n - 1
TraceInvariant compute_trace_invariant(const FieldTower& tower, unsigned n);
// T^n + sum_{k=1}^{n} (-1)^k sigma_k T^{n-k}, sigma_k summed over digit sets D_k
FpPoly reconstruct_charpoly(const TraceInvariant& tr, unsigned n);

// ---- Artin-Schreier towers -------------------------------------------------
// E_0 = F_p and E_{k+1} = E_k[y_k]/(y_k^p - y_k - alpha_k). An element of E_L
// is a flat vector of p^L coefficients on the monomials prod y_i^{e_i}, index
// sum e_i p^i.
class ArtinSchreierTower {
 public:
  using Elem = std::vector<u64>;
  explicit ArtinSchreierTower(u64 p);
  u64 p() const { return p_; }
  unsigned levels() const { return static_cast<unsigned>(alpha_.size()); }
  u64 size(unsigned L) const;
  unsigned level_of(const Elem& a) const;

  Elem constant(unsigned L, u64 c) const;
  Elem gen(unsigned L, unsigned i) const;
  Elem lift(const Elem& a, unsigned L) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(const Elem& a, const Int& e) const;
  Elem inv(const Elem& a) const;
  bool is_zero(const Elem& a) const;
  // Tr_{E_L/F_p}
  u64 absolute_trace(const Elem& a) const;
  // y^p - y - alpha is irreducible over E_L iff Tr(alpha) != 0
  bool as_irreducible(const Elem& alpha) const { return absolute_trace(alpha) != 0; }
  void push(const Elem& alpha);

  // evaluate f (variable i -> y_i) in E_L
  Elem eval(const FPoly& f, unsigned L) const;
  FPoly to_poly(const Elem& a, const std::vector<std::string>& vars) const;

 private:
  u64 p_;
  std::vector<Elem> alpha_;
  Elem mul_rec(const Elem& a, const Elem& b, unsigned L) const;
};

struct TowerEquation {
  u64 p = 0;
  unsigned level = 0;
  FPoly rhs;      // x_level^p = rhs, raw Witt component mod p
  FPoly reduced;  // rhs with lower variables reduced to exponents < p
  bool irreducible = false;
  std::string str() const;
  std::string reduced_str() const;
};
// Components of F(x) = x + 1 in p-typical Witt coordinates over F_p.
std::vector<TowerEquation> witt_as_tower(u64 p, unsigned levels);

struct DslStep {
  u64 p = 0;
  unsigned step = 0;
  FPoly alpha;  // y_step^p - y_step = alpha, alpha in E_step
  bool irreducible = false;
  u64 degree = 0;  // [E_{step+1} : F_p]
  std::string str() const;
};
std::vector<DslStep> dsl_chain(u64 p, unsigned steps);

// exponent with [Z_l^x / Delta_l : closure of p^Z] = l^u
u64 u_exponent(u64 p, u64 l);

}  // namespace wl
