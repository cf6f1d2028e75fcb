#pragma once
// Divisors of W_0 over the algebraic closure: finitely supported integer
// combinations of points of F_p-bar^x, a point e(g) keyed by its fraction g
// (denominator prime to p) relative to the tower's chosen roots of unity.

#include "wittlab/fbar.hpp"
#include "wittlab/witt.hpp"

#include <map>
#include <memory>

namespace wl {

class Divisor {
 public:
  explicit Divisor(std::shared_ptr<const FieldTower> tower) : tower_(std::move(tower)) {}
  static Divisor point(std::shared_ptr<const FieldTower> tower, const Frac& g, i64 mult = 1);
  // the point of a nonzero element of level n
  static Divisor of_element(std::shared_ptr<const FieldTower> tower, const FpPoly& a, unsigned n, i64 mult = 1);

  const FieldTower& tower() const { return *tower_; }
  std::shared_ptr<const FieldTower> tower_ptr() const { return tower_; }
  const std::map<Frac, i64>& support() const { return s_; }
  void add_point(const Frac& g, i64 mult);
  i64 degree() const;
  // least tower level containing every point
  unsigned field_level() const;
  friend bool operator==(const Divisor& a, const Divisor& b) { return a.s_ == b.s_; }
  friend Divisor operator+(const Divisor& a, const Divisor& b);
  std::string str() const;

 private:
  std::shared_ptr<const FieldTower> tower_;
  std::map<Frac, i64> s_;
};

// [a] -> [a^n]
Divisor divisor_fn(const Divisor& d, u64 n);
// [a] -> p^k sum over the m distinct n-th roots, n = p^k m
Divisor divisor_vn(const Divisor& d, u64 n);
// bilinear extension of [a]*[b] = [ab]
Divisor divisor_mul(const Divisor& a, const Divisor& b);

// L(d) = prod (1 - a t)^{-n(a)} as numerator / denominator over level N
struct DivisorLRatio {
  unsigned level = 0;
  std::vector<FpPoly> num, den;  // coefficients low degree first, in level N
};
DivisorLRatio divisor_L_ratio(const Divisor& d, unsigned level = 0);
LambdaSeries<GaloisFieldRing> divisor_L_series(const Divisor& d, u64 T, unsigned level = 0);

}  // namespace wl
