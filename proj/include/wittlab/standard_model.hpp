#pragma once
// The de Smit-Lenstra rings B_l: the eta generators as Delta_l-traces in
// cyclotomic fields, the primes above p and their F_p residue systems,
// valuations in the unramified and totally ramified pieces, and the residue
// map on Frobenius-stable sums of roots of unity.

#include "wittlab/bc.hpp"
#include "wittlab/cyclotomic.hpp"
#include "wittlab/fbar.hpp"
#include "wittlab/lfun.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wl {

// Teichmuller representatives of Delta_l modulo l^e ({1, -1} for l = 2)
std::vector<u64> delta_group(u64 ell, unsigned e);
// tr(e(g)) = sum over Delta_l of e(delta g), g of l-power denominator
CycloElement delta_trace(u64 ell, const Frac& g);
// exact minimal polynomial over Q (monic, low degree first)
QDense minimal_polynomial(const CycloElement& x);
std::string qdense_str(const QDense& f, const std::string& var = "X");

struct EtaGenerator {
  u64 ell = 0;
  unsigned k = 0;
  u64 i = 0;
  Frac arg;  // 1/l^{k+1} + i/l, or 1/2^{k+2}
  CycloElement value;
  QDense minpoly;
};
// i must be 0 for l = 2
Frac eta_arg(u64 ell, unsigned k, u64 i = 0);
EtaGenerator eta(u64 ell, unsigned k, u64 i = 0);

struct PrimeAbove {
  u64 ell = 0, p = 0;
  // a(P, i + k l) = eta_{l,k+1,i} mod P; for l = 2 one entry per level
  std::vector<u64> residues;
  std::string str() const;
};
std::vector<PrimeAbove> primes_above(u64 ell, u64 p);
json prime_above_to_json(const PrimeAbove& P);

struct ValuationResult {
  Rat value = 0;
  bool lower_bound = false;  // value is only a lower bound (cap reached)
  int precision = 0;         // digits used
  std::string str() const;
};
// v_p of sum n_j tau(xi_j) in the unramified model fixed by seq
ValuationResult val_inertia(const QZElement& x, const ConwaySequence& seq, u64 p, int cap = 64);

// inf{v(a_j) + j / phi(n)}; nullopt entries are zero coordinates, nullopt result is +infinity
std::optional<Rat> val_ramified(const std::vector<std::optional<Rat>>& vals, u64 n, u64 p);
// the same for rational coordinates a_j on the basis pi^j, pi = zeta_n - 1
std::optional<Rat> val_ramified_coords(const std::vector<Rat>& coords, u64 n, u64 p);
// coordinates of pi^k on pi^0 .. pi^{phi(n)-1}
std::vector<Rat> pi_power_coords(unsigned k, u64 n);

// residue in F_p of a Frobenius-stable integral combination of prime-to-p roots of unity
u64 residue_map(const ConwaySequence& seq, const QZElement& x);

}  // namespace wl
