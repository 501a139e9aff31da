#pragma once

#include <string>
#include <vector>

#include "recq/poly.hpp"
#include "recq/wirsing.hpp"

namespace recq {

/// Per-prime forbidden residue sets over a prime window (y, z], plus the
/// exclusion log and the generator metadata needed to rebuild or audit the
/// system.
struct SieveSystem {
  enum class Exclusion { kIdenticallyVanishing, kSmallOrder, kInS };

  struct Entry {
    u64 p;
    std::vector<u64> residues;  // sorted, proper subset of [0, p)
  };
  struct Excluded {
    u64 p;
    Exclusion reason;
  };

  u64 y = 0, z = 0;
  std::vector<Entry> entries;     // ascending p
  std::vector<Excluded> excluded; // ascending p
  // generator metadata
  IntPolynomial gtilde;           // primitive, positive leading coefficient
  std::vector<mpz_class> roots;
  std::vector<u64> inverted_primes;  // the set S
  unsigned h = 0;                    // irreducible factor count of gtilde

  std::size_t total_residues() const;
};

/// Builds the residue system for gtilde over primes in (y, z]: a prime is
/// excluded if it lies in S, divides some root, makes gtilde vanish on every
/// residue, or some root ratio has multiplicative order below p^(1/4)
/// (exact integer comparison ord^4 >= p). Remaining primes carry the zero
/// set of gtilde mod p.
SieveSystem build_sieve_system(const IntPolynomial& gtilde,
                               const std::vector<mpz_class>& roots,
                               const std::vector<u64>& inverted_primes,
                               u64 y, u64 z);

/// Exact count of {1 <= n <= x : n mod p not in Omega_p for all system
/// primes}, by marking a bit array. Cap x <= 1e8.
u64 sieved_count(u64 x, const SieveSystem& system);

/// x * (log y / log x)^h, the reference shape of the sieve bound.
double sieve_bound_shape(u64 x, u64 y, double h);

struct OrderFilterReport {
  u64 x = 0;
  u64 count = 0;        // primes p <= x with some ord_p(beta) < p^(1/4)
  u64 scanned = 0;      // primes actually tested (p dividing a beta skipped)
  double ratio = 0.0;   // count / sqrt(x)
};

/// Counts primes p <= x for which some beta has multiplicative order below
/// p^(1/4) mod p. The betas must be integers with |beta| >= 2 (nonzero,
/// not a root of unity).
OrderFilterReport count_excluded_small_order(const std::vector<mpz_class>& betas,
                                             u64 x);

/// The multiplicative function g_y of the system: g(p) = w/(p - w) on the
/// included primes, squarefree support, cutoff y.
MultFnSpec gy_from_system(const SieveSystem& system);

/// Weighted zero-count statistic over the system's primes:
/// sum #Omega_p log p / p, for checking the h log x trend.
double omega_logp_sum(const SieveSystem& system, u64 t);

std::string to_string(SieveSystem::Exclusion e);

}  // namespace recq
