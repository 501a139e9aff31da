#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace recq {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 powmod(u64 base, u64 exp, u64 m);

u64 gcd_u64(u64 a, u64 b);

/// Inverse of a mod m for gcd(a, m) = 1; throws domain_error otherwise.
u64 invmod(u64 a, u64 m);

/// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime_u64(u64 n);

/// All primes <= limit, in increasing order. Built by a segmented sieve;
/// peak memory is O(segment + sqrt(limit)) beyond the output itself.
struct PrimeTable {
  u64 limit = 0;
  std::vector<u64> primes;

  bool contains(u64 n) const;
};

PrimeTable primes_up_to(u64 limit);

/// Calls fn(p) for every prime p in [lo, hi], in increasing order, without
/// materializing the table. Sequential.
void for_primes_in(u64 lo, u64 hi, const std::function<void(u64)>& fn);

/// Complete prime factorization, factors sorted by prime.
struct Factorization {
  mpz_class n;
  std::vector<std::pair<mpz_class, unsigned>> factors;

  mpz_class product() const;
};

/// Factors 1 <= n < 2^128 by trial division plus Brent's rho with a
/// deterministic retry schedule. n = 1 gives an empty factor list.
Factorization factorize(const mpz_class& n);

/// Word-size specialization used in per-prime inner loops.
std::vector<std::pair<u64, unsigned>> factorize_u64(u64 n);

}  // namespace recq
